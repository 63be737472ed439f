"""Theory combination property certificates and their inclusion lattice.

A certificate records which combination-relevant properties a theory's
implementation actually supports.  Construction enforces the closure of
the inclusion lattice (15 edges): every implied property is filled in,
and an explicit denial of an implied property is rejected.

Parameterized properties are rule-valued: n-decidability is a rule over
cardinalities, quasi-gentleness (and its co-variant) a rule over free
filters.
"""

from __future__ import annotations

from dataclasses import dataclass

from .filters import NO, YES, FreeFilter

# Lattice node names, top to bottom.
CLASSES = (
    "decidable",
    "n-decidable",
    "CFS",
    "ID",
    "co-F-QG",
    "CS",
    "SI",
    "F-QG",
    "gentle",
    "SM+CS",
    "n-shiny",
    "shiny",
)

# (lower, upper) inclusion edges of the property lattice.
LATTICE_EDGES = (
    ("n-decidable", "decidable"),
    ("ID", "decidable"),
    ("CFS", "n-decidable"),
    ("co-F-QG", "CFS"),
    ("CS", "CFS"),
    ("CS", "ID"),
    ("SI", "ID"),
    ("F-QG", "co-F-QG"),
    ("gentle", "F-QG"),
    ("gentle", "CS"),
    ("SM+CS", "CS"),
    ("SM+CS", "SI"),
    ("n-shiny", "gentle"),
    ("shiny", "n-shiny"),
    ("shiny", "SM+CS"),
)

# Rules for n-decidability: which finite cardinalities k admit an exact
# "k in spectrum?" answer for every cube.
NDecRule = tuple  # ('all',) | ('geq', k) | ('except', frozenset) | ('only', frozenset) | ('none',)

# Rules for (co-)quasi-gentleness, evaluated against a concrete filter.
FilterRule = tuple  # ('all',) | ('set-in-filter', set) | ('complement-not-in-filter', set) | ('none',)


def _eval_ndec(rule: NDecRule, k: int) -> bool:
    kind = rule[0]
    if kind == "all":
        return True
    if kind == "geq":
        return k >= rule[1]
    if kind == "except":
        return k not in rule[1]
    if kind == "only":
        return k in rule[1]
    return False


def _eval_filter_rule(rule: FilterRule, filt: FreeFilter) -> bool:
    kind = rule[0]
    if kind == "all":
        return True
    if kind == "set-in-filter":
        return filt.member(rule[1]) == YES
    if kind == "complement-not-in-filter":
        return filt.member(rule[1].complement()) == NO
    return False


@dataclass(frozen=True)
class PropertyCertificate:
    cfs: bool = False
    infinitely_decidable: bool = False
    stably_infinite: bool = False
    smooth: bool = False
    fmp: bool = False
    minmod_computable: bool = False
    gentle: bool = False
    shiny: bool = False
    never_infinite: bool = False
    finitely_witnessable: bool = False
    n_shiny_param: int | None = None
    n_decidable_rule: NDecRule = ("none",)
    fqg_rule: FilterRule = ("none",)
    cofqg_rule: FilterRule = ("none",)

    # -- derived classes -----------------------------------------------

    @property
    def cs(self) -> bool:
        return self.cfs and self.infinitely_decidable

    @property
    def sm_cs(self) -> bool:
        return self.smooth and self.cs

    @property
    def polite(self) -> bool:
        return self.smooth and self.finitely_witnessable

    def is_n_decidable(self, k: int) -> bool:
        return self.cfs or _eval_ndec(self.n_decidable_rule, k)

    def is_n_shiny(self, n: int) -> bool:
        return self.shiny or self.n_shiny_param == n

    def is_fqg(self, filt: FreeFilter) -> bool:
        return self.gentle or _eval_filter_rule(self.fqg_rule, filt)

    def is_cofqg(self, filt: FreeFilter) -> bool:
        return self.is_fqg(filt) or _eval_filter_rule(self.cofqg_rule, filt)

    def member(self, cls: str, *, n: int | None = None, filt: FreeFilter | None = None) -> bool:
        """Membership of this theory in a lattice class."""
        if cls == "decidable":
            return True
        if cls == "n-decidable":
            assert n is not None
            return self.is_n_decidable(n)
        if cls == "CFS":
            return self.cfs
        if cls == "ID":
            return self.infinitely_decidable
        if cls == "co-F-QG":
            assert filt is not None
            return self.is_cofqg(filt)
        if cls == "CS":
            return self.cs
        if cls == "SI":
            return self.stably_infinite
        if cls == "F-QG":
            assert filt is not None
            return self.is_fqg(filt)
        if cls == "gentle":
            return self.gentle
        if cls == "SM+CS":
            return self.sm_cs
        if cls == "n-shiny":
            assert n is not None
            return self.is_n_shiny(n)
        if cls == "shiny":
            return self.shiny
        raise ValueError(f"unknown class {cls!r}")

    def flags_json(self) -> dict:
        return {
            "cfs": self.cfs,
            "id": self.infinitely_decidable,
            "cs": self.cs,
            "si": self.stably_infinite,
            "smooth": self.smooth,
            "fmp": self.fmp,
            "minmod_computable": self.minmod_computable,
            "gentle": self.gentle,
            "sm_cs": self.sm_cs,
            "shiny": self.shiny,
            "never_infinite": self.never_infinite,
            "n_shiny": self.n_shiny_param,
            "n_decidable": list(map(str, self.n_decidable_rule)),
            "fqg": self.fqg_rule[0],
            "cofqg": self.cofqg_rule[0],
        }


class CertificateViolation(ValueError):
    """An explicit flag contradicts a lattice implication."""


def certificate(
    *,
    cfs: bool | None = None,
    infinitely_decidable: bool | None = None,
    stably_infinite: bool | None = None,
    smooth: bool | None = None,
    fmp: bool | None = None,
    minmod_computable: bool | None = None,
    gentle: bool | None = None,
    shiny: bool = False,
    never_infinite: bool = False,
    finitely_witnessable: bool = False,
    n_shiny_param: int | None = None,
    n_decidable_rule: NDecRule | None = None,
    fqg_rule: FilterRule | None = None,
    cofqg_rule: FilterRule | None = None,
) -> PropertyCertificate:
    """Build a certificate, closing it under the lattice implications.

    ``None`` means "derive"; an explicit ``False`` that an implication
    forces to ``True`` raises :class:`CertificateViolation`.
    """

    def force(name: str, explicit: bool | None, implied: bool) -> bool:
        if explicit is False and implied:
            raise CertificateViolation(f"{name} denied but implied by the lattice")
        return implied or bool(explicit)

    if shiny:
        smooth = force("smooth", smooth, True)
        fmp = force("fmp", fmp, True)
        minmod_computable = force("minmod_computable", minmod_computable, True)
    if n_shiny_param is not None or shiny:
        gentle = force("gentle", gentle, True)
    if never_infinite:
        if stably_infinite:
            raise CertificateViolation("never_infinite contradicts stable infiniteness")
        if smooth:
            raise CertificateViolation("never_infinite contradicts smoothness")
        infinitely_decidable = force("infinitely_decidable", infinitely_decidable, True)
    if smooth:
        stably_infinite = force("stably_infinite", stably_infinite, True)
    if stably_infinite:
        infinitely_decidable = force("infinitely_decidable", infinitely_decidable, True)
    if gentle:
        cfs = force("cfs", cfs, True)
        infinitely_decidable = force("infinitely_decidable", infinitely_decidable, True)
        if fqg_rule == ("none",):
            raise CertificateViolation("gentle implies F-QG for every free filter")
        fqg_rule = ("all",)
    if fqg_rule is not None and fqg_rule != ("none",):
        if cofqg_rule == ("none",) and fqg_rule == ("all",):
            raise CertificateViolation("F-QG implies co-F-QG for the same filter")
        cfs = force("cfs", cfs, True)
    if cofqg_rule is not None and cofqg_rule != ("none",):
        cfs = force("cfs", cfs, True)

    return PropertyCertificate(
        cfs=bool(cfs),
        infinitely_decidable=bool(infinitely_decidable),
        stably_infinite=bool(stably_infinite),
        smooth=bool(smooth),
        fmp=bool(fmp),
        minmod_computable=bool(minmod_computable),
        gentle=bool(gentle),
        shiny=shiny,
        never_infinite=never_infinite,
        finitely_witnessable=finitely_witnessable,
        n_shiny_param=n_shiny_param,
        n_decidable_rule=n_decidable_rule or ("none",),
        fqg_rule=fqg_rule or ("none",),
        cofqg_rule=cofqg_rule or ("none",),
    )
