"""The built-in theory catalog.

Each theory constrains finite domain cardinalities through indexed
nullary predicates (or not at all, for the empty-signature theories).
Decision and spectrum procedures are the exact closed forms induced by
the axioms; the model checkers back the independent brute-force oracle.

Theories parameterized by an undecidable tag set take a decidable
stand-in (default: the odd numbers) that only the model checker reads;
decision procedures stay tag-blind, which keeps them faithful to their
capability certificates.
"""

from __future__ import annotations

from .errors import CapabilityMissing, IterationCapExceeded, SignatureError
from .formulas import Cube, PredicateId, Signature
from .properties import certificate
from .sets import (
    ALEPH0,
    Card,
    EvPeriodicSet,
    empty_set,
    finite_set,
    interval,
    upfrom,
)
from .spectra import DEFAULT_ITERATION_CAP, ExactSpectrum
from .theories import (
    DEFAULT_U_STANDIN,
    FOracle,
    FormulaEnumeration,
    Theory,
    exclusive_positive,
    identity_oracle,
    minmod_equalities,
)


def _require_int_indices(theory: Theory, cube: Cube, allow_inf: bool = False):
    for pid in (l.pred for l in cube.pred_literals()):
        for ix in pid.indices:
            if ix == "inf" and not allow_inf:
                raise SignatureError(f"{theory.name} has no infinite-index predicate {pid}")


def _empty_spectrum() -> ExactSpectrum:
    return ExactSpectrum(empty_set(), False)


class EqualityTheory(Theory):
    """Free equality over the empty signature; every consistent cube has
    models of all sizes from its minimum up, including infinite ones."""

    def __init__(self):
        self.name = "T_eq"
        self.signature = Signature(frozenset())
        self.certificate = certificate(shiny=True)

    def decide_cube(self, cube: Cube) -> bool:
        self.check_owned(cube)
        return minmod_equalities(cube) is not None

    def spec_finite(self, cube: Cube, k: int) -> bool:
        self.check_owned(cube)
        mm = minmod_equalities(cube)
        return mm is not None and k >= mm

    def spec_inf(self, cube: Cube) -> bool:
        return self.decide_cube(cube)

    def exact_spectrum(self, cube: Cube) -> ExactSpectrum:
        mm = minmod_equalities(cube)
        if mm is None:
            return _empty_spectrum()
        return ExactSpectrum(upfrom(mm), True)

    def minmod_cube(self, cube: Cube) -> Card | None:
        return minmod_equalities(cube)

    def nshiny_classify(self, cube: Cube):
        mm = minmod_equalities(cube)
        return None if mm is None else (2, mm)

    def cube_spectrum_exact(self, cube: Cube):
        return self.exact_spectrum(cube)

    def model_check(self, size, true_preds):
        return not true_preds


class InfiniteOnlyTheory(Theory):
    """Empty signature, models forced infinite; spectra are {inf} or empty."""

    def __init__(self):
        self.name = "T_inf"
        self.signature = Signature(frozenset())
        self.certificate = certificate(cfs=True, smooth=True)

    def decide_cube(self, cube: Cube) -> bool:
        self.check_owned(cube)
        return minmod_equalities(cube) is not None

    def spec_finite(self, cube: Cube, k: int) -> bool:
        self.check_owned(cube)
        return False

    def spec_inf(self, cube: Cube) -> bool:
        return self.decide_cube(cube)

    def minmod_cube(self, cube: Cube) -> Card | None:
        return ALEPH0 if self.decide_cube(cube) else None

    def infinite_only(self, cube: Cube) -> bool:
        return self.decide_cube(cube)

    def cube_spectrum_exact(self, cube: Cube):
        return ExactSpectrum(empty_set(), self.decide_cube(cube))

    def model_check(self, size, true_preds):
        return False


class ExactSizeTheory(Theory):
    """Empty signature, all models of one fixed size."""

    def __init__(self, n: int):
        if n < 1:
            raise ValueError("size must be positive")
        self.n = n
        self.name = f"T_eq_{n}"
        self.signature = Signature(frozenset())
        self.certificate = certificate(never_infinite=True, cfs=True, n_shiny_param=n)

    def decide_cube(self, cube: Cube) -> bool:
        self.check_owned(cube)
        mm = minmod_equalities(cube)
        return mm is not None and mm <= self.n

    def spec_finite(self, cube: Cube, k: int) -> bool:
        return k == self.n and self.decide_cube(cube)

    def spec_inf(self, cube: Cube) -> bool:
        self.check_owned(cube)
        return False

    def exact_spectrum(self, cube: Cube) -> ExactSpectrum:
        if not self.decide_cube(cube):
            return _empty_spectrum()
        return ExactSpectrum(finite_set([self.n]), False)

    def minmod_cube(self, cube: Cube) -> Card | None:
        return self.n if self.decide_cube(cube) else None

    def nshiny_classify(self, cube: Cube):
        return (0, self.n) if self.decide_cube(cube) else None

    def cube_spectrum_exact(self, cube: Cube):
        return self.exact_spectrum(cube)

    def model_check(self, size, true_preds):
        return size == self.n and not true_preds


class MaxSizeTheory(Theory):
    """Empty signature, models capped at n elements; spectra are intervals."""

    def __init__(self, n: int):
        if n < 1:
            raise ValueError("size cap must be positive")
        self.n = n
        self.name = f"T_leq_{n}"
        self.signature = Signature(frozenset())
        self.certificate = certificate(
            never_infinite=True,
            cfs=True,
            gentle=True,
            n_shiny_param=1 if n == 1 else None,
        )

    def decide_cube(self, cube: Cube) -> bool:
        self.check_owned(cube)
        mm = minmod_equalities(cube)
        return mm is not None and mm <= self.n

    def spec_finite(self, cube: Cube, k: int) -> bool:
        self.check_owned(cube)
        mm = minmod_equalities(cube)
        return mm is not None and mm <= k <= self.n

    def spec_inf(self, cube: Cube) -> bool:
        self.check_owned(cube)
        return False

    def exact_spectrum(self, cube: Cube) -> ExactSpectrum:
        mm = minmod_equalities(cube)
        if mm is None or mm > self.n:
            return _empty_spectrum()
        return ExactSpectrum(interval(mm, self.n), False)

    def minmod_cube(self, cube: Cube) -> Card | None:
        mm = minmod_equalities(cube)
        return mm if mm is not None and mm <= self.n else None

    def nshiny_classify(self, cube: Cube):
        if self.n != 1:
            raise CapabilityMissing(self.name, "nshiny_classify")
        return (0, 1) if self.decide_cube(cube) else None

    def cube_spectrum_exact(self, cube: Cube):
        return self.exact_spectrum(cube)

    def model_check(self, size, true_preds):
        return size <= self.n and not true_preds


class MinSizeTheory(Theory):
    """Empty signature, models of at least n elements; spectra are upward tails."""

    def __init__(self, n: int):
        if n < 1:
            raise ValueError("size floor must be positive")
        self.n = n
        self.name = f"T_geq_{n}"
        self.signature = Signature(frozenset())
        self.certificate = certificate(shiny=True)

    def _floor(self, cube: Cube) -> int | None:
        mm = minmod_equalities(cube)
        return None if mm is None else max(mm, self.n)

    def decide_cube(self, cube: Cube) -> bool:
        self.check_owned(cube)
        return self._floor(cube) is not None

    def spec_finite(self, cube: Cube, k: int) -> bool:
        self.check_owned(cube)
        fl = self._floor(cube)
        return fl is not None and k >= fl

    def spec_inf(self, cube: Cube) -> bool:
        return self.decide_cube(cube)

    def exact_spectrum(self, cube: Cube) -> ExactSpectrum:
        fl = self._floor(cube)
        if fl is None:
            return _empty_spectrum()
        return ExactSpectrum(upfrom(fl), True)

    def minmod_cube(self, cube: Cube) -> Card | None:
        return self._floor(cube)

    def nshiny_classify(self, cube: Cube):
        fl = self._floor(cube)
        return None if fl is None else (2, fl)

    def cube_spectrum_exact(self, cube: Cube):
        return self.exact_spectrum(cube)

    def model_check(self, size, true_preds):
        return size >= self.n and not true_preds


class SizePinTheory(Theory):
    """Indexed predicates where P_k pins the domain size to exactly k.

    Positive-P cubes have singleton spectra; predicate-free cubes keep
    the full tail above their equality minimum, so every spectrum is
    finite or cofinite and the theory is gentle.
    """

    def __init__(self, family: str = "P"):
        self.family = family
        self.name = "T_eq_P" if family == "P" else f"T_eq_P[{family}]"
        self.signature = Signature(frozenset({(family, 1)}))
        self.certificate = certificate(gentle=True)

    def _split(self, cube: Cube):
        self.check_owned(cube)
        _require_int_indices(self, cube)
        ok, pos = exclusive_positive(cube)
        mm = minmod_equalities(cube) if ok else None
        return ok, pos, mm

    def decide_cube(self, cube: Cube) -> bool:
        ok, pos, mm = self._split(cube)
        if not ok or mm is None:
            return False
        return mm <= pos.indices[0] if pos else True

    def spec_finite(self, cube: Cube, k: int) -> bool:
        ok, pos, mm = self._split(cube)
        if not ok or mm is None:
            return False
        if pos:
            return k == pos.indices[0] and mm <= k
        return k >= mm

    def spec_inf(self, cube: Cube) -> bool:
        ok, pos, mm = self._split(cube)
        return ok and mm is not None and pos is None

    def exact_spectrum(self, cube: Cube) -> ExactSpectrum:
        ok, pos, mm = self._split(cube)
        if not ok or mm is None:
            return _empty_spectrum()
        if pos:
            n = pos.indices[0]
            return ExactSpectrum(finite_set([n]) if mm <= n else empty_set(), False)
        return ExactSpectrum(upfrom(mm), True)

    def minmod_cube(self, cube: Cube) -> Card | None:
        ok, pos, mm = self._split(cube)
        if not ok or mm is None:
            return None
        if pos:
            return pos.indices[0] if mm <= pos.indices[0] else None
        return mm

    def cube_spectrum_exact(self, cube: Cube):
        return self.exact_spectrum(cube)

    def model_check(self, size, true_preds):
        return all(pid.indices[0] == size for pid in true_preds)


class BigModelTagTheory(Theory):
    """Predicates tagged by an undecidable set force more than n elements.

    Smooth and stably infinite; finite spectrum membership below n+1
    depends on the tag set, so those queries are withheld.
    """

    def __init__(self, n: int, family: str = "P", u_standin: EvPeriodicSet | None = None):
        if n < 1:
            raise ValueError("threshold must be positive")
        self.n = n
        self.family = family
        self.u_standin = u_standin if u_standin is not None else DEFAULT_U_STANDIN
        self.name = f"T_gt_{n}_P" if family == "P" else f"T_gt_{n}_P[{family}]"
        self.signature = Signature(frozenset({(family, 1)}))
        self.certificate = certificate(
            smooth=True, fmp=True, finitely_witnessable=True
        )

    def _split(self, cube: Cube):
        self.check_owned(cube)
        _require_int_indices(self, cube)
        ok, pos = exclusive_positive(cube)
        mm = minmod_equalities(cube) if ok else None
        return ok, pos, mm

    def decide_cube(self, cube: Cube) -> bool:
        ok, _, mm = self._split(cube)
        return ok and mm is not None

    def spec_finite(self, cube: Cube, k: int) -> bool:
        ok, pos, mm = self._split(cube)
        if not ok or mm is None or k < mm:
            return False
        if pos and k <= self.n:
            raise CapabilityMissing(
                self.name, "spec_finite", f"membership of {k} depends on the tag set"
            )
        return True

    def spec_inf(self, cube: Cube) -> bool:
        return self.decide_cube(cube)

    def minmod_cube(self, cube: Cube) -> Card | None:
        ok, pos, mm = self._split(cube)
        if not ok or mm is None or pos:
            return None
        return mm

    def cube_spectrum_exact(self, cube: Cube):
        ok, pos, mm = self._split(cube)
        if not ok or mm is None:
            return _empty_spectrum()
        if pos:
            return None
        return ExactSpectrum(upfrom(mm), True)

    def model_check(self, size, true_preds):
        if len(true_preds) > 1:
            return False
        for pid in true_preds:
            if self.u_standin.contains(pid.indices[0]) and size <= self.n:
                return False
        return True


class TwoSizeTheory(Theory):
    """Models of exactly m or n elements; tagged predicates force n.

    Finite membership at the lower size m is withheld on positive cubes
    (it would need the tag set); everything else is exact.
    """

    def __init__(self, m: int, n: int, family: str = "P", u_standin: EvPeriodicSet | None = None):
        if not (1 <= m < n):
            raise ValueError("need 1 <= m < n")
        self.m, self.n = m, n
        self.family = family
        self.u_standin = u_standin if u_standin is not None else DEFAULT_U_STANDIN
        self.name = f"T_mn_{m}_{n}" if family == "P" else f"T_mn_{m}_{n}[{family}]"
        self.signature = Signature(frozenset({(family, 1)}))
        self.certificate = certificate(
            never_infinite=True, n_decidable_rule=("except", frozenset({m}))
        )

    def _split(self, cube: Cube):
        self.check_owned(cube)
        _require_int_indices(self, cube)
        ok, pos = exclusive_positive(cube)
        mm = minmod_equalities(cube) if ok else None
        return ok, pos, mm

    def decide_cube(self, cube: Cube) -> bool:
        ok, _, mm = self._split(cube)
        return ok and mm is not None and mm <= self.n

    def spec_finite(self, cube: Cube, k: int) -> bool:
        ok, pos, mm = self._split(cube)
        if not ok or mm is None:
            return False
        if k == self.n:
            return mm <= self.n
        if k == self.m:
            if mm > self.m:
                return False
            if pos:
                raise CapabilityMissing(
                    self.name,
                    "spec_finite",
                    f"membership of the lower size {self.m} depends on the tag set",
                )
            return True
        return False

    def spec_inf(self, cube: Cube) -> bool:
        self.check_owned(cube)
        return False

    def minmod_cube(self, cube: Cube) -> Card | None:
        ok, pos, mm = self._split(cube)
        if not ok or mm is None or mm > self.n:
            return None
        if pos:
            return None  # m-or-n depends on the tag set
        return self.m if mm <= self.m else self.n

    def cube_spectrum_exact(self, cube: Cube):
        ok, pos, mm = self._split(cube)
        if not ok or mm is None:
            return _empty_spectrum()
        if pos:
            return None
        members = [s for s in (self.m, self.n) if s >= mm]
        return ExactSpectrum(finite_set(members), False)

    def model_check(self, size, true_preds):
        if size not in (self.m, self.n) or len(true_preds) > 1:
            return False
        for pid in true_preds:
            if self.u_standin.contains(pid.indices[0]) and size != self.n:
                return False
        return True


class SizeCapTheory(Theory):
    """P_k caps the domain at F(k) elements; finite sizes confined to S.

    S is an infinite eventually periodic set; F is only reachable through
    its geq oracle, so infinite membership of positive cubes is withheld.
    Quasi-gentle for filters containing S, co-quasi-gentle for filters
    avoiding S's complement.
    """

    def __init__(
        self,
        s: EvPeriodicSet,
        f: FOracle | None = None,
        family: str = "P",
        cap: int = DEFAULT_ITERATION_CAP,
    ):
        if not s.is_infinite():
            raise ValueError("the size set must be infinite")
        self.s = s
        self.f = f if f is not None else identity_oracle()
        self.family = family
        self.cap = cap
        tag = s.to_literal()
        self.name = f"T_leq_S({tag})" if family == "P" else f"T_leq_S({tag})[{family}]"
        self.signature = Signature(frozenset({(family, 1)}))
        self.certificate = certificate(
            cfs=True,
            fqg_rule=("set-in-filter", s),
            cofqg_rule=("complement-not-in-filter", s),
        )

    def _split(self, cube: Cube):
        self.check_owned(cube)
        _require_int_indices(self, cube)
        ok, pos = exclusive_positive(cube)
        mm = minmod_equalities(cube) if ok else None
        return ok, pos, mm

    def decide_cube(self, cube: Cube) -> bool:
        ok, pos, mm = self._split(cube)
        if not ok or mm is None:
            return False
        if pos is None:
            return True
        j = pos.indices[0]
        i = mm
        while self.f.geq(j, i):
            if self.s.contains(i):
                return True
            i += 1
            if i - mm > self.cap:
                raise IterationCapExceeded("size-cap satisfiability scan", self.cap)
        return False

    def spec_finite(self, cube: Cube, k: int) -> bool:
        ok, pos, mm = self._split(cube)
        if not ok or mm is None or k < mm or not self.s.contains(k):
            return False
        return self.f.geq(pos.indices[0], k) if pos else True

    def spec_inf(self, cube: Cube) -> bool:
        ok, pos, mm = self._split(cube)
        if not ok or mm is None:
            return False
        if pos:
            raise CapabilityMissing(
                self.name, "spec_inf", "depends on whether the cap is finite"
            )
        return True

    def minmod_cube(self, cube: Cube) -> Card | None:
        ok, pos, mm = self._split(cube)
        if not ok or mm is None:
            return None
        if pos is None:
            first = self.s.intersect(upfrom(mm)).min_element()
            return first  # infinite S always has one
        return None  # bounded by F; the view searches via spec_finite

    def cube_spectrum_exact(self, cube: Cube):
        ok, pos, mm = self._split(cube)
        if not ok or mm is None:
            return _empty_spectrum()
        if pos:
            return None
        return ExactSpectrum(self.s.intersect(upfrom(mm)), True)

    def model_check(self, size, true_preds):
        if not self.s.contains(size) or len(true_preds) > 1:
            return False
        return all(self.f.geq(pid.indices[0], size) for pid in true_preds)


class GapIndexTheory(Theory):
    """P_(phi,i) pins the domain size to the i-th finite cardinality
    missing from an inner theory's spectrum of formula phi.

    The inner theory must have computable finite spectra; formulas are
    addressed by their 1-based position in the inner theory's canonical
    cube enumeration.  When the i-th gap does not exist (the inner
    spectrum misses fewer than i finite sizes) the predicate forces an
    infinite model.
    """

    def __init__(self, inner: Theory, family: str = "P", max_index: int = 3):
        if not inner.certificate.cfs:
            raise ValueError("inner theory must have computable finite spectra")
        self.inner = inner
        self.family = family
        self.enumeration = FormulaEnumeration(inner, max_index)
        self.name = f"Th_of({inner.name})" if family == "P" else f"Th_of({inner.name})[{family}]"
        self.signature = Signature(frozenset({(family, 2)}))
        self.certificate = certificate(cfs=True)
        self._names: dict[str, int] = {}
        self._register_names()

    def _register_names(self):
        # Friendly references for the inner theory's bare predicates:
        # "Q" is the cube {Q}, "NOTQ" the cube {~Q}.
        from .formulas import PredicateLiteral

        for fam, arity in sorted(self.inner.signature.families):
            if arity != 0:
                continue
            pid = PredicateId(fam, ())
            self._names[fam.upper()] = self.enumeration.id_of(Cube((PredicateLiteral(pid, True),)))
            self._names["NOT" + fam.upper()] = self.enumeration.id_of(
                Cube((PredicateLiteral(pid, False),))
            )

    def resolver(self, name: str) -> int:
        return self._names[name]

    def inner_cube(self, fid: int) -> Cube:
        return self.enumeration.cube(fid)

    def _is_nth_gap(self, fid: int, n: int, k: int) -> bool:
        phi = self.inner_cube(fid)
        if self.inner.spec_finite(phi, k):
            return False
        gaps = sum(1 for j in range(1, k + 1) if not self.inner.spec_finite(phi, j))
        return gaps == n

    def _gap_value(self, fid: int, n: int) -> Card | None:
        """Exact gap value when the inner theory materializes spectra;
        None when that knowledge is unavailable."""
        phi = self.inner_cube(fid)
        exact = self.inner.cube_spectrum_exact(phi)
        if exact is None:
            return None
        v = exact.finite_part.nth_excluded(n)
        return ALEPH0 if v is None else v

    def _split(self, cube: Cube):
        self.check_owned(cube)
        _require_int_indices(self, cube)
        ok, pos = exclusive_positive(cube)
        mm = minmod_equalities(cube) if ok else None
        return ok, pos, mm

    def decide_cube(self, cube: Cube) -> bool:
        ok, pos, mm = self._split(cube)
        if not ok or mm is None:
            return False
        if pos is None:
            return True
        fid, n = pos.indices
        return not any(self._is_nth_gap(fid, n, m) for m in range(1, mm))

    def spec_finite(self, cube: Cube, k: int) -> bool:
        ok, pos, mm = self._split(cube)
        if not ok or mm is None or k < mm:
            return False
        if pos is None:
            return True
        fid, n = pos.indices
        return self._is_nth_gap(fid, n, k)

    def spec_inf(self, cube: Cube) -> bool:
        ok, pos, mm = self._split(cube)
        if not ok or mm is None:
            return False
        if pos:
            raise CapabilityMissing(
                self.name, "spec_inf", "the gap may or may not exist"
            )
        return True

    def minmod_cube(self, cube: Cube) -> Card | None:
        ok, pos, mm = self._split(cube)
        if not ok or mm is None:
            return None
        if pos is None:
            return mm
        return None  # the view searches via spec_finite / the infinite hint

    def infinite_only(self, cube: Cube) -> bool:
        ok, pos, _ = self._split(cube)
        if not ok or pos is None or not self.decide_cube(cube):
            return False
        return self._gap_value(*pos.indices) is ALEPH0

    def cube_spectrum_exact(self, cube: Cube):
        ok, pos, mm = self._split(cube)
        if not ok or mm is None:
            return _empty_spectrum()
        if pos is None:
            return ExactSpectrum(upfrom(mm), True)
        v = self._gap_value(*pos.indices)
        if v is None:
            return None
        if v is ALEPH0:
            return ExactSpectrum(empty_set(), True)
        return ExactSpectrum(finite_set([v]) if v >= mm else empty_set(), False)

    def model_check(self, size, true_preds):
        if len(true_preds) > 1:
            return False
        for pid in true_preds:
            fid, n = pid.indices
            if not self._is_nth_gap(fid, n, size):
                return False
        return True

    def sample_pred(self, rng):
        # Small formula ids keep the inner enumeration cheap.
        return PredicateId(self.family, (rng.randint(1, 6), rng.randint(1, 4)))


class MixedTagTheory(Theory):
    """Odd-indexed tagged predicates force more than n elements; even
    indices 2k cap the domain at F(k); index 1 is unconstrained.

    Decidable, and k-decidable exactly for k above the threshold.
    """

    def __init__(
        self,
        n: int,
        f: FOracle | None = None,
        family: str = "P",
        u_standin: EvPeriodicSet | None = None,
    ):
        if n < 1:
            raise ValueError("threshold must be positive")
        self.n = n
        self.f = f if f is not None else identity_oracle()
        self.u_standin = u_standin if u_standin is not None else DEFAULT_U_STANDIN
        self.family = family
        self.name = f"T_d_{n}" if family == "P" else f"T_d_{n}[{family}]"
        self.signature = Signature(frozenset({(family, 1)}))
        self.certificate = certificate(n_decidable_rule=("geq", n + 1))

    def _split(self, cube: Cube):
        self.check_owned(cube)
        _require_int_indices(self, cube)
        ok, pos = exclusive_positive(cube)
        mm = minmod_equalities(cube) if ok else None
        return ok, pos, mm

    def decide_cube(self, cube: Cube) -> bool:
        ok, pos, mm = self._split(cube)
        if not ok or mm is None:
            return False
        if pos and pos.indices[0] % 2 == 0:
            return self.f.geq(pos.indices[0] // 2, mm)
        return True

    def spec_finite(self, cube: Cube, k: int) -> bool:
        ok, pos, mm = self._split(cube)
        if not ok or mm is None or k < mm:
            return False
        if pos is None or pos.indices[0] == 1:
            return True
        j = pos.indices[0]
        if j % 2 == 0:
            return self.f.geq(j // 2, k)
        if k <= self.n:
            raise CapabilityMissing(
                self.name, "spec_finite", f"membership of {k} depends on the tag set"
            )
        return True

    def spec_inf(self, cube: Cube) -> bool:
        ok, pos, mm = self._split(cube)
        if not ok or mm is None:
            return False
        if pos and pos.indices[0] % 2 == 0 and pos.indices[0] >= 2:
            raise CapabilityMissing(self.name, "spec_inf", "depends on whether the cap is finite")
        return True

    def minmod_cube(self, cube: Cube) -> Card | None:
        ok, pos, mm = self._split(cube)
        if not ok or mm is None:
            return None
        if pos is None or pos.indices[0] == 1:
            return mm
        return None

    def cube_spectrum_exact(self, cube: Cube):
        ok, pos, mm = self._split(cube)
        if not ok or mm is None:
            return _empty_spectrum()
        if pos is None or pos.indices[0] == 1:
            return ExactSpectrum(upfrom(mm), True)
        return None

    def model_check(self, size, true_preds):
        if len(true_preds) > 1:
            return False
        for pid in true_preds:
            j = pid.indices[0]
            if j == 1:
                continue
            if j % 2 == 0:
                if not self.f.geq(j // 2, size):
                    return False
            elif self.u_standin.contains((j - 1) // 2) and size <= self.n:
                return False
        return True


class CapOrUnboundedTheory(Theory):
    """P_1 forces an infinite model; P_k for k >= 2 caps the domain at F(k).

    Computable finite spectra throughout, but infinite membership of
    capped cubes is withheld.
    """

    def __init__(self, f: FOracle | None = None, family: str = "P"):
        self.f = f if f is not None else identity_oracle()
        self.family = family
        self.name = "T_cfs" if family == "P" else f"T_cfs[{family}]"
        self.signature = Signature(frozenset({(family, 1)}))
        self.certificate = certificate(cfs=True)

    def _split(self, cube: Cube):
        self.check_owned(cube)
        _require_int_indices(self, cube)
        ok, pos = exclusive_positive(cube)
        mm = minmod_equalities(cube) if ok else None
        return ok, pos, mm

    def decide_cube(self, cube: Cube) -> bool:
        ok, pos, mm = self._split(cube)
        if not ok or mm is None:
            return False
        if pos and pos.indices[0] >= 2:
            return self.f.geq(pos.indices[0], mm)
        return True

    def spec_finite(self, cube: Cube, k: int) -> bool:
        ok, pos, mm = self._split(cube)
        if not ok or mm is None or k < mm:
            return False
        if pos is None:
            return True
        if pos.indices[0] == 1:
            return False
        return self.f.geq(pos.indices[0], k)

    def spec_inf(self, cube: Cube) -> bool:
        ok, pos, mm = self._split(cube)
        if not ok or mm is None:
            return False
        if pos and pos.indices[0] >= 2:
            raise CapabilityMissing(self.name, "spec_inf", "depends on whether the cap is finite")
        return True

    def minmod_cube(self, cube: Cube) -> Card | None:
        ok, pos, mm = self._split(cube)
        if not ok or mm is None:
            return None
        if pos is None:
            return mm
        if pos.indices[0] == 1:
            return ALEPH0
        return None

    def infinite_only(self, cube: Cube) -> bool:
        ok, pos, mm = self._split(cube)
        return ok and mm is not None and pos is not None and pos.indices[0] == 1

    def cube_spectrum_exact(self, cube: Cube):
        ok, pos, mm = self._split(cube)
        if not ok or mm is None:
            return _empty_spectrum()
        if pos is None:
            return ExactSpectrum(upfrom(mm), True)
        if pos.indices[0] == 1:
            return ExactSpectrum(empty_set(), True)
        return None

    def model_check(self, size, true_preds):
        if len(true_preds) > 1:
            return False
        for pid in true_preds:
            if pid.indices[0] == 1:
                return False
            if not self.f.geq(pid.indices[0], size):
                return False
        return True


class TaggedInfinityTheory(Theory):
    """Tagged predicates force infinite models; everything else is free.

    Stably infinite and smooth; finite spectrum membership of positive
    cubes is withheld (it is exactly the tag-set complement).
    """

    def __init__(self, family: str = "P", u_standin: EvPeriodicSet | None = None):
        self.family = family
        self.u_standin = u_standin if u_standin is not None else DEFAULT_U_STANDIN
        self.name = "T_si" if family == "P" else f"T_si[{family}]"
        self.signature = Signature(frozenset({(family, 1)}))
        self.certificate = certificate(stably_infinite=True, smooth=True)

    def _split(self, cube: Cube):
        self.check_owned(cube)
        _require_int_indices(self, cube)
        ok, pos = exclusive_positive(cube)
        mm = minmod_equalities(cube) if ok else None
        return ok, pos, mm

    def decide_cube(self, cube: Cube) -> bool:
        ok, _, mm = self._split(cube)
        return ok and mm is not None

    def spec_finite(self, cube: Cube, k: int) -> bool:
        ok, pos, mm = self._split(cube)
        if not ok or mm is None or k < mm:
            return False
        if pos:
            raise CapabilityMissing(self.name, "spec_finite", "depends on the tag set")
        return True

    def spec_inf(self, cube: Cube) -> bool:
        return self.decide_cube(cube)

    def minmod_cube(self, cube: Cube) -> Card | None:
        ok, pos, mm = self._split(cube)
        if not ok or mm is None or pos:
            return None
        return mm

    def cube_spectrum_exact(self, cube: Cube):
        ok, pos, mm = self._split(cube)
        if not ok or mm is None:
            return _empty_spectrum()
        if pos:
            return None
        return ExactSpectrum(upfrom(mm), True)

    def model_check(self, size, true_preds):
        if len(true_preds) > 1:
            return False
        return not any(self.u_standin.contains(pid.indices[0]) for pid in true_preds)


class SingletonOrInfiniteTheory(Theory):
    """A single bare predicate: true pins the domain to one element,
    false forces an infinite one."""

    def __init__(self, family: str = "P"):
        self.family = family
        self.name = "T_cs" if family == "P" else f"T_cs[{family}]"
        self.signature = Signature(frozenset({(family, 0)}))
        self.certificate = certificate(cfs=True, infinitely_decidable=True)
        self._pid = PredicateId(family, ())

    def _split(self, cube: Cube):
        self.check_owned(cube)
        if cube.contradictory:
            return False, None, None
        polarity = None
        for lit in cube.pred_literals():
            polarity = lit.positive
        return True, polarity, minmod_equalities(cube)

    def decide_cube(self, cube: Cube) -> bool:
        ok, polarity, mm = self._split(cube)
        if not ok or mm is None:
            return False
        return mm == 1 if polarity is True else True

    def spec_finite(self, cube: Cube, k: int) -> bool:
        ok, polarity, mm = self._split(cube)
        if not ok or mm is None or polarity is False:
            return False
        return k == 1 and mm == 1

    def spec_inf(self, cube: Cube) -> bool:
        ok, polarity, mm = self._split(cube)
        if not ok or mm is None:
            return False
        return polarity is not True

    def minmod_cube(self, cube: Cube) -> Card | None:
        ok, polarity, mm = self._split(cube)
        if not ok or mm is None:
            return None
        if polarity is True:
            return 1 if mm == 1 else None
        return 1 if mm == 1 and polarity is None else ALEPH0

    def infinite_only(self, cube: Cube) -> bool:
        ok, polarity, mm = self._split(cube)
        if not ok or mm is None:
            return False
        return polarity is False or (polarity is None and mm >= 2)

    def cube_spectrum_exact(self, cube: Cube):
        ok, polarity, mm = self._split(cube)
        if not ok or mm is None:
            return _empty_spectrum()
        one = finite_set([1]) if mm == 1 else empty_set()
        if polarity is True:
            return ExactSpectrum(one, False)
        if polarity is False:
            return ExactSpectrum(empty_set(), True)
        return ExactSpectrum(one, True)

    def model_check(self, size, true_preds):
        if self._pid in true_preds:
            return size == 1
        return False


class StepTheory(Theory):
    """A single bare predicate: true pins the size to `pin`, false keeps
    it at least `floor`.  With floor <= pin every cube spectrum is the
    singleton {pin} or an upward tail, which makes the theory pin-shiny.
    """

    def __init__(self, pin: int, floor: int, family: str = "P", name: str | None = None):
        if not (1 <= floor <= pin):
            raise ValueError("need 1 <= floor <= pin")
        self.pin = pin
        self.floor = floor
        self.family = family
        base = f"T_ns_{pin}" if pin == floor else f"T_step_{pin}_{floor}"
        self.name = name or (base if family == "P" else f"{base}[{family}]")
        self.signature = Signature(frozenset({(family, 0)}))
        self.certificate = certificate(cfs=True, n_shiny_param=pin)
        self._pid = PredicateId(family, ())

    def _split(self, cube: Cube):
        self.check_owned(cube)
        if cube.contradictory:
            return False, None, None
        polarity = None
        for lit in cube.pred_literals():
            polarity = lit.positive
        return True, polarity, minmod_equalities(cube)

    def decide_cube(self, cube: Cube) -> bool:
        ok, polarity, mm = self._split(cube)
        if not ok or mm is None:
            return False
        return mm <= self.pin if polarity is True else True

    def spec_finite(self, cube: Cube, k: int) -> bool:
        ok, polarity, mm = self._split(cube)
        if not ok or mm is None:
            return False
        hit_pin = k == self.pin and mm <= self.pin
        hit_tail = k >= max(mm, self.floor)
        if polarity is True:
            return hit_pin
        if polarity is False:
            return hit_tail
        return hit_pin or hit_tail

    def spec_inf(self, cube: Cube) -> bool:
        ok, polarity, mm = self._split(cube)
        if not ok or mm is None:
            return False
        return polarity is not True

    def exact_spectrum(self, cube: Cube) -> ExactSpectrum:
        ok, polarity, mm = self._split(cube)
        if not ok or mm is None:
            return _empty_spectrum()
        pin_part = finite_set([self.pin]) if mm <= self.pin else empty_set()
        tail = upfrom(max(mm, self.floor))
        if polarity is True:
            return ExactSpectrum(pin_part, False)
        if polarity is False:
            return ExactSpectrum(tail, True)
        return ExactSpectrum(pin_part.union(tail), True)

    def minmod_cube(self, cube: Cube) -> Card | None:
        ok, polarity, mm = self._split(cube)
        if not ok or mm is None:
            return None
        if polarity is True:
            return self.pin if mm <= self.pin else None
        return max(mm, self.floor)

    def nshiny_classify(self, cube: Cube):
        ok, polarity, mm = self._split(cube)
        if not ok or mm is None:
            return None
        if polarity is True:
            return (0, self.pin) if mm <= self.pin else None
        return (2, max(mm, self.floor))

    def cube_spectrum_exact(self, cube: Cube):
        return self.exact_spectrum(cube)

    def model_check(self, size, true_preds):
        if self._pid in true_preds:
            return size == self.pin
        return size >= self.floor


class OracleFloorTheory(Theory):
    """P_k forces at least F(k) elements; positive predicates may stack.

    Smooth with computable spectra, but no computable minimum model size
    (that would reveal whether a floor is finite).
    """

    def __init__(self, f: FOracle | None = None, family: str = "P"):
        self.f = f if f is not None else identity_oracle()
        self.family = family
        self.name = "T_geq_F" if family == "P" else f"T_geq_F[{family}]"
        self.signature = Signature(frozenset({(family, 1)}))
        self.certificate = certificate(cfs=True, smooth=True)

    def _split(self, cube: Cube):
        self.check_owned(cube)
        _require_int_indices(self, cube)
        if cube.contradictory:
            return False, (), None
        return True, cube.positive_preds(), minmod_equalities(cube)

    def decide_cube(self, cube: Cube) -> bool:
        ok, _, mm = self._split(cube)
        return ok and mm is not None

    def spec_finite(self, cube: Cube, k: int) -> bool:
        ok, pos, mm = self._split(cube)
        if not ok or mm is None or k < mm:
            return False
        return all(not self.f.geq(pid.indices[0], k + 1) for pid in pos)

    def spec_inf(self, cube: Cube) -> bool:
        return self.decide_cube(cube)

    def cube_spectrum_exact(self, cube: Cube):
        ok, pos, mm = self._split(cube)
        if not ok or mm is None:
            return _empty_spectrum()
        if pos:
            return None
        return ExactSpectrum(upfrom(mm), True)

    def model_check(self, size, true_preds):
        return all(not self.f.geq(pid.indices[0], size + 1) for pid in true_preds)


# -- composite test theories -------------------------------------------------

_COMPLETE_KINDS = ("shiny-complete", "SI-complete", "ID-complete", "CS-complete", "n-shiny-complete")


class CompositeTestTheory(Theory):
    """One decidable theory playing several test-theory roles at once.

    Families: ``P`` pins the size (optionally with an ``inf`` index
    forcing infinite models), ``Q`` caps it through the oracle, ``R``
    carries two-size constraints R_(i,j,k), and ``B`` carries tagged
    big-model constraints B_(n,k).  Distinct positive predicates exclude
    each other, so a cube's verdict dispatches on its single positive
    literal.
    """

    def __init__(
        self,
        kind: str,
        n: int | None = None,
        f: FOracle | None = None,
        u_standin: EvPeriodicSet | None = None,
    ):
        if kind not in _COMPLETE_KINDS:
            raise ValueError(f"unknown complete-theory kind {kind!r}")
        self.kind = kind
        self.n = n
        self.f = f if f is not None else identity_oracle()
        self.u_standin = u_standin if u_standin is not None else DEFAULT_U_STANDIN
        fams: set[tuple[str, int]] = set()
        self.allow_inf = False
        if kind == "shiny-complete":
            fams = {("P", 1), ("Q", 1), ("R", 3)}
            cert = certificate()
        elif kind == "SI-complete":
            fams = {("B", 2)}
            cert = certificate(stably_infinite=True, smooth=True, fmp=True)
        elif kind == "ID-complete":
            fams = {("P", 1), ("R", 3)}
            cert = certificate(infinitely_decidable=True)
        elif kind == "CS-complete":
            fams = {("P", 1)}
            self.allow_inf = True
            cert = certificate(cfs=True, infinitely_decidable=True)
        else:  # n-shiny-complete
            if n is None or n < 1:
                raise ValueError("n-shiny-complete needs a positive n")
            fams = {("P", 1), ("Q", 1), ("R", 3)}
            cert = certificate(n_decidable_rule=("only", frozenset({n})))
        if kind == "n-shiny-complete":
            self.name = f"complete_nshiny_{n}"
        else:
            self.name = f"complete_{kind.split('-')[0].lower()}"
        self.signature = Signature(frozenset(fams))
        self.certificate = cert

    def _validate_pred(self, pid: PredicateId):
        if pid.family == "R":
            i, j, _ = pid.indices
            if not (isinstance(i, int) and isinstance(j, int) and i < j):
                raise SignatureError(f"{self.name}: two-size predicate needs i < j, got {pid}")
            if self.kind == "n-shiny-complete" and i == self.n:
                raise SignatureError(f"{self.name}: lower size {i} is excluded")
        for ix in pid.indices:
            if ix == "inf" and not (self.allow_inf and pid.family == "P"):
                raise SignatureError(f"{self.name}: no infinite index on {pid}")

    def _split(self, cube: Cube):
        self.check_owned(cube)
        for lit in cube.pred_literals():
            self._validate_pred(lit.pred)
        ok, pos = exclusive_positive(cube)
        mm = minmod_equalities(cube) if ok else None
        return ok, pos, mm

    def decide_cube(self, cube: Cube) -> bool:
        ok, pos, mm = self._split(cube)
        if not ok or mm is None:
            return False
        if pos is None:
            return True
        if pos.family == "P":
            idx = pos.indices[0]
            return True if idx == "inf" else mm <= idx
        if pos.family == "Q":
            return self.f.geq(pos.indices[0], mm)
        if pos.family == "R":
            return mm <= pos.indices[1]
        return True  # B: a big enough model always exists

    def spec_finite(self, cube: Cube, k: int) -> bool:
        ok, pos, mm = self._split(cube)
        if not ok or mm is None or k < mm:
            return False
        if pos is None:
            return True
        if pos.family == "P":
            idx = pos.indices[0]
            return False if idx == "inf" else k == idx
        if pos.family == "Q":
            return self.f.geq(pos.indices[0], k)
        if pos.family == "R":
            i, j, _ = pos.indices
            if k == j:
                return True
            if k == i:
                raise CapabilityMissing(
                    self.name, "spec_finite", f"membership of the lower size {i} depends on the tag set"
                )
            return False
        if k <= pos.indices[0]:  # B_(n,tag) below its threshold
            raise CapabilityMissing(
                self.name, "spec_finite", f"membership of {k} depends on the tag set"
            )
        return True

    def spec_inf(self, cube: Cube) -> bool:
        ok, pos, mm = self._split(cube)
        if not ok or mm is None:
            return False
        if pos is None:
            return True
        if pos.family == "P":
            return pos.indices[0] == "inf"
        if pos.family == "Q":
            raise CapabilityMissing(self.name, "spec_inf", "depends on whether the cap is finite")
        if pos.family == "R":
            return False
        return True  # B is stably infinite

    def infinite_only(self, cube: Cube) -> bool:
        ok, pos, mm = self._split(cube)
        if not ok or mm is None or pos is None:
            return False
        return pos.family == "P" and pos.indices[0] == "inf"

    def minmod_cube(self, cube: Cube) -> Card | None:
        ok, pos, mm = self._split(cube)
        if not ok or mm is None:
            return None
        if pos is None:
            return mm
        if pos.family == "P":
            idx = pos.indices[0]
            if idx == "inf":
                return ALEPH0
            return idx if mm <= idx else None
        return None

    def sample_pred(self, rng):
        fams = sorted(self.signature.families)
        fam, arity = rng.choice(fams)
        bound = self.sample_index_bound
        if fam == "P":
            if self.allow_inf and rng.random() < 0.25:
                return PredicateId("P", ("inf",))
            return PredicateId("P", (rng.randint(1, bound),))
        if fam == "Q":
            return PredicateId("Q", (rng.randint(1, bound),))
        if fam == "B":
            return PredicateId("B", (rng.randint(1, 3), rng.randint(1, 9)))
        choices = [
            (i, j)
            for i in range(1, bound)
            for j in range(i + 1, bound + 1)
            if not (self.kind == "n-shiny-complete" and i == self.n)
        ]
        i, j = rng.choice(choices)
        return PredicateId("R", (i, j, rng.randint(1, 9)))

    def model_check(self, size, true_preds):
        if len(true_preds) > 1:
            return False
        for pid in true_preds:
            self._validate_pred(pid)
            if pid.family == "P":
                idx = pid.indices[0]
                if idx == "inf" or size != idx:
                    return False
            elif pid.family == "Q":
                if not self.f.geq(pid.indices[0], size):
                    return False
            elif pid.family == "R":
                i, j, tag = pid.indices
                if size not in (i, j):
                    return False
                if self.u_standin.contains(tag) and size != j:
                    return False
            else:  # B_(n, tag)
                thresh, tag = pid.indices
                if self.u_standin.contains(tag) and size <= thresh:
                    return False
        return True


def make_complete_theory(
    kind: str,
    n: int | None = None,
    f: FOracle | None = None,
    u_standin: EvPeriodicSet | None = None,
) -> CompositeTestTheory:
    """Build one of the composite test theories by role name."""
    return CompositeTestTheory(kind, n=n, f=f, u_standin=u_standin)


def toy_inner_theory() -> StepTheory:
    """The worked-example inner theory: Q pins the size to 4, its negation
    keeps the domain at 3 or more."""
    return StepTheory(pin=4, floor=3, family="Q", name="toy")


def witness_tgtnp(theory: BigModelTagTheory, cube: Cube) -> Cube:
    """Witness transform for the big-model-tag theory: conjoin threshold+1
    fresh self-equalities, enough for a satisfiable output to have a model
    carried entirely by its own variables even when the tag forces more
    than `threshold` elements."""
    from .theories import witness_with_self_equalities

    if not isinstance(theory, BigModelTagTheory):
        raise ValueError("witness transform is specific to the big-model-tag theory")
    return witness_with_self_equalities(theory, cube, theory.n + 1)


def default_catalog(u_standin: EvPeriodicSet | None = None) -> list[Theory]:
    """The standard theory lineup used by the CLI and the test suites."""
    from .sets import evens

    u = u_standin if u_standin is not None else DEFAULT_U_STANDIN
    f = identity_oracle()
    return [
        EqualityTheory(),
        InfiniteOnlyTheory(),
        ExactSizeTheory(3),
        ExactSizeTheory(5),
        MaxSizeTheory(3),
        MinSizeTheory(2),
        SizePinTheory(),
        BigModelTagTheory(2, u_standin=u),
        TwoSizeTheory(2, 5, u_standin=u),
        TwoSizeTheory(4, 5, u_standin=u),
        SizeCapTheory(evens(), f),
        SizeCapTheory(upfrom(1), f),
        GapIndexTheory(toy_inner_theory()),
        MixedTagTheory(4, f, u_standin=u),
        MixedTagTheory(3, f, u_standin=u),
        CapOrUnboundedTheory(f),
        TaggedInfinityTheory(u_standin=u),
        SingletonOrInfiniteTheory(),
        StepTheory(4, 4),
        toy_inner_theory(),
        OracleFloorTheory(f),
        make_complete_theory("shiny-complete", u_standin=u),
        make_complete_theory("SI-complete", u_standin=u),
        make_complete_theory("ID-complete", u_standin=u),
        make_complete_theory("CS-complete"),
        make_complete_theory("n-shiny-complete", n=4, u_standin=u),
    ]
