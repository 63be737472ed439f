"""Capability-gated access to cube spectra.

The spectrum of a cube in a theory is the set of domain cardinalities
(finite or countably infinite) of its models.  A :class:`SpectrumView`
binds a theory and a cube and exposes exactly the queries the theory's
certificate supports; asking for more raises
:class:`~combinekit.errors.CapabilityMissing` instead of guessing.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import TYPE_CHECKING

from .errors import CapabilityMissing, IterationCapExceeded
from .sets import ALEPH0, Card, EvPeriodicSet, is_finite_card

if TYPE_CHECKING:  # pragma: no cover
    from .formulas import Cube
    from .theories import Theory

DEFAULT_ITERATION_CAP = 10_000


@dataclass(frozen=True)
class ExactSpectrum:
    """A fully materialized spectrum: finite part plus an infinity flag.

    Compactness is enforced: an infinite finite part forces the infinity
    flag (a cube with models of unboundedly many finite sizes also has an
    infinite model).
    """

    finite_part: EvPeriodicSet
    has_inf: bool

    def __post_init__(self):
        if self.finite_part.is_infinite() and not self.has_inf:
            raise ValueError("infinite finite part without the infinite cardinality")

    def is_empty(self) -> bool:
        return self.finite_part.is_empty() and not self.has_inf

    def contains(self, c: Card) -> bool:
        if c is ALEPH0:
            return self.has_inf
        return self.finite_part.contains(c)

    def finite_or_cofinite(self) -> bool:
        """Whether the spectrum fits the gentle output shape: a finite set
        of finite cardinalities, or the complement of one."""
        if self.finite_part.is_finite() and not self.has_inf:
            return True
        return self.finite_part.is_cofinite() and self.has_inf

    def to_json(self) -> dict:
        return {"finite_part": self.finite_part.to_literal(), "has_inf": self.has_inf}


@dataclass(frozen=True)
class SpectrumView:
    """A theory/cube pair with its supported spectrum queries.

    Capabilities: ``contains_finite`` (finite membership is total),
    ``contains_inf`` (infinite membership is decidable), ``exact`` (the
    whole spectrum can be materialized).  Partially n-decidable theories
    answer `contains` for their certified cardinalities even without the
    blanket ``contains_finite`` capability.
    """

    owner: "Theory"
    cube: "Cube"
    capabilities: frozenset[str] = field(init=False)

    def __post_init__(self):
        cert = self.owner.certificate
        caps = set()
        if cert.cfs:
            caps.add("contains_finite")
        if cert.infinitely_decidable:
            caps.add("contains_inf")
        if cert.gentle or cert.shiny or cert.n_shiny_param is not None:
            caps.add("exact")
        object.__setattr__(self, "capabilities", frozenset(caps))

    # -- queries ---------------------------------------------------------

    def sat(self) -> bool:
        return self.owner.decide_cube(self.cube)

    def contains(self, c: Card) -> bool:
        if c is ALEPH0:
            if "contains_inf" not in self.capabilities:
                raise CapabilityMissing(self.owner.name, "spec_inf")
            return self.owner.spec_inf(self.cube)
        if not is_finite_card(c) or c < 1:
            raise ValueError(f"bad cardinality {c!r}")
        if "contains_finite" not in self.capabilities and not self.owner.certificate.is_n_decidable(c):
            raise CapabilityMissing(self.owner.name, "spec_finite", f"at cardinality {c}")
        return self.owner.spec_finite(self.cube, c)

    def max_finite(self, cap: int = DEFAULT_ITERATION_CAP) -> int | None:
        """Greatest finite spectrum element via the growing-clique loop.

        The caller certifies the spectrum has no infinite member; a
        mis-declared certificate shows up as IterationCapExceeded.
        Returns None when the cube is unsatisfiable.
        """
        from .formulas import clique_extension

        k = 0
        while self.owner.decide_cube(clique_extension(self.cube, k + 1)):
            k += 1
            if k > cap:
                raise IterationCapExceeded("max_finite", cap)
        return k if k >= 1 else None

    def minmod(self, cap: int = DEFAULT_ITERATION_CAP) -> Card | None:
        """Least spectrum element; None when unsatisfiable.

        Uses the theory's closed form when it has one, otherwise searches
        finite cardinalities through `contains`, returning ALEPH0 when
        the theory reports the cube has no finite models at all.
        """
        if not self.sat():
            return None
        closed = self.owner.minmod_cube(self.cube)
        if closed is not None:
            return closed
        if self.owner.infinite_only(self.cube):
            return ALEPH0
        if "contains_finite" not in self.capabilities:
            raise CapabilityMissing(self.owner.name, "minmod")
        for k in range(1, cap + 1):
            if self.owner.spec_finite(self.cube, k):
                return k
        raise IterationCapExceeded("minmod", cap)

    def exact(self) -> ExactSpectrum:
        if "exact" not in self.capabilities:
            raise CapabilityMissing(self.owner.name, "exact_spectrum")
        return self.owner.exact_spectrum(self.cube)


def view(theory: "Theory", cube: "Cube") -> SpectrumView:
    return SpectrumView(theory, cube)


# Module-level op names mirroring the public API surface.


def spec_contains(v: SpectrumView, c: Card) -> bool:
    return v.contains(c)


def max_finite(v: SpectrumView, cap: int = DEFAULT_ITERATION_CAP) -> int | None:
    return v.max_finite(cap)


def minmod(v: SpectrumView, cap: int = DEFAULT_ITERATION_CAP) -> Card | None:
    return v.minmod(cap)


def exact_spectrum(v: SpectrumView) -> ExactSpectrum:
    return v.exact()
