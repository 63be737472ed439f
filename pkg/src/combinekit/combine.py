"""Disjoint combination of two theories over spectrum intersections.

The shell lowers a formula over the union signature to cubes, routes
each cube's literals to its owning side, and enumerates arrangements of
the shared variables; a cube is jointly satisfiable exactly when some
arrangement gives the two sides overlapping spectra.  The per-method
intersection procedures below decide that overlap using only the
queries their hypotheses license.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .errors import CapabilityMissing, IterationCapExceeded, MethodNotApplicable
from .filters import FreeFilter, frechet
from .formulas import (
    Arrangement,
    Cube,
    Formula,
    arrangement_to_cube,
    clique_extension,
    enumerate_arrangements,
    split_by_signature,
    to_dnf,
)
from .sets import ALEPH0, Card, card_to_json
from .spectra import DEFAULT_ITERATION_CAP, SpectrumView, view
from .theories import Theory

METHOD_KINDS = (
    "nelson-oppen",
    "gentle",
    "cs",
    "smcs",
    "n-shiny",
    "quasi-gentle",
    "shiny",
)


@dataclass(frozen=True)
class Method:
    """A combination method choice; n-shiny carries its cardinality and
    quasi-gentle the filter used for applicability certification."""

    kind: str
    n: int | None = None
    filt: FreeFilter | None = None

    def __post_init__(self):
        if self.kind not in METHOD_KINDS:
            raise ValueError(f"unknown method {self.kind!r}")
        if self.kind == "n-shiny" and (self.n is None or self.n < 1):
            raise ValueError("n-shiny needs a positive n")
        if self.kind == "quasi-gentle" and self.filt is None:
            object.__setattr__(self, "filt", frechet())

    def label(self) -> str:
        if self.kind == "n-shiny":
            return f"n-shiny({self.n})"
        if self.kind == "quasi-gentle":
            return f"quasi-gentle({self.filt.name})"
        return self.kind


SHINY = Method("shiny")
NELSON_OPPEN = Method("nelson-oppen")
GENTLE = Method("gentle")
SMCS = Method("smcs")
CS = Method("cs")


def n_shiny(n: int) -> Method:
    return Method("n-shiny", n=n)


def quasi_gentle(filt: FreeFilter | None = None) -> Method:
    return Method("quasi-gentle", filt=filt or frechet())


def method_applicable(method: Method, t1: Theory, t2: Theory) -> bool:
    """Whether the certificates of (t1, t2), in this order, satisfy the
    method's hypotheses.  The shell additionally tries the swapped order."""
    c1, c2 = t1.certificate, t2.certificate
    if method.kind == "shiny":
        return c1.shiny
    if method.kind == "nelson-oppen":
        return c1.stably_infinite and c2.stably_infinite
    if method.kind == "gentle":
        return c1.gentle and c2.cfs
    if method.kind == "smcs":
        return c1.smooth and c1.cs and c2.infinitely_decidable
    if method.kind == "cs":
        # Both finite-computable; side1 decides the infinite question, and
        # side2 must only if side1's answer can ever be positive.
        return (
            c1.cfs
            and c2.cfs
            and c1.infinitely_decidable
            and (c2.infinitely_decidable or c1.never_infinite)
        )
    if method.kind == "n-shiny":
        return c1.is_n_shiny(method.n) and c2.is_n_decidable(method.n)
    return c1.is_fqg(method.filt) and c2.is_cofqg(method.filt)


def hypothesis_diff(method: Method, t1: Theory, t2: Theory) -> str:
    """Human-readable reason the method fails for the pair, both orders."""
    lines = []
    for a, b in ((t1, t2), (t2, t1)):
        if not method_applicable(method, a, b):
            lines.append(f"({a.name}, {b.name}) fails {method.label()} hypotheses")
    return "; ".join(lines) if lines else "applicable"


@dataclass
class _Stats:
    arrangements_tried: int = 0
    loop_iterations: int = 0

    def to_json(self) -> dict:
        return {
            "arrangements_tried": self.arrangements_tried,
            "loop_iterations": self.loop_iterations,
        }


@dataclass(frozen=True)
class CombinationVerdict:
    sat: bool
    witness: tuple[Arrangement, Card] | None
    method_used: str
    stats: dict

    def __post_init__(self):
        if self.witness is not None and not self.sat:
            raise ValueError("witness without satisfiability")

    def to_json(self) -> dict:
        w = None
        if self.witness is not None:
            arr, card = self.witness
            w = {"arrangement": arr.to_json(), "card": card_to_json(card)}
        return {
            "sat": self.sat,
            "method": self.method_used,
            "witness": w,
            "stats": dict(sorted(self.stats.items())),
        }


# -- per-method spectrum intersection ----------------------------------------


def _run_shiny(v1: SpectrumView, v2: SpectrumView, cap: int, stats: _Stats):
    if not v1.sat():
        return False, None
    k = v1.minmod(cap)
    assert isinstance(k, int)  # shiny theories have finite minimal models
    stats.loop_iterations += 1
    return v2.owner.decide_cube(clique_extension(v2.cube, k)), None


def _run_nelson_oppen(v1: SpectrumView, v2: SpectrumView, cap: int, stats: _Stats):
    if v1.sat() and v2.sat():
        return True, ALEPH0
    return False, None


def _run_gentle(v1: SpectrumView, v2: SpectrumView, cap: int, stats: _Stats):
    spec1 = v1.exact()
    if spec1.is_empty():
        return False, None
    if spec1.finite_part.is_finite() and not spec1.has_inf:
        bound = spec1.finite_part.max_element() or 0
        for n in spec1.finite_part.elements(bound):
            stats.loop_iterations += 1
            if v2.owner.spec_finite(v2.cube, n):
                return True, n
        return False, None
    # Cofinite spectrum: scan the holes' range, then ask for anything bigger.
    excluded = spec1.finite_part.complement()
    k = excluded.max_element() or 0
    for n in spec1.finite_part.elements(k):
        stats.loop_iterations += 1
        if v2.owner.spec_finite(v2.cube, n):
            return True, n
    return v2.owner.decide_cube(clique_extension(v2.cube, k + 1)), None


def _run_smcs(v1: SpectrumView, v2: SpectrumView, cap: int, stats: _Stats):
    if v2.owner.spec_inf(v2.cube):
        if v1.sat():
            return True, ALEPH0
        return False, None
    k = 0
    while v2.owner.decide_cube(clique_extension(v2.cube, k + 1)):
        k += 1
        stats.loop_iterations += 1
        if k > cap:
            raise IterationCapExceeded("smcs max-finite scan", cap)
    if k == 0:
        return False, None
    if v1.owner.spec_finite(v1.cube, k):
        return True, k
    return False, None


def _run_cs(v1: SpectrumView, v2: SpectrumView, cap: int, stats: _Stats):
    inf1 = v1.owner.spec_inf(v1.cube)
    if inf1 and v2.owner.spec_inf(v2.cube):
        return True, ALEPH0
    bounded = v1 if not inf1 else v2
    k = 0
    while bounded.owner.decide_cube(clique_extension(bounded.cube, k + 1)):
        k += 1
        stats.loop_iterations += 1
        if k > cap:
            raise IterationCapExceeded("cs max-finite scan", cap)
    for n in range(1, k + 1):
        if v1.owner.spec_finite(v1.cube, n) and v2.owner.spec_finite(v2.cube, n):
            return True, n
    return False, None


def _run_n_shiny(v1: SpectrumView, v2: SpectrumView, n: int, cap: int, stats: _Stats):
    if not v1.sat():
        return False, None
    if v1.owner.spec_finite(v1.cube, n) and v2.owner.spec_finite(v2.cube, n):
        return True, n
    shape = v1.owner.nshiny_classify(v1.cube)
    assert shape is not None
    t, k = shape
    if t == 0:
        # Spectrum is exactly {n}; the n-check above already failed.
        return False, None
    stats.loop_iterations += 1
    return v2.owner.decide_cube(clique_extension(v2.cube, k)), None


def _run_quasi_gentle(v1: SpectrumView, v2: SpectrumView, cap: int, stats: _Stats):
    n = 1
    while True:
        ok1 = v1.owner.decide_cube(clique_extension(v1.cube, n))
        ok2 = ok1 and v2.owner.decide_cube(clique_extension(v2.cube, n))
        if not (ok1 and ok2):
            return False, None
        if v1.owner.spec_finite(v1.cube, n) and v2.owner.spec_finite(v2.cube, n):
            return True, n
        n += 1
        stats.loop_iterations += 1
        if n > cap:
            raise IterationCapExceeded("quasi-gentle interleaved scan", cap)


def _run_method(method: Method, v1: SpectrumView, v2: SpectrumView, cap: int, stats: _Stats):
    if method.kind == "shiny":
        return _run_shiny(v1, v2, cap, stats)
    if method.kind == "nelson-oppen":
        return _run_nelson_oppen(v1, v2, cap, stats)
    if method.kind == "gentle":
        return _run_gentle(v1, v2, cap, stats)
    if method.kind == "smcs":
        return _run_smcs(v1, v2, cap, stats)
    if method.kind == "cs":
        return _run_cs(v1, v2, cap, stats)
    if method.kind == "n-shiny":
        return _run_n_shiny(v1, v2, method.n, cap, stats)
    return _run_quasi_gentle(v1, v2, cap, stats)


# Public single-pair entry points (first argument is the hypothesis side).


def intersect_shiny(v1: SpectrumView, v2: SpectrumView, cap: int = DEFAULT_ITERATION_CAP) -> bool:
    return _run_shiny(v1, v2, cap, _Stats())[0]


def intersect_smcs(v1: SpectrumView, v2: SpectrumView, cap: int = DEFAULT_ITERATION_CAP) -> bool:
    return _run_smcs(v1, v2, cap, _Stats())[0]


def intersect_cs(v1: SpectrumView, v2: SpectrumView, cap: int = DEFAULT_ITERATION_CAP) -> bool:
    return _run_cs(v1, v2, cap, _Stats())[0]


def intersect_nshiny(
    v1: SpectrumView, v2: SpectrumView, n: int, cap: int = DEFAULT_ITERATION_CAP
) -> bool:
    return _run_n_shiny(v1, v2, n, cap, _Stats())[0]


def intersect_quasigentle(
    v1: SpectrumView, v2: SpectrumView, cap: int = DEFAULT_ITERATION_CAP
) -> bool:
    return _run_quasi_gentle(v1, v2, cap, _Stats())[0]


def intersect_gentle(v1: SpectrumView, v2: SpectrumView, cap: int = DEFAULT_ITERATION_CAP) -> bool:
    return _run_gentle(v1, v2, cap, _Stats())[0]


def intersect_nelson_oppen(v1: SpectrumView, v2: SpectrumView) -> bool:
    return _run_nelson_oppen(v1, v2, 0, _Stats())[0]


# -- method selection ---------------------------------------------------------

AUTO_ORDER = ("nelson-oppen", "gentle", "cs", "smcs", "n-shiny", "quasi-gentle", "shiny")


def _candidate_methods(kind: str, t1: Theory, t2: Theory) -> Iterator[Method]:
    if kind == "n-shiny":
        for t in (t1, t2):
            if t.certificate.n_shiny_param is not None:
                yield n_shiny(t.certificate.n_shiny_param)
    elif kind == "quasi-gentle":
        yield quasi_gentle(frechet())
    else:
        yield Method(kind)


def select_method(t1: Theory, t2: Theory) -> tuple[Method, bool] | None:
    """First applicable method in the fixed cheapest-first order; the
    boolean says whether the theory order had to be swapped."""
    for kind in AUTO_ORDER:
        for m in _candidate_methods(kind, t1, t2):
            if method_applicable(m, t1, t2):
                return m, False
            if method_applicable(m, t2, t1):
                return m, True
    return None


def combine_decide(
    t1: Theory,
    t2: Theory,
    f: Formula | Cube,
    method: Method | None = None,
    *,
    override: bool = False,
    cap: int = DEFAULT_ITERATION_CAP,
) -> CombinationVerdict:
    """Joint satisfiability of f over the disjoint union of t1 and t2.

    Lowers f to cubes, splits each by signature, and runs the method's
    intersection procedure per arrangement of the shared variables; the
    verdict carries the first witness in canonical order.  With
    ``override`` the chosen method runs even when its hypotheses fail
    (mis-certification then surfaces as IterationCapExceeded or
    CapabilityMissing rather than silently wrong answers).
    """
    if method is None:
        picked = select_method(t1, t2)
        if picked is None:
            raise MethodNotApplicable(f"no method applies to ({t1.name}, {t2.name})")
        method, swapped = picked
    else:
        if method_applicable(method, t1, t2):
            swapped = False
        elif method_applicable(method, t2, t1):
            swapped = True
        elif override:
            swapped = False
        else:
            raise MethodNotApplicable(hypothesis_diff(method, t1, t2))

    stats = _Stats()
    label = method.label() + (" [sides swapped]" if swapped else "")
    cubes = to_dnf(f) if not isinstance(f, Cube) else ([f] if not f.contradictory else [])
    witness = None
    sat = False
    for cube in cubes:
        c1, c2, shared = split_by_signature(cube, t1.signature, t2.signature)
        for arr in enumerate_arrangements(shared):
            stats.arrangements_tried += 1
            delta = arrangement_to_cube(arr)
            a1, a2 = c1.join(delta), c2.join(delta)
            first, second = (a2, a1) if swapped else (a1, a2)
            ft, st = (t2, t1) if swapped else (t1, t2)
            ok, card = _run_method(method, view(ft, first), view(st, second), cap, stats)
            if ok:
                sat = True
                witness = (arr, card) if card is not None else None
                break
        if sat:
            break
    return CombinationVerdict(sat, witness, label, stats.to_json())
