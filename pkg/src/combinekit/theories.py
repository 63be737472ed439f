"""Theory handles: signature, decision procedure, spectrum procedures.

Every theory in the catalog is a subclass of :class:`Theory` exposing:

* ``decide_cube``   -- exact quantifier-free satisfiability of a cube;
* ``spec_finite``   -- finite spectrum membership, raising
  CapabilityMissing on queries the certificate withholds;
* ``spec_inf``      -- infinite spectrum membership, same gating;
* ``exact_spectrum``-- full materialization for gentle-or-stronger theories;
* ``model_check``   -- finite-model axiom check backing the brute oracle.

Decision and spectrum procedures never consult the model checker's
undecidable-set stand-in; only ``model_check`` sees it.  The external
parameter F is only reachable through :class:`FOracle`'s single ``geq``
query.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable

from .errors import CapabilityMissing, SignatureError
from .formulas import (
    Cube,
    EqualityLiteral,
    PredicateId,
    PredicateLiteral,
    Signature,
    canonical_cubes,
    equality_literal_pool,
)
from .properties import PropertyCertificate
from .sets import Card, odds
from .spectra import ExactSpectrum


class FOracle:
    """A size-bound function F reachable only through geq(m, n) = [F(m) >= n].

    There is deliberately no value query and no "is F(m) infinite" query.
    """

    def __init__(self, name: str, geq: Callable[[int, int], bool]):
        self.name = name
        self._geq = geq

    def geq(self, m: int, n: int) -> bool:
        if m < 1 or n < 1:
            raise ValueError("oracle arguments are positive naturals")
        return self._geq(m, n)

    def check_downward_consistency(self, samples: Iterable[tuple[int, int]]) -> bool:
        """Sampled sanity check: geq(m, n) implies geq(m, n') for n' <= n."""
        for m, n in samples:
            if self.geq(m, n) and any(not self.geq(m, k) for k in range(1, n)):
                return False
        return True

    def __repr__(self) -> str:
        return f"FOracle({self.name})"


def identity_oracle() -> FOracle:
    return FOracle("identity", lambda m, n: m >= n)


def doubling_oracle() -> FOracle:
    return FOracle("double", lambda m, n: 2 * m >= n)


@dataclass
class Model:
    """A finite interpretation: domain [1..size], true predicates, variable values."""

    size: int
    true_predicates: frozenset[PredicateId]
    assignment: dict[str, int]

    def __post_init__(self):
        if self.size < 1:
            raise ValueError("domains are nonempty")

    def satisfies_literal(self, lit) -> bool:
        if isinstance(lit, EqualityLiteral):
            return (self.assignment[lit.left] == self.assignment[lit.right]) == lit.positive
        return (lit.pred in self.true_predicates) == lit.positive

    def satisfies_cube(self, cube: Cube) -> bool:
        return all(self.satisfies_literal(l) for l in cube.literals)


# -- equality reasoning -----------------------------------------------------


def minmod_equalities(cube: Cube) -> int | None:
    """Minimum model size of the equality part of a cube; None if inconsistent.

    Equalities merge variables into classes; the minimum domain size is
    the chromatic number of the disequality graph over those classes
    (1 when there are no variables, since domains are nonempty).
    """
    parent: dict[str, str] = {}

    def find(x: str) -> str:
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a: str, b: str):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    neqs = []
    for lit in cube.eq_literals():
        find(lit.left), find(lit.right)
        if lit.positive:
            union(lit.left, lit.right)
        else:
            neqs.append((lit.left, lit.right))
    edges = set()
    for a, b in neqs:
        ra, rb = find(a), find(b)
        if ra == rb:
            return None
        edges.add(frozenset((ra, rb)))
    classes = sorted({find(v) for v in parent})
    if not classes:
        return 1
    adj = {c: set() for c in classes}
    for e in edges:
        a, b = tuple(e)
        adj[a].add(b)
        adj[b].add(a)
    order = sorted(classes, key=lambda c: -len(adj[c]))

    def colorable(k: int) -> bool:
        colors: dict[str, int] = {}

        def rec(i: int) -> bool:
            if i == len(order):
                return True
            v = order[i]
            used = {colors[u] for u in adj[v] if u in colors}
            for c in range(k):
                if c in used:
                    continue
                colors[v] = c
                if rec(i + 1):
                    return True
                del colors[v]
                if c not in colors.values():
                    break  # first unused color: symmetric to the rest
            return False

        return rec(0)

    for k in range(1, len(classes) + 1):
        if colorable(k):
            return k
    return len(classes)


def exclusive_positive(cube: Cube) -> tuple[bool, PredicateId | None]:
    """(consistent, the unique positive predicate or None) for theories whose
    distinct predicates exclude each other.  Contradictory cubes and cubes
    with two distinct positive predicates are inconsistent."""
    if cube.contradictory:
        return False, None
    pos = cube.positive_preds()
    if len(pos) > 1:
        return False, None
    return True, (pos[0] if pos else None)


# -- theory base -------------------------------------------------------------


class Theory:
    """Base class; concrete theories fill in the procedures they support."""

    name: str
    signature: Signature
    certificate: PropertyCertificate

    # Hint for random cube generation: largest predicate index to draw.
    sample_index_bound: int = 6

    # Theories over infinite signatures must only constrain models through
    # positively guarded axioms (P -> ...), which is what lets the brute
    # oracle default unmentioned predicates to false.  Finite-signature
    # theories may constrain negatively; the oracle enumerates their whole
    # signature instead.
    positive_guards_only: bool = True

    # -- core ops ---------------------------------------------------------

    def decide_cube(self, cube: Cube) -> bool:
        raise NotImplementedError

    def spec_finite(self, cube: Cube, k: int) -> bool:
        raise CapabilityMissing(self.name, "spec_finite")

    def spec_inf(self, cube: Cube) -> bool:
        raise CapabilityMissing(self.name, "spec_inf")

    def exact_spectrum(self, cube: Cube) -> ExactSpectrum:
        raise CapabilityMissing(self.name, "exact_spectrum")

    def minmod_cube(self, cube: Cube) -> Card | None:
        """Closed-form minimum spectrum element, or None when the theory
        has no certified closed form (the view then falls back to search)."""
        return None

    def nshiny_classify(self, cube: Cube) -> tuple[int, int] | None:
        """Spectrum shape for n-shiny owners: (0, n) for {n}; (1, k) for
        {n} plus the tail from k; (2, k) for the tail from k.  None when
        the cube is unsatisfiable."""
        raise CapabilityMissing(self.name, "nshiny_classify")

    def model_check(self, size: int, true_preds: frozenset[PredicateId]) -> bool:
        """Whether a finite model of this size with exactly these true
        predicates satisfies every (non-vacuous) axiom."""
        raise NotImplementedError

    # -- internal hints (not capabilities) ---------------------------------

    def infinite_only(self, cube: Cube) -> bool:
        """True when the procedure knows every model of the cube is infinite.
        Consumed by oracle-agreement suites; never a public capability."""
        return False

    def sample_pred(self, rng) -> PredicateId | None:
        """A random predicate of this signature, for test-cube sampling.
        None when the signature is empty."""
        fams = sorted(self.signature.families)
        if not fams:
            return None
        fam, arity = rng.choice(fams)
        bound = self.sample_index_bound
        if arity == 0:
            return PredicateId(fam, ())
        if arity == 1:
            return PredicateId(fam, (rng.randint(1, bound),))
        if arity == 2:
            return PredicateId(fam, (rng.randint(1, bound), rng.randint(1, bound)))
        i = rng.randint(1, bound - 1)
        j = rng.randint(i + 1, bound)
        return PredicateId(fam, (i, j, rng.randint(1, 9)))

    def cube_spectrum_exact(self, cube: Cube) -> ExactSpectrum | None:
        """Exact spectrum when computable without undecidable queries;
        None otherwise.  Powers structural probes only."""
        return None

    # -- shared helpers -----------------------------------------------------

    def check_owned(self, cube: Cube):
        for lit in cube.pred_literals():
            if not self.signature.owns(lit.pred):
                raise SignatureError(f"{self.name} does not own predicate {lit.pred}")

    def __repr__(self) -> str:
        return f"<theory {self.name}>"


def model_check(theory: Theory, model: Model) -> bool:
    """Whether the model satisfies every non-vacuous axiom of the theory."""
    return theory.model_check(model.size, model.true_predicates)


DEFAULT_U_STANDIN = odds()

# Variable pool for the canonical formula enumeration shared by the
# inner-theory registry and the diagonal construction.
ENUMERATION_VARIABLES = ("w1", "w2", "w3", "w4")


def literal_pool_for(theory: Theory, max_index: int = 3) -> list:
    """The bounded literal universe for enumerating this theory's cubes."""
    pool = list(equality_literal_pool(ENUMERATION_VARIABLES))
    for fam, arity in sorted(theory.signature.families):
        if arity == 0:
            pid = PredicateId(fam, ())
            pool.append(PredicateLiteral(pid, True))
            pool.append(PredicateLiteral(pid, False))
        elif arity == 1:
            for i in range(1, max_index + 1):
                pid = PredicateId(fam, (i,))
                pool.append(PredicateLiteral(pid, True))
                pool.append(PredicateLiteral(pid, False))
        # Higher-arity families are left out of the bounded grammar.
    return pool


class FormulaEnumeration:
    """Deterministic 1-based indexing of a theory's cubes.

    Wraps :func:`combinekit.formulas.canonical_cubes` with a cache so ids
    are stable and invertible within a run.
    """

    def __init__(self, theory: Theory, max_index: int = 3):
        self._gen = canonical_cubes(literal_pool_for(theory, max_index))
        self._by_id: list[Cube] = []
        self._ids: dict[Cube, int] = {}

    def cube(self, fid: int) -> Cube:
        if fid < 1:
            raise ValueError("formula ids are 1-based")
        while len(self._by_id) < fid:
            self._advance()
        return self._by_id[fid - 1]

    def id_of(self, cube: Cube) -> int:
        while cube not in self._ids:
            self._advance()
        return self._ids[cube]

    def _advance(self):
        c = next(self._gen)  # pool is finite; exhausting it is a bug upstream
        self._by_id.append(c)
        self._ids[c] = len(self._by_id)


def witness_with_self_equalities(theory: Theory, cube: Cube, count: int) -> Cube:
    """Extend a single-positive-predicate cube with `count` fresh
    self-equalities; satisfiability is preserved and every satisfiable
    output has a model carried entirely by its own variables (provided
    `count` covers the largest size the theory's axioms can force)."""
    from .formulas import fresh_variables

    pos = cube.positive_preds()
    if len(pos) != 1:
        raise ValueError("witness needs exactly one positive predicate literal")
    if not isinstance(pos[0].indices[0], int):
        raise ValueError("witness needs a finite predicate index")
    fresh = fresh_variables(cube.variables(), count, prefix="x")
    return cube.with_literals(EqualityLiteral(v, v, True) for v in fresh)
