import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from combinekit.errors import ParseError, SignatureError
from combinekit.formulas import (
    And,
    Arrangement,
    Cube,
    EqualityLiteral,
    Not,
    Or,
    PredicateId,
    PredicateLiteral,
    Signature,
    arrangement_to_cube,
    canonical_cubes,
    enumerate_arrangements,
    eval_formula,
    formula_atoms,
    neq_clique,
    parse_formula,
    split_by_signature,
    to_dnf,
)

SIG_P = Signature(frozenset({("P", 1)}))
SIG_Q = Signature(frozenset({("Q", 1)}))


def P(k, positive=True):
    return PredicateLiteral(PredicateId("P", (k,)), positive)


def Q(k, positive=True):
    return PredicateLiteral(PredicateId("Q", (k,)), positive)


def eq(a, b, positive=True):
    return EqualityLiteral(a, b, positive)


# -- independent oracles ------------------------------------------------------


def partitions_recursive(items):
    """Independent set-partition enumerator used to cross-check counts."""
    items = list(items)
    if not items:
        yield []
        return
    head, rest = items[0], items[1:]
    for smaller in partitions_recursive(rest):
        for i in range(len(smaller)):
            yield smaller[:i] + [[head] + smaller[i]] + smaller[i + 1 :]
        yield [[head]] + smaller


def clique_satisfiable_brute(nvars: int, domain: int) -> bool:
    vs = [f"v{i}" for i in range(1, nvars + 1)]
    cube = neq_clique(vs, nvars)
    for values in itertools.product(range(domain), repeat=nvars):
        asg = dict(zip(vs, values))
        if all(
            (asg[l.left] == asg[l.right]) == l.positive for l in cube.literals
        ):
            return True
    return False


# -- parsing -------------------------------------------------------------------


def test_parse_cube_example():
    f = parse_formula("(and (= x y) (P 3))")
    (cube,) = to_dnf(f)
    assert cube == Cube((eq("x", "y"), P(3)))


def test_parse_distinct_expands_pairwise():
    f = parse_formula("(distinct x y z)")
    (cube,) = to_dnf(f)
    assert cube == Cube((eq("x", "y", False), eq("x", "z", False), eq("y", "z", False)))


def test_parse_or_with_negation():
    f = parse_formula("(or (P 1) (not (= x x)))")
    assert isinstance(f, Or)
    assert to_dnf(f) == [Cube((P(1),))]  # the x!=x branch is contradictory


def test_parse_bare_and_multi_index_predicates():
    f = parse_formula("(and (pred P) (pred R 2 5 9))")
    (cube,) = to_dnf(f)
    preds = {l.pred for l in cube.pred_literals()}
    assert PredicateId("P", ()) in preds
    assert PredicateId("R", (2, 5, 9)) in preds


def test_parse_resolver_and_inf_index():
    f = parse_formula("(pred P Q 4)", resolver={"Q": 7}.__getitem__)
    assert f.pred == PredicateId("P", (7, 4))
    g = parse_formula("(pred P inf)")
    assert g.pred == PredicateId("P", ("inf",))


def test_parse_errors_carry_offsets():
    with pytest.raises(ParseError) as e:
        parse_formula("(and (= x y) (P 0))")
    assert e.value.offset == 16
    with pytest.raises(ParseError):
        parse_formula("(pred lowercase 1)")
    with pytest.raises(ParseError):
        parse_formula("(= x y) trailing")
    with pytest.raises(ParseError):
        parse_formula("(and (= x y)")


# -- cubes ---------------------------------------------------------------------


def test_cube_normalization_sorts_and_dedups():
    c = Cube((eq("y", "x"), P(2), eq("x", "y"), P(2)))
    assert c.literals == (P(2), eq("x", "y"))


def test_cube_contradiction_detection():
    assert Cube((eq("x", "x", False),)).contradictory
    assert Cube((P(1), P(1, False))).contradictory
    assert Cube((eq("x", "y"), eq("x", "y", False))).contradictory
    assert not Cube((eq("x", "x"),)).contradictory  # tautology is retained


def test_self_equalities_contribute_variables():
    c = Cube((eq("a", "a"),))
    assert c.variables() == frozenset({"a"})


# -- DNF -----------------------------------------------------------------------


def test_to_dnf_trivial_cases():
    assert to_dnf(And((eq("x", "y"),))) == [Cube((eq("x", "y"),))]
    assert to_dnf(Or((P(1), P(2)))) == [Cube((P(1),)), Cube((P(2),))]


def test_to_dnf_distribution_example():
    f = And((Or((P(1), P(2))), eq("x", "y", False)))
    assert to_dnf(f) == [
        Cube((P(1), eq("x", "y", False))),
        Cube((P(2), eq("x", "y", False))),
    ]


formula_strategy = st.deferred(
    lambda: st.one_of(
        st.sampled_from([P(1), P(2), eq("x", "y"), eq("y", "z"), eq("x", "z", False)]),
        st.builds(Not, formula_strategy),
        st.builds(lambda a, b: And((a, b)), formula_strategy, formula_strategy),
        st.builds(lambda a, b: Or((a, b)), formula_strategy, formula_strategy),
    )
)


@given(formula_strategy)
@settings(max_examples=150)
def test_to_dnf_preserves_truth_tables(f):
    atoms = sorted(formula_atoms(f), key=lambda a: a.sort_key)
    assert len(atoms) <= 10
    cubes = to_dnf(f)
    for bits in itertools.product([False, True], repeat=len(atoms)):
        true_atoms = frozenset(a for a, b in zip(atoms, bits) if b)
        want = eval_formula(f, true_atoms)
        got = any(
            all(
                ((l if l.positive else l.negate()) in true_atoms) == l.positive
                for l in cube.literals
            )
            for cube in cubes
        )
        assert got == want


# -- cliques --------------------------------------------------------------------


def test_neq_clique_counts():
    assert neq_clique(["a"], 1) == Cube(())
    c3 = neq_clique(["x1", "x2", "x3"], 3)
    assert len(c3.literals) == 3
    c4 = neq_clique(["a", "b", "c", "d"], 4)
    assert len(c4.literals) == 6  # C(4,2) by brute pair enumeration
    assert len(list(itertools.combinations(range(4), 2))) == 6
    with pytest.raises(ValueError):
        neq_clique([], 0)


def test_neq_clique_satisfiable_iff_domain_large_enough():
    for n in range(1, 8):
        for k in range(1, 8):
            assert clique_satisfiable_brute(n, k) == (k >= n), (n, k)


# -- arrangements -----------------------------------------------------------------


def test_arrangement_counts_match_bell_numbers():
    expected = [1, 2, 5, 15, 52, 203]
    for size, want in zip(range(1, 7), expected):
        vs = [f"v{i}" for i in range(size)]
        got = sum(1 for _ in enumerate_arrangements(vs))
        independent = sum(1 for _ in partitions_recursive(vs))
        assert got == want == independent


def test_empty_variable_set_has_one_arrangement():
    assert list(enumerate_arrangements([])) == [Arrangement(())]


def test_arrangement_order_is_deterministic():
    first = list(enumerate_arrangements(["b", "a", "c"]))
    second = list(enumerate_arrangements(["c", "b", "a"]))
    assert first == second
    assert first[0].blocks == (("a", "b", "c"),)  # all merged comes first


def test_arrangement_to_cube_examples():
    assert arrangement_to_cube(Arrangement((("x", "y"),))) == Cube((eq("x", "y"),))
    assert arrangement_to_cube(Arrangement((("x",), ("y",)))) == Cube(
        (eq("x", "y", False),)
    )
    got = arrangement_to_cube(Arrangement((("x", "y"), ("z",))))
    assert got == Cube((eq("x", "y"), eq("x", "z", False), eq("y", "z", False)))


def test_arrangement_cubes_partition_all_assignments():
    vs = ["x", "y", "z"]
    cubes = [arrangement_to_cube(a) for a in enumerate_arrangements(vs)]
    for domain in range(1, 4):
        for values in itertools.product(range(domain), repeat=3):
            asg = dict(zip(vs, values))
            holding = [
                c
                for c in cubes
                if all((asg[l.left] == asg[l.right]) == l.positive for l in c.literals)
            ]
            assert len(holding) == 1


def test_arrangement_validation():
    with pytest.raises(ValueError):
        Arrangement((("x",), ("x",)))
    with pytest.raises(ValueError):
        Arrangement(((),))


# -- signature splitting -----------------------------------------------------------


def test_split_routes_predicates_and_replicates_equalities():
    c = Cube((P(1), Q(2), eq("x", "y")))
    c1, c2, shared = split_by_signature(c, SIG_P, SIG_Q)
    assert c1 == Cube((P(1), eq("x", "y")))
    assert c2 == Cube((Q(2), eq("x", "y")))
    assert shared == frozenset({"x", "y"})


def test_split_equality_only_and_one_sided():
    c1, c2, shared = split_by_signature(Cube((eq("x", "y", False),)), SIG_P, SIG_Q)
    assert c1 == c2 == Cube((eq("x", "y", False),))
    assert shared == frozenset({"x", "y"})
    c1, c2, shared = split_by_signature(Cube((P(3),)), SIG_P, SIG_Q)
    assert c1 == Cube((P(3),))
    assert c2 == Cube(())
    assert shared == frozenset()


def test_split_rejects_foreign_and_overlapping():
    with pytest.raises(SignatureError):
        split_by_signature(Cube((PredicateLiteral(PredicateId("Z", (1,))),)), SIG_P, SIG_Q)
    with pytest.raises(SignatureError):
        split_by_signature(Cube(()), SIG_P, SIG_P)


def test_split_agrees_with_combined_model_check():
    """Splitting loses nothing: a joint model at cardinality k exists iff
    both halves have one over the same equality skeleton (checked by
    exhaustive assignment enumeration for k <= 5)."""
    cube = Cube((P(1), Q(2), eq("x", "y")))
    c1, c2, shared = split_by_signature(cube, SIG_P, SIG_Q)
    vs = sorted(cube.variables())
    for k in range(1, 6):
        def sat_eq(c):
            return any(
                all(
                    (dict(zip(vs, values))[l.left] == dict(zip(vs, values))[l.right])
                    == l.positive
                    for l in c.eq_literals()
                )
                for values in itertools.product(range(k), repeat=len(vs))
            )

        assert sat_eq(cube) == (sat_eq(c1) and sat_eq(c2))


# -- canonical enumeration -----------------------------------------------------------


def test_canonical_cubes_order():
    pool = [P(1), P(1, False), eq("a", "b"), eq("a", "b", False)]
    cubes = list(itertools.islice(canonical_cubes(pool), 6))
    assert cubes[0] == Cube(())
    assert cubes[1] == Cube((P(1),))
    assert cubes[2] == Cube((P(1, False),))
    assert cubes[3] == Cube((eq("a", "b"),))
    # sizes are non-decreasing across the whole stream
    all_cubes = list(canonical_cubes(pool))
    sizes = [len(c.literals) for c in all_cubes]
    assert sizes == sorted(sizes)
    assert len(all_cubes) == 2 ** len(pool)
