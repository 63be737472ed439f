import random

import pytest

from combinekit.brute import brute_sat_at, brute_spectrum, random_cube
from combinekit.catalog import (
    BigModelTagTheory,
    GapIndexTheory,
    MixedTagTheory,
    SingletonOrInfiniteTheory,
    SizeCapTheory,
    SizePinTheory,
    StepTheory,
    TaggedInfinityTheory,
    TwoSizeTheory,
    make_complete_theory,
    toy_inner_theory,
    witness_tgtnp,
)
from combinekit.errors import CapabilityMissing, SignatureError
from combinekit.formulas import (
    Cube,
    EqualityLiteral,
    PredicateId,
    PredicateLiteral,
    neq_clique,
    parse_formula,
    to_dnf,
)
from combinekit.sets import evens, odds
from combinekit.theories import minmod_equalities

TOP = Cube(())


def cube(text, resolver=None):
    (c,) = to_dnf(parse_formula(text, resolver))
    return c


def pid(family, *indices):
    return PredicateId(family, tuple(indices))


def plit(family, *indices, positive=True):
    return PredicateLiteral(pid(family, *indices), positive)


# -- equality minimum ---------------------------------------------------------


def test_minmod_equalities_matches_brute_assignments(rng):
    import itertools

    vs = ["a", "b", "c", "d"]
    for _ in range(200):
        lits = tuple(
            EqualityLiteral(*rng.sample(vs, 2), rng.random() < 0.5)
            for _ in range(rng.randint(0, 5))
        )
        c = Cube(lits)
        got = minmod_equalities(c)
        smallest = None
        for k in range(1, 5):
            ok = any(
                all(
                    (asg[l.left] == asg[l.right]) == l.positive
                    for l in c.eq_literals()
                )
                for asg in (
                    dict(zip(vs, values))
                    for values in itertools.product(range(k), repeat=4)
                )
            )
            if ok:
                smallest = k
                break
        assert got == smallest, c


def test_minmod_non_transitive_disequality_chain():
    # a!=b, b!=c admits a 2-element model (a=c); class counting would say 3
    c = Cube((EqualityLiteral("a", "b", False), EqualityLiteral("b", "c", False)))
    assert minmod_equalities(c) == 2


def test_minmod_odd_cycle_needs_three():
    vs = ["a", "b", "c", "d", "e"]
    lits = [EqualityLiteral(vs[i], vs[(i + 1) % 5], False) for i in range(5)]
    assert minmod_equalities(Cube(tuple(lits))) == 3


# -- decision procedure examples -----------------------------------------------


def test_size_pin_examples():
    t = SizePinTheory()
    assert t.decide_cube(cube("(and (P 3) (distinct x y))"))
    assert not t.decide_cube(cube("(and (P 2) (P 3))"))
    assert brute_sat_at(t, cube("(and (P 3) (distinct x y))"), 3)


def test_two_size_examples():
    t = TwoSizeTheory(2, 5)
    assert not t.decide_cube(neq_clique([f"v{i}" for i in range(6)], 6))
    assert not brute_spectrum(t, neq_clique([f"v{i}" for i in range(6)], 6), 6)
    assert t.spec_finite(cube("(P 9)"), 5)
    with pytest.raises(CapabilityMissing):
        t.spec_finite(cube("(P 9)"), 2)
    assert not t.spec_finite(cube("(P 9)"), 3)
    assert t.spec_finite(cube("(distinct x y)"), 2)  # no positive literal: answerable
    assert not t.spec_inf(cube("(P 9)"))


def test_size_cap_examples():
    t = SizeCapTheory(evens())
    c = cube("(and (P 5) (distinct x y))")
    assert t.decide_cube(c)
    assert brute_sat_at(t, c, 2) or brute_sat_at(t, c, 4)
    assert t.spec_finite(c, 4)
    assert not t.spec_finite(c, 5)
    with pytest.raises(CapabilityMissing):
        t.spec_inf(c)
    assert t.spec_inf(cube("(distinct x y)"))


def test_singleton_or_infinite_examples():
    t = SingletonOrInfiniteTheory()
    assert t.spec_inf(cube("(not (pred P))"))
    assert not t.spec_inf(cube("(pred P)"))
    assert t.decide_cube(cube("(pred P)"))
    assert not t.decide_cube(cube("(and (pred P) (distinct x y))"))


def test_mixed_tag_examples():
    t = MixedTagTheory(4)
    # even index 2k caps at F(k)=k
    assert t.decide_cube(cube("(P 6)"))  # cap 3 >= minmod 1
    assert not t.decide_cube(cube("(and (P 2) (distinct x y))"))  # cap 1 < 2
    assert t.spec_finite(cube("(P 7)"), 5)  # above the threshold: answerable
    with pytest.raises(CapabilityMissing):
        t.spec_finite(cube("(P 7)"), 4)
    assert t.spec_finite(cube("(P 1)"), 1)  # index 1 is unconstrained


def test_tagged_infinity_examples():
    t = TaggedInfinityTheory()
    assert t.decide_cube(cube("(P 5)"))
    assert t.spec_inf(cube("(P 5)"))
    with pytest.raises(CapabilityMissing):
        t.spec_finite(cube("(P 5)"), 3)


def test_foreign_predicate_rejected(catalog):
    with pytest.raises(SignatureError):
        catalog["T_eq"].decide_cube(cube("(P 1)"))
    with pytest.raises(SignatureError):
        catalog["T_eq_P"].decide_cube(cube("(pred P inf)"))


# -- model checking ---------------------------------------------------------------


def test_model_check_examples(catalog):
    tp = catalog["T_eq_P"]
    assert tp.model_check(3, frozenset({pid("P", 3)}))
    assert not tp.model_check(3, frozenset({pid("P", 2)}))
    tls = catalog["T_leq_S_evens"]
    assert not tls.model_check(3, frozenset())  # 3 is not an allowed size
    assert tls.model_check(2, frozenset())
    tmn = catalog["T_mn_2_5"]
    assert tmn.model_check(5, frozenset({pid("P", 9)}))  # tagged: must sit at 5
    assert not tmn.model_check(2, frozenset({pid("P", 9)}))
    assert tmn.model_check(2, frozenset({pid("P", 8)}))  # untagged: both sizes fine
    assert not tmn.model_check(3, frozenset())


def test_decide_is_tag_standin_independent(rng):
    """Decision procedures never read the undecidable-set stand-in; only
    model checkers do."""
    pairs = [
        (TwoSizeTheory(2, 5, u_standin=odds()), TwoSizeTheory(2, 5, u_standin=evens())),
        (TaggedInfinityTheory(u_standin=odds()), TaggedInfinityTheory(u_standin=evens())),
        (BigModelTagTheory(2, u_standin=odds()), BigModelTagTheory(2, u_standin=evens())),
        (MixedTagTheory(4, u_standin=odds()), MixedTagTheory(4, u_standin=evens())),
    ]
    for a, b in pairs:
        for _ in range(120):
            c = random_cube(a, rng)
            assert a.decide_cube(c) == b.decide_cube(c)


# -- witness transform ------------------------------------------------------------


def test_witness_examples():
    t = BigModelTagTheory(2)
    w = witness_tgtnp(t, cube("(and (P 2) (= x y))"))
    fresh = sorted(v for v in w.variables() if v not in {"x", "y"})
    assert fresh == ["x1", "x2", "x3"]
    assert all(EqualityLiteral(v, v) in w.literals for v in fresh)
    w1 = witness_tgtnp(BigModelTagTheory(1), cube("(P 1)"))
    assert len(w1.variables()) == 2  # threshold 1: two fresh tautologies
    with pytest.raises(ValueError):
        witness_tgtnp(t, TOP)
    with pytest.raises(ValueError):
        witness_tgtnp(t, cube("(and (P 1) (P 2))"))


def test_witness_preserves_satisfiability_and_witnessed_models(rng):
    t = BigModelTagTheory(2)
    checked = 0
    for _ in range(200):
        c = random_cube(t, rng, max_vars=3, max_literals=3)
        if len(c.positive_preds()) != 1 or not isinstance(
            c.positive_preds()[0].indices[0], int
        ):
            continue
        w = witness_tgtnp(t, c)
        assert t.decide_cube(c) == t.decide_cube(w)
        if t.decide_cube(w):
            # some model's domain is exactly the image of the witness variables
            assert any(
                _has_surjective_model(t, w, k) for k in range(1, 7)
            ), w
        checked += 1
        if checked >= 100:
            break
    assert checked >= 40


def _has_surjective_model(theory, c, k):
    import itertools

    vs = sorted(c.variables())
    if len(vs) < k:
        return False
    for subset in _pred_subsets_for(theory, c):
        if not theory.model_check(k, subset):
            continue
        if not all((l.pred in subset) == l.positive for l in c.pred_literals()):
            continue
        for values in itertools.product(range(1, k + 1), repeat=len(vs)):
            if set(values) != set(range(1, k + 1)):
                continue
            asg = dict(zip(vs, values))
            if all(
                (asg[l.left] == asg[l.right]) == l.positive for l in c.eq_literals()
            ):
                return True
    return False


def _pred_subsets_for(theory, c):
    import itertools

    pos = c.positive_preds()
    for r in range(len(pos) + 1):
        for combo in itertools.combinations(pos, r):
            yield frozenset(combo)


# -- composite test theories -------------------------------------------------------


def test_complete_theory_examples():
    cs = make_complete_theory("CS-complete")
    big = cube("(and (pred P inf) (distinct a b c d e f g))")
    assert cs.decide_cube(big)
    assert cs.spec_inf(big)
    shiny = make_complete_theory("shiny-complete")
    assert not shiny.decide_cube(Cube((plit("P", 3), plit("Q", 2))))
    si = make_complete_theory("SI-complete")
    assert si.decide_cube(Cube((plit("B", 4, 9),)))
    idc = make_complete_theory("ID-complete")
    assert idc.spec_inf(cube("(distinct x y)"))
    assert not idc.spec_inf(Cube((plit("R", 2, 5, 9),)))


def test_complete_theory_rejects_bad_two_size_indices():
    t = make_complete_theory("n-shiny-complete", n=4)
    with pytest.raises(SignatureError):
        t.decide_cube(Cube((plit("R", 4, 6, 1),)))  # lower size equals n
    with pytest.raises(SignatureError):
        t.decide_cube(Cube((plit("R", 5, 3, 1),)))  # not increasing


def test_unknown_complete_kind():
    with pytest.raises(ValueError):
        make_complete_theory("bogus")


# -- gap-index theory ----------------------------------------------------------------


def test_gap_index_worked_example():
    th = GapIndexTheory(toy_inner_theory())
    q = th.resolver("Q")
    expected = {1: 1, 2: 2, 3: 3, 4: 5, 5: 6}
    for n, s in expected.items():
        c = Cube((plit("P", q, n),))
        assert th.decide_cube(c)
        window = [k for k in range(1, 8) if th.spec_finite(c, k)]
        assert window == [s]
    nq = th.resolver("NOTQ")
    assert [k for k in range(1, 8) if th.spec_finite(Cube((plit("P", nq, 1),)), k)] == [1]
    assert [k for k in range(1, 8) if th.spec_finite(Cube((plit("P", nq, 2),)), k)] == [2]
    c3 = Cube((plit("P", nq, 3),))
    assert th.decide_cube(c3)
    assert not any(th.spec_finite(c3, k) for k in range(1, 8))
    assert th.infinite_only(c3)
    assert not brute_spectrum(th, c3, 6)


def test_gap_index_requires_cfs_inner():
    with pytest.raises(ValueError):
        GapIndexTheory(TaggedInfinityTheory())


def test_gap_index_minmod_blocks_unsatisfiable_pins():
    th = GapIndexTheory(toy_inner_theory())
    q = th.resolver("Q")
    # s_Q_2 = 2, but four pairwise-distinct variables force size >= 4
    c = Cube((plit("P", q, 2),)).join(neq_clique(["a", "b", "c", "d"], 4))
    assert not th.decide_cube(c)


# -- step theory shapes ---------------------------------------------------------------


def test_step_theory_classifier():
    toy = toy_inner_theory()
    assert toy.nshiny_classify(cube("(pred Q)")) == (0, 4)
    assert toy.nshiny_classify(cube("(not (pred Q))")) == (2, 3)
    assert toy.nshiny_classify(TOP) == (2, 3)
    assert toy.nshiny_classify(cube("(and (pred Q) (distinct a b c d e))")) is None
    tns = StepTheory(4, 4)
    assert tns.nshiny_classify(cube("(pred P)")) == (0, 4)
    assert tns.nshiny_classify(TOP) == (2, 4)


def test_step_theory_validation():
    with pytest.raises(ValueError):
        StepTheory(3, 5)


def test_step_theory_finite_membership():
    tns = StepTheory(4, 4)
    p = cube("(pred P)")
    assert tns.spec_finite(p, 4)
    assert not tns.spec_finite(p, 3)
    assert not tns.spec_inf(p)


def test_oracle_downward_consistency_sampled(rng):
    from combinekit.theories import doubling_oracle, identity_oracle

    samples = [(rng.randint(1, 20), rng.randint(1, 20)) for _ in range(100)]
    assert identity_oracle().check_downward_consistency(samples)
    assert doubling_oracle().check_downward_consistency(samples)
    from combinekit.theories import FOracle

    broken = FOracle("broken", lambda m, n: n == 3)
    assert not broken.check_downward_consistency([(2, 3)])


# -- certificate spot checks ------------------------------------------------------------


def test_certificate_spot_checks(catalog):
    tp = catalog["T_eq_P"]
    assert tp.certificate.cfs and tp.certificate.infinitely_decidable and tp.certificate.gentle
    tinf = catalog["T_inf"]
    assert tinf.certificate.sm_cs
    tmn = catalog["T_mn_2_5"]
    assert not tmn.certificate.cfs
    with pytest.raises(CapabilityMissing):
        tmn.spec_finite(cube("(P 9)"), 2)
    tgt = catalog["T_gt_2_P"]
    assert tgt.certificate.stably_infinite
    for text in ["(P 5)", "(and (P 4) (distinct x y))"]:
        c = cube(text)
        if tgt.decide_cube(c):
            assert tgt.spec_inf(c)
