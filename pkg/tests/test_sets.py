import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from combinekit.sets import (
    ALEPH0,
    EvPeriodicSet,
    bitzero,
    cofinite_excluding,
    empty_set,
    evens,
    finite_set,
    interval,
    odds,
    parse_set_literal,
    universe,
    upfrom,
)

ev_sets = st.builds(
    EvPeriodicSet,
    st.lists(st.booleans(), max_size=6).map(tuple),
    st.lists(st.booleans(), min_size=1, max_size=4).map(tuple),
)


def pointwise_bound(*sets: EvPeriodicSet) -> int:
    p = max(len(s.preperiod) for s in sets)
    q = math.lcm(*(len(s.period) for s in sets))
    return p + 2 * q


@given(ev_sets)
def test_canonicalization_idempotent(s):
    again = EvPeriodicSet(s.preperiod, s.period)
    assert again == s


@given(ev_sets, ev_sets)
@settings(max_examples=120)
def test_structural_equality_is_extensional(s, t):
    bound = pointwise_bound(s, t)
    same = all(s.contains(n) == t.contains(n) for n in range(1, bound + 1))
    assert (s == t) == same


@given(ev_sets, ev_sets, ev_sets)
@settings(max_examples=80)
def test_boolean_algebra_laws_pointwise(s, t, u):
    bound = pointwise_bound(s, t, u)
    for n in range(1, bound + 1):
        a, b, c = s.contains(n), t.contains(n), u.contains(n)
        assert s.union(t).contains(n) == (a or b)
        assert s.intersect(t).contains(n) == (a and b)
        assert s.complement().contains(n) == (not a)
        # De Morgan
        assert s.union(t).complement().contains(n) == (
            s.complement().intersect(t.complement()).contains(n)
        )
        # distributivity
        assert s.intersect(t.union(u)).contains(n) == (a and (b or c))


@given(ev_sets)
def test_classification_duality(s):
    assert (s.classify_size() == "cofinite") == (
        s.complement().classify_size() == "finite"
    )


@given(ev_sets, ev_sets)
@settings(max_examples=120)
def test_superset_matches_pointwise_check(s, t):
    bound = pointwise_bound(s, t)
    expected = all(s.contains(n) for n in range(1, bound + 1) if t.contains(n))
    assert s.is_superset(t) == expected


def test_membership_examples():
    assert evens().contains(4)
    assert not finite_set([2, 5]).contains(3)
    assert not bitzero(2).contains(2)  # 2 = 0b10 has bit 2 set


def test_boolean_op_examples():
    assert cofinite_excluding([2, 5]).complement() == finite_set([2, 5])
    inter = evens().intersect(upfrom(3))
    for n in range(1, 65):
        assert inter.contains(n) == (n % 2 == 0 and n >= 3)
    assert universe().is_superset(evens())


def test_classify_examples():
    assert finite_set([1, 2, 3]).classify_size() == "finite"
    assert cofinite_excluding([4]).classify_size() == "cofinite"
    assert evens().classify_size() == "infinite-coinfinite"
    for n in range(1, 129):
        assert evens().contains(n) == (n % 2 == 0)


def test_nth_excluded_examples():
    # complement of {4}: elements 1,2,3,5,6,...
    spec = cofinite_excluding([4]).complement().complement()
    assert spec == cofinite_excluding([4])
    assert spec.nth_excluded(1) == 4  # the only excluded element, then none
    assert spec.nth_excluded(2) is None
    # set whose complement is {1,2,3,5,6,7,...}: the spectrum {4}
    assert finite_set([4]).nth_excluded(4) == 5
    assert finite_set([4]).nth_excluded(5) == 6
    # complement {1,2} exhausted at index 3
    tail = upfrom(3)
    assert tail.nth_excluded(1) == 1
    assert tail.nth_excluded(2) == 2
    assert tail.nth_excluded(3) is None
    assert evens().min_element() == 2


def test_nth_excluded_deep_period_walk():
    s = evens()  # complement = odds
    for n in range(1, 40):
        assert s.nth_excluded(n) == 2 * n - 1


def test_bitzero_against_direct_bit_oracle():
    for i in range(1, 6):
        s = bitzero(i)
        for n in range(1, 200):
            assert s.contains(n) == (((n >> (i - 1)) & 1) == 0), (i, n)


def test_bitzero_family_strong_finite_intersection():
    import itertools

    family = [bitzero(i) for i in range(1, 6)]
    for r in range(1, 6):
        for combo in itertools.combinations(family, r):
            inter = combo[0]
            for s in combo[1:]:
                inter = inter.intersect(s)
            assert inter.is_infinite()


def test_bitzero_one_is_evens():
    assert bitzero(1) == evens()


def test_minimum_and_cardinality():
    assert empty_set().min_element() is None
    assert finite_set([7, 9]).cardinality() == 2
    assert evens().cardinality() is None
    assert interval(2, 3) == finite_set([2, 3])
    assert interval(5, 4).is_empty()


def test_literal_round_trip():
    examples = [
        "finite:[2,5]",
        "cofinite-excluding:[4]",
        "periodic:p=2,q=3,pre=10,per=011",
        "bitzero:3",
        "evens",
        "odds",
        "upfrom:4",
        "all",
        "empty",
    ]
    for text in examples:
        s = parse_set_literal(text)
        assert parse_set_literal(s.to_literal()) == s


def test_literal_rejects_garbage():
    from combinekit.errors import ParseError

    for bad in ["finite:[a]", "bitzero:0", "periodic:p=2,q=1,pre=1,per=1", "wat"]:
        with pytest.raises(ParseError):
            parse_set_literal(bad)


def test_aleph0_is_singleton():
    assert ALEPH0 is type(ALEPH0)()
    assert odds().complement() == evens()
