import pytest

from combinekit.classify import (
    bitzero_filter,
    build_lattice,
    class_ancestors,
    filter_chain_demo,
    generated_filter_inclusion,
    probe_certificate,
    refute_class,
)
from combinekit.filters import NO, UNKNOWN, YES, filter_includes, frechet, generated
from combinekit.properties import (
    CLASSES,
    LATTICE_EDGES,
    CertificateViolation,
    certificate,
)
from combinekit.sets import bitzero, evens, finite_set, odds


# -- certificate closure: all fifteen inclusion edges ---------------------------


def _member(cert, cls, n=4):
    return cert.member(cls, n=n, filt=frechet())


EDGE_WITNESS_CERTS = {
    # For each edge (lower, upper): a certificate construction that is in
    # the lower class; closure must force membership in the upper class.
    ("n-decidable", "decidable"): dict(n_decidable_rule=("only", frozenset({4}))),
    ("ID", "decidable"): dict(infinitely_decidable=True),
    ("CFS", "n-decidable"): dict(cfs=True),
    ("co-F-QG", "CFS"): dict(cofqg_rule=("complement-not-in-filter", evens())),
    ("CS", "CFS"): dict(cfs=True, infinitely_decidable=True),
    ("CS", "ID"): dict(cfs=True, infinitely_decidable=True),
    ("SI", "ID"): dict(stably_infinite=True),
    ("F-QG", "co-F-QG"): dict(fqg_rule=("all",)),
    ("gentle", "F-QG"): dict(gentle=True),
    ("gentle", "CS"): dict(gentle=True),
    ("SM+CS", "CS"): dict(smooth=True, cfs=True),
    ("SM+CS", "SI"): dict(smooth=True, cfs=True),
    ("n-shiny", "gentle"): dict(n_shiny_param=4),
    ("shiny", "n-shiny"): dict(shiny=True),
    ("shiny", "SM+CS"): dict(shiny=True),
}


@pytest.mark.parametrize("edge", LATTICE_EDGES)
def test_each_inclusion_edge_enforced_by_closure(edge):
    lower, upper = edge
    cert = certificate(**EDGE_WITNESS_CERTS[edge])
    assert _member(cert, lower), f"construction should land in {lower}"
    assert _member(cert, upper), f"{lower} membership must imply {upper}"


def test_certificate_violations_rejected():
    with pytest.raises(CertificateViolation):
        certificate(shiny=True, smooth=False)
    with pytest.raises(CertificateViolation):
        certificate(shiny=True, gentle=False)
    with pytest.raises(CertificateViolation):
        certificate(gentle=True, cfs=False)
    with pytest.raises(CertificateViolation):
        certificate(gentle=True, fqg_rule=("none",))
    with pytest.raises(CertificateViolation):
        certificate(stably_infinite=True, infinitely_decidable=False)
    with pytest.raises(CertificateViolation):
        certificate(never_infinite=True, stably_infinite=True)
    with pytest.raises(CertificateViolation):
        certificate(never_infinite=True, smooth=True)
    with pytest.raises(CertificateViolation):
        certificate(smooth=True, stably_infinite=False)
    with pytest.raises(CertificateViolation):
        certificate(fqg_rule=("all",), cofqg_rule=("none",))
    with pytest.raises(CertificateViolation):
        certificate(cofqg_rule=("complement-not-in-filter", evens()), cfs=False)


def test_class_ancestors():
    assert class_ancestors("shiny") == frozenset(CLASSES)
    assert class_ancestors("decidable") == frozenset({"decidable"})
    assert "SI" not in class_ancestors("gentle")


# -- probe examples ---------------------------------------------------------------


def test_probe_gentle_passes_for_bounded_theory(catalog):
    rows = probe_certificate(catalog["T_leq_3"], samples=25)
    verdicts = {r["flag"]: r["verdict"] for r in rows}
    assert verdicts["gentle"] == "pass"
    assert "SI" not in verdicts  # unclaimed flags are not probed


def test_probe_smcs_for_infinite_only_theory(catalog):
    rows = probe_certificate(catalog["T_inf"], samples=25)
    verdicts = {r["flag"]: r["verdict"] for r in rows}
    assert verdicts["smooth"] == "probe-pass"
    assert verdicts["CFS"] == "pass"
    assert verdicts["ID"] == "pass"


def test_probe_rows_have_schema(catalog):
    rows = probe_certificate(catalog["T_cs"], samples=20)
    for r in rows:
        assert set(r) == {"theory", "flag", "verdict", "evidence"}
        assert r["verdict"] in ("pass", "fail", "probe-pass", "unknown")


def test_whole_catalog_probes_clean(theory_list):
    for t in theory_list:
        for row in probe_certificate(t, samples=20):
            assert row["verdict"] != "fail", row


# -- refutations --------------------------------------------------------------------


def test_refute_si_structurally(catalog):
    verdict, evidence = refute_class(catalog["T_leq_3"], "SI")
    assert verdict == "fail"
    assert "clique" in evidence


def test_refute_cofqg_structurally(catalog):
    verdict, _ = refute_class(catalog["T_cs"], "co-F-QG")
    assert verdict == "fail"
    verdict, _ = refute_class(catalog["T_inf"], "co-F-QG")
    assert verdict == "fail"
    verdict, _ = refute_class(catalog["T_cfs"], "co-F-QG")
    assert verdict == "fail"


def test_refute_gentle_structurally_for_infinite_only(catalog):
    verdict, _ = refute_class(catalog["T_inf"], "gentle")
    assert verdict == "fail"


def test_refute_nshiny_structurally(catalog):
    verdict, _ = refute_class(catalog["T_leq_3"], "n-shiny", n=4)
    assert verdict == "fail"
    verdict, _ = refute_class(catalog["T_mn_4_5"], "n-shiny", n=4)
    assert verdict == "fail"


def test_refute_fqg_for_evens_cap(catalog):
    verdict, _ = refute_class(catalog["T_leq_S_evens"], "F-QG")
    assert verdict == "fail"


def test_refutations_that_need_the_tag_set_are_paper_level(catalog):
    for name, cls in [
        ("T_mn_2_5", "CFS"),
        ("T_si", "CFS"),
        ("T_d_4", "ID"),
        ("T_leq_S_evens", "ID"),
        ("Th_of(toy)", "ID"),
        ("T_si", "shiny"),
    ]:
        verdict, _ = refute_class(catalog[name], cls)
        assert verdict == "paper-level", (name, cls)


# -- lattice --------------------------------------------------------------------------


def test_lattice_has_15_edges_with_witnesses(theory_list):
    rep = build_lattice(theory_list)
    assert len(rep.edges) == 15
    assert set(rep.witnesses) == {f"{lo}<{hi}" for lo, hi in rep.edges}
    assert not rep.inconsistent


def test_lattice_placements_match_expected(theory_list):
    rep = build_lattice(theory_list)
    expected = {
        "T_d_4": ["decidable"],
        "T_d_3": ["n-decidable"],
        "T_cfs": ["CFS"],
        "T_mn_4_5": ["ID"],
        "T_cs": ["CS"],
        "T_si": ["SI"],
        "T_leq_3": ["gentle"],
        "T_inf": ["SM+CS"],
        "T_ns_4": ["n-shiny"],
        "T_geq_2": ["shiny"],
        "T_eq": ["shiny"],
    }
    for name, classes in expected.items():
        assert rep.placements[name] == classes, name


def test_lattice_size_cap_placements(theory_list, catalog):
    rep = build_lattice(theory_list)
    assert rep.placements[catalog["T_leq_S_evens"].name] == ["co-F-QG"]
    assert rep.placements[catalog["T_leq_S_all"].name] == ["F-QG"]


def test_lattice_dot_output(theory_list):
    dot = build_lattice(theory_list).to_dot()
    assert dot.startswith("digraph")
    assert dot.count("->") == 15


def test_strict_edge_witness_examples(theory_list, catalog):
    rep = build_lattice(theory_list)
    # a theory with computable finite spectra that is not co-quasi-gentle
    assert rep.witnesses["co-F-QG<CFS"] == "T_inf"
    # gentle but not n-shiny at the lattice cardinality
    w = rep.witnesses["n-shiny<gentle"]
    assert not catalog[w].certificate.is_n_shiny(4)
    # stably infinite only
    w = rep.witnesses["SM+CS<SI"]
    assert catalog[w].certificate.stably_infinite and not catalog[w].certificate.sm_cs


# -- filters ----------------------------------------------------------------------------


def test_frechet_membership():
    assert frechet().member(evens()) == NO
    assert frechet().member(finite_set([1, 2]).complement()) == YES


def test_generated_filter_membership_exact():
    f12 = bitzero_filter({1, 2})
    assert f12.member(bitzero(1)) == YES
    assert f12.member(bitzero(1).intersect(bitzero(2))) == YES
    assert f12.member(odds()) == NO
    assert f12.member(finite_set([2]).complement()) == YES  # cofinite refinement


def test_generated_filter_bounded_search_can_answer_unknown():
    f12 = bitzero_filter({1, 2})
    inter = bitzero(1).intersect(bitzero(2))
    assert f12.member(inter, search_bound=1) == UNKNOWN
    assert f12.member(inter, search_bound=2) == YES


def test_generators_must_have_infinite_intersections():
    with pytest.raises(ValueError):
        generated((evens(), odds()))


def test_filter_inclusion_examples():
    # strict inclusion with an explicit separating generator
    assert generated_filter_inclusion({1}, {1, 2}) == YES
    assert generated_filter_inclusion({1, 2}, {1}) == NO
    assert bitzero_filter({1, 2}).member(bitzero(2)) == YES
    assert bitzero_filter({1}).member(bitzero(2)) == NO
    # incomparability of distinct singletons
    assert generated_filter_inclusion({1}, {2}) == NO
    assert generated_filter_inclusion({2}, {1}) == NO
    # the Fréchet filter sits below everything
    assert filter_includes(frechet(), bitzero_filter({3})) == YES


def test_filter_inclusion_matches_index_inclusion_exhaustively():
    import itertools

    universe = [1, 2, 3, 4, 5]
    subsets = []
    for r in range(len(universe) + 1):
        subsets.extend(set(c) for c in itertools.combinations(universe, r))
    for s1 in subsets:
        for s2 in subsets:
            want = YES if s1 <= s2 else NO
            assert generated_filter_inclusion(s1, s2) == want, (s1, s2)


def test_filter_chain_demo_report():
    report = filter_chain_demo(5)
    assert report["ok"]
    assert len(report["chain"]) == 36
    assert len(report["antichain"]) == 20
