"""Verdicts of the ring verifier, the sweep driver, and the property suite."""

import json

import numpy as np
import pytest

from msnring.graphs import CliqueUnion
from msnring.rings import (
    center,
    direct_product,
    matrix_ring_2x2,
    ring_from_table,
    ring_noncomm_p2,
    upper_triangular_ring,
    zn,
)
from msnring.theorems import TheoremId, clique_union_msn_energy
from msnring.verification import (
    REPORT_CSV_HEADER,
    PropertySuiteReport,
    Verdict,
    VerificationReport,
    center_is_field,
    centralizer_energy_formula,
    enumerate_clique_unions,
    property_suite_clique_unions,
    sweep,
    verify_ring,
)


def doctored_ring(moduli, commuting_pairs, name, central=()):
    """Zero product table except asymmetric entries breaking every
    nonzero non-central pair outside commuting_pairs.  Not a ring;
    bypasses validation to exercise failure paths the genuine
    constructions never reach."""
    n = int(np.prod(moduli))
    table = np.zeros((n, n), dtype=np.int64)
    keep = {tuple(sorted(pair)) for pair in commuting_pairs}
    skip = {0, *central}
    for a in range(1, n):
        for b in range(a + 1, n):
            if a in skip or b in skip or (a, b) in keep:
                continue
            table[a, b] = 1
            table[b, a] = 2
    return ring_from_table(moduli, table, name=name, validate=False)


# --- PASS verdicts on the built-in families ---


@pytest.mark.parametrize("theorem,ring_factory,kwargs", [
    (TheoremId.T2_1, lambda: ring_noncomm_p2(2), {}),
    (TheoremId.T2_1, lambda: ring_noncomm_p2(3), {"p": 3}),
    (TheoremId.C2_2A, lambda: ring_noncomm_p2(2), {}),
    (TheoremId.C2_2B, lambda: ring_noncomm_p2(3), {}),
    (TheoremId.C2_2D, lambda: ring_noncomm_p2(5), {}),
    (TheoremId.C2_3A, lambda: ring_noncomm_p2(2), {}),
    (TheoremId.C2_3B, lambda: ring_noncomm_p2(3), {}),
    (TheoremId.C2_4A, lambda: ring_noncomm_p2(3), {}),
    (TheoremId.C2_4B, lambda: upper_triangular_ring(2), {}),
    (TheoremId.C2_4B, lambda: upper_triangular_ring(3), {}),
    (TheoremId.T3_1A, lambda: matrix_ring_2x2(2), {}),
    (TheoremId.T3_1B, lambda: direct_product(upper_triangular_ring(2), zn(2)), {}),
    (TheoremId.T3_3A, lambda: direct_product(matrix_ring_2x2(2), zn(2)), {}),
    (TheoremId.T3_3B, lambda: direct_product(upper_triangular_ring(2), zn(4)), {}),
    (TheoremId.T4_3, lambda: direct_product(upper_triangular_ring(2), zn(3)), {}),
    (TheoremId.T5_1, lambda: upper_triangular_ring(3), {}),
    (TheoremId.T5_1, lambda: matrix_ring_2x2(2), {}),
])
def test_builtin_instances_pass(theorem, ring_factory, kwargs):
    rep = verify_ring(ring_factory(), theorem, **kwargs)
    assert rep.verdict is Verdict.PASS, rep.detail
    assert rep.computed["msn_integral"] is True
    assert not rep.computed["msn_hyperenergetic"]
    assert rep.computed["decomposition"] in rep.predicted["decompositions"]
    assert rep.computed["msn_energy"] in rep.predicted["energies"]


def test_pass_report_contents():
    rep = verify_ring(upper_triangular_ring(2), TheoremId.C2_4B)
    assert rep.verdict is Verdict.PASS
    assert rep.ring_spec == "ut2:p=2"
    assert rep.detail == "3K2; msn energy 6"
    assert rep.computed["n"] == 6
    assert rep.computed["cn_energy"] == 0
    assert dict(rep.params)["p"] == 2
    # spectra in the report round-trip through JSON
    assert rep.computed["msn_spectrum"] == {"exact": True, "pairs": [[-1, 3], [1, 3]]}


# --- HYPOTHESIS_NOT_MET on genuine rings ---


def test_commutative_ring_is_rejected():
    rep = verify_ring(zn(6), TheoremId.T2_1)
    assert rep.verdict is Verdict.HYPOTHESIS_NOT_MET
    assert rep.detail == "ring is commutative"


def test_wrong_centralizer_count():
    rep = verify_ring(ring_noncomm_p2(3), TheoremId.C2_2A)
    assert rep.verdict is Verdict.HYPOTHESIS_NOT_MET
    assert rep.detail == "ring has 5 centralizers, not 4"


def test_wrong_order_shape():
    rep = verify_ring(upper_triangular_ring(2), TheoremId.C2_4A)
    assert rep.verdict is Verdict.HYPOTHESIS_NOT_MET
    assert "does not have exponent 2" in rep.detail
    rep = verify_ring(upper_triangular_ring(2), TheoremId.T4_3)
    assert rep.verdict is Verdict.HYPOTHESIS_NOT_MET
    assert "is not of the form p^3 q" in rep.detail


def test_wrong_center_size():
    rep = verify_ring(matrix_ring_2x2(2), TheoremId.T3_1B)
    assert rep.verdict is Verdict.HYPOTHESIS_NOT_MET
    assert rep.detail == "|Z(R)| = 2, not 4"


def test_missing_unity():
    rep = verify_ring(ring_noncomm_p2(2), TheoremId.C2_4B)
    assert rep.verdict is Verdict.HYPOTHESIS_NOT_MET
    assert rep.detail == "ring has no unity"


def test_conflicting_parameters():
    rep = verify_ring(ring_noncomm_p2(3), TheoremId.T2_1, p=2)
    assert rep.verdict is Verdict.HYPOTHESIS_NOT_MET
    assert "differs from [2, 2]" in rep.detail
    rep = verify_ring(ring_noncomm_p2(3), TheoremId.C2_3B, p=2)
    assert rep.verdict is Verdict.HYPOTHESIS_NOT_MET
    assert "smallest prime divisor" in rep.detail


def test_non_cc_ring_rejected_for_t5_1():
    rep = verify_ring(
        direct_product(matrix_ring_2x2(2), matrix_ring_2x2(2)), TheoremId.T5_1)
    assert rep.verdict is Verdict.HYPOTHESIS_NOT_MET
    assert "non-commutative centralizer" in rep.detail


# --- FAIL on doctored multiplication tables ---


def test_fail_wrong_component_count():
    # order 4, center {0, 2}: two isolated vertices where the closed
    # form demands three
    bad = doctored_ring((2, 2), [], name="doctored-4", central=(2,))
    assert center(bad).elements == (0, 2)
    rep = verify_ring(bad, TheoremId.C2_4A)
    assert rep.verdict is Verdict.FAIL
    assert "not among the predicted decompositions" in rep.detail
    assert rep.computed["decomposition"] == "2K1"
    assert "3K1" in rep.predicted["decompositions"]


def test_fail_not_a_clique_union():
    # path on 1-2-3-4 among eight non-central vertices
    bad = doctored_ring((3, 3), [(1, 2), (2, 3), (3, 4)], name="doctored-9")
    assert center(bad).elements == (0,)
    rep = verify_ring(bad, TheoremId.T2_1)
    assert rep.verdict is Verdict.FAIL
    assert rep.detail.startswith("not a union of cliques")
    assert rep.computed == {"n": 8, "decomposition": None}


# --- inferred t for the p^2 q family ---


def test_t4_1a_infers_t_from_uniform_components():
    bad = doctored_ring((2, 2, 3), [], name="doctored-12")
    assert center(bad).elements == (0,)
    rep = verify_ring(bad, TheoremId.T4_1A)
    assert rep.verdict is Verdict.PASS
    assert dict(rep.params)["t"] == 2
    assert rep.computed["decomposition"] == "11K1"


def test_t4_1a_mixed_sizes_need_explicit_t():
    bad = doctored_ring((2, 2, 3), [(1, 2)], name="doctored-12-mixed")
    rep = verify_ring(bad, TheoremId.T4_1A)
    assert rep.verdict is Verdict.HYPOTHESIS_NOT_MET
    assert "no single t applies" in rep.detail


def test_t4_1a_explicit_bad_t():
    bad = doctored_ring((2, 2, 3), [], name="doctored-12")
    rep = verify_ring(bad, TheoremId.T4_1A, t=6)
    assert rep.verdict is Verdict.HYPOTHESIS_NOT_MET
    assert "does not divide" in rep.detail


def test_t4_1b_on_doctored_instance():
    bad = doctored_ring((2, 2, 3), [], name="doctored-12")
    rep = verify_ring(bad, TheoremId.T4_1B)
    assert rep.verdict is Verdict.PASS
    assert rep.computed["decomposition"] == "11K1"


# --- center_is_field ---


def test_center_is_field():
    assert center_is_field(upper_triangular_ring(2))  # center is F_2
    assert not center_is_field(ring_noncomm_p2(2))  # trivial center
    assert not center_is_field(direct_product(upper_triangular_ring(2), zn(4)))


# --- sweep ---


def test_sweep_pass_rows_and_determinism():
    first = sweep([TheoremId.T2_1, TheoremId.C2_4B], [2, 3])
    second = sweep([TheoremId.T2_1, TheoremId.C2_4B], [2, 3])
    assert [r.to_json() for r in first] == [r.to_json() for r in second]
    assert [r.verdict for r in first] == [Verdict.PASS] * 4
    assert [r.ring_spec for r in first] == [
        "nc_p2:p=2", "nc_p2:p=3", "ut2:p=2", "ut2:p=3"]


def test_sweep_unsupported_reasons():
    rep, = sweep([TheoremId.T4_1A], [2], [3])
    assert rep.verdict is Verdict.UNSUPPORTED
    assert rep.detail == "no built-in ring family realizes these hypotheses"

    rep, = sweep([TheoremId.T4_3], [3], [3])
    assert rep.verdict is Verdict.UNSUPPORTED
    assert rep.detail == "p and q must be distinct primes"

    rep, = sweep([TheoremId.T4_3], [2])
    assert rep.verdict is Verdict.UNSUPPORTED
    assert rep.detail == "theorem needs a q range"

    rep, = sweep([TheoremId.T2_1], [4])
    assert rep.verdict is Verdict.UNSUPPORTED
    assert "not prime" in rep.detail

    rep, = sweep([TheoremId.T3_1A], [11])
    assert rep.verdict is Verdict.UNSUPPORTED
    assert "above the universe cap" in rep.detail
    assert rep.ring_spec == "none"


def test_sweep_mixed_grid():
    reports = sweep([TheoremId.T4_3], [2, 3], [2, 3])
    verdicts = {(dict(r.params)["p"], dict(r.params)["q"]): r.verdict
                for r in reports}
    assert verdicts == {
        (2, 2): Verdict.UNSUPPORTED,
        (2, 3): Verdict.PASS,
        (3, 2): Verdict.PASS,
        (3, 3): Verdict.UNSUPPORTED,
    }


# --- report serialization ---


def test_report_json_schema():
    rep = verify_ring(ring_noncomm_p2(2), TheoremId.T2_1)
    data = json.loads(rep.to_json())
    assert set(data) == {"theorem", "ring", "params", "verdict", "detail",
                         "computed", "predicted"}
    assert data["theorem"] == "t2_1"
    assert data["ring"] == "nc_p2:p=2"
    assert data["verdict"] == "PASS"
    assert data["params"] == {"p": 2, "m": 1}
    assert data["computed"]["msn_spectrum"]["exact"] is True


def test_report_csv_row():
    rep = verify_ring(upper_triangular_ring(2), TheoremId.C2_4B)
    row = rep.csv_row()
    assert len(row) == len(REPORT_CSV_HEADER)
    assert row[0] == "c2_4b"
    assert row[2] == "PASS"
    assert row[4] == "3K2"
    assert row[5] == "6"
    unmet = verify_ring(zn(4), TheoremId.T2_1)
    assert unmet.csv_row()[4] == ""


def test_t5_1_params_record_sizes():
    rep = verify_ring(upper_triangular_ring(2), TheoremId.T5_1)
    assert rep.verdict is Verdict.PASS
    params = dict(rep.params)
    assert params["m"] == 2
    assert sorted(params["sizes"]) == [4, 4, 4]


# --- centralizer energy identity ---


@pytest.mark.parametrize("ring_factory", [
    lambda: ring_noncomm_p2(2),
    lambda: ring_noncomm_p2(3),
    lambda: upper_triangular_ring(2),
    lambda: upper_triangular_ring(3),
    lambda: matrix_ring_2x2(2),
])
def test_centralizer_energy_formula_matches_spectrum(ring_factory):
    from msnring.graphs import clique_decomposition, commuting_graph
    ring = ring_factory()
    g = commuting_graph(ring)
    dec = clique_decomposition(g)
    assert isinstance(dec, CliqueUnion)
    assert centralizer_energy_formula(ring) == clique_union_msn_energy(dec)


# --- clique union enumeration and the property suite ---


def test_enumerate_clique_unions_counts():
    # partition numbers p(1)..p(12)
    partitions = [1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77]
    assert len(enumerate_clique_unions(12)) == sum(partitions)
    assert len(enumerate_clique_unions(3)) == 6
    out = enumerate_clique_unions(12)
    assert len(set(out)) == len(out)


def test_property_suite_clean_run():
    rep = property_suite_clique_unions(seed=7, trials=25, enumerate_total=6)
    assert isinstance(rep, PropertySuiteReport)
    assert rep.enumerated == 29
    assert rep.checked == 29 + 25
    assert rep.counterexamples == ()
    assert rep.passes == rep.checked
    # the two stated equality cases show up and are not violations
    assert any("1K3" in e and "msn" in e for e in rep.equalities)
    assert any(e.startswith("2K1:") and "cn" in e for e in rep.equalities)


def test_property_suite_deterministic():
    a = property_suite_clique_unions(seed=3, trials=10, enumerate_total=5)
    b = property_suite_clique_unions(seed=3, trials=10, enumerate_total=5)
    assert a == b
    c = property_suite_clique_unions(seed=4, trials=10, enumerate_total=5)
    assert c.counterexamples == ()


def test_property_suite_rejects_bad_trials():
    with pytest.raises(ValueError):
        property_suite_clique_unions(seed=1, trials=0)


def test_property_suite_report_json():
    rep = property_suite_clique_unions(seed=1, trials=5, enumerate_total=4)
    d = rep.to_json_dict()
    assert d["seed"] == 1 and d["trials"] == 5
    assert d["enumerated"] == 11
    assert d["counterexamples"] == []
