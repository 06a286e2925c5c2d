import json
import math

import numpy as np
import pytest

from qmodular import certify as cert
from qmodular.certify import OrbitDatum, SingularPhi, certify_family, goodness_check, local_system_matrix
from qmodular.numerics import IDENTITY, S, T, matmul2, solve_symmetric_involution
from qmodular.qcore import NormalizedSeries, QSeries
from qmodular.specials import NormalizedVector, normalized_vector

RR_S = np.array([[0.8506508083520399, 0.5257311121191336], [0.5257311121191336, -0.8506508083520399]])
SWAP = np.array([[0, 1], [1, 0]])


@pytest.fixture(scope="module")
def rr_cert():
    return certify_family("RR", 2)


@pytest.fixture(scope="module")
def rr():
    return normalized_vector("RR", 2, 200)


def test_orbit_datum_validation():
    OrbitDatum(S, 5)
    with pytest.raises(ValueError):
        OrbitDatum(((1, 1), (1, 1)), 1)
    with pytest.raises(ValueError):
        OrbitDatum(IDENTITY, 0)


def test_rr_certificate(rr_cert):
    c = rr_cert
    assert c.verdict == cert.CERTIFIED
    assert np.abs(c.rho_S_solved - RR_S).max() < 1e-9
    assert np.abs(c.rho_S_solved - c.rho_S_solved.T).max() < 1e-9
    assert abs(np.linalg.det(c.rho_S_solved) + 1) < 1e-9
    assert np.abs(solve_symmetric_involution(c.rho_T) - c.rho_S_solved).max() < 1e-9
    assert c.exact_suite == "rr-theta-system" and c.exact_suite_passed


def test_ag2_is_rr_under_component_swap(rr_cert):
    c = certify_family("AG", 2)
    assert np.abs(c.rho_S_solved - SWAP @ rr_cert.rho_S_solved @ SWAP).max() < 1e-9
    assert c.verdict == cert.CERTIFIED_WITH_DISCREPANCY
    assert c.closed_form_deviation > 0.5
    assert any("RR closed form" in n for n in c.notes)


@pytest.mark.parametrize("k", [3, 4])
def test_ag_relations_and_unit_phases(k):
    c = certify_family("AG", k)
    assert c.dev_S2 <= 1e-8 and c.dev_ST3 <= 1e-8 and c.constancy_dev <= 1e-8
    assert np.allclose(np.abs(np.diag(c.rho_T)), 1, atol=1e-15)
    assert c.closed_form_deviation is not None
    # the solved matrix has entries of magnitude 2/sqrt(2k+1) |sin(2 pi i j/(2k+1))|
    M = 2 * k + 1
    alt = np.array([[2 / math.sqrt(M) * abs(math.sin(2 * math.pi * i * j / M)) for j in range(1, k + 1)]
                    for i in range(1, k + 1)])
    assert np.abs(np.abs(c.rho_S_solved) - alt).max() < 1e-10


def test_certify_preconditions():
    with pytest.raises(ValueError):
        certify_family("RR", 3)
    with pytest.raises(ValueError):
        certify_family("AG", 7)
    with pytest.raises(ValueError):
        certify_family("XX", 2)


def test_verdict_failed_on_tight_tolerance():
    assert certify_family("RR", 2, tol=1e-17).verdict == cert.FAILED


def test_json_stable_field_order_and_round_trip(rr_cert):
    text = rr_cert.dumps()
    data = json.loads(text)
    assert list(data)[:15] == ["family", "k", "order", "tol", "rho_T", "rho_S_solved", "rho_S_closed_form",
                               "residual_max", "constancy_dev", "dev_S2", "dev_ST3", "exponents_solved",
                               "exponents_exact", "closed_form_deviation", "verdict"]
    assert data["exponents_exact"] == [["-1", "60"], ["11", "60"]]
    assert cert.dumps(data) == text


def test_certificate_determinism(rr_cert):
    assert certify_family("RR", 2).dumps() == rr_cert.dumps()


def test_local_system_at_infinity(rr):
    ls = local_system_matrix(rr, [IDENTITY, T])
    for A in ls.A_samples:
        assert abs(A[0, 1]) < 1e-8 and abs(A[1, 0]) < 1e-8
    assert ls.exponents[0].real == pytest.approx(-1 / 60, abs=1e-6)
    assert ls.exponents[1].real == pytest.approx(11 / 60, abs=1e-6)


def test_local_system_at_zero(rr):
    ls = local_system_matrix(rr, [S, matmul2(S, T)], chart=S)
    assert max(ls.conds) < 1e3
    assert sorted(e.real for e in ls.exponents) == pytest.approx([-1 / 60, 11 / 60], abs=1e-6)


def test_constant_vector_is_singular():
    one = NormalizedSeries(0, QSeries.one(50))
    v = NormalizedVector([one, one], level=1, strict=False)
    with pytest.raises(SingularPhi):
        local_system_matrix(v, [IDENTITY, T])
    with pytest.raises(SingularPhi):
        local_system_matrix(v, [S, matmul2(S, T)], chart=S)


def test_local_system_needs_r_translates(rr):
    with pytest.raises(ValueError):
        local_system_matrix(rr, [IDENTITY])


def test_goodness_rr(rr):
    rep = goodness_check(rr, [OrbitDatum(IDENTITY, 1), OrbitDatum(S, 5)])
    assert rep.passed
    assert "not machine-checked" in rep.coverage_note
    inf, zero = rep.data
    for d in rep.data:
        assert d.cond_min < 1e3 and d.exponent_match < 1e-6 and d.transition_dev < 1e-8
    assert inf.periodicity_dev < 1e-10
    assert zero.periodicity_dev is None
    assert [e.real for e in zero.exponents_solved] == pytest.approx([-5 / 60, 55 / 60], abs=1e-6)


def test_goodness_constant_vector_fails():
    one = NormalizedSeries(0, QSeries.one(50))
    v = NormalizedVector([one, one], level=1, strict=False)
    rep = goodness_check(v, [OrbitDatum(IDENTITY, 1)])
    assert not rep.passed and not rep.data[0].invertible


def test_goodness_needs_orbit(rr):
    with pytest.raises(ValueError):
        goodness_check(rr, [])
