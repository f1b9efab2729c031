import math

import pytest

import lidonor_py as lq


@pytest.fixture(scope="module")
def mat():
    return lq.build_materials()


def test_derived_constants(mat):
    d = lq.derive(mat)
    assert d.kappa0 == pytest.approx(0.6 * math.pi / mat.a_si)
    assert d.sigma == pytest.approx(1.1 / 8.77, rel=1e-6)
    assert d.t0_check == pytest.approx(16.5, abs=0.2)


def test_override_round_trip():
    p = lq.build_materials({"a_par_angstrom": 20.0})
    assert p.a_par == pytest.approx(20.0e-8)


def test_levels(mat):
    ls = lq.manifold(0.2, mat)
    # hbar*omega10 = delta_c eps at small eps
    homega_mev = lq.hbar * ls.omega10 / 1.602176634e-15
    assert homega_mev == pytest.approx(0.29333 * 0.2, rel=1e-2)
    assert ls.omega21 > 0.0


def test_lifetime_benchmark(mat):
    w10 = lq.decay_rate_10(0.2, mat).total
    assert 1.0 / w10 == pytest.approx(1.19, rel=0.02)


def test_rate_contrast(mat):
    w10 = lq.decay_rate_10(0.5, mat).total
    w21 = lq.decay_rate_21(0.5, mat).total
    assert w21 / w10 > 1e6


def test_couplings(mat):
    r = lq.nm_to_cm(100.0)
    w21 = lq.decay_rate_21(0.2, mat).total
    c = lq.couplings(r, 0.2, mat, w21)
    assert abs(c.g10) / math.pi == pytest.approx(0.448, rel=0.02)
    assert abs(c.j_ising) / math.pi == pytest.approx(0.3505e6, rel=0.02)
    assert lq.gamma_factor(mat) == pytest.approx(2.029, rel=1e-3)


def test_quality_and_temperature(mat):
    r = lq.nm_to_cm(100.0)
    q = lq.quality_two_level(r, 0.2, mat)
    assert q == pytest.approx(4.16e5, rel=0.01)
    t = lq.operating_temperature(1e3, lq.nm_to_cm(50.0), 0.002, mat)
    assert lq.quality_three_level(lq.nm_to_cm(50.0), 0.002, t, mat) == \
        pytest.approx(1e3, rel=1e-6)


def test_rabi(mat):
    f = lq.rabi_frequency_x(1e5, 2.0 * math.pi * 1e10, mat) / (2.0 * math.pi)
    assert f == pytest.approx(4.66e8, rel=0.01)
