import numpy as np
import pytest

import semicrossed as sc
from helpers import power_iteration_norm


def cosine():
    return sc.TrigPoly.from_coeffs({1: 0.5, -1: 0.5})


def one_plus_u(sys):
    return sc.constant_element(sys, 1.0) + sc.shift_element(sys)


def test_spectral_norm_basics():
    assert sc.spectral_norm(np.eye(4)) == pytest.approx(1.0)
    shift = np.zeros((5, 5))
    shift[np.arange(1, 5), np.arange(4)] = 1.0
    assert sc.spectral_norm(shift) == pytest.approx(1.0)
    u = np.array([1.0, 2.0])
    v = np.array([3.0, 4.0])
    rank1 = np.outer(u, v)
    assert sc.spectral_norm(rank1) == pytest.approx(np.linalg.norm(u) * np.linalg.norm(v))
    assert sc.spectral_norm(np.zeros((0, 0))) == 0.0
    with pytest.raises(sc.NonFinite):
        sc.spectral_norm(np.array([[np.nan]]))


def test_embed_periodic_vector_fixed_point():
    eta = sc.embed_periodic_vector(np.array([1.0]), 1.0 + 0j, 2)
    assert np.max(np.abs(eta - np.array([1, 1]) / np.sqrt(2))) <= 1e-15


def test_embed_periodic_vector_twisted():
    eta = sc.embed_periodic_vector(np.array([1.0, 0.0]), 1j, 2)
    want = np.array([-1 / np.sqrt(2), 0.0, 1j / np.sqrt(2), 0.0])
    assert np.max(np.abs(eta - want)) <= 1e-15


def test_embed_periodic_vector_contract():
    rng = np.random.default_rng(1)
    xi = rng.normal(size=3) + 1j * rng.normal(size=3)
    lam = complex(np.exp(2j * np.pi / 7))
    eta = sc.embed_periodic_vector(xi, lam, 5)
    assert eta.shape == (15,)
    assert np.linalg.norm(eta) == pytest.approx(1.0)
    with pytest.raises(sc.BadLambda):
        sc.embed_periodic_vector(xi, 1.5 + 0j, 2)
    with pytest.raises(ValueError):
        sc.embed_periodic_vector(np.zeros(2), lam, 2)
    with pytest.raises(ValueError):
        sc.embed_periodic_vector(xi, lam, 0)


def test_orbit_estimate_shift(doubling):
    est = sc.orbit_norm_estimate(doubling, sc.shift_element(doubling), [sc.rational(1, 5)], 32)
    assert est.bracket.lower == pytest.approx(1.0)
    assert est.bracket.upper == pytest.approx(1.0)
    values = [v for _, v in est.traces]
    assert values == sorted(values)


def test_orbit_estimate_constant(doubling):
    est = sc.orbit_norm_estimate(
        doubling, sc.constant_element(doubling, -2.0 + 0j), [sc.rational(1, 3)], 16
    )
    assert (est.bracket.lower, est.bracket.upper) == (2.0, 2.0)


def test_orbit_estimate_window_guard(doubling):
    with pytest.raises(sc.WindowTooSmall):
        sc.orbit_norm_estimate(doubling, sc.shift_element(doubling, 9), [sc.rational(1, 3)], 8)


def test_periodic_estimate_one_plus_u(doubling):
    est = sc.periodic_norm_estimate(doubling, one_plus_u(doubling), [sc.rational(1, 3)], 8)
    assert est.bracket.lower == pytest.approx(2.0)
    assert est.bracket.upper == pytest.approx(2.0)
    assert "angle=0/8" in est.witness


def test_periodic_estimate_guards(doubling):
    with pytest.raises(sc.NotPeriodic):
        sc.periodic_norm_estimate(doubling, one_plus_u(doubling), [sc.rational(1, 2)], 16)
    with pytest.raises(ValueError):
        sc.periodic_norm_estimate(doubling, one_plus_u(doubling), [sc.rational(1, 3)], 4)


def test_periodic_certificate_dominates_finer_grid(doubling):
    rng = np.random.default_rng(8)
    coeffs = {int(k): complex(rng.normal(), rng.normal()) * 0.4 for k in range(-2, 3)}
    el = sc.from_base(doubling, sc.TrigPoly.from_coeffs(coeffs)) + sc.cosine_element(doubling)
    pts = [sc.rational(1, 7), sc.rational(1, 5)]
    coarse = sc.periodic_norm_estimate(doubling, el, pts, 16)
    fine = sc.periodic_norm_estimate(doubling, el, pts, 256)
    assert coarse.bracket.upper >= fine.bracket.lower - 1e-12
    assert coarse.bracket.lower <= fine.bracket.lower + 1e-12


def test_semicrossed_norm_flagship(doubling):
    pts = [sc.rational(1, 5)]
    per = [sc.rational(0, 1), sc.rational(1, 3)]
    est = sc.semicrossed_norm(doubling, one_plus_u(doubling), pts, per, 32, 32)
    assert est.bracket.lower == pytest.approx(2.0)
    assert est.bracket.upper <= 2.0 + 1e-9
    assert est.witness == "periodic"


def test_semicrossed_norm_cosine(doubling):
    pts = [sc.rational(1, 5)]
    per = [sc.rational(0, 1), sc.rational(1, 3), sc.rational(1, 7)]
    est = sc.semicrossed_norm(doubling, sc.cosine_element(doubling), pts, per, 32, 32)
    assert est.bracket.lower == pytest.approx(1.0)
    assert est.bracket.upper == pytest.approx(1.0)
    tagged = [t for t, _ in est.traces]
    assert any(t.startswith("orbit") for t in tagged)
    assert any(t.startswith("periodic") for t in tagged)


def test_twisted_periodic_matrix_agrees_on_sup(doubling):
    el = one_plus_u(doubling) + sc.cosine_element(doubling)
    y = sc.rational(1, 7)
    grid = [complex(np.exp(2j * np.pi * j / 64)) for j in range(64)]
    pub = max(sc.spectral_norm(sc.periodic_matrix(doubling, y, lam, el)) for lam in grid)
    twist = max(
        sc.spectral_norm(sc.twisted_periodic_matrix(doubling, y, lam, el)) for lam in grid
    )
    assert pub == pytest.approx(twist, abs=1e-10)


def test_periodic_vector_check_small(doubling):
    res = sc.periodic_vector_check(doubling, sc.rational(1, 3), 1.0 + 0j, one_plus_u(doubling), 2)
    assert res["period"] == 2 and res["blocks"] == 2
    assert res["rhs"] == pytest.approx(2.0)
    assert res["lhs"] <= res["rhs"] + 1e-12
    assert res["deficit"] == pytest.approx(res["rhs"] - res["lhs"])
    bigger = sc.periodic_vector_check(
        doubling, sc.rational(1, 3), 1.0 + 0j, one_plus_u(doubling), 8
    )
    assert bigger["deficit"] <= res["deficit"] + 1e-12


def test_periodic_vector_check_matches_power_iteration(doubling):
    el = one_plus_u(doubling)
    res = sc.periodic_vector_check(doubling, sc.rational(1, 7), 1j, el, 4)
    twisted = sc.twisted_periodic_matrix(doubling, sc.rational(1, 7), 1j, el)
    assert res["rhs"] == pytest.approx(power_iteration_norm(twisted), abs=1e-9)


def test_bilateral_orbit_check_shift(doubling):
    lift = sc.periodic_lift(doubling, sc.rational(1, 3))
    res = sc.bilateral_orbit_check(doubling, lift, sc.shift_element(doubling), 64)
    assert res["orbit_sup"] == pytest.approx(1.0)
    assert 0.0 <= res["gap"] <= 1e-2
    narrow = sc.bilateral_orbit_check(doubling, lift, sc.shift_element(doubling), 8)
    assert res["gap"] <= narrow["gap"] + 1e-12


def test_bilateral_orbit_check_permutation(perm3):
    lift = sc.periodic_lift(perm3, sc.StatePoint(0))
    el = sc.from_base(perm3, sc.TabularFunction((1.0, -1.0, 0.5)), power=1)
    res = sc.bilateral_orbit_check(perm3, lift, el, 32)
    assert res["gap"] <= 1e-2


def test_embedding_check_shift(doubling):
    res = sc.embedding_check(
        doubling,
        sc.shift_element(doubling),
        [sc.rational(1, 5)],
        [sc.rational(0, 1), sc.rational(1, 3)],
        [sc.periodic_lift(doubling, sc.rational(1, 3))],
        n_max=32,
        grid_size=32,
        half_width=16,
    )
    assert res["overlap"] is True
    assert res["semicrossed"].lower == pytest.approx(1.0)
    assert res["crossed"].lower == pytest.approx(1.0)


def test_estimates_require_semicrossed(doubling):
    bad = sc.shift_element(doubling, -1)
    with pytest.raises(sc.NotSemicrossed):
        sc.orbit_norm_estimate(doubling, bad, [sc.rational(1, 3)], 16)
    with pytest.raises(sc.NotSemicrossed):
        sc.periodic_norm_estimate(doubling, bad, [sc.rational(1, 3)], 16)
