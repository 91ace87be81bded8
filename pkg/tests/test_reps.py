import numpy as np
import pytest

import semicrossed as sc
from helpers import power_iteration_norm


def cosine():
    return sc.TrigPoly.from_coeffs({1: 0.5, -1: 0.5})


def test_orbit_matrix_cosine(doubling):
    el = sc.cosine_element(doubling)
    m = sc.orbit_matrix(doubling, sc.rational(1, 3), el, 3)
    want = np.zeros((3, 3), dtype=complex)
    want[1, 0] = -0.5  # cos(2 pi / 3)
    want[2, 1] = -0.5
    assert np.max(np.abs(m - want)) <= 1e-12
    assert sc.spectral_norm(m) == pytest.approx(0.5)


def test_orbit_matrix_shift(doubling):
    m = sc.orbit_matrix(doubling, sc.rational(1, 5), sc.shift_element(doubling), 4)
    want = np.zeros((4, 4), dtype=complex)
    want[np.arange(1, 4), np.arange(3)] = 1.0
    assert np.array_equal(m, want)


def test_orbit_matrix_constant(doubling):
    m = sc.orbit_matrix(doubling, sc.rational(1, 5), sc.constant_element(doubling, 2.5), 3)
    assert np.array_equal(m, 2.5 * np.eye(3))


def test_orbit_matrix_truncates_wide_bands(doubling):
    el = sc.shift_element(doubling, 3)
    m = sc.orbit_matrix(doubling, sc.rational(1, 5), el, 3)
    assert np.array_equal(m, np.zeros((3, 3)))


def test_bilateral_window_too_small(doubling):
    lift = sc.periodic_lift(doubling, sc.rational(1, 3))
    with pytest.raises(sc.WindowTooSmall):
        sc.bilateral_matrix(doubling, lift, sc.shift_element(doubling, 3), 2)


def test_periodic_matrix_shift_power(doubling):
    lam = complex(np.exp(2j * np.pi / 3))
    u = sc.periodic_matrix(doubling, sc.rational(1, 7), lam, sc.shift_element(doubling))
    assert sc.spectral_norm(u) == pytest.approx(1.0)
    cubed = np.linalg.matrix_power(u, 3)
    assert np.max(np.abs(cubed - (lam**3) * np.eye(3))) <= 1e-12


def test_periodic_matrix_one_plus_u(doubling):
    el = sc.constant_element(doubling, 1.0) + sc.shift_element(doubling)
    m = sc.periodic_matrix(doubling, sc.rational(1, 3), -1.0 + 0j, el)
    assert np.max(np.abs(m - np.array([[1, -1], [-1, 1]], dtype=complex))) <= 1e-12
    m1 = sc.periodic_matrix(doubling, sc.rational(1, 3), 1.0 + 0j, el)
    assert sc.spectral_norm(m1) == pytest.approx(2.0)


def test_periodic_matrix_guards(doubling):
    el = sc.shift_element(doubling)
    with pytest.raises(sc.NotPeriodic):
        sc.periodic_matrix(doubling, sc.rational(1, 2), 1.0 + 0j, el)
    with pytest.raises(sc.BadLambda):
        sc.periodic_matrix(doubling, sc.rational(1, 3), 2.0 + 0j, el)


def test_periodic_ext_matrix_depth(doubling):
    lift = sc.periodic_lift(doubling, sc.rational(1, 7))
    deep = sc.element(doubling, {0: sc.ext(2, cosine())})
    m = sc.periodic_ext_matrix(doubling, lift, 1.0 + 0j, deep)
    # diagonal reads coordinate 2 of the shifted lifts
    orbit = [sc.rational(1, 7), sc.rational(2, 7), sc.rational(4, 7)]
    for i, x in enumerate(orbit):
        pred = sc.preimages(doubling, x)  # cycle predecessor is among these
        expected = cosine().eval_fraction(lift_pred(doubling, x))
        assert abs(m[i, i] - expected) <= 1e-12


def lift_pred(sys, x):
    # unique cycle predecessor of a periodic point
    cls = sc.classify(sys, x)
    orbit = sc.forward_orbit(sys, x, cls.period)
    return orbit[-1].value


def test_bilateral_matrix_shift(doubling):
    lift = sc.periodic_lift(doubling, sc.rational(1, 3))
    m = sc.bilateral_matrix(doubling, lift, sc.shift_element(doubling), 2)
    assert m.shape == (5, 5)
    want = np.zeros((5, 5), dtype=complex)
    want[np.arange(1, 5), np.arange(4)] = 1.0
    assert np.array_equal(m, want)


def test_bilateral_matrix_values(doubling):
    lift = sc.periodic_lift(doubling, sc.rational(1, 3))
    el = sc.cosine_element(doubling)
    m = sc.bilateral_matrix(doubling, lift, el, 1)
    # window points are shift^(j-1) of the lift: 2/3, 1/3, 2/3
    vals = [cosine().eval_fraction(v) for v in
            (sc.rational(2, 3).value, sc.rational(1, 3).value)]
    assert abs(m[1, 0] - vals[0]) <= 1e-12
    assert abs(m[2, 1] - vals[1]) <= 1e-12


def test_backward_matrix_band(doubling):
    xt = sc.lift_point(doubling, sc.rational(1, 3), sc.AlwaysMin())
    rf = sc.to_right_form(sc.from_base(doubling, cosine(), power=1))
    m = sc.backward_matrix(doubling, xt, rf, 3)
    assert abs(m[1, 0] - cosine().eval_fraction(sc.rational(1, 6).value)) <= 1e-12
    assert abs(m[2, 1] - cosine().eval_fraction(sc.rational(1, 12).value)) <= 1e-12
    assert np.max(np.abs(np.triu(m))) == 0.0


def test_backward_matrix_takes_right_form(doubling):
    xt = sc.lift_point(doubling, sc.rational(1, 3), sc.AlwaysMin())
    with pytest.raises(sc.WrongForm):
        sc.backward_matrix(doubling, xt, sc.shift_element(doubling), 3)


def test_rep_matrix_dispatch(doubling):
    el = sc.cosine_element(doubling)
    x = sc.rational(1, 7)
    direct = sc.orbit_matrix(doubling, x, el, 5)
    routed = sc.rep_matrix(doubling, sc.OrbitTruncation(x, 5), el)
    assert np.array_equal(direct, routed)

    lam = complex(np.exp(2j * np.pi / 7))
    assert np.array_equal(
        sc.rep_matrix(doubling, sc.PeriodicOrbitRep(x, lam), el),
        sc.periodic_matrix(doubling, x, lam, el),
    )

    lift = sc.periodic_lift(doubling, x)
    assert np.array_equal(
        sc.rep_matrix(doubling, sc.BilateralWindowRep(lift, 3), el),
        sc.bilateral_matrix(doubling, lift, el, 3),
    )

    rf = sc.to_right_form(el)
    assert np.array_equal(
        sc.rep_matrix(doubling, sc.BackwardOrbitRep(lift, 4), rf),
        sc.backward_matrix(doubling, lift, rf, 4),
    )


def test_covariance_defect_exact(golden_mean, perm3):
    f = sc.CylinderFunction.from_values(1, {(0,): 1.5, (1,): -0.5})
    spec = sc.OrbitTruncation(sc.WordPoint((), (0, 1)), 6)
    assert sc.covariance_defect(golden_mean, spec, f) == 0.0

    g = sc.TabularFunction((1.0, 2.0, -1.0))
    spec = sc.PeriodicOrbitRep(sc.StatePoint(0), complex(np.exp(2j * np.pi / 8)))
    assert sc.covariance_defect(perm3, spec, g) == 0.0


def test_covariance_defect_circle(doubling):
    spec = sc.OrbitTruncation(sc.rational(1, 7), 9)
    assert sc.covariance_defect(doubling, spec, cosine()) <= 1e-12


def test_covariance_wrong_relation(doubling):
    spec = sc.OrbitTruncation(sc.rational(1, 7), 8)
    assert sc.covariance_defect(doubling, spec, cosine(), relation=2) > 0.1
    lift = sc.lift_point(doubling, sc.rational(1, 3), sc.AlwaysMin())
    back = sc.BackwardOrbitRep(lift, 8)
    assert sc.covariance_defect(doubling, back, cosine()) <= 1e-12
    assert sc.covariance_defect(doubling, back, cosine(), relation=1) > 0.1


def test_separating_diag_is_projector(doubling):
    orbit = sc.forward_orbit(doubling, sc.rational(1, 5), 4)
    f = sc.separating_function(doubling, orbit, 2, 4)
    m = sc.orbit_matrix(doubling, sc.rational(1, 5), sc.from_base(doubling, f), 4)
    want = np.zeros((4, 4), dtype=complex)
    want[2, 2] = 1.0
    assert np.max(np.abs(m - want)) <= 1e-12


def test_invariant_subspaces_true_case(doubling):
    x = sc.rational(1, 5)
    orbit = sc.forward_orbit(doubling, x, 3)
    funcs = [sc.separating_function(doubling, orbit, t, 3) for t in range(3)]
    assert sc.invariant_subspaces_are_tails(doubling, x, funcs, 3)


def test_invariant_subspaces_collision(doubling):
    x = sc.rational(1, 3)
    with pytest.raises(sc.OrbitCollision):
        sc.invariant_subspaces_are_tails(doubling, x, [cosine()], 3)


def test_invariant_subspaces_window(doubling):
    with pytest.raises(ValueError):
        sc.invariant_subspaces_are_tails(doubling, sc.rational(1, 5), [cosine()], 13)
    assert sc.invariant_subspaces_are_tails(doubling, sc.rational(1, 5), [cosine()], 1)


def test_spectral_norm_vs_power_iteration(doubling):
    rng = np.random.default_rng(3)
    el = sc.element(
        doubling,
        {
            0: sc.ext(1, sc.TrigPoly.from_coeffs({0: 0.4, 1: 0.2j})),
            2: sc.ext(1, sc.TrigPoly.from_coeffs({-1: 0.7})),
        },
    )
    m = sc.orbit_matrix(doubling, sc.rational(1, 11), el, 12)
    assert sc.spectral_norm(m) == pytest.approx(power_iteration_norm(m), abs=1e-9)
