import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, strategies as st

from gyrolab.core import run_law_suite
from gyrolab.einstein import (
    DomainError,
    EinsteinConfig,
    EinsteinGyrogroup,
    EinsteinVelocity,
    einstein_add,
    einstein_coadd,
    einstein_gyr,
    einstein_neg,
    lorentz_gamma,
)

mp.mp.dps = 50


def mp_add(u, v, c=1):
    """Einstein addition in 50-digit arithmetic, written out independently."""
    u = [mp.mpf(x) for x in u]
    v = [mp.mpf(x) for x in v]
    c = mp.mpf(c)
    uv = mp.fsum(a * b for a, b in zip(u, v))
    g = 1 / mp.sqrt(1 - mp.fsum(a * a for a in u) / c**2)
    k = 1 / (1 + uv / c**2)
    return [k * (u[i] + v[i] / g + (g / (1 + g)) * uv * u[i] / c**2) for i in range(3)]


def V(*xs, c=1.0):
    return EinsteinVelocity(xs, c)


def test_gamma_values():
    assert lorentz_gamma(V(0, 0, 0)) == 1.0
    assert abs(lorentz_gamma(V(0.6, 0, 0)) - 1.25) <= 1e-15
    assert abs(lorentz_gamma(V(0, 0.8, 0)) - 5 / 3) <= 1e-15


def test_gamma_domain_error():
    with pytest.raises(DomainError):
        lorentz_gamma(V(1.0, 0, 0))
    with pytest.raises(DomainError):
        V(0.8, 0.8, 0)


def test_spot_sums():
    np.testing.assert_allclose(einstein_add(V(0.5, 0, 0), V(0.5, 0, 0)).v, [0.8, 0, 0], atol=1e-12)
    np.testing.assert_allclose(einstein_add(V(0.6, 0, 0), V(0, 0.6, 0)).v, [0.6, 0.48, 0], atol=1e-12)
    w = V(0.1, -0.3, 0.2)
    np.testing.assert_array_equal(einstein_add(V(0, 0, 0), w).v, w.v)


@given(st.lists(st.floats(-0.57, 0.57), min_size=3, max_size=3),
       st.lists(st.floats(-0.57, 0.57), min_size=3, max_size=3))
def test_add_matches_high_precision_oracle(u, v):
    got = einstein_add(V(*u), V(*v)).v
    want = [float(x) for x in mp_add(u, v)]
    np.testing.assert_allclose(got, want, atol=1e-13)


def test_add_other_c():
    c = 3.0
    got = einstein_add(V(1.5, 0.3, 0, c=c), V(-0.2, 1.1, 0.4, c=c)).v
    want = [float(x) for x in mp_add([1.5, 0.3, 0], [-0.2, 1.1, 0.4], c)]
    np.testing.assert_allclose(got, want, atol=1e-13)


def test_mismatched_c_rejected():
    with pytest.raises(DomainError):
        einstein_add(V(0.1, 0, 0), V(0.1, 0, 0, c=2.0))


def test_neg():
    np.testing.assert_array_equal(einstein_neg(V(0, 0, 0)).v, [0, 0, 0])
    u = V(0.5, 0, 0)
    np.testing.assert_allclose(einstein_add(einstein_neg(u), u).v, [0, 0, 0], atol=1e-9)
    w = V(0.3, 0.4, 0)
    assert math.isclose(einstein_neg(w).norm, w.norm)


def test_gyration_fixes_normal_direction():
    a, b, c = V(0.5, 0, 0), V(0, 0.5, 0), V(0, 0, 0.5)
    np.testing.assert_allclose(einstein_gyr(a, b, c).v, [0, 0, 0.5], atol=1e-12)


def test_gyration_frozen_value():
    # 50-digit evaluation of the gyrator identity
    a, b, x = V(0.5, 0, 0), V(0, 0.5, 0), V(0.3, 0.1, -0.2)
    want = [0.3112087098689503931761337, 0.05611718900393584534442551, -0.2]
    np.testing.assert_allclose(einstein_gyr(a, b, x).v, want, atol=1e-12)


def test_gyration_is_automorphism_at_spot():
    a, b = V(0.5, 0, 0), V(0, 0.5, 0)
    x, y = V(0.2, -0.1, 0.3), V(-0.4, 0.2, 0.1)
    lhs = einstein_gyr(a, b, einstein_add(x, y)).v
    rhs = einstein_add(einstein_gyr(a, b, x), einstein_gyr(a, b, y)).v
    np.testing.assert_allclose(lhs, rhs, atol=1e-12)


def test_coadd_inverts_subtraction():
    E = EinsteinGyrogroup()
    rng = np.random.default_rng(7)
    a, b = E.sample(rng, 200), E.sample(rng, 200)
    back = E.coadd(E.sub(a, b), b)
    assert np.max(np.abs(back - a)) < 1e-9
    a0 = V(0.2, 0.3, 0.1)
    np.testing.assert_allclose(einstein_coadd(a0, V(0, 0, 0)).v, a0.v, atol=1e-15)


def test_closure_in_ball():
    E = EinsteinGyrogroup()
    rng = np.random.default_rng(11)
    u, v = E.sample(rng, 5000), E.sample(rng, 5000)
    assert np.all(np.linalg.norm(u, axis=1) <= 0.99)
    assert np.all(np.linalg.norm(E.add(u, v), axis=1) < 1)


def test_non_associative_witness():
    E = EinsteinGyrogroup()
    # w must not be normal to the u-v plane, where the gyration acts trivially
    u, v, w = np.array([0.5, 0, 0]), np.array([0, 0.5, 0]), np.array([0.3, 0.1, -0.2])
    dev = np.max(np.abs(E.add(E.add(u, v), w) - E.add(u, E.add(v, w))))
    assert dev > 10 * E.tolerance


@given(st.floats(-0.95, 0.95), st.floats(-0.95, 0.95))
def test_collinear_reduction(s, t):
    got = einstein_add(V(s, 0, 0), V(t, 0, 0)).v
    np.testing.assert_allclose(got, [(s + t) / (1 + s * t), 0, 0], atol=1e-12)


def test_low_precision_flag():
    assert V(0.9999995, 0, 0).low_precision
    assert not V(0.99, 0, 0).low_precision


def test_config_validation():
    with pytest.raises(ValueError):
        EinsteinConfig(c=0)
    with pytest.raises(ValueError):
        EinsteinConfig(c=1, tolerance=2)


def test_law_suite_other_c():
    reports = run_law_suite(EinsteinGyrogroup(EinsteinConfig(c=2.0)), "sampled", 2000, seed=5)
    assert all(r.status == "pass" for r in reports)
