import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.special import ellipj, ellipk

from flexilab.elliptica import (
    EllipticModulus,
    biquad_coefficients,
    dn,
    jacobi,
    quarter_period,
    quarter_period_landen,
)
from flexilab.errors import DegenerateShiftError, DomainError

moduli = st.floats(0.0, 0.999)


def test_known_quarter_period():
    assert quarter_period(0.5) == pytest.approx(1.685750354812596, abs=1e-14)
    assert quarter_period(0.0) == pytest.approx(math.pi / 2, abs=1e-15)


def test_quarter_period_domain():
    with pytest.raises(DomainError):
        quarter_period(1.0)
    with pytest.raises(DomainError):
        EllipticModulus(-0.1)
    with pytest.raises(DomainError):
        jacobi(0.3, 1.2)


@given(moduli)
def test_agm_matches_landen_and_scipy(k):
    K = quarter_period(k)
    assert K == pytest.approx(quarter_period_landen(k), rel=1e-13)
    assert K == pytest.approx(float(ellipk(k * k)), rel=1e-12)


@pytest.mark.parametrize("k", [0.0, 0.3, 0.7, 0.95, 0.999])
def test_pythagorean_identities(k):
    u = np.linspace(-20, 20, 10_000)
    s, c, d = jacobi(u, k)
    assert np.max(np.abs(s * s + c * c - 1)) < 1e-14
    assert np.max(np.abs(d * d + k * k * s * s - 1)) < 1e-14


@given(moduli, st.floats(-30, 30))
def test_against_scipy(k, u):
    s, c, d = jacobi(u, k)
    ss, cc, dd, _ = ellipj(u, k * k)
    assert s == pytest.approx(ss, abs=1e-12)
    assert c == pytest.approx(cc, abs=1e-12)
    assert d == pytest.approx(dd, abs=1e-12)


@given(moduli, st.floats(-5, 5))
def test_periodicity(k, u):
    K = quarter_period(k)
    s, c, d = jacobi(u, k)
    s4, c4, d4 = jacobi(u + 4 * K, k)
    assert s4 == pytest.approx(s, abs=1e-11)
    assert c4 == pytest.approx(c, abs=1e-11)
    assert dn(u + 2 * K, k) == pytest.approx(d, abs=1e-11)


def test_degenerate_moduli():
    u = np.linspace(-3, 3, 7)
    s, c, d = jacobi(u, 0.0)
    assert np.allclose(s, np.sin(u)) and np.allclose(c, np.cos(u)) and np.allclose(d, 1)
    s, c, d = jacobi(u, 1.0)
    assert np.allclose(s, np.tanh(u)) and np.allclose(c, 1 / np.cosh(u)) and np.allclose(d, c)


@given(st.floats(0.05, 0.95), st.floats(0.1, 3.0), st.floats(-10, 10))
def test_biquadratic_holds_on_dn_pairs(k, sigma, u):
    K = quarter_period(k)
    if abs(math.remainder(sigma, 2 * K)) < 1e-3:
        return
    rel = biquad_coefficients(sigma, k)
    t, tp = dn(u, k), dn(u - sigma, k)
    assert abs(rel(t, tp)) < 1e-12


def test_biquadratic_small_modulus_limit():
    rel = biquad_coefficients(0.8, 0.0)
    s, c = math.sin(0.8), math.cos(0.8)
    assert np.allclose(rel.as_array(), [s * s, c * c, -1.0, c * c, s * s])
    assert rel(1.0, 1.0) == pytest.approx(0.0, abs=1e-15)


def test_biquadratic_degenerate_shift():
    k = 0.6
    with pytest.raises(DegenerateShiftError):
        biquad_coefficients(0.0, k)
    with pytest.raises(DegenerateShiftError):
        biquad_coefficients(2 * quarter_period(k), k)


def test_normalized_relation_is_sign_fixed():
    rel = biquad_coefficients(0.7, 0.4).normalized()
    arr = rel.as_array()
    assert np.linalg.norm(arr) == pytest.approx(1.0)
    assert arr[np.argmax(np.abs(arr))] > 0
