import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from flexilab.elliptica import biquad_coefficients, jacobi
from flexilab.errors import PhaseCollisionError, SpecError
from flexilab.families import (
    EllipticFlexSpec,
    RationalFlexSpec,
    bricard_family,
    common_bisector_deviation,
    elliptic_family,
    elliptic_gram,
    find_elliptic_spec,
    fit_biquadratic,
    normalize_tangents,
    rational_family,
    rational_family_eval,
    rational_limit,
    tangent_profile,
)
from flexilab.geomkit import simplex_frame


def _frame(n, seed):
    rng = np.random.default_rng(seed)
    while True:
        A = rng.normal(size=(n, n))
        fr = simplex_frame(A)
        if fr.altitudes.min() > 0.2 * fr.altitudes.max():
            return fr


def test_lambda_validation():
    fr = _frame(3, 0)
    with pytest.raises(SpecError, match="λ_i ≠ ±λ_j"):
        RationalFlexSpec(fr, [1.0, -1.0, 2.0])
    with pytest.raises(SpecError):
        RationalFlexSpec(fr, [1.0, 0.0, 2.0])
    with pytest.raises(SpecError):
        RationalFlexSpec(fr, [1.0, 2.0])


@given(st.integers(3, 6), st.integers(0, 10 ** 6),
       st.lists(st.floats(0.3, 3.0), min_size=6, max_size=6, unique=True))
def test_rational_family_keeps_edge_lengths(n, seed, lams):
    lam = np.array(lams[:n])
    if np.min(np.abs(np.subtract.outer(lam, lam))[~np.eye(n, dtype=bool)]) < 0.05:
        return
    spec = RationalFlexSpec(_frame(n, seed), lam)
    fam = rational_family(spec, interval=(0.2, 2.0))
    assert np.max(fam.edge_deviation(np.linspace(0.2, 2.0, 9))) < 1e-9


def test_rational_family_is_flat_at_zero(rational_specs):
    spec = rational_specs[3]
    P = rational_family_eval(spec, 0.0)
    B = P.coords[3:]
    # all b_i land in the hyperplane of the fixed simplex
    assert np.allclose((B - spec.frame.vertices[0]) @ spec.frame.m, 0, atol=1e-12)


def test_rational_limit(rational_specs):
    spec = rational_specs[4]
    far = rational_family_eval(spec, 1e7).coords[4:]
    assert np.allclose(far, rational_limit(spec), atol=1e-5)


def test_fixture_families(rational_specs, elliptic_specs):
    for n, spec in rational_specs.items():
        assert spec.n == n
        assert np.max(rational_family(spec).edge_deviation()) < 1e-9
    for n, spec in elliptic_specs.items():
        assert np.max(elliptic_family(spec).edge_deviation()) < 1e-9


def test_elliptic_gram_passes_gates(elliptic_specs):
    for spec in elliptic_specs.values():
        G = elliptic_gram(spec)
        w = np.linalg.eigvalsh(G)
        assert abs(w[0]) < 1e-9 and w[1] > 1e-6
        assert np.allclose(spec.frame.gram, G, atol=1e-9)


def test_elliptic_period(elliptic_specs):
    spec = elliptic_specs[3]
    fam = elliptic_family(spec)
    for u in (0.1, 0.9, 2.3):
        assert np.allclose(fam.evaluate(u).coords, fam.evaluate(u + 4 * spec.K).coords, atol=1e-10)


def test_phase_collision():
    with pytest.raises(PhaseCollisionError):
        EllipticFlexSpec(0.5, np.array([0.3, 0.3, 1.0]), np.array([1.0, 2.0, 3.0]))


def test_type_one_has_common_bisector(elliptic_specs):
    fam = bricard_family("I", elliptic_specs[3])
    for P in fam.sample(np.linspace(0, 4 * elliptic_specs[3].K, 21)):
        assert common_bisector_deviation(P) < 1e-8


def test_type_three_is_not_line_symmetric(rational_specs):
    fam = bricard_family(3, rational_specs[3])
    assert common_bisector_deviation(fam.evaluate(1.0)) > 1e-3


def test_bricard_type_errors(rational_specs):
    with pytest.raises(SpecError):
        bricard_family("I", rational_specs[3])
    with pytest.raises(SpecError):
        bricard_family("IV")


@pytest.mark.parametrize("n", [3, 4])
def test_rational_tangents_proportional_to_u(rational_specs, n):
    fam = rational_family(rational_specs[n])
    sweep = np.linspace(0.1, 3.0, 41)
    prof = tangent_profile(fam, sweep=sweep)
    ok = ~np.any(prof.flat, axis=1)
    _, modes, spreads = normalize_tangents(prof.t[ok], np.repeat(sweep[ok, None], n, axis=1))
    assert np.all(spreads < 1e-8)
    assert set(modes) <= {"direct", "inverse"}


def test_elliptic_tangents_follow_dn(elliptic_specs):
    spec = elliptic_specs[3]
    fam = elliptic_family(spec)
    sweep = np.linspace(0.05, 4 * spec.K - 0.05, 61)
    prof = tangent_profile(fam, sweep=sweep)
    ok = ~np.any(prof.flat, axis=1)
    ref = np.array([jacobi(u - spec.sigma, spec.k)[2] for u in sweep[ok]])
    _, _, spreads = normalize_tangents(prof.t[ok], ref)
    assert np.all(spreads < 1e-8)


def test_fit_biquadratic_recovers_relation():
    k, sigma = 0.7, 1.1
    u = np.linspace(-4, 4, 200)
    t, tp = jacobi(u, k)[2], jacobi(u - sigma, k)[2]
    rel, resid, null_dim = fit_biquadratic(t, tp)
    want = biquad_coefficients(sigma, k).normalized()
    assert np.allclose(rel.as_array(), want.as_array(), atol=1e-8)
    assert resid < 1e-11 and null_dim == 1


def test_find_elliptic_spec_small_search():
    spec = find_elliptic_spec(3, np.random.default_rng(7))
    fam = elliptic_family(spec)
    assert np.max(fam.edge_deviation(np.linspace(0, 4 * spec.K, 17))) < 1e-9


def test_spec_dict_fields(rational_specs, elliptic_specs):
    d = rational_specs[3].to_dict()
    assert d["kind"] == "rational" and d["n"] == 3
    e = elliptic_specs[3].to_dict()
    assert e["kind"] == "elliptic"
    assert math.isclose(e["k"], elliptic_specs[3].k)
