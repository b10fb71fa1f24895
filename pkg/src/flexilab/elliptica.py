"""Real Jacobi elliptic functions and the dn-pair biquadratic relation.

``jacobi`` uses the arithmetic-geometric mean with descending Landen
back-substitution for the amplitude; ``quarter_period`` is the AGM formula
``K = pi / (2 AGM(1, k'))``.  ``quarter_period_landen`` is an independent
product formula over descending Landen moduli, kept as a cross-check.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateShiftError, DomainError

_MAX_ITER = 64


def _check_modulus(k, allow_one=False):
    k = float(k)
    if not (0.0 <= k < 1.0 or (allow_one and k == 1.0)):
        raise DomainError(f"modulus k = {k} outside [0, 1)")
    return k


def agm(a: float, b: float) -> float:
    for _ in range(_MAX_ITER):
        if abs(a - b) <= 1e-16 * a:
            break
        a, b = (a + b) / 2, math.sqrt(a * b)
    return (a + b) / 2


def quarter_period(k: float) -> float:
    k = _check_modulus(k)
    return math.pi / (2 * agm(1.0, math.sqrt((1 - k) * (1 + k))))


def quarter_period_landen(k: float) -> float:
    """K(k) = pi/2 * prod(1 + k_{j+1}) with k_{j+1} = (1 - k'_j) / (1 + k'_j)."""
    k = _check_modulus(k)
    K = math.pi / 2
    for _ in range(_MAX_ITER):
        if k < 1e-17:
            break
        kp = math.sqrt((1 - k) * (1 + k))
        k = (1 - kp) / (1 + kp)
        K *= 1 + k
    return K


@dataclass(frozen=True)
class EllipticModulus:
    k: float

    def __post_init__(self):
        _check_modulus(self.k)

    @property
    def K(self) -> float:
        return quarter_period(self.k)


def jacobi(u, k):
    """(sn, cn, dn) at real ``u`` (scalar or array) for modulus ``0 <= k <= 1``."""
    k = _check_modulus(k, allow_one=True)
    u = np.asarray(u, float)
    if k == 0.0:
        return np.sin(u), np.cos(u), np.ones_like(u)
    if k == 1.0:
        sech = 1.0 / np.cosh(u)
        return np.tanh(u), sech, sech
    a, b, c = [1.0], [math.sqrt((1 - k) * (1 + k))], [k]
    while abs(c[-1]) > 1e-16 and len(a) < _MAX_ITER:
        a.append((a[-1] + b[-1]) / 2)
        b.append(math.sqrt(a[-2] * b[-1]))
        c.append((a[-2] - b[-2]) / 2)
    N = len(a) - 1
    phi = (2.0 ** N) * a[N] * u
    for j in range(N, 0, -1):
        phi = (phi + np.arcsin(np.clip(c[j] / a[j] * np.sin(phi), -1.0, 1.0))) / 2
    sn = np.sin(phi)
    cn = np.cos(phi)
    dn = np.sqrt(1.0 - (k * sn) ** 2)
    return sn, cn, dn


def sn(u, k):
    return jacobi(u, k)[0]


def cn(u, k):
    return jacobi(u, k)[1]


def dn(u, k):
    return jacobi(u, k)[2]


@dataclass(frozen=True)
class BiquadraticRelation:
    """A t^2 t'^2 + B t^2 + 2 C t t' + D t'^2 + E = 0."""

    A: float
    B: float
    C: float
    D: float
    E: float

    def __call__(self, t, tp):
        t = np.asarray(t, float)
        tp = np.asarray(tp, float)
        return (self.A * t * t * tp * tp + self.B * t * t + 2 * self.C * t * tp
                + self.D * tp * tp + self.E)

    def as_array(self):
        return np.array([self.A, self.B, self.C, self.D, self.E])

    def normalized(self):
        v = self.as_array()
        v = v / np.linalg.norm(v)
        i = int(np.argmax(np.abs(v)))
        return BiquadraticRelation(*(v * np.sign(v[i])))


def biquad_coefficients(sigma: float, k: float) -> BiquadraticRelation:
    """Relation satisfied by t = dn(u), t' = dn(u - sigma) for every u.

    The cross coefficient is ``-dn(sigma)``: at k = 0 both functions are
    identically 1 and only this sign makes the relation vanish.
    """
    k = _check_modulus(k)
    s, c, d = (float(x) for x in jacobi(sigma, k))
    if abs(s) < 1e-12:
        raise DegenerateShiftError(f"shift {sigma} is a multiple of 2K; relation collapses to t = t'")
    return BiquadraticRelation(A=s * s, B=c * c, C=-d, D=c * c, E=(1 - k * k) * s * s)
