"""Real-line Airy function Ai and its derivative, built from scratch.

Three branches:

* ``|x| <= 7.5`` -- the two standard Maclaurin series, accumulated in
  compensated (double-double) arithmetic.  Plain float64 cannot deliver
  12 digits here: the even/odd series cancel by a factor ``exp((4/3)x^{3/2})``
  on the positive axis, so every term is carried as a (hi, lo) pair.
* ``x > 7.5`` -- the exponential asymptotic expansion.
* ``x < -7.5`` -- the modulus/phase asymptotic expansion.

The branch point 7.5 is where the optimally truncated asymptotic series
first reaches ~1e-13 relative accuracy, which keeps both branches inside
the advertised error budget (<= 1e-12 relative for x >= 0, <= 1e-12
absolute on [-15, 0)).

All functions accept a float or a numpy array and vectorize over the
array; no special-function library is involved.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from . import _ddf

_SERIES_RADIUS = 7.5
_SQRT_PI = 1.7724538509055160273

# Ai(0) and Ai'(0) as (hi, lo) pairs, correctly rounded beyond float64.
_AI0 = (0.3550280538878172, 2.05233632436212e-17)
_AIP0 = (-0.2588194037928068, 2.522243111610832e-17)


def _build_series_tables():
    """Maclaurin coefficient tables, exact until the final (hi, lo) rounding.

    Ai(x)  = sum_k  A_k x^{3k} + B_k x^{3k+1}
    Ai'(x) = sum_k (3k A_k x^{3k} + (3k+1) B_k x^{3k+1}) / x
    """
    ai0 = Fraction(_AI0[0]) + Fraction(_AI0[1])
    aip0 = Fraction(_AIP0[0]) + Fraction(_AIP0[1])
    a_hi, a_lo, b_hi, b_lo, g_hi, g_lo, d_hi, d_lo = ([] for _ in range(8))
    cf = Fraction(1)
    cg = Fraction(1)
    k = 0
    while True:
        a_k = ai0 * cf
        b_k = aip0 * cg
        for dst, frac in (
            ((a_hi, a_lo), a_k),
            ((b_hi, b_lo), b_k),
            ((g_hi, g_lo), 3 * k * a_k),
            ((d_hi, d_lo), (3 * k + 1) * b_k),
        ):
            hi, lo = _ddf.from_fraction(frac)
            dst[0].append(hi)
            dst[1].append(lo)
        # largest term this k can contribute anywhere in the series disc
        r = Fraction(_SERIES_RADIUS)
        if k > 3 and max(abs(a_k) * r ** (3 * k), abs(b_k) * r ** (3 * k + 1)) < Fraction(1, 10**42):
            break
        cf /= (3 * k + 2) * (3 * k + 3)
        cg /= (3 * k + 3) * (3 * k + 4)
        k += 1
    arrays = [np.array(c) for c in (a_hi, a_lo, b_hi, b_lo, g_hi, g_lo, d_hi, d_lo)]
    return arrays


_AH, _AL, _BH, _BL, _GH, _GL, _DH, _DL = _build_series_tables()
_K_MAX = len(_AH)


def _asymptotic_coefficients(count):
    """u_k (and the derivative companions v_k) of the Airy asymptotic series."""
    u = [1.0]
    for k in range(count - 1):
        u.append(u[-1] * (6 * k + 5) * (6 * k + 1) / (72.0 * (k + 1)))
    u = np.array(u)
    v = -u * (6 * np.arange(count) + 1) / (6 * np.arange(count) - 1)
    return u, v


_N_ASY = 25
_U_ASY, _V_ASY = _asymptotic_coefficients(2 * _N_ASY)
_SIGNS = (-1.0) ** np.arange(2 * _N_ASY)
_SU = _SIGNS[:_N_ASY] * _U_ASY[:_N_ASY]
_SV = _SIGNS[:_N_ASY] * _V_ASY[:_N_ASY]
# modulus/phase side: even/odd coefficients with their own sign alternation
_PE = (-1.0) ** np.arange(13) * _U_ASY[0:26:2]
_PO = (-1.0) ** np.arange(12) * _U_ASY[1:24:2]
_DE = (-1.0) ** np.arange(13) * _V_ASY[0:26:2]
_DO = (-1.0) ** np.arange(12) * _V_ASY[1:24:2]


def _series_terms_needed(radius):
    """Smallest table prefix whose omitted terms are < 1e-38 at |x| <= radius."""
    if radius <= 0.0:
        return 4
    k = np.arange(_K_MAX, dtype=float)
    bound = np.maximum(np.abs(_AH) * radius ** (3 * k), np.abs(_BH) * radius ** (3 * k + 1))
    big = np.nonzero(bound >= 1e-38)[0]
    if big.size == 0:
        return 4
    return min(_K_MAX, int(big[-1]) + 2)


def _series_pair(x):
    """(Ai, Ai') on |x| <= series radius via compensated Maclaurin summation."""
    terms = _series_terms_needed(float(np.max(np.abs(x))) if x.size else 0.0)
    x2h, x2l = _ddf.two_prod(x, x)
    x3h, x3l = _ddf.mul_d(x2h, x2l, x)

    ph = np.ones_like(x)
    pl = np.zeros_like(x)
    th, tl = _ddf.mul_d(_BH[0], _BL[0], x)
    sh, sl = _ddf.add(np.full_like(x, _AH[0]), np.full_like(x, _AL[0]), th, tl)
    dh, dl = th.copy(), tl.copy()

    for k in range(1, terms):
        ph, pl = _ddf.mul(ph, pl, x3h, x3l)
        pxh, pxl = _ddf.mul_d(ph, pl, x)
        th, tl = _ddf.mul(ph, pl, _AH[k], _AL[k])
        sh, sl = _ddf.add(sh, sl, th, tl)
        th, tl = _ddf.mul(pxh, pxl, _BH[k], _BL[k])
        sh, sl = _ddf.add(sh, sl, th, tl)
        th, tl = _ddf.mul(ph, pl, _GH[k], _GL[k])
        dh, dl = _ddf.add(dh, dl, th, tl)
        th, tl = _ddf.mul(pxh, pxl, _DH[k], _DL[k])
        dh, dl = _ddf.add(dh, dl, th, tl)

    ai = sh + sl
    nonzero = x != 0.0
    aip = np.full_like(x, _AIP0[0] + _AIP0[1])
    with np.errstate(divide="ignore", invalid="ignore"):
        aip = np.where(nonzero, (dh + dl) / np.where(nonzero, x, 1.0), aip)
    return ai, aip


def _asymptotic_right(x):
    """(Ai, Ai') for x > series radius: exponential asymptotic expansion."""
    zeta = (2.0 / 3.0) * x**1.5
    inv = 1.0 / zeta
    sa = np.ones_like(x)
    sd = np.ones_like(x)
    pw = inv.copy()
    for k in range(1, _N_ASY):
        sa += _SU[k] * pw
        sd += _SV[k] * pw
        pw *= inv
    with np.errstate(over="ignore"):
        pre = np.exp(-zeta) / (2.0 * _SQRT_PI)
    root = x**0.25
    return pre / root * sa, -pre * root * sd


def _asymptotic_left(x):
    """(Ai, Ai') for x < -series radius: modulus/phase asymptotic expansion."""
    r = -x
    zeta = (2.0 / 3.0) * r**1.5
    inv = 1.0 / zeta
    inv2 = inv * inv

    def _poly(coeffs):
        acc = np.full_like(r, coeffs[0])
        pw = inv2.copy()
        for c in coeffs[1:]:
            acc += c * pw
            pw *= inv2
        return acc

    p_even = _poly(_PE)
    p_odd = inv * _poly(_PO)
    d_even = _poly(_DE)
    d_odd = inv * _poly(_DO)
    theta = zeta + 0.25 * np.pi
    sin_t = np.sin(theta)
    cos_t = np.cos(theta)
    root = r**0.25
    ai = (sin_t * p_even - cos_t * p_odd) / (_SQRT_PI * root)
    aip = -(cos_t * d_even + sin_t * d_odd) * root / _SQRT_PI
    return ai, aip


def _airy_arrays(x):
    ai = np.empty_like(x)
    aip = np.empty_like(x)
    mid = np.abs(x) <= _SERIES_RADIUS
    right = x > _SERIES_RADIUS
    left = x < -_SERIES_RADIUS
    if mid.any():
        ai[mid], aip[mid] = _series_pair(x[mid])
    if right.any():
        ai[right], aip[right] = _asymptotic_right(x[right])
    if left.any():
        ai[left], aip[left] = _asymptotic_left(x[left])
    return ai, aip


def airy_ai_pair(x):
    """Return ``(Ai(x), Ai'(x))``; cheaper than two separate calls."""
    arr = np.asarray(x, dtype=float)
    scalar = arr.ndim == 0
    ai, aip = _airy_arrays(np.atleast_1d(arr))
    if scalar:
        return float(ai[0]), float(aip[0])
    return ai.reshape(arr.shape), aip.reshape(arr.shape)


def airy_ai(x):
    """Airy function Ai evaluated at a real scalar or array."""
    return airy_ai_pair(x)[0]


def airy_ai_prime(x):
    """Derivative Ai' evaluated at a real scalar or array."""
    return airy_ai_pair(x)[1]
