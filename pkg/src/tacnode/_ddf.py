"""Compensated (double-double) float helpers, vectorized over numpy arrays.

A value is a pair ``(hi, lo)`` of float64 with ``hi + lo`` the represented
number and ``|lo| <= ulp(hi)/2`` after renormalization, giving roughly 31
significant decimal digits.  Products use Dekker splitting, so no FMA is
required.  Addition is the fast variant whose error is O(eps^2) of the
larger operand; that is enough for the series accumulation done here.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

_SPLITTER = 134217729.0  # 2**27 + 1


def two_sum(a, b):
    s = a + b
    bb = s - a
    err = (a - (s - bb)) + (b - bb)
    return s, err


def _split(a):
    c = _SPLITTER * a
    hi = c - (c - a)
    return hi, a - hi


def two_prod(a, b):
    p = a * b
    ah, al = _split(a)
    bh, bl = _split(b)
    err = ((ah * bh - p) + ah * bl + al * bh) + al * bl
    return p, err


def add(xh, xl, yh, yl):
    sh, sl = two_sum(xh, yh)
    sl = sl + (xl + yl)
    hi = sh + sl
    return hi, sl - (hi - sh)


def mul(xh, xl, yh, yl):
    ph, pl = two_prod(xh, yh)
    pl = pl + (xh * yl + xl * yh)
    hi = ph + pl
    return hi, pl - (hi - ph)


def mul_d(xh, xl, y):
    """Multiply a pair by a plain float64 value."""
    ph, pl = two_prod(xh, y)
    pl = pl + xl * y
    hi = ph + pl
    return hi, pl - (hi - ph)


def from_fraction(value: Fraction) -> tuple[float, float]:
    """Exact rational -> nearest (hi, lo) pair."""
    hi = float(value)
    lo = float(value - Fraction(hi))
    return hi, lo
