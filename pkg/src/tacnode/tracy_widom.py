"""Tracy-Widom scalar functions of the shift, through the resolvent route.

``q`` is the Hastings-McLeod solution of Painleve II (``q'' = s q + 2 q^3``
with ``q ~ Ai`` at +infinity), obtained as the boundary value ``Q(0)`` of the
resolvent-transformed Airy function rather than by ODE shooting.  All four
scalars ``q, p, u, v`` come from a single shared resolvent per shift, so the
algebraic relations between them hold at matched discretization error.
"""

from __future__ import annotations

from .airy_operator import Resolution, get_resolvent


def hastings_mcleod(sigma: float, resolution: Resolution = Resolution()) -> float:
    """Hastings-McLeod Painleve II value ``q(sigma)``."""
    return get_resolvent(sigma, resolution).q


def hm_derivative(sigma: float, resolution: Resolution = Resolution()) -> float:
    """``q'(sigma) = p - q u``, from the same resolvent as ``q``."""
    ar = get_resolvent(sigma, resolution)
    return ar.p - ar.q * ar.u


def hamiltonian(sigma: float, resolution: Resolution = Resolution()) -> float:
    """Painleve II Hamiltonian ``u(sigma) = (q')^2 - sigma q^2 - q^4``."""
    return get_resolvent(sigma, resolution).u


def f2_det(sigma: float, resolution: Resolution = Resolution()) -> float:
    """Tracy-Widom GUE distribution value ``det(I - K_sigma)``."""
    return get_resolvent(sigma, resolution).det
