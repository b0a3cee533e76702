"""Gap probabilities of the tacnode process on finite intervals.

The probability of seeing no points in ``(a1, a2)`` is the Fredholm
determinant of the kernel restricted to that interval.  The restricted
kernel is not symmetric (the process is not time-reversible for nonzero
times), so the determinant is taken through a pivoted LU factorization.
Only finite intervals are supported: toward minus infinity the kernel
enters the oscillatory regime and does not decay.
"""

from __future__ import annotations

import numpy as np
import scipy.linalg

from .airy_operator import Resolution
from .quadrature import affine_map_rule, gauss_legendre_rule
from .resolvent_form import ResolventParams, kernel_grid


def gap_probability(params: ResolventParams, a1: float, a2: float, res2: Resolution = Resolution(m=60)) -> float:
    """``det(I - L)`` with the tacnode kernel restricted to ``(a1, a2)``.

    ``res2.m`` sets the order of the fresh quadrature rule on the interval
    (its truncation field is not used here).
    """
    if not a1 < a2:
        raise ValueError(f"interval endpoints must satisfy a1 < a2, got {a1}, {a2}")
    rule = affine_map_rule(gauss_legendre_rule(res2.m), a1, a2)
    kmat = kernel_grid(params, rule.nodes, rule.nodes)
    a = np.eye(res2.m) - kmat * rule.weights[None, :]
    lu, piv = scipy.linalg.lu_factor(a, check_finite=False)
    sign = 1.0 if (piv != np.arange(res2.m)).sum() % 2 == 0 else -1.0
    return float(sign * np.prod(np.diag(lu)))
