"""Tacnode kernel in its Airy-resolvent form.

The kernel of the tacnode process is assembled from two Airy-type profile
functions ``b`` and ``b_tilde``, their resolvent-smoothed combinations
``script A``, and the boundary functionals ``phat``.  Parameters are the
asymmetry ``lam`` between the two groups of paths, the interaction strength
``Sigma`` (equivalently the operator shift ``sigma``; the two are a fixed
bijection at given ``lam``), and one or two times.

The compact two-term kernel, the historical six-term kernel, the rank-2
shift derivative, and the tail-integrated reconstruction are all provided;
they agree up to discretization error, which is what the verification
suite certifies.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .airy import airy_ai_pair
from .airy_operator import AiryResolvent, Resolution, get_resolvent
from .errors import MultiTimeUnsupportedError, TruncationInsufficientError
from .quadrature import affine_map_rule, gauss_legendre_rule

_EQUAL_TIME_EPS = 1e-12


def sigma_from_interaction(lam: float, Sigma: float) -> float:
    """Operator shift corresponding to interaction strength ``Sigma``."""
    return math.sqrt(lam) * (1.0 + lam ** -0.5) ** (2.0 / 3.0) * Sigma


def interaction_from_sigma(lam: float, sigma: float) -> float:
    """Inverse of :func:`sigma_from_interaction`."""
    return sigma / (math.sqrt(lam) * (1.0 + lam ** -0.5) ** (2.0 / 3.0))


@dataclass(frozen=True)
class TailSpec:
    """Quadrature for tail-integrated kernels: ``m`` nodes on a span of ``S``."""

    S: float = 8.0
    m: int = 40

    def __post_init__(self):
        if not self.S > 0:
            raise ValueError(f"tail span must be positive, got {self.S}")
        if self.m < 2:
            raise ValueError(f"tail quadrature needs at least 2 nodes, got {self.m}")


class FuncOnGrid(NamedTuple):
    """A function on the discretization: its value at 0 and at the nodes."""

    at0: float
    values: np.ndarray


def _check_tail_mass(last_contribution: float, total: float, where: float) -> None:
    """Guard a truncated shift integral: its last node must carry no real mass.

    The integrands decay superexponentially and ever faster, so the mass
    beyond the cutoff is of the order of the final node's contribution.  A
    final node above 1e-6 of the accumulated integral (the documented
    agreement tolerance of the tail routes) marks the span as insufficient;
    adequate spans sit orders of magnitude below it.
    """
    if abs(last_contribution) > 1e-6 * max(abs(total), 1e-30):
        raise TruncationInsufficientError(
            f"tail contribution {last_contribution:.3e} at shift {where:.3f} "
            f"is not negligible against the integral {total:.3e}; increase the tail span"
        )


@dataclass(frozen=True)
class ResolventParams:
    """Parameter bundle of the Airy-resolvent kernel form.

    ``sigma`` is the canonical internal parameter (the resolvent is built
    at it); ``Sigma`` is kept alongside because the profile functions are
    written in terms of it.  ``C = (1 + lam^{-1/2})^{1/3}``.
    """

    lam: float
    Sigma: float
    sigma: float
    tau1: float
    tau2: float
    C: float
    resolution: Resolution
    resolvent: AiryResolvent

    @classmethod
    def create(
        cls,
        lam: float = 1.0,
        *,
        Sigma: float | None = None,
        sigma: float | None = None,
        tau: float | None = None,
        tau1: float | None = None,
        tau2: float | None = None,
        resolution: Resolution = Resolution(),
    ) -> "ResolventParams":
        if not lam > 0:
            raise ValueError(f"asymmetry parameter must be positive, got {lam}")
        if (Sigma is None) == (sigma is None):
            raise ValueError("exactly one of Sigma and sigma must be given")
        if sigma is None:
            sigma = sigma_from_interaction(lam, Sigma)
        else:
            Sigma = interaction_from_sigma(lam, sigma)
        if tau is not None:
            if tau1 is not None or tau2 is not None:
                raise ValueError("give either tau or the pair (tau1, tau2), not both")
            tau1 = tau2 = tau
        else:
            tau1 = 0.0 if tau1 is None else tau1
            tau2 = 0.0 if tau2 is None else tau2
        return cls(
            lam=float(lam),
            Sigma=float(Sigma),
            sigma=float(sigma),
            tau1=float(tau1),
            tau2=float(tau2),
            C=(1.0 + float(lam) ** -0.5) ** (1.0 / 3.0),
            resolution=resolution,
            resolvent=get_resolvent(sigma, resolution),
        )

    @property
    def single_time(self) -> bool:
        return abs(self.tau2 - self.tau1) < _EQUAL_TIME_EPS

    def at_sigma(self, sigma: float) -> "ResolventParams":
        """Same asymmetry and times, rebuilt at another shift."""
        return ResolventParams.create(
            self.lam, sigma=sigma, tau1=self.tau1, tau2=self.tau2, resolution=self.resolution
        )


def b_values(params: ResolventParams, tau: float, z: float, x, tilde: bool = False):
    """Airy profile ``b`` (or ``b_tilde``) at spatial points ``x >= 0``."""
    lam, C, Sigma = params.lam, params.C, params.Sigma
    if tilde:
        yt = -z + C * np.asarray(x, dtype=float) + math.sqrt(lam) * (Sigma + tau * tau)
        ai, _ = airy_ai_pair(lam ** (1.0 / 6.0) * yt)
        return np.exp(-math.sqrt(lam) * tau * yt + lam * tau**3 / 3.0) * ai
    y = z + C * np.asarray(x, dtype=float) + Sigma + tau * tau
    ai, _ = airy_ai_pair(y)
    return np.exp(-tau * y + tau**3 / 3.0) * ai


def script_a(params: ResolventParams, tau: float, z: float, tilde: bool = False) -> FuncOnGrid:
    """Smoothed profile: ``b`` minus the Airy smoothing of the opposite profile."""
    ar = params.resolvent
    x0 = np.concatenate(([0.0], ar.nodes))
    if tilde:
        own = b_values(params, tau, z, x0, tilde=True)
        other = b_values(params, tau, z, ar.nodes, tilde=False)
        factor = params.lam ** (-1.0 / 6.0)
    else:
        own = b_values(params, tau, z, x0, tilde=False)
        other = b_values(params, tau, z, ar.nodes, tilde=True)
        factor = params.lam ** (1.0 / 6.0)
    sm0, sm = ar.smooth(other)
    return FuncOnGrid(float(own[0] - factor * sm0), own[1:] - factor * sm)


def script_a_at(params: ResolventParams, tau: float, z: float, x, tilde: bool = False):
    """Smoothed profile evaluated at arbitrary points ``x >= 0`` off the grid."""
    ar = params.resolvent
    x = np.atleast_1d(np.asarray(x, dtype=float))
    own = b_values(params, tau, z, x, tilde=tilde)
    other = b_values(params, tau, z, ar.nodes, tilde=not tilde)
    factor = params.lam ** (-1.0 / 6.0) if tilde else params.lam ** (1.0 / 6.0)
    rows, _ = airy_ai_pair(x[:, None] + ar.nodes[None, :] + params.sigma)
    return own - factor * (rows @ (ar.weights * other))


def phat(params: ResolventParams, tau: float, z: float) -> tuple[float, float]:
    """Boundary functionals ``(phat_1, phat_2)`` driving the rank-2 derivative."""
    ar = params.resolvent
    a_tilde = script_a(params, tau, z, tilde=True)
    a_plain = script_a(params, tau, z, tilde=False)
    return (
        ar.apply_r0_values(a_tilde.at0, a_tilde.values),
        ar.apply_r0_values(a_plain.at0, a_plain.values),
    )


def _heat_term(tau1: float, tau2: float, u, v):
    """Backward heat kernel present only for strictly ordered times."""
    dt = tau2 - tau1
    if dt < _EQUAL_TIME_EPS:
        return np.zeros(np.broadcast(np.asarray(u), np.asarray(v)).shape)
    du = np.asarray(v, dtype=float) - np.asarray(u, dtype=float)
    return -np.exp(-du * du / (4.0 * dt)) / math.sqrt(4.0 * math.pi * dt)


def kernel_grid(params: ResolventParams, us, vs) -> np.ndarray:
    """Tacnode kernel on a cartesian grid, one batched evaluation.

    Returns the matrix ``L[i, j] = kernel(params, us[i], vs[j])``.
    """
    ar = params.resolvent
    us = np.atleast_1d(np.asarray(us, dtype=float))
    vs = np.atleast_1d(np.asarray(vs, dtype=float))
    w = ar.weights
    C, lam = params.C, params.lam

    def _profiles(tau, zs):
        # columns indexed by z, rows by node; one Airy evaluation per matrix
        cx = C * ar.nodes[:, None]
        yt = -zs[None, :] + cx + math.sqrt(lam) * (params.Sigma + tau * tau)
        ai_t, _ = airy_ai_pair(lam ** (1.0 / 6.0) * yt)
        bt = np.exp(-math.sqrt(lam) * tau * yt + lam * tau**3 / 3.0) * ai_t
        y = zs[None, :] + cx + params.Sigma + tau * tau
        ai_p, _ = airy_ai_pair(y)
        bp = np.exp(-tau * y + tau**3 / 3.0) * ai_p
        a = bp - lam ** (1.0 / 6.0) * (ar.smoothing @ (w[:, None] * bt))
        return bt, a

    bt_u, a_u = _profiles(params.tau1, us)
    bt_v, a_v = _profiles(-params.tau2, vs)
    solved = ar.solve(a_v)
    grid = C * lam ** (1.0 / 3.0) * (bt_u.T @ (w[:, None] * bt_v)) + C * (a_u.T @ (w[:, None] * solved))
    return grid + _heat_term(params.tau1, params.tau2, us[:, None], vs[None, :])


def kernel(params: ResolventParams, u: float, v: float) -> float:
    """Tacnode kernel value; reduces to the single-time kernel at tau1 == tau2."""
    return float(kernel_grid(params, [u], [v])[0, 0])


def kernel_six_term(params: ResolventParams, u: float, v: float) -> float:
    """The original six-term expression of the single-time kernel.

    Kept alongside the compact form so their agreement can be certified;
    raises ``MultiTimeUnsupportedError`` for distinct times.
    """
    if not params.single_time:
        raise MultiTimeUnsupportedError("six-term kernel form is defined for equal times only")
    ar = params.resolvent
    w = ar.weights
    C, lam, tau = params.C, params.lam, params.tau1

    bu = b_values(params, tau, u, ar.nodes)
    bv = b_values(params, -tau, v, ar.nodes)
    btu = b_values(params, tau, u, ar.nodes, tilde=True)
    btv = b_values(params, -tau, v, ar.nodes, tilde=True)
    _, s_bu = ar.smooth(bu)
    _, s_bv = ar.smooth(bv)
    _, s_btu = ar.smooth(btu)
    _, s_btv = ar.smooth(btv)

    def dots(f, g):
        # double integral of (I - K)^{-1} against f(x) g(y)
        return float(w @ (f * ar.solve(g)))

    lam6 = lam ** (1.0 / 6.0)
    total = (
        float(w @ (bu * bv))
        + dots(s_bu, s_bv)
        - lam6 * dots(s_bu, btv)
        + lam ** (1.0 / 3.0) * float(w @ (btu * btv))
        + lam ** (1.0 / 3.0) * dots(s_btu, s_btv)
        - lam6 * dots(s_btu, bv)
    )
    return C * total


def kernel_dsigma(params: ResolventParams, u: float, v: float) -> float:
    """Shift derivative of the kernel: an explicit rank-2 bilinear form."""
    p1u, p2u = phat(params, params.tau1, u)
    p1v, p2v = phat(params, -params.tau2, v)
    lam = params.lam
    return -params.C ** -2.0 * (lam ** (1.0 / 3.0) * p1u * p1v + lam**-0.5 * p2u * p2v)


def kernel_tail(params: ResolventParams, u: float, v: float, tail: TailSpec = TailSpec()) -> float:
    """Kernel reconstructed by integrating the rank-2 derivative over the shift.

    The integral over ``[sigma, infinity)`` is truncated to a span of
    ``tail.S``; superexponential decay of the integrand makes that span
    generous, and a last-node mass check raises
    ``TruncationInsufficientError`` if it ever is not.
    """
    rule = affine_map_rule(gauss_legendre_rule(tail.m), params.sigma, params.sigma + tail.S)
    lam = params.lam
    c2 = params.C ** -2.0

    def integrand(s: float) -> float:
        ps = params.at_sigma(s)
        p1u, p2u = phat(ps, ps.tau1, u)
        p1v, p2v = phat(ps, -ps.tau2, v)
        return c2 * (lam ** (1.0 / 3.0) * p1u * p1v + lam**-0.5 * p2u * p2v)

    values = np.array([integrand(s) for s in rule.nodes])
    total = float(rule.weights @ values)
    _check_tail_mass(rule.weights[-1] * values[-1], total, rule.nodes[-1])
    heat = float(np.atleast_1d(_heat_term(params.tau1, params.tau2, u, v))[0])
    return heat + total
