import numpy as np
import pytest

from tacnode.airy import airy_ai, airy_ai_prime
from tacnode.airy_operator import Resolution, get_resolvent
from tacnode.tracy_widom import f2_det, hamiltonian, hastings_mcleod, hm_derivative

RES = Resolution()


def test_tail_asymptotics():
    assert hastings_mcleod(6.0, RES) / airy_ai(6.0) == pytest.approx(1.0, abs=1e-8)
    assert hm_derivative(6.0, RES) == pytest.approx(airy_ai_prime(6.0), rel=1e-7)


def test_value_at_zero():
    # frozen high-resolution oracle value, see test_airy_operator
    assert hastings_mcleod(0.0, RES) == pytest.approx(0.367061551548078, abs=1e-9)


def test_positive_and_decreasing():
    sigmas = np.arange(0.0, 8.5, 0.5)
    values = [hastings_mcleod(s, RES) for s in sigmas]
    assert all(v > 0 for v in values)
    assert all(b < a for a, b in zip(values, values[1:]))
    assert all(hm_derivative(s, RES) < 0 for s in sigmas)


def test_derivative_consistent_with_finite_difference():
    h = 1e-3
    fd = (hastings_mcleod(h, RES) - hastings_mcleod(-h, RES)) / (2 * h)
    assert hm_derivative(0.0, RES) == pytest.approx(fd, abs=1e-6)


@pytest.mark.parametrize("sigma", [-1.0, 0.0, 1.0, 2.0])
def test_hamiltonian_identity(sigma):
    q = hastings_mcleod(sigma, RES)
    dq = hm_derivative(sigma, RES)
    assert abs(hamiltonian(sigma, RES) - (dq * dq - sigma * q * q - q**4)) <= 1e-8


def test_hamiltonian_vanishes_at_large_shift():
    assert abs(hamiltonian(30.0, RES)) <= 1e-10


def test_hamiltonian_derivative():
    h = 1e-3
    fd = (hamiltonian(h, RES) - hamiltonian(-h, RES)) / (2 * h)
    q = hastings_mcleod(0.0, RES)
    assert abs(fd + q * q) <= 1e-6


def test_distribution_limits_and_monotonicity():
    assert f2_det(30.0, RES) == pytest.approx(1.0, abs=1e-10)
    assert f2_det(0.0, RES) == pytest.approx(0.969372828355264, abs=1e-9)
    sigmas = np.arange(-6.0, 4.5, 0.5)
    values = [f2_det(s, RES) for s in sigmas]
    assert all(b > a for a, b in zip(values, values[1:]))


def test_painleve_residual_on_grid():
    h = 1e-2
    lattice = np.round(np.arange(-2.0 - 2 * h, 2.0 + 2 * h + h / 2, h), 10)
    q = np.array([hastings_mcleod(s, RES) for s in lattice])
    qpp = (-q[4:] + 16 * q[3:-1] - 30 * q[2:-2] + 16 * q[1:-3] - q[:-4]) / (12 * h * h)
    inner = lattice[2:-2]
    residual = qpp - inner * q[2:-2] - 2 * q[2:-2] ** 3
    assert np.max(np.abs(residual)) <= 1e-5


def test_first_order_system_by_finite_differences():
    h = 1e-3
    for sigma in (-2.0, 0.0, 1.5):
        ars = {d: get_resolvent(sigma + d * h, RES) for d in (-1, 0, 1)}
        q, p, u, v = (getattr(ars[0], k) for k in "qpuv")
        fd = lambda k: (getattr(ars[1], k) - getattr(ars[-1], k)) / (2 * h)
        assert abs(fd("q") - (p - q * u)) <= 1e-6
        assert abs(fd("p") - (sigma * q + p * u - 2 * q * v)) <= 1e-6
        assert abs(fd("u") + q * q) <= 1e-6
        assert abs(fd("v") + p * q) <= 1e-6
