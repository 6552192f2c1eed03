"""Closed-form solution of the infinite lattice as a phase integral.

For a single excited guide ``m``::

    u_n(z) = 1/(2 pi) int_{-pi}^{pi} exp(i (n - m) phi)
             [cos(W z) - i (2 alpha cos(phi) + (-1)^n omega) sin(W z) / W] dphi

with ``W(phi) = sqrt(omega^2 + 4 alpha^2 cos^2 phi)``.  The integrand is
smooth and 2 pi periodic, so the composite trapezoid rule over a full
period converges spectrally.  Accuracy is controlled by node doubling.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, DomainError
from .model import FieldState, _check_window, indices, parity

__all__ = [
    "QuadratureConfig",
    "omega_phi",
    "exact_amplitude",
    "exact_amplitude_centered",
    "exact_field",
    "exact_fields",
]


@dataclass(frozen=True)
class QuadratureConfig:
    nodes: int = 256
    tolerance: float = 1e-10
    max_doublings: int = 8

    def __post_init__(self):
        if self.nodes < 16 or self.nodes % 2:
            raise DomainError(f"nodes must be even and >= 16, got {self.nodes}")
        if not self.tolerance > 0:
            raise DomainError("tolerance must be > 0")
        if self.max_doublings < 1:
            raise DomainError("max_doublings must be >= 1")


DEFAULT_QUADRATURE = QuadratureConfig()


def omega_phi(params, phi):
    """Band function ``sqrt(omega^2 + 4 alpha^2 cos^2 phi)``; accepts arrays."""
    c = np.cos(phi)
    return np.sqrt(params.omega**2 + 4.0 * params.alpha**2 * c * c)


def _nodes(count):
    return -math.pi + (2.0 * math.pi / count) * np.arange(count)


def _kernels(params, z, phi):
    # cos(Wz), sin(Wz)/W and 2 alpha cos(phi) on the nodes; W >= omega > 0
    w = omega_phi(params, phi)
    wz = w * z
    return np.cos(wz), np.sin(wz) / w, 2.0 * params.alpha * np.cos(phi)


def _integrand(params, n, m, z, phi):
    cos_wz, sinc, hop = _kernels(params, z, phi)
    bracket = cos_wz - 1j * (hop + parity(n) * params.omega) * sinc
    return np.exp(1j * (n - m) * phi) * bracket


def _check_z(z):
    z = float(z)
    if not (math.isfinite(z) and z >= 0):
        raise DomainError(f"z must be finite and >= 0, got {z!r}")
    return z


def _start_nodes(cfg, span):
    # Enough nodes to resolve exp(i d phi) for |d| <= span without aliasing.
    count = cfg.nodes
    while count <= 2 * span + 2:
        count *= 2
    return count


def exact_amplitude(params, n, m, z, cfg=DEFAULT_QUADRATURE):
    """Amplitude ``u_n(z)`` for light launched into guide ``m``.

    Raises
    ------
    ConvergenceError
        If two successive node doublings still differ by more than
        ``cfg.tolerance`` after ``cfg.max_doublings`` doublings.
    """
    z = _check_z(z)
    count = _start_nodes(cfg, abs(n - m))
    prev = np.mean(_integrand(params, n, m, z, _nodes(count)))
    err = math.inf
    for _ in range(cfg.max_doublings):
        count *= 2
        cur = np.mean(_integrand(params, n, m, z, _nodes(count)))
        err = abs(cur - prev)
        if err <= cfg.tolerance:
            return complex(cur)
        prev = cur
    raise ConvergenceError(
        f"quadrature for u_{n}(z={z}) not converged after {cfg.max_doublings} doublings",
        estimate=err,
    )


def exact_amplitude_centered(params, n, z, cfg=DEFAULT_QUADRATURE):
    """Half-period cosine form for ``m = 0``, used as a consistency check.

    ``u_n = 1/pi int_0^pi cos(n phi) {cos(W z) - i [2 alpha cos phi + (-1)^n omega] sin(W z)/W} dphi``,
    evaluated with the trapezoid rule on ``[0, pi]`` (endpoints half weight),
    which is the full-period rule for the even extension.
    """
    z = _check_z(z)
    count = _start_nodes(cfg, abs(n)) // 2
    prev = None
    for _ in range(cfg.max_doublings + 1):
        phi = np.linspace(0.0, math.pi, count + 1)
        cos_wz, sinc, hop = _kernels(params, z, phi)
        f = np.cos(n * phi) * (cos_wz - 1j * (hop + parity(n) * params.omega) * sinc)
        cur = (f[0] / 2 + f[1:-1].sum() + f[-1] / 2) / count
        if prev is not None and abs(cur - prev) <= cfg.tolerance:
            return complex(cur)
        prev = cur
        count *= 2
    raise ConvergenceError(f"centered quadrature for u_{n}(z={z}) not converged")


def _field_at(params, m, z, window, cfg):
    # Trapezoid sums for every n at once via the DFT of the two parity
    # branches of the integrand.
    n = indices(window)
    d = n - m
    odd = (n & 1).astype(bool)
    count = _start_nodes(cfg, int(np.max(np.abs(d))))
    prev = None
    err = math.inf
    for _ in range(cfg.max_doublings + 1):
        cos_wz, sinc, hop = _kernels(params, z, _nodes(count))
        even_branch = cos_wz - 1j * (hop + params.omega) * sinc
        odd_branch = cos_wz - 1j * (hop - params.omega) * sinc
        # sum_j exp(i d phi_j) f_j with phi_j = -pi + 2 pi j / count
        even_sum = np.fft.ifft(even_branch)[d % count]
        odd_sum = np.fft.ifft(odd_branch)[d % count]
        alt = np.where(d & 1, -1.0, 1.0)
        cur = alt * np.where(odd, odd_sum, even_sum)
        if prev is not None:
            err = float(np.max(np.abs(cur - prev)))
            if err <= cfg.tolerance:
                return cur
        prev = cur
        count *= 2
    raise ConvergenceError(
        f"quadrature for the field at z={z} not converged after "
        f"{cfg.max_doublings} doublings",
        estimate=err,
    )


def exact_field(params, m, z, window, cfg=DEFAULT_QUADRATURE):
    """Exact amplitudes for every guide in ``-window..window``.

    All guides share one set of quadrature nodes; convergence is judged on
    the largest change over the window.
    """
    _check_window(window, m)
    z = _check_z(z)
    return FieldState(window, m, z, _field_at(params, m, z, window, cfg))


def exact_fields(params, m, z_grid, window, cfg=DEFAULT_QUADRATURE):
    """Exact amplitudes on a grid; returns an array of shape ``(len(z_grid), 2*window+1)``."""
    _check_window(window, m)
    return np.array([_field_at(params, m, _check_z(z), window, cfg) for z in z_grid])
