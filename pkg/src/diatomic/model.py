"""Lattice parameters, truncated field states and the basic operators.

A truncated state is a complex numpy vector of length ``2N + 1`` holding the
amplitudes for guides ``n = -N, ..., N`` in increasing order.  Guides outside
the window are treated as zero (hard truncation).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError

__all__ = [
    "LatticeParams",
    "FieldState",
    "PlaneWaveProbe",
    "parity",
    "indices",
    "make_initial_state",
    "apply_hamiltonian",
    "apply_parity",
    "apply_shift",
    "signed_shift_power",
]


def parity(k):
    """Return ``(-1)**k`` for an integer ``k`` as an int, without float powers."""
    return -1 if k & 1 else 1


def indices(window):
    """Guide labels ``-window..window`` as an int array."""
    return np.arange(-window, window + 1)


@dataclass(frozen=True)
class LatticeParams:
    """Physical constants of the diatomic lattice.

    ``omega`` is the alternating site detuning (even guides carry ``+omega``)
    and ``alpha`` the nearest-neighbour coupling, both per unit length.
    """

    omega: float = 1.0
    alpha: float = 0.3

    def __post_init__(self):
        if not (math.isfinite(self.omega) and self.omega > 0):
            raise DomainError(f"omega must be finite and > 0, got {self.omega!r}")
        if not (math.isfinite(self.alpha) and self.alpha >= 0):
            raise DomainError(f"alpha must be finite and >= 0, got {self.alpha!r}")

    @property
    def ratio(self):
        """The small-rotation parameter ``alpha / omega``."""
        return self.alpha / self.omega


@dataclass(frozen=True)
class FieldState:
    """Amplitudes ``u_n(z)`` on the window ``n = -window..window``."""

    window: int
    source: int
    z: float
    amplitudes: np.ndarray = field(repr=False)

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex)
        if amps.shape != (2 * self.window + 1,):
            raise DomainError(
                f"expected {2 * self.window + 1} amplitudes, got shape {amps.shape}"
            )
        object.__setattr__(self, "amplitudes", amps)

    @property
    def indices(self):
        return indices(self.window)

    @property
    def intensities(self):
        return np.abs(self.amplitudes) ** 2

    @property
    def norm(self):
        """Total power ``sum |u_n|**2`` over the window."""
        return float(np.sum(self.intensities))

    def amplitude(self, n):
        if abs(n) > self.window:
            raise DomainError(f"guide {n} outside window {self.window}")
        return complex(self.amplitudes[n + self.window])


@dataclass(frozen=True)
class PlaneWaveProbe:
    """Truncated plane wave with entries ``exp(i n phi)``."""

    phi: float
    window: int

    @property
    def values(self):
        return np.exp(1j * indices(self.window) * self.phi)


def _check_window(window, source):
    if window < 1:
        raise DomainError(f"window must be >= 1, got {window}")
    if abs(source) > window:
        raise DomainError(f"source guide {source} outside window {window}")


def make_initial_state(window, source):
    """Single-guide excitation ``u_n(0) = delta(n, source)``."""
    _check_window(window, source)
    amps = np.zeros(2 * window + 1, dtype=complex)
    amps[source + window] = 1.0
    return FieldState(window, source, 0.0, amps)


def _window_of(v):
    size = v.shape[-1]
    if size % 2 == 0 or size < 3:
        raise DomainError(f"state vector length must be odd and >= 3, got {size}")
    return size // 2


def _site_signs(window):
    # (-1)**n for n = -window..window
    signs = np.ones(2 * window + 1)
    signs[(indices(window) & 1).astype(bool)] = -1.0
    return signs


def apply_parity(v):
    """Multiply each entry by ``(-1)**n``."""
    v = np.asarray(v)
    return _site_signs(_window_of(v)) * v


def apply_shift(direction, v):
    """Shift the coefficients one guide down (``V``) or up (``V^dagger``).

    ``down`` maps ``|n>`` to ``|n-1>``; the coefficient that leaves the window
    is dropped.
    """
    v = np.asarray(v, dtype=complex)
    _window_of(v)
    out = np.zeros_like(v)
    if direction == "down":
        out[:-1] = v[1:]
    elif direction == "up":
        out[1:] = v[:-1]
    else:
        raise DomainError(f"direction must be 'down' or 'up', got {direction!r}")
    return out


def apply_hamiltonian(params, v):
    """Apply ``omega (-1)^n + alpha (V + V^dagger)`` to a truncated vector."""
    v = np.asarray(v, dtype=complex)
    out = params.omega * _site_signs(_window_of(v)) * v
    out[:-1] += params.alpha * v[1:]
    out[1:] += params.alpha * v[:-1]
    return out


def signed_shift_power(j, m):
    """Action of ``[(-1)^n V]^j`` on ``|m>``.

    Returns ``(m - j, sign)`` with ``sign = (-1)**(j*m - j*(j+1)/2)``; the
    exponent is an integer for every integer ``j``.
    """
    exponent = j * m - (j * (j + 1)) // 2
    return m - j, parity(exponent)
