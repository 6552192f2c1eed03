"""Small-rotation approximation of the lattice propagator.

Conjugating the Hamiltonian with ``R = exp[(a/2w) (-1)^n (V + V^dagger)]``
and keeping terms to second order in ``a/w`` gives an effective Hamiltonian
that only couples guides of equal parity.  Its propagator, expanded with the
Bessel generating function, yields the double sum::

    u_n(z) = (-1)^{[m(m-1) - n(n-1)]/2} sum_{k,j} (-1)^{k(m-j)} i^k
             exp(-i (-1)^{m-j} c z) J_k(a^2 z / w) J_j(a/w) J_{n-m+2k+j}(a/w)

with ``c = (w^2 + a^2) / w`` (``w`` = omega, ``a`` = alpha).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .bessel import bessel_j, bessel_j_signed_row, truncation_order
from .errors import DomainError, RegimeWarning
from .model import FieldState, _check_window, _site_signs, _window_of, indices, parity

__all__ = [
    "SeriesTruncation",
    "REGIME_LIMIT",
    "regime_message",
    "rotation_amplitude",
    "rotation_amplitude_centered",
    "rotation_field",
    "rotation_fields",
    "rotation_effective_hamiltonian_apply",
    "rotation_operator_apply",
]

REGIME_LIMIT = 0.5
MARGIN = 5


@dataclass(frozen=True)
class SeriesTruncation:
    """Cutoffs for the ``k`` (slow) and ``j`` (rotation) sums.

    With ``auto`` set, ``k_max`` and ``j_max`` are ignored and chosen from the
    Bessel decay bound so the neglected tail is below ``tail_tolerance``.
    """

    tail_tolerance: float = 1e-12
    k_max: Optional[int] = None
    j_max: Optional[int] = None
    auto: bool = True

    def __post_init__(self):
        if not self.tail_tolerance > 0:
            raise DomainError("tail_tolerance must be > 0")
        if not self.auto:
            if self.k_max is None or self.j_max is None:
                raise DomainError("k_max and j_max are required when auto is off")
            if self.k_max < 1 or self.j_max < 1:
                raise DomainError("k_max and j_max must be >= 1")

    def cutoffs(self, params, z):
        if not self.auto:
            return self.k_max, self.j_max
        slow = params.alpha**2 * z / params.omega
        k_max = truncation_order(slow, self.tail_tolerance) + MARGIN
        j_max = truncation_order(params.ratio, self.tail_tolerance) + MARGIN
        return k_max, j_max


DEFAULT_TRUNCATION = SeriesTruncation()


def regime_message(params):
    """Warning text when ``alpha/omega`` exceeds :data:`REGIME_LIMIT`, else ``None``."""
    if params.ratio > REGIME_LIMIT:
        return (
            f"alpha/omega = {params.ratio:.3g} > {REGIME_LIMIT}: small-rotation "
            "approximation outside its intended regime"
        )
    return None


def _warn_regime(params):
    msg = regime_message(params)
    if msg:
        warnings.warn(msg, RegimeWarning, stacklevel=3)


def _check_z(z):
    z = float(z)
    if not (math.isfinite(z) and z >= 0):
        raise DomainError(f"z must be finite and >= 0, got {z!r}")
    return z


def _symmetric_range(top):
    # 0, 1, -1, 2, -2, ...: the accumulation order of the double sum
    out = [0]
    for i in range(1, top + 1):
        out += [i, -i]
    return np.array(out)


_I_POWERS = np.array([1, 1j, -1, -1j])


def _amplitudes(params, ns, m, z, trunc):
    ns = np.asarray(ns)
    k_max, j_max = trunc.cutoffs(params, z)
    x = params.ratio
    slow = params.alpha**2 * z / params.omega
    shift = (params.omega**2 + params.alpha**2) / params.omega

    ks = _symmetric_range(k_max)
    js = _symmetric_range(j_max)
    jk = bessel_j_signed_row(k_max, slow)[ks + k_max]
    jj = bessel_j_signed_row(j_max, x)[js + j_max]

    # (-1)^{k(m-j)}, i^k and exp(-i (-1)^{m-j} c z)
    kj = ks[:, None] * (m - js)[None, :]
    sign = np.where(kj & 1, -1.0, 1.0)
    rot = np.exp(-1j * np.where((m - js) & 1, -1.0, 1.0) * shift * z)
    weight = sign * _I_POWERS[ks % 4][:, None] * rot[None, :] * jk[:, None] * jj[None, :]

    d = ns - m
    span = int(np.max(np.abs(d))) + 2 * k_max + j_max
    jx = bessel_j_signed_row(span, x)
    order = d[None, None, :] + 2 * ks[:, None, None] + js[None, :, None]
    terms = weight[:, :, None] * jx[order + span]
    total = terms.reshape(-1, ns.size).sum(axis=0)

    phase_exp = (m * (m - 1) - ns * (ns - 1)) // 2
    return np.where(phase_exp & 1, -1.0, 1.0) * total


def rotation_amplitude(params, n, m, z, trunc=DEFAULT_TRUNCATION):
    """Small-rotation amplitude ``u_n(z)`` for light launched into guide ``m``.

    Emits :class:`RegimeWarning` when ``alpha/omega > 0.5``.
    """
    z = _check_z(z)
    _warn_regime(params)
    return complex(_amplitudes(params, np.array([int(n)]), int(m), z, trunc)[0])


def rotation_amplitude_centered(params, n, z, trunc=DEFAULT_TRUNCATION):
    """The ``m = 0`` specialisation, summed term by term.

    Kept separate from the general path as an internal cross-check.
    """
    z = _check_z(z)
    k_max, j_max = trunc.cutoffs(params, z)
    x = params.ratio
    slow = params.alpha**2 * z / params.omega
    shift = (params.omega**2 + params.alpha**2) / params.omega
    total = 0j
    for k in _symmetric_range(k_max).tolist():
        jk = bessel_j(k, slow)
        for j in _symmetric_range(j_max).tolist():
            total += (
                parity(j * k)
                * np.exp(-1j * parity(j) * shift * z)
                * 1j**k
                * jk
                * bessel_j(j, x)
                * bessel_j(n + 2 * k + j, x)
            )
    return parity((n * (n - 1)) // 2) * complex(total)


def rotation_field(params, m, z, window, trunc=DEFAULT_TRUNCATION):
    """Small-rotation amplitudes for every guide in ``-window..window``."""
    _check_window(window, m)
    z = _check_z(z)
    _warn_regime(params)
    return FieldState(window, m, z, _amplitudes(params, indices(window), m, z, trunc))


def rotation_fields(params, m, z_grid, window, trunc=DEFAULT_TRUNCATION):
    """Array of shape ``(len(z_grid), 2*window+1)``."""
    _check_window(window, m)
    _warn_regime(params)
    ns = indices(window)
    return np.array([_amplitudes(params, ns, m, _check_z(z), trunc) for z in z_grid])


def rotation_effective_hamiltonian_apply(params, v):
    """Apply ``(-1)^n [(w + a^2/w) + (a^2/2w)(V^2 + V^dagger^2)]``, edges truncated."""
    v = np.asarray(v, dtype=complex)
    window = _window_of(v)
    hop = params.alpha**2 / (2.0 * params.omega)
    out = (params.omega + 2.0 * hop) * v
    out[:-2] += hop * v[2:]
    out[2:] += hop * v[:-2]
    return _site_signs(window) * out


def rotation_operator_apply(params, sign, v, tail_tolerance=1e-12):
    """Apply ``R`` (``sign=+1``) or ``R^dagger`` (``sign=-1``) to a truncated vector.

    Uses ``R = sum_j J_j(+-a/w) [(-1)^n V]^j``; components pushed outside the
    window are dropped.
    """
    if sign not in (1, -1):
        raise DomainError(f"sign must be +1 or -1, got {sign!r}")
    v = np.asarray(v, dtype=complex)
    window = _window_of(v)
    j_max = truncation_order(params.ratio, tail_tolerance) + MARGIN
    coeffs = bessel_j_signed_row(j_max, sign * params.ratio)
    ms = indices(window)
    out = np.zeros_like(v)
    for j in _symmetric_range(j_max).tolist():
        c = coeffs[j + j_max]
        if c == 0.0:
            continue
        target = ms - j
        inside = np.abs(target) <= window
        # [(-1)^n V]^j |m> = (-1)^{jm - j(j+1)/2} |m - j>
        signs = np.where((j * ms - (j * (j + 1)) // 2) & 1, -1.0, 1.0)
        np.add.at(out, target[inside] + window, c * signs[inside] * v[inside])
    return out
