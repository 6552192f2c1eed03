"""Rayleigh-Schroedinger expansion in the coupling ``alpha``.

Taking ``omega (-1)^n`` as the unperturbed part, the order-``k`` contribution
to ``u_n(z)`` is::

    alpha^k (-1)^{mk} / (2^k floor(k/2)! omega^k)
      * {exp(-i s z omega) P_k(2 i s z omega) + exp(i s z omega) Q_k(2 i s z omega)}
      * binom(k, j)   for n = m + k - 2j, 0 <= j <= k

with ``s = (-1)^{m+k}``.  ``P`` and ``Q`` are integer polynomials obeying::

    R_{2j}   = (2j - 1) R_{2j-1} - xi R_{2j-2}
    R_{2j+1} = -2 R_{2j} + xi R_{2j-1}

from ``P_0 = 1, P_1 = -1`` and ``Q_0 = 0, Q_1 = 1``.  The variant odd rule
``R_{2j+1} = (xi - 2) R_{2j-1}``, which skips ``R_{2j}``, is available as
``recurrence="skip"``; it disagrees with the Dyson series from order 3 on.

The series is secular: the polynomial growth in ``z`` makes it diverge from
the true solution once ``alpha z`` is no longer small.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import DomainError
from .model import _check_window, indices, parity

__all__ = [
    "MAX_ORDER",
    "MAX_DYSON_ORDER",
    "PolynomialPair",
    "RsOrderConfig",
    "rs_polynomials",
    "rs_term",
    "rs_amplitude",
    "rs_fields",
    "horner",
    "dyson_terms",
    "dyson_series_oracle",
]

MAX_ORDER = 12
MAX_DYSON_ORDER = 8


@dataclass(frozen=True)
class PolynomialPair:
    """``P_k`` and ``Q_k`` as integer coefficient tuples, lowest degree first."""

    order: int
    p_coeffs: tuple
    q_coeffs: tuple


@dataclass(frozen=True)
class RsOrderConfig:
    max_order: int = 3
    recurrence: str = "corrected"

    def __post_init__(self):
        if not 0 <= self.max_order <= MAX_ORDER:
            raise DomainError(f"max_order must be in [0, {MAX_ORDER}], got {self.max_order}")
        if self.recurrence not in ("corrected", "skip"):
            raise DomainError(f"unknown recurrence {self.recurrence!r}")


def _trim(c):
    c = list(c)
    while len(c) > 1 and c[-1] == 0:
        c.pop()
    return tuple(c)


def _add(a, b):
    size = max(len(a), len(b))
    a = list(a) + [0] * (size - len(a))
    b = list(b) + [0] * (size - len(b))
    return _trim(x + y for x, y in zip(a, b))


def _scale(c, k):
    return _trim(k * x for x in c)


def _times_xi(c):
    return _trim((0,) + tuple(c))


@lru_cache(maxsize=None)
def _family(seed0, seed1, top, recurrence):
    family = [(seed0,), (seed1,)]
    for k in range(2, top + 1):
        if k % 2 == 0:
            j = k // 2
            nxt = _add(_scale(family[k - 1], 2 * j - 1), _scale(_times_xi(family[k - 2]), -1))
        elif recurrence == "corrected":
            nxt = _add(_scale(family[k - 1], -2), _times_xi(family[k - 2]))
        else:
            nxt = _add(_scale(family[k - 2], -2), _times_xi(family[k - 2]))
        family.append(nxt)
    return tuple(family)


def rs_polynomials(k, recurrence="corrected"):
    """Exact integer polynomials ``P_k`` and ``Q_k``.

    Raises
    ------
    DomainError
        If ``k`` is negative or above :data:`MAX_ORDER`.
    """
    if not 0 <= k <= MAX_ORDER:
        raise DomainError(f"order must be in [0, {MAX_ORDER}], got {k}")
    if recurrence not in ("corrected", "skip"):
        raise DomainError(f"unknown recurrence {recurrence!r}")
    p = _family(1, -1, MAX_ORDER, recurrence)[k]
    q = _family(0, 1, MAX_ORDER, recurrence)[k]
    return PolynomialPair(k, p, q)


def horner(coeffs, x):
    """Evaluate an ascending coefficient list at ``x`` (scalar or array)."""
    acc = 0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _order_profile(params, m, z, k, recurrence):
    # bracketed z-dependent factor of order k, without the binomial weight
    if k == 0:
        return np.exp(-1j * parity(m) * params.omega * np.asarray(z, dtype=float))
    pair = rs_polynomials(k, recurrence)
    s = parity(m + k)
    wz = params.omega * np.asarray(z, dtype=float)
    xi = 2j * s * wz
    prefactor = (
        params.alpha**k * parity(m * k) / (2**k * math.factorial(k // 2) * params.omega**k)
    )
    return prefactor * (
        np.exp(-1j * s * wz) * horner(pair.p_coeffs, xi)
        + np.exp(1j * s * wz) * horner(pair.q_coeffs, xi)
    )


def _weight(n, m, k):
    # binom(k, j) if n = m + k - 2j for some 0 <= j <= k, else 0
    twice_j = m + k - n
    if twice_j & 1 or not 0 <= twice_j <= 2 * k:
        return 0
    return math.comb(k, twice_j // 2)


def rs_term(params, n, m, z, k, recurrence="corrected"):
    """Order-``k`` contribution to ``u_n(z)`` (includes the ``alpha^k`` factor)."""
    if not 0 <= k <= MAX_ORDER:
        raise DomainError(f"order must be in [0, {MAX_ORDER}], got {k}")
    if z < 0:
        raise DomainError("z must be >= 0")
    w = _weight(n, m, k)
    if w == 0:
        return 0j
    return complex(w * _order_profile(params, m, z, k, recurrence))


def rs_amplitude(params, n, m, z, cfg=RsOrderConfig()):
    """Perturbative ``u_n(z)`` summed through ``cfg.max_order``."""
    return sum(
        (rs_term(params, n, m, z, k, cfg.recurrence) for k in range(cfg.max_order + 1)),
        0j,
    )


def rs_fields(params, m, z_grid, window, cfg=RsOrderConfig()):
    """Perturbative amplitudes on a grid, shape ``(len(z_grid), 2*window+1)``."""
    _check_window(window, m)
    z = np.asarray(z_grid, dtype=float)
    if np.any(z < 0):
        raise DomainError("z must be >= 0")
    out = np.zeros((z.size, 2 * window + 1), dtype=complex)
    for k in range(cfg.max_order + 1):
        profile = _order_profile(params, m, z, k, cfg.recurrence)
        for j in range(k + 1):
            n = m + k - 2 * j
            if abs(n) <= window:
                out[:, n + window] += math.comb(k, j) * profile
    return out


# -- Dyson-series oracle ------------------------------------------------------
#
# Interaction-picture amplitudes are kept as exact exponential polynomials
# {(power, q): coeff} meaning sum coeff * s^power * exp(i q omega s), and each
# order is obtained from the previous by one exact antiderivative.


def _integrate(poly, omega):
    out = {}
    for (p, q), c in poly.items():
        if q == 0:
            key = (p + 1, 0)
            out[key] = out.get(key, 0) + c / (p + 1)
            continue
        lam = 1j * q * omega
        # int_0^s t^p e^{lam t} dt
        coef = c
        for r in range(p + 1):
            key = (p - r, q)
            out[key] = out.get(key, 0) + coef / lam
            coef = -coef * (p - r) / lam
        # constant from the lower limit: -(-1)^p p! / lam^{p+1}
        out[(0, 0)] = out.get((0, 0), 0) - c * (-1) ** p * math.factorial(p) / lam ** (p + 1)
    return out


def _evaluate(poly, omega, s):
    return sum(c * s**p * cmath.exp(1j * q * omega * s) for (p, q), c in poly.items())


def dyson_terms(params, m, z, max_order, window=None):
    """Order-by-order Dyson series of the truncated system.

    Returns a list whose entry ``k`` is the order-``k`` amplitude vector on
    ``-window..window`` (``alpha^k`` included).  The default window is wide
    enough that truncation cannot affect orders up to ``max_order``.
    """
    if not 0 <= max_order <= MAX_DYSON_ORDER:
        raise DomainError(f"max_order must be in [0, {MAX_DYSON_ORDER}]")
    if window is None:
        window = abs(m) + max_order + 2
    _check_window(window, m)
    ns = indices(window).tolist()
    energy = {n: parity(n) for n in ns}  # in units of omega

    level = {n: {} for n in ns}
    level[m] = {(0, 0): 1.0 + 0j}
    out = []
    for k in range(max_order + 1):
        vec = np.zeros(len(ns), dtype=complex)
        for i, n in enumerate(ns):
            if level[n]:
                vec[i] = cmath.exp(-1j * energy[n] * params.omega * z) * _evaluate(
                    level[n], params.omega, z
                )
        out.append(vec)
        if k == max_order:
            break
        nxt = {}
        for a in ns:
            gathered = {}
            for b in (a - 1, a + 1):
                if b not in level or not level[b]:
                    continue
                dq = energy[a] - energy[b]
                for (p, q), c in level[b].items():
                    key = (p, q + dq)
                    gathered[key] = gathered.get(key, 0) + (-1j * params.alpha) * c
            nxt[a] = _integrate(gathered, params.omega) if gathered else {}
        level = nxt
    return out


def dyson_series_oracle(params, n, m, z, order):
    """Order-``order`` Dyson term of ``u_n(z)`` for the truncated lattice."""
    terms = dyson_terms(params, m, z, order)
    window = (len(terms[0]) - 1) // 2
    if abs(n) > window:
        return 0j
    return complex(terms[order][n + window])
