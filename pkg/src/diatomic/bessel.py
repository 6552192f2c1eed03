"""Integer-order Bessel functions of the first kind.

Two evaluation routes are used:

* the ascending power series for ``|x| <= SERIES_LIMIT``, where the
  alternating terms do not cancel badly in double precision;
* Miller's backward recurrence normalised with
  ``J_0(x) + 2 * sum_k J_{2k}(x) = 1`` otherwise.

Negative orders and arguments are reduced with
``J_{-k}(x) = (-1)^k J_k(x)`` and ``J_k(-x) = (-1)^k J_k(x)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, DomainError
from .model import parity

__all__ = [
    "BesselEvalConfig",
    "DEFAULT_BESSEL",
    "SERIES_LIMIT",
    "bessel_j",
    "bessel_j_row",
    "bessel_j_signed_row",
    "decay_bound",
    "truncation_order",
]

# Above this the largest series term is ~30x the result and float
# cancellation eats the 1e-14 absolute budget.
SERIES_LIMIT = 4.0

_RESCALE_AT = 1e250
_RESCALE_BY = 1e-250


@dataclass(frozen=True)
class BesselEvalConfig:
    abs_tolerance: float = 1e-14
    max_terms: int = 50_000

    def __post_init__(self):
        if not self.abs_tolerance > 0:
            raise DomainError("abs_tolerance must be > 0")
        if self.max_terms < 64:
            raise DomainError("max_terms must be >= 64")


DEFAULT_BESSEL = BesselEvalConfig()


def _check_x(x):
    x = float(x)
    if not math.isfinite(x):
        raise DomainError(f"Bessel argument must be finite, got {x!r}")
    return x


def _series(order, x, cfg):
    # order >= 0, x >= 0
    half = 0.5 * x
    lead = 1.0
    for i in range(1, order + 1):
        lead *= half / i
        if lead == 0.0:
            return 0.0
    total = term = lead
    q = -half * half
    floor = cfg.abs_tolerance * 1e-4
    for s in range(1, cfg.max_terms):
        term *= q / (s * (order + s))
        total += term
        if abs(term) <= 1e-17 * abs(total) or abs(term) < floor:
            return total
    raise ConvergenceError(
        f"power series for J_{order}({x}) did not converge in {cfg.max_terms} terms",
        estimate=abs(term),
    )


def _miller_start(max_order, x):
    top = max(max_order, math.ceil(x))
    start = top + 30 + int(math.sqrt(60.0 * top))
    return start + (start & 1)


def _miller_row(max_order, x, cfg):
    # Backward recurrence f_{k-1} = (2k/x) f_k - f_{k+1}, x > 0.
    start = _miller_start(max_order, x)
    if start > cfg.max_terms:
        raise ConvergenceError(
            f"Miller recurrence for x={x}, order {max_order} needs {start} steps "
            f"(cap {cfg.max_terms})"
        )
    row = [0.0] * (max_order + 1)
    f_next, f = 0.0, 1e-300
    norm = 0.0
    for k in range(start, 0, -1):
        if k <= max_order:
            row[k] = f
        if not k & 1:
            norm += 2.0 * f
        f_prev = (2.0 * k / x) * f - f_next
        f_next, f = f, f_prev
        if abs(f) > _RESCALE_AT:
            f *= _RESCALE_BY
            f_next *= _RESCALE_BY
            norm *= _RESCALE_BY
            row = [r * _RESCALE_BY for r in row]
    row[0] = f
    norm += f
    return [r / norm for r in row]


def bessel_j(order, x, cfg=DEFAULT_BESSEL):
    """Bessel function ``J_order(x)`` of integer order and real argument.

    Parameters
    ----------
    order : int
        Any integer; negative orders use the reflection identity.
    x : float
        Finite real argument.
    cfg : BesselEvalConfig, optional

    Returns
    -------
    float
    """
    x = _check_x(x)
    order = int(order)
    sign = 1
    if order < 0:
        order = -order
        sign *= parity(order)
    if x < 0:
        x = -x
        sign *= parity(order)
    if x == 0.0:
        return float(sign) if order == 0 else 0.0
    if x <= SERIES_LIMIT:
        return sign * _series(order, x, cfg)
    return sign * _miller_row(order, x, cfg)[order]


def bessel_j_row(max_order, x, cfg=DEFAULT_BESSEL):
    """``[J_0(x), ..., J_max_order(x)]`` as a float array."""
    x = _check_x(x)
    if max_order < 0:
        raise DomainError(f"max_order must be >= 0, got {max_order}")
    ax = abs(x)
    if ax == 0.0:
        row = np.zeros(max_order + 1)
        row[0] = 1.0
        return row
    if ax <= SERIES_LIMIT:
        row = np.array([_series(k, ax, cfg) for k in range(max_order + 1)])
    else:
        row = np.array(_miller_row(max_order, ax, cfg))
    if x < 0:
        row[1::2] *= -1.0
    return row


def bessel_j_signed_row(max_order, x, cfg=DEFAULT_BESSEL):
    """Values for orders ``-max_order..max_order``; entry ``k + max_order`` is ``J_k(x)``."""
    row = bessel_j_row(max_order, x, cfg)
    neg = row[:0:-1].copy()
    # J_{-k} = (-1)^k J_k; neg[i] holds order -(max_order - i)
    odd = (np.arange(max_order, 0, -1) & 1).astype(bool)
    neg[odd] *= -1.0
    return np.concatenate([neg, row])


def decay_bound(order, x):
    """Upper bound ``(|x|/2)^k / k!`` on ``|J_k(x)|`` for ``k >= 0``."""
    half = 0.5 * abs(x)
    bound = 1.0
    for i in range(1, order + 1):
        bound *= half / i
    return bound


def truncation_order(x, tolerance):
    """Smallest ``K`` with ``(|x|/2)^K / K! < tolerance / 10``."""
    if not tolerance > 0:
        raise DomainError("tolerance must be > 0")
    half = 0.5 * abs(_check_x(x))
    target = tolerance / 10.0
    k, bound = 0, 1.0
    while bound >= target:
        k += 1
        bound *= half / k
    return k
