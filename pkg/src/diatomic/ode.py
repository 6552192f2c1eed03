"""Fixed-step RK4 integration of the truncated coupled-mode equations.

``du_n/dz = -i [omega (-1)^n u_n + alpha (u_{n+1} + u_{n-1})]`` on the window
``n = -N..N`` with zero amplitude outside.  This is the brute-force reference
the analytic solvers are checked against.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .errors import DomainError, WindowTooSmallError
from .model import FieldState, _check_window, apply_hamiltonian, make_initial_state

__all__ = ["OdeConfig", "default_window", "rk4_evolve", "propagate", "propagate_array"]

NORM_DRIFT_LIMIT = 1e-8


@dataclass(frozen=True)
class OdeConfig:
    """Step size, window and edge guard for :func:`propagate`.

    ``window=None`` selects ``ceil(4 alpha z_max) + 20``.
    """

    step: float = 1e-3
    window: Optional[int] = None
    edge_mass_tolerance: float = 1e-10

    def __post_init__(self):
        if not (math.isfinite(self.step) and self.step > 0):
            raise DomainError(f"step must be > 0, got {self.step!r}")
        if self.window is not None and self.window < 1:
            raise DomainError(f"window must be >= 1, got {self.window}")


def default_window(params, z_max):
    # 2 alpha bounds the group velocity in either direction
    return int(math.ceil(4.0 * params.alpha * z_max)) + 20


def rk4_evolve(apply_generator: Callable, v, dz, steps):
    """Integrate ``dv/dz = -i G v`` over ``steps`` steps of size ``dz``.

    ``apply_generator`` maps a vector to ``G v``.
    """
    v = np.array(v, dtype=complex)
    h = -1j * dz
    for _ in range(steps):
        k1 = apply_generator(v)
        k2 = apply_generator(v + 0.5 * h * k1)
        k3 = apply_generator(v + 0.5 * h * k2)
        k4 = apply_generator(v + h * k3)
        v = v + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    return v


def _targets(z_targets):
    z = [float(t) for t in z_targets]
    if not z:
        raise DomainError("z_targets must not be empty")
    if any(not math.isfinite(t) or t < 0 for t in z):
        raise DomainError("z_targets must be finite and >= 0")
    if any(b < a for a, b in zip(z, z[1:])):
        raise DomainError("z_targets must be ascending")
    return z


def propagate_array(params, m, z_targets, cfg=OdeConfig()):
    """Like :func:`propagate` but returns ``(window, amplitudes)`` with one row per target."""
    z = _targets(z_targets)
    window = cfg.window if cfg.window is not None else default_window(params, z[-1])
    _check_window(window, m)

    def generator(v):
        return apply_hamiltonian(params, v)

    v = make_initial_state(window, m).amplitudes
    rows = []
    here = 0.0
    drift = 0.0
    for target in z:
        span = target - here
        if span > 0:
            steps = max(1, math.ceil(span / cfg.step - 1e-9))
            v = rk4_evolve(generator, v, span / steps, steps)
            here = target
        edge = max(abs(v[0]) ** 2, abs(v[-1]) ** 2)
        if edge > cfg.edge_mass_tolerance:
            raise WindowTooSmallError(
                f"edge mass {edge:.3e} exceeds {cfg.edge_mass_tolerance:.1e} at z={target}; "
                f"enlarge the window beyond {window}",
                z=target,
                edge_mass=edge,
            )
        drift = max(drift, abs(float(np.vdot(v, v).real) - 1.0))
        rows.append(v)
    if drift > NORM_DRIFT_LIMIT:
        warnings.warn(f"RK4 norm drift {drift:.2e} exceeds {NORM_DRIFT_LIMIT:.0e}; reduce the step")
    return window, np.array(rows)


def propagate(params, m, z_targets, cfg=OdeConfig()):
    """Integrate from ``u_n(0) = delta(n, m)`` and record a state at each target.

    Parameters
    ----------
    params : LatticeParams
    m : int
        Excited guide.
    z_targets : sequence of float
        Ascending, non-negative.  The step is shortened between targets so
        each target is hit exactly.
    cfg : OdeConfig

    Returns
    -------
    list of FieldState

    Raises
    ------
    WindowTooSmallError
        When ``|u_{+-N}|^2`` exceeds ``cfg.edge_mass_tolerance`` at a target.
    """
    window, rows = propagate_array(params, m, z_targets, cfg)
    return [FieldState(window, m, z, row) for z, row in zip(_targets(z_targets), rows)]
