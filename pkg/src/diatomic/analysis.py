"""Cross-method comparison of intensity traces."""

from __future__ import annotations

from dataclasses import asdict, dataclass, field, replace

import numpy as np

from .errors import DomainError
from .exact import DEFAULT_QUADRATURE, exact_fields
from .model import LatticeParams, _check_window
from .ode import OdeConfig, default_window, propagate_array
from .perturbation import RsOrderConfig, rs_fields
from .rotation import DEFAULT_TRUNCATION, regime_message, rotation_fields

__all__ = ["METHODS", "ComparisonReport", "solve", "compare", "regime_sweep", "default_z_grid"]

METHODS = ("exact", "rotation", "rs", "ode")


def default_z_grid(z_max=100.0, steps=1000):
    return np.linspace(0.0, z_max, steps + 1)


@dataclass
class ComparisonReport:
    """Intensity error ``| |u^A|^2 - |u^B|^2 |`` between two solvers.

    ``global_l2_error`` is ``sqrt(mean_z sum_n err^2)``.
    ``global_max_amplitude_error`` is the largest ``|u^A - u^B|`` and is
    sensitive to the global phase.
    """

    method_a: str
    method_b: str
    params: LatticeParams
    source: int
    z_grid: list
    per_guide_max_intensity_error: dict
    global_max_intensity_error: float
    global_l2_error: float
    global_max_amplitude_error: float
    norm_deficit_by_method: dict
    regime_warnings: list = field(default_factory=list)
    intensity_error_by_z: list = field(default_factory=list, repr=False)

    def to_dict(self):
        out = asdict(self)
        out.pop("intensity_error_by_z")
        out["params"] = {"omega": self.params.omega, "alpha": self.params.alpha}
        out["per_guide_max_intensity_error"] = {
            str(n): v for n, v in self.per_guide_max_intensity_error.items()
        }
        return out


def solve(method, params, m, z_grid, window, *, quadrature=DEFAULT_QUADRATURE,
          truncation=DEFAULT_TRUNCATION, rs=RsOrderConfig(), ode=None):
    """Amplitudes of one method on a grid, shape ``(len(z_grid), 2*window+1)``.

    The ODE solver integrates on a wider lattice when needed and the result is
    cut down to ``window``.
    """
    _check_window(window, m)
    z_grid = np.asarray(z_grid, dtype=float)
    if method == "exact":
        return exact_fields(params, m, z_grid, window, quadrature)
    if method == "rotation":
        return rotation_fields(params, m, z_grid, window, truncation)
    if method == "rs":
        return rs_fields(params, m, z_grid, window, rs)
    if method == "ode":
        ode = ode or OdeConfig()
        wide = ode.window or max(window, default_window(params, float(z_grid[-1])))
        wide = max(wide, window)
        full_window, rows = propagate_array(params, m, z_grid, replace(ode, window=wide))
        cut = full_window - window
        return rows[:, cut:rows.shape[1] - cut]
    raise DomainError(f"unknown method {method!r}; expected one of {METHODS}")


def _check_grid(z_grid):
    z = np.asarray(z_grid, dtype=float)
    if z.ndim != 1 or z.size == 0:
        raise DomainError("z_grid must be a non-empty 1-d sequence")
    if np.any(np.diff(z) < 0):
        raise DomainError("z_grid must be ascending")
    return z


def _warnings_for(method, params, rs):
    out = []
    if method == "rotation":
        msg = regime_message(params)
        if msg:
            out.append(msg)
    if method == "rs" and rs.recurrence == "skip":
        out.append("rs: the 'skip' odd-order recurrence disagrees with the Dyson series from order 3")
    return out


def compare(method_a, method_b, params, m, z_grid, window, **solver_options):
    """Compare two solvers over ``z_grid`` on guides ``-window..window``.

    Keyword options are forwarded to :func:`solve`.
    """
    z = _check_grid(z_grid)
    amps = {}
    for method in (method_a, method_b):
        if method not in amps:
            amps[method] = solve(method, params, m, z, window, **solver_options)
    a, b = amps[method_a], amps[method_b]

    err = np.abs(np.abs(a) ** 2 - np.abs(b) ** 2)
    per_guide = {int(n): float(v) for n, v in zip(range(-window, window + 1), err.max(axis=0))}
    deficits = {
        method: float(np.max(np.abs(1.0 - np.sum(np.abs(u) ** 2, axis=1))))
        for method, u in amps.items()
    }
    rs = solver_options.get("rs", RsOrderConfig())
    notes = []
    for method in amps:
        notes += _warnings_for(method, params, rs)
    return ComparisonReport(
        method_a=method_a,
        method_b=method_b,
        params=params,
        source=m,
        z_grid=[float(v) for v in z],
        per_guide_max_intensity_error=per_guide,
        global_max_intensity_error=float(err.max()),
        global_l2_error=float(np.sqrt(np.mean(np.sum(err**2, axis=1)))),
        global_max_amplitude_error=float(np.max(np.abs(a - b))),
        norm_deficit_by_method=deficits,
        regime_warnings=notes,
        intensity_error_by_z=err.max(axis=1).tolist(),
    )


def regime_sweep(alphas, params_base, z_grid, window, m=0, **solver_options):
    """Worst intensity error of the rotation method against the exact one, per ``alpha``."""
    alphas = [float(a) for a in alphas]
    if any(a < 0 for a in alphas) or any(b < a for a, b in zip(alphas, alphas[1:])):
        raise DomainError("alphas must be non-negative and ascending")
    out = {}
    for alpha in alphas:
        params = replace(params_base, alpha=alpha)
        report = compare("exact", "rotation", params, m, z_grid, window, **solver_options)
        out[alpha] = report.global_max_intensity_error
    return out
