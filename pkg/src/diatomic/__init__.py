"""Field propagation in diatomic waveguide lattices.

Four solvers for ``i du_n/dz = omega (-1)^n u_n + alpha (u_{n+1} + u_{n-1})``:

* :mod:`~diatomic.exact`: phase-integral solution by spectral quadrature
* :mod:`~diatomic.rotation`: small-rotation Bessel double series
* :mod:`~diatomic.perturbation`: Rayleigh-Schroedinger series in ``alpha``
* :mod:`~diatomic.ode`: RK4 on the truncated lattice
"""

from .analysis import ComparisonReport, compare, regime_sweep, solve
from .bessel import BesselEvalConfig, bessel_j, bessel_j_row, truncation_order
from .errors import (
    ConvergenceError,
    CsvFormatError,
    DomainError,
    RegimeWarning,
    WindowTooSmallError,
)
from .exact import QuadratureConfig, exact_amplitude, exact_field, exact_fields, omega_phi
from .model import (
    FieldState,
    LatticeParams,
    PlaneWaveProbe,
    apply_hamiltonian,
    apply_shift,
    make_initial_state,
    signed_shift_power,
)
from .ode import OdeConfig, propagate
from .perturbation import (
    PolynomialPair,
    RsOrderConfig,
    dyson_series_oracle,
    rs_amplitude,
    rs_fields,
    rs_polynomials,
)
from .rotation import (
    SeriesTruncation,
    rotation_amplitude,
    rotation_effective_hamiltonian_apply,
    rotation_field,
    rotation_fields,
    rotation_operator_apply,
)

__version__ = "0.1.0"
