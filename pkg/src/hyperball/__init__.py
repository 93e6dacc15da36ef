"""hyperball: spectrum and quantum-gas thermodynamics of the hard-wall ball.

A particle in a D-dimensional box with an impenetrable spherical wall has
single-particle energies E = (j_{nu,s})^2 in units of hbar^2 / (2 M R^2),
where j_{nu,s} is the s-th positive zero of the Bessel function J_nu with
nu = l + (D - 2)/2, and each angular momentum l carries the SO(D)
degeneracy of hyperspherical harmonics.  This package computes those
spectra exactly, evaluates grand-canonical Bose and Fermi thermodynamics
over them at finite particle number, and compares against smoothed
(Weyl) counting and thermodynamic-limit predictions.

Units: energies in E_s = hbar^2/(2 M R^2), temperatures in E_s (k_B = 1),
lengths in the ball radius R.
"""

from ._kernels import BACKEND
from .asymptotics import (
    LimitPrediction,
    LimitQuantity,
    condensate_fraction_limit,
    cv_at_tc_limit,
    cv_slope_low_t,
    energy_at_tc_limit,
    fermi_energy_weyl,
    predict,
    riemann_zeta,
    tc_upper_bound,
)
from .bessel import BesselOrder, eval_j, eval_j_prime, mcmahon_guess, zero, zeros_up_to
from .errors import (
    CapacityError,
    ConvergenceError,
    CutoffError,
    DomainError,
    HyperballError,
)
from .spectrum import (
    Level,
    ModeIndex,
    Shell,
    Spectrum,
    build_spectrum,
    counting_function,
    degeneracy,
    fermi_energy,
    max_angular_momentum,
    read_spectrum,
    shell_decomposition,
    write_spectrum,
)
from .thermo import (
    Statistics,
    ThermoPoint,
    condensate_curve,
    critical_temperature,
    entropy_of,
    fermi_temperature,
    grand_potential,
    heat_capacity,
    occupancy,
    solve_mu,
    thermo_point,
    total_energy,
    total_number,
)
from .weyl import (
    WeylGeometry,
    ball_surface,
    ball_volume,
    unit_ball_volume,
    weyl_count,
    weyl_residual,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BesselOrder",
    "CapacityError",
    "ConvergenceError",
    "CutoffError",
    "DomainError",
    "HyperballError",
    "Level",
    "LimitPrediction",
    "LimitQuantity",
    "ModeIndex",
    "Shell",
    "Spectrum",
    "Statistics",
    "ThermoPoint",
    "WeylGeometry",
    "__version__",
    "ball_surface",
    "ball_volume",
    "build_spectrum",
    "condensate_curve",
    "condensate_fraction_limit",
    "counting_function",
    "critical_temperature",
    "cv_at_tc_limit",
    "cv_slope_low_t",
    "degeneracy",
    "energy_at_tc_limit",
    "entropy_of",
    "eval_j",
    "eval_j_prime",
    "fermi_energy",
    "fermi_energy_weyl",
    "fermi_temperature",
    "grand_potential",
    "heat_capacity",
    "max_angular_momentum",
    "mcmahon_guess",
    "occupancy",
    "predict",
    "read_spectrum",
    "riemann_zeta",
    "shell_decomposition",
    "solve_mu",
    "tc_upper_bound",
    "thermo_point",
    "total_energy",
    "total_number",
    "unit_ball_volume",
    "weyl_count",
    "weyl_residual",
    "write_spectrum",
    "zero",
    "zeros_up_to",
]
