"""Thermodynamic-limit predictions for ideal quantum gases in a ball.

These closed forms are the infinite-system benchmarks the finite spectra
are compared against: heat capacity and energy at the condensation point,
the low-temperature Fermi heat-capacity slope, the smoothed-count Fermi
energy, upper bounds on the finite-system condensation temperature in low
dimensions, and the condensate fraction curve.

All temperatures and energies are in spectral units (k_B = 1,
E_s = hbar^2 / (2 M R^2)).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

from .errors import DomainError
from .weyl import unit_ball_volume

__all__ = [
    "LimitQuantity",
    "LimitPrediction",
    "riemann_zeta",
    "cv_at_tc_limit",
    "energy_at_tc_limit",
    "cv_slope_low_t",
    "fermi_energy_weyl",
    "tc_upper_bound",
    "condensate_fraction_limit",
    "predict",
]


class LimitQuantity(Enum):
    CV_AT_TC = "CvAtTc"
    ENERGY_AT_TC = "EnergyAtTc"
    CV_SLOPE_LOW_T = "CvSlopeLowT"
    FERMI_ENERGY_COEFFICIENT = "FermiEnergyCoefficient"
    TC_UPPER_BOUND = "TcUpperBound"
    CONDENSATE_FRACTION = "CondensateFraction"


@dataclass(frozen=True)
class LimitPrediction:
    dim: int
    quantity: LimitQuantity
    value: float


@lru_cache(maxsize=None)
def _eta_coefficients(n: int) -> tuple:
    """Chebyshev acceleration weights d_k for the alternating zeta series."""
    fact = math.factorial
    d = []
    total = 0
    for j in range(n + 1):
        num = n * fact(n + j - 1) * 4**j
        den = fact(n - j) * fact(2 * j)
        term, rem = divmod(num, den)
        if rem:
            raise ArithmeticError("acceleration weights must be integers")
        total += term
        d.append(total)
    return tuple(d)


def riemann_zeta(s: float) -> float:
    """zeta(s) for real s > 1, via the accelerated alternating series."""
    s = float(s)
    if not math.isfinite(s) or s <= 1.0:
        raise DomainError("riemann_zeta requires s > 1")
    n = 50
    d = _eta_coefficients(n)
    dn = d[n]
    acc = 0.0
    sign = 1.0
    for k in range(n):
        acc += sign * (d[k] - dn) / float(k + 1) ** s
        sign = -sign
    eta = -acc / dn
    return eta / (1.0 - 2.0 ** (1.0 - s))


def _validate_dim_at_least(dim, lo: int) -> int:
    if isinstance(dim, bool) or not isinstance(dim, int):
        raise DomainError("dim must be an int")
    if dim < lo:
        raise DomainError(f"dim must be >= {lo} for this prediction")
    return dim


def cv_at_tc_limit(dim: int) -> float:
    """Heat capacity per particle at the condensation point, D >= 3.

    C_V / (N k_B) = (D/2)(D/2 + 1) zeta(D/2 + 1) / zeta(D/2).
    """
    dim = _validate_dim_at_least(dim, 3)
    h = 0.5 * dim
    return h * (h + 1.0) * riemann_zeta(h + 1.0) / riemann_zeta(h)


def energy_at_tc_limit(dim: int) -> float:
    """Energy per particle at condensation in units of T_c, D >= 3.

    E / (N k_B T_c) = (D/2) zeta(D/2 + 1) / zeta(D/2).
    """
    dim = _validate_dim_at_least(dim, 3)
    h = 0.5 * dim
    return h * riemann_zeta(h + 1.0) / riemann_zeta(h)


def cv_slope_low_t(dim: int) -> float:
    """Low-T Fermi heat-capacity slope: C_V/(N k_B) = slope * T/T_F.

    slope = pi^2 D / 6 for the ideal gas with E ~ k^2 in D dimensions.
    """
    dim = _validate_dim_at_least(dim, 1)
    return math.pi**2 * dim / 6.0


def fermi_energy_weyl(dim: int, n: float) -> float:
    """Leading smoothed-count Fermi energy for n states in the unit ball.

    Inverting the bulk term of the smoothed count gives
    E_F = 4 pi^2 (n / omega_D^2)^(2/D); in particular 4n for D = 2 and
    8 sqrt(n) for D = 4.
    """
    dim = _validate_dim_at_least(dim, 2)
    n = float(n)
    if not math.isfinite(n) or n <= 0.0:
        raise DomainError("n must be positive")
    omega = unit_ball_volume(dim)
    return 4.0 * math.pi**2 * (n / (omega * omega)) ** (2.0 / dim)


def tc_upper_bound(dim: int, n: float) -> float:
    """Finite-system condensation temperature bound for D = 2 and D = 3.

    In low dimensions condensation is a finite-size phenomenon; saturating
    the excited-state capacity gives the rigorous bounds

        T_c <= (pi^2 / 2) n                 (D = 2, up to log corrections)
        T_c <= pi^(5/3) n^(2/3)             (D = 3)
    """
    if isinstance(dim, bool) or not isinstance(dim, int):
        raise DomainError("dim must be an int")
    n = float(n)
    if not math.isfinite(n) or n <= 0.0:
        raise DomainError("n must be positive")
    if dim == 2:
        return 0.5 * math.pi**2 * n
    if dim == 3:
        return math.pi ** (5.0 / 3.0) * n ** (2.0 / 3.0)
    raise DomainError("tc_upper_bound is available only for dim 2 and 3")


def condensate_fraction_limit(dim: int, t: float) -> float:
    """Thermodynamic-limit condensate fraction 1 - t^(D/2) at t = T/T_c."""
    dim = _validate_dim_at_least(dim, 3)
    t = float(t)
    if not math.isfinite(t) or t < 0.0 or t > 1.0:
        raise DomainError("t = T/T_c must lie in [0, 1]")
    return 1.0 - t ** (0.5 * dim)


def predict(quantity: LimitQuantity, dim: int, *, n: float | None = None,
            t: float | None = None) -> LimitPrediction:
    """Evaluate one limit prediction and wrap it with its labels."""
    if quantity is LimitQuantity.CV_AT_TC:
        value = cv_at_tc_limit(dim)
    elif quantity is LimitQuantity.ENERGY_AT_TC:
        value = energy_at_tc_limit(dim)
    elif quantity is LimitQuantity.CV_SLOPE_LOW_T:
        value = cv_slope_low_t(dim)
    elif quantity is LimitQuantity.FERMI_ENERGY_COEFFICIENT:
        if n is None:
            raise DomainError("this prediction needs the particle number n")
        value = fermi_energy_weyl(dim, n)
    elif quantity is LimitQuantity.TC_UPPER_BOUND:
        if n is None:
            raise DomainError("this prediction needs the particle number n")
        value = tc_upper_bound(dim, n)
    elif quantity is LimitQuantity.CONDENSATE_FRACTION:
        if t is None:
            raise DomainError("this prediction needs the reduced temperature t")
        value = condensate_fraction_limit(dim, t)
    else:  # pragma: no cover - enum is closed
        raise DomainError(f"unknown quantity {quantity!r}")
    return LimitPrediction(dim=dim, quantity=quantity, value=value)
