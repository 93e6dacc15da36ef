"""Grand-canonical thermodynamics of ideal quantum gases on a spectrum.

All quantities are evaluated by explicit sums over the levels of a
:class:`~hyperball.spectrum.Spectrum` at fixed particle number: the
chemical potential is solved from N(mu, T) = n at every temperature.

Internally the sums run over energies shifted by the ground energy, and
the Bose chemical potential is parametrised by the gap
Delta = E_0 - mu > 0.  Deep in the condensate Delta is exponentially
small compared with E_0, so this representation avoids the catastrophic
cancellation that the raw value mu = E_0 - Delta would suffer.

A finite level list silently truncates the Boltzmann tail, so every sum
is guarded: the spectral weight above the cutoff, bounded through the
incomplete-gamma tail of the smoothed density of states, must stay below
1e-10 of the in-range sum or :class:`~hyperball.errors.CutoffError` is
raised.

Units: k_B = 1; energies and temperatures in E_s = hbar^2/(2 M R^2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import _kernels
from .errors import CapacityError, ConvergenceError, CutoffError, DomainError
from .spectrum import Spectrum, fermi_energy
from .weyl import ball_volume, unit_ball_volume

__all__ = [
    "Statistics",
    "ThermoPoint",
    "occupancy",
    "total_number",
    "total_energy",
    "grand_potential",
    "entropy_of",
    "solve_mu",
    "thermo_point",
    "heat_capacity",
    "fermi_temperature",
    "critical_temperature",
    "condensate_curve",
]

_TAIL_RELATIVE = 1e-10
_TAIL_XMIN = 23.0            # exp(-23) ~ 1e-10: below this the bound is moot
_SOLVE_RELATIVE = 1e-10      # |N(mu) - n| <= this * n after polishing
_BISECT_ABSOLUTE = 1e-13     # bisection width target on the solver variable
_CV_STEP = 1e-3              # relative temperature step for the Cv difference


class Statistics(Enum):
    BOSE = "bose"
    FERMI = "fermi"

    @classmethod
    def parse(cls, text: str) -> "Statistics":
        try:
            return cls(text.strip().lower())
        except ValueError:
            raise DomainError(
                f"unknown statistics {text!r}; expected 'bose' or 'fermi'"
            ) from None


@dataclass(frozen=True)
class ThermoPoint:
    """One fixed-N equilibrium state and its derived quantities.

    ``heat_capacity`` is present only when requested; ``condensate_fraction``
    is present only for Bose statistics.
    """

    temperature: float
    mu: float
    n_target: float
    n_achieved: float
    energy: float
    grand_potential: float
    entropy: float
    pressure: float
    heat_capacity: float | None = None
    condensate_fraction: float | None = None


def _validate_temperature(temperature) -> float:
    t = float(temperature)
    if not math.isfinite(t) or t <= 0.0:
        raise DomainError("temperature must be finite and positive")
    return t


def _as_stat(stat) -> Statistics:
    if isinstance(stat, Statistics):
        return stat
    if isinstance(stat, str):
        return Statistics.parse(stat)
    raise DomainError(f"cannot interpret {stat!r} as statistics")


def occupancy(energy: float, mu: float, temperature: float, stat) -> float:
    """Mean occupation of a single mode, numerically stable in all regimes."""
    t = _validate_temperature(temperature)
    stat = _as_stat(stat)
    x = (float(energy) - float(mu)) / t
    if stat is Statistics.BOSE:
        if x <= 0.0:
            raise DomainError("Bose occupancy requires mu < energy")
        if x > 745.0:
            return 0.0
        return 1.0 / math.expm1(x)
    w = math.exp(-abs(x))
    return (w if x >= 0.0 else 1.0) / (1.0 + w)


# ----------------------------------------------------------------------
# shifted-energy sums and the tail-adequacy guard
# ----------------------------------------------------------------------

def _occ_sums(spec: Spectrum, mu_rel: float, temperature: float, bose: bool,
              skip_ground: bool = False):
    """Kernel sums over the spectrum; energies relative to the ground level."""
    esh = spec.energies_shifted
    deg = spec.degeneracies_f
    if skip_ground:
        esh = esh[1:]
        deg = deg[1:]
    return _kernels.gc_sums(esh, deg, mu_rel, temperature, bose)


def _tail_fractions(spec: Spectrum, mu_abs: float, temperature: float):
    """Upper bounds on the number and energy sums lost above the cutoff.

    Bounds the occupancy by the Boltzmann factor and integrates it against
    the smoothed density of states rho(E) = C_D (D/2) E^(D/2-1) from e_max
    to infinity; the upper incomplete gamma function is bounded by its
    two-term asymptotic series with a factor-2 safety margin (which also
    absorbs the Bose enhancement 1/(1 - e^(-x_min)) for x_min >= 23).

    Returns (tail_n, tail_e), or (inf, inf) when the bound itself is not
    trustworthy (cutoff too close to mu for the asymptotics).
    """
    d = spec.dim
    a = 0.5 * d
    e_max = spec.e_max
    x_min = (e_max - mu_abs) / temperature
    z0 = e_max / temperature
    if x_min < _TAIL_XMIN or z0 <= 2.0 * a + 4.0:
        return math.inf, math.inf
    c_d = unit_ball_volume(d) ** 2 / (2.0 * math.pi) ** d
    damp = math.exp(-x_min)
    base = 2.0 * c_d * a * temperature * damp          # safety factor 2
    corr_n = 1.0 + abs(a - 1.0) / z0 + abs((a - 1.0) * (a - 2.0)) / (z0 * z0)
    corr_e = 1.0 + a / z0 + abs(a * (a - 1.0)) / (z0 * z0)
    tail_n = base * e_max ** (a - 1.0) * corr_n
    tail_e = base * e_max**a * corr_e
    return tail_n, tail_e


def _require_tail(spec: Spectrum, mu_abs: float, temperature: float,
                  number: float, energy_abs: float) -> None:
    tail_n, tail_e = _tail_fractions(spec, mu_abs, temperature)
    if tail_n > _TAIL_RELATIVE * number or tail_e > _TAIL_RELATIVE * abs(energy_abs):
        raise CutoffError(
            f"spectral cutoff e_max={spec.e_max:g} is inadequate at "
            f"T={temperature:g}, mu={mu_abs:g}: truncated tail bound "
            f"{tail_n:.3e} states / {tail_e:.3e} energy exceeds "
            f"{_TAIL_RELATIVE:g} of the retained sums"
        )


def _bose_mu_rel(spec: Spectrum, mu: float) -> float:
    mu = float(mu)
    if not mu < spec.energies[0]:
        raise DomainError(
            f"Bose chemical potential must lie below the ground energy "
            f"{spec.energies[0]:.12g}"
        )
    return mu - float(spec.energies[0])


def _stat_sums(spec: Spectrum, mu: float, temperature: float, stat):
    """(number, energy, grand_potential) at explicit mu, tail-checked."""
    t = _validate_temperature(temperature)
    stat = _as_stat(stat)
    bose = stat is Statistics.BOSE
    if bose:
        mu_rel = _bose_mu_rel(spec, mu)
    else:
        mu_rel = float(mu) - float(spec.energies[0])
    number, esum, wsum = _occ_sums(spec, mu_rel, t, bose)
    e0 = float(spec.energies[0])
    energy = esum + e0 * number
    w = (t if bose else -t) * wsum
    _require_tail(spec, float(mu), t, number, energy)
    return number, energy, w


def total_number(spec: Spectrum, mu: float, temperature: float, stat) -> float:
    """N(mu, T) = sum_i g_i <n_i>."""
    return _stat_sums(spec, mu, temperature, stat)[0]


def total_energy(spec: Spectrum, mu: float, temperature: float, stat) -> float:
    """E(mu, T) = sum_i g_i E_i <n_i>."""
    return _stat_sums(spec, mu, temperature, stat)[1]


def grand_potential(spec: Spectrum, mu: float, temperature: float, stat) -> float:
    """Grand potential W(mu, T); -T log of the grand partition function.

    W = +T sum_i g_i ln(1 - e^{-(E_i - mu)/T})   (Bose)
    W = -T sum_i g_i ln(1 + e^{-(E_i - mu)/T})   (Fermi)
    """
    return _stat_sums(spec, mu, temperature, stat)[2]


def entropy_of(energy: float, mu: float, n: float, grand_potential: float,
               temperature: float) -> float:
    """S = (E - mu N - W) / T."""
    t = _validate_temperature(temperature)
    return (float(energy) - float(mu) * float(n) - float(grand_potential)) / t


# ----------------------------------------------------------------------
# chemical-potential solvers
# ----------------------------------------------------------------------

def _validate_target(n_target) -> float:
    n = float(n_target)
    if not math.isfinite(n) or n <= 0.0:
        raise DomainError("n_target must be finite and positive")
    return n


def _bisect_secant(fn, lo, hi, f_lo, f_hi, n_target):
    """Root of increasing fn on [lo, hi]: bisect, then secant-polish.

    Bisection stops at width _BISECT_ABSOLUTE (or float stagnation); the
    secant steps then push |fn| below _SOLVE_RELATIVE * n_target.  Returns
    the solver-variable root.
    """
    if f_lo > 0.0 or f_hi < 0.0:
        raise ConvergenceError("root bracket is invalid")
    for _ in range(256):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi or (hi - lo) <= _BISECT_ABSOLUTE:
            break
        f_mid = fn(mid)
        if f_mid < 0.0:
            lo, f_lo = mid, f_mid
        else:
            hi, f_hi = mid, f_mid

    x0, f0 = lo, f_lo
    x1, f1 = hi, f_hi
    best_x, best_f = (x0, f0) if abs(f0) < abs(f1) else (x1, f1)
    tol = _SOLVE_RELATIVE * n_target
    for _ in range(60):
        if abs(best_f) <= tol:
            return best_x
        if f1 == f0:
            break
        x2 = x1 - f1 * (x1 - x0) / (f1 - f0)
        if not math.isfinite(x2) or x2 < lo or x2 > hi:
            x2 = 0.5 * (lo + hi)
        f2 = fn(x2)
        if f2 < 0.0:
            lo = max(lo, x2)
        else:
            hi = min(hi, x2)
        x0, f0, x1, f1 = x1, f1, x2, f2
        if abs(f2) < abs(best_f):
            best_x, best_f = x2, f2
        if x0 == x1:
            break
    if abs(best_f) <= tol:
        return best_x
    raise ConvergenceError(
        f"chemical-potential solve stalled: residual {best_f:.3e} "
        f"exceeds {tol:.3e}"
    )


def _solve_fermi_rel(spec: Spectrum, n_target: float, temperature: float) -> float:
    """Solve N(mu, T) = n for Fermi statistics; returns mu - E_0."""
    n = _validate_target(n_target)
    t = _validate_temperature(temperature)
    if n >= spec.total_states:
        raise CapacityError(
            f"cannot hold {n:g} fermions: only {spec.total_states} states "
            f"exist below e_max={spec.e_max:g}"
        )

    def f(mu_rel):
        return _occ_sums(spec, mu_rel, t, bose=False)[0] - n

    lo = -40.0 * t
    f_lo = f(lo)
    for _ in range(200):
        if f_lo < 0.0:
            break
        lo = 2.0 * lo - 40.0 * t
        f_lo = f(lo)
    else:
        raise ConvergenceError("no lower bracket for the Fermi chemical potential")

    k = min(spec.total_states, max(1, math.ceil(n)))
    level = int(np.searchsorted(spec.cumulative_states[1:], k, side="left"))
    hi = float(spec.energies_shifted[level]) + 40.0 * t
    f_hi = f(hi)
    for _ in range(200):
        if f_hi >= 0.0:
            break
        hi += 20.0 * t + 0.25 * (hi - lo)
        f_hi = f(hi)
    else:
        raise ConvergenceError("no upper bracket for the Fermi chemical potential")

    return _bisect_secant(f, lo, hi, f_lo, f_hi, n)


def _solve_bose_delta(spec: Spectrum, n_target: float, temperature: float) -> float:
    """Solve N(mu, T) = n for Bose statistics; returns Delta = E_0 - mu > 0.

    The solver variable is y = ln(Delta / T): N is monotone decreasing in
    y, and the logarithmic scale keeps the bisection well conditioned both
    deep in the condensate (Delta ~ T/n) and in the classical regime.
    """
    n = _validate_target(n_target)
    t = _validate_temperature(temperature)

    # Solver variable u with Delta = T e^{-u}: raising u shrinks the gap
    # and grows the ground occupancy, so f is increasing in u.
    def f(u):
        return _occ_sums(spec, -t * math.exp(-u), t, bose=True)[0] - n

    lo = -5.0
    f_lo = f(lo)
    while f_lo >= 0.0:
        lo -= 5.0
        if lo < -60.0:
            raise ConvergenceError(
                "no lower bracket for the Bose chemical potential"
            )
        f_lo = f(lo)
    hi = 5.0
    f_hi = f(hi)
    while f_hi <= 0.0:
        hi += 5.0
        if hi > 710.0:
            raise ConvergenceError(
                "no upper bracket for the Bose chemical potential"
            )
        f_hi = f(hi)
    u = _bisect_secant(f, lo, hi, f_lo, f_hi, n)
    return t * math.exp(-u)


def solve_mu(spec: Spectrum, n_target: float, temperature: float, stat) -> float:
    """Chemical potential with N(mu, T) = n_target to 1e-10 relative."""
    stat = _as_stat(stat)
    if stat is Statistics.FERMI:
        return float(spec.energies[0]) + _solve_fermi_rel(
            spec, n_target, temperature
        )
    delta = _solve_bose_delta(spec, n_target, temperature)
    return float(spec.energies[0]) - delta


# ----------------------------------------------------------------------
# fixed-N state points and derived quantities
# ----------------------------------------------------------------------

def _energy_at_fixed_n(spec: Spectrum, n_target: float, temperature: float,
                       stat: Statistics) -> float:
    """Total energy with mu re-solved at this temperature (for Cv)."""
    bose = stat is Statistics.BOSE
    if bose:
        mu_rel = -_solve_bose_delta(spec, n_target, temperature)
    else:
        mu_rel = _solve_fermi_rel(spec, n_target, temperature)
    number, esum, _ = _occ_sums(spec, mu_rel, temperature, bose)
    e0 = float(spec.energies[0])
    energy = esum + e0 * number
    _require_tail(spec, e0 + mu_rel, temperature, number, energy)
    return energy


def heat_capacity(spec: Spectrum, n_target: float, temperature: float,
                  stat) -> float:
    """C_V(T) at fixed particle number by a central finite difference.

    The chemical potential is re-solved at both displaced temperatures so
    the derivative is taken along the fixed-N path.
    """
    t = _validate_temperature(temperature)
    stat = _as_stat(stat)
    n = _validate_target(n_target)
    t_lo = t * (1.0 - _CV_STEP)
    t_hi = t * (1.0 + _CV_STEP)
    if t_lo <= 0.0 or t_lo == t or t_hi == t:
        raise DomainError(
            f"temperature {t:g} is too small for the finite-difference step"
        )
    e_hi = _energy_at_fixed_n(spec, n, t_hi, stat)
    e_lo = _energy_at_fixed_n(spec, n, t_lo, stat)
    return (e_hi - e_lo) / (t_hi - t_lo)


def thermo_point(spec: Spectrum, n_target: float, temperature: float, stat,
                 with_cv: bool = False) -> ThermoPoint:
    """Full fixed-N thermodynamic state at one temperature."""
    t = _validate_temperature(temperature)
    stat = _as_stat(stat)
    n = _validate_target(n_target)
    bose = stat is Statistics.BOSE

    condensate = None
    if bose:
        delta = _solve_bose_delta(spec, n, t)
        mu_rel = -delta
    else:
        mu_rel = _solve_fermi_rel(spec, n, t)

    number, esum, wsum = _occ_sums(spec, mu_rel, t, bose)
    e0 = float(spec.energies[0])
    energy = esum + e0 * number
    w = (t if bose else -t) * wsum
    mu = e0 + mu_rel
    _require_tail(spec, mu, t, number, energy)

    # S = (E - mu N - W)/T evaluated in shifted energies: the ground-energy
    # contributions of E and mu N cancel exactly, so no precision is lost
    # deep in the condensate.
    entropy = (esum - mu_rel * number - w) / t

    if bose:
        x0 = delta / t
        ground_occ = float(spec.degeneracies[0]) * (
            0.0 if x0 > 745.0 else 1.0 / math.expm1(x0)
        )
        condensate = ground_occ / number

    cv = heat_capacity(spec, n, t, stat) if with_cv else None

    point = ThermoPoint(
        temperature=t,
        mu=mu,
        n_target=n,
        n_achieved=number,
        energy=energy,
        grand_potential=w,
        entropy=entropy,
        pressure=-w / ball_volume(spec.dim, 1.0),
        heat_capacity=cv,
        condensate_fraction=condensate,
    )
    if abs(number - n) > 1e-8 * n:
        raise ConvergenceError(
            f"achieved particle number {number!r} misses the target {n!r}"
        )
    return point


def fermi_temperature(spec: Spectrum, n: int) -> float:
    """T_F = E_F(n) with k_B = 1."""
    return fermi_energy(spec, n)


def critical_temperature(spec: Spectrum, n: float) -> float:
    """Finite-system Bose condensation temperature.

    Defined by saturation of the excited states: the temperature at which
    the excited-level occupancy at mu = E_0 equals n.  Solved on ln T by
    bisection with secant polishing.  Levels above the cutoff only add
    occupancy, so a probe whose in-range excited sum already reaches n is
    a valid right bracket even if its tail bound is loose; the returned
    root itself must pass the tail-adequacy check.
    """
    n = _validate_target(n)
    if len(spec) < 2:
        raise CutoffError(
            "critical_temperature needs at least one excited level below e_max"
        )

    def excited(temp):
        return _occ_sums(spec, 0.0, temp, bose=True, skip_ground=True)[0]

    def adequate(temp):
        tail_n, _ = _tail_fractions(spec, float(spec.energies[0]), temp)
        return tail_n <= _TAIL_RELATIVE * n

    gap = float(spec.energies_shifted[1])
    t_lo = gap / 50.0
    while excited(t_lo) >= n:
        t_lo /= 4.0
        if t_lo < 1e-280:
            raise ConvergenceError("no lower bracket for critical temperature")

    t_hi = t_lo
    n_hi = excited(t_hi)
    while n_hi < n:
        t_hi *= 2.0
        n_hi = excited(t_hi)
        if not adequate(t_hi) and n_hi < n:
            raise CutoffError(
                f"e_max={spec.e_max:g} cannot hold {n:g} excited bosons with "
                f"a trustworthy tail at T={t_hi:g}; raise the cutoff"
            )
        if t_hi > 1e280:
            raise ConvergenceError("no upper bracket for critical temperature")

    def f(log_t):
        return excited(math.exp(log_t)) - n

    lo, hi = math.log(0.5 * t_hi), math.log(t_hi)
    f_lo, f_hi = f(lo), f(hi)
    root = _bisect_secant(f, lo, hi, f_lo, f_hi, n)
    tc = math.exp(root)
    if not adequate(tc):
        raise CutoffError(
            f"e_max={spec.e_max:g} is inadequate at the critical temperature "
            f"{tc:g}; raise the cutoff"
        )
    return tc


def condensate_curve(spec: Spectrum, n: float, t_grid):
    """Rows (t, condensate_fraction) on a grid of reduced temperatures t = T/T_c."""
    n = _validate_target(n)
    t_arr = np.asarray(t_grid, dtype=np.float64)
    if t_arr.ndim != 1 or t_arr.size == 0:
        raise DomainError("t_grid must be a non-empty 1-d array")
    if not np.all(np.isfinite(t_arr)) or np.any(t_arr <= 0.0):
        raise DomainError("reduced temperatures must be finite and positive")
    tc = critical_temperature(spec, n)
    rows = []
    for t in t_arr:
        point = thermo_point(spec, n, float(t) * tc, Statistics.BOSE)
        rows.append((float(t), point.condensate_fraction))
    return rows
