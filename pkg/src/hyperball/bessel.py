"""Bessel functions of the first kind and their positive zeros.

Orders are restricted to the non-negative integers and half-integers that
arise as radial orders of the hard-wall ball, ``nu = l + (D - 2)/2``.  They
are represented exactly through :class:`BesselOrder`, which stores
``2 * nu`` as an int; every public operation also accepts a plain number
that is an exact integer or half-integer.

Zeros are located by a scan-and-bracket strategy: ``J_nu`` has no positive
zero below ``nu``, and consecutive zeros are separated by more than pi/2,
so probing from ``nu`` with pi/2 spacing finds every sign change.  Each
bracket is then polished with a safeguarded Newton iteration.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import ConvergenceError, DomainError

__all__ = [
    "BesselOrder",
    "eval_j",
    "eval_j_prime",
    "mcmahon_guess",
    "zero",
    "zeros_up_to",
]

_HALF_PI = 0.5 * math.pi

# Scan probes land at least this far from machine-representable zeros in
# practice; a residual above the ceiling below means the polish failed.
_RESIDUAL_CEILING = 1e-10


@dataclass(frozen=True)
class BesselOrder:
    """Exact integer or half-integer order, stored as ``twice_nu = 2*nu``."""

    twice_nu: int

    def __post_init__(self) -> None:
        if not isinstance(self.twice_nu, int) or isinstance(self.twice_nu, bool):
            raise DomainError("twice_nu must be a Python int")
        if self.twice_nu < 0:
            raise DomainError("order must be non-negative")

    @property
    def nu(self) -> float:
        return 0.5 * self.twice_nu

    @property
    def is_half_integer(self) -> bool:
        return self.twice_nu % 2 == 1

    @classmethod
    def from_nu(cls, nu: float) -> "BesselOrder":
        twice = 2.0 * float(nu)
        rounded = round(twice)
        if twice != rounded:
            raise DomainError(
                f"order {nu!r} is neither an integer nor a half-integer"
            )
        return cls(int(rounded))

    def __str__(self) -> str:
        if self.twice_nu % 2 == 0:
            return str(self.twice_nu // 2)
        return f"{self.twice_nu}/2"


def _as_order(order) -> BesselOrder:
    if isinstance(order, BesselOrder):
        return order
    return BesselOrder.from_nu(order)


def _as_positive_array(x):
    arr = np.asarray(x, dtype=np.float64)
    if arr.size and (not np.all(np.isfinite(arr)) or np.any(arr <= 0.0)):
        raise DomainError("argument x must be finite and positive")
    return arr


def eval_j(order, x):
    """Evaluate J_nu(x) for x > 0 (scalar or array)."""
    o = _as_order(order)
    arr = _as_positive_array(x)
    scalar = arr.ndim == 0
    val, _ = _kernels.bessel_j_pair(o.twice_nu, arr.reshape(-1))
    return float(val[0]) if scalar else val.reshape(arr.shape)


def eval_j_prime(order, x):
    """Evaluate dJ_nu/dx for x > 0 via J'_nu = J_{nu-1} - (nu/x) J_nu."""
    o = _as_order(order)
    arr = _as_positive_array(x)
    scalar = arr.ndim == 0
    flat = arr.reshape(-1)
    val, low = _kernels.bessel_j_pair(o.twice_nu, flat)
    out = low - (o.nu / flat) * val
    return float(out[0]) if scalar else out.reshape(arr.shape)


def mcmahon_guess(order, s: int) -> float:
    """First-order large-zero estimate (s + nu/2 - 1/4) * pi for j_{nu,s}."""
    o = _as_order(order)
    s = _validate_index(s)
    return (s + 0.5 * o.nu - 0.25) * math.pi


def _validate_index(s) -> int:
    if isinstance(s, bool) or not isinstance(s, (int, np.integer)):
        raise DomainError("zero index s must be an int")
    s = int(s)
    if s < 1:
        raise DomainError("zero index s must be >= 1")
    return s


def _scan_start(nu: float, x_max: float) -> float:
    # J_nu has no positive zero at or below nu, so nu is a safe left edge;
    # for nu = 0 start at a fixed small offset instead.
    return nu if nu > 0.0 else min(0.5, 0.5 * x_max)


def _find_zeros(twice_nu: int, x_lo: float, x_max: float) -> np.ndarray:
    """All zeros of J_nu in (x_lo, x_max], assuming none at or below x_lo."""
    if x_lo >= x_max:
        return np.empty(0, dtype=np.float64)
    count = int(math.ceil((x_max - x_lo) / _HALF_PI)) + 1
    probes = x_lo + _HALF_PI * np.arange(count + 1)
    probes[-1] = min(probes[-1], x_max)
    if probes[-1] <= probes[-2]:
        probes = probes[:-1]

    values, _ = _kernels.bessel_j_pair(twice_nu, probes)
    signs = np.sign(values)

    exact = probes[signs == 0.0]
    change = signs[:-1] * signs[1:] < 0.0
    idx = np.flatnonzero(change)
    lo = probes[idx]
    hi = probes[idx + 1]
    sign_lo = signs[idx]

    roots = _kernels.refine_zeros(twice_nu, lo, hi, sign_lo)
    if roots.size:
        residual, _ = _kernels.bessel_j_pair(twice_nu, roots)
        if not np.all(np.isfinite(roots)) or np.max(np.abs(residual)) > _RESIDUAL_CEILING:
            raise ConvergenceError(
                f"zero refinement failed for order {twice_nu}/2: "
                f"worst residual {np.max(np.abs(residual)):.3e}"
            )
    allz = np.sort(np.concatenate([roots, exact]))
    return allz[allz <= x_max]


def zeros_up_to(order, x_max: float) -> np.ndarray:
    """All positive zeros of J_nu up to and including x_max, ascending."""
    o = _as_order(order)
    x_max = float(x_max)
    if not math.isfinite(x_max) or x_max <= 0.0:
        raise DomainError("x_max must be finite and positive")
    x_lo = _scan_start(o.nu, x_max)
    return _find_zeros(o.twice_nu, x_lo, x_max)


def zero(order, s: int) -> float:
    """The s-th positive zero j_{nu,s} (s = 1 is the smallest)."""
    o = _as_order(order)
    s = _validate_index(s)
    # The McMahon estimate only sizes the scan window; the zero itself is
    # identified by counting sign changes from the origin side, which is
    # immune to the estimate landing near the wrong zero at large order.
    x_hi = max(mcmahon_guess(o, s) + math.pi, o.nu + (o.nu + 9.0) ** (1.0 / 3.0) * 3.0)
    for _ in range(64):
        zs = zeros_up_to(o, x_hi)
        if zs.size >= s:
            return float(zs[s - 1])
        x_hi += math.pi * (s - zs.size + 1)
    raise ConvergenceError(
        f"could not locate zero {s} of J_{o} within the scan budget"
    )
