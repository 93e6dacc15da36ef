"""Smoothed (two-term) state counting for the hard-wall ball.

The smoothed approximation to the closed staircase N(E <= k^2) is

    N_W(k) = omega_D V (k / 2pi)^D  -  (1/4) omega_{D-1} S (k / 2pi)^{D-1}

with V and S the volume and surface area of the ball and omega_d the
volume of the d-dimensional unit ball.  The leading term is the phase-space
volume; the negative correction is the Dirichlet boundary term.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import CutoffError, DomainError
from .spectrum import Spectrum, counting_function, _validate_dim

__all__ = [
    "WeylGeometry",
    "ball_volume",
    "ball_surface",
    "unit_ball_volume",
    "weyl_count",
    "weyl_residual",
]


def unit_ball_volume(dim: int) -> float:
    """omega_d = pi^(d/2) / Gamma(d/2 + 1); omega_0 = 1, omega_1 = 2."""
    if isinstance(dim, bool) or not isinstance(dim, (int, np.integer)):
        raise DomainError("dim must be an int")
    dim = int(dim)
    if dim < 0:
        raise DomainError("dim must be >= 0")
    return math.pi ** (0.5 * dim) / math.gamma(0.5 * dim + 1.0)


def ball_volume(dim: int, radius: float = 1.0) -> float:
    """Volume of the dim-dimensional ball of the given radius."""
    dim = _validate_dim(dim)
    radius = float(radius)
    if radius <= 0.0:
        raise DomainError("radius must be positive")
    return unit_ball_volume(dim) * radius**dim


def ball_surface(dim: int, radius: float = 1.0) -> float:
    """Surface area of the dim-ball boundary: S = dim * V / radius."""
    dim = _validate_dim(dim)
    radius = float(radius)
    if radius <= 0.0:
        raise DomainError("radius must be positive")
    return dim * unit_ball_volume(dim) * radius ** (dim - 1)


@dataclass(frozen=True)
class WeylGeometry:
    """Geometric data entering the smoothed count."""

    dim: int
    radius: float
    volume: float
    surface: float

    @classmethod
    def for_ball(cls, dim: int, radius: float = 1.0) -> "WeylGeometry":
        return cls(
            dim=_validate_dim(dim),
            radius=float(radius),
            volume=ball_volume(dim, radius),
            surface=ball_surface(dim, radius),
        )


def weyl_count(geom: WeylGeometry, k):
    """Two-term smoothed count at wavenumber k (scalar or array)."""
    k_arr = np.asarray(k, dtype=np.float64)
    if k_arr.size and np.any(k_arr < 0.0):
        raise DomainError("k must be non-negative")
    d = geom.dim
    bulk = unit_ball_volume(d) * geom.volume * (k_arr / (2.0 * math.pi)) ** d
    boundary = (
        0.25
        * unit_ball_volume(d - 1)
        * geom.surface
        * (k_arr / (2.0 * math.pi)) ** (d - 1)
    )
    out = bulk - boundary
    return float(out) if out.ndim == 0 else out


def weyl_residual(spec: Spectrum, k_grid):
    """Rows (k, exact_count, smoothed_count, exact - smoothed) over a k grid.

    Every k must satisfy k^2 <= e_max so the exact count is closed below
    the cutoff.
    """
    k_arr = np.asarray(k_grid, dtype=np.float64)
    if k_arr.ndim != 1 or k_arr.size == 0:
        raise DomainError("k_grid must be a non-empty 1-d array")
    if np.any(k_arr < 0.0) or not np.all(np.isfinite(k_arr)):
        raise DomainError("k grid entries must be finite and non-negative")
    if float(np.max(k_arr)) ** 2 > spec.e_max:
        raise CutoffError(
            f"k={float(np.max(k_arr)):g} exceeds sqrt(e_max)={math.sqrt(spec.e_max):g}"
        )
    geom = WeylGeometry.for_ball(spec.dim, 1.0)
    rows = []
    for k in k_arr:
        exact = counting_function(spec, float(k) ** 2)
        smooth = weyl_count(geom, float(k))
        rows.append((float(k), exact, smooth, exact - smooth))
    return rows
