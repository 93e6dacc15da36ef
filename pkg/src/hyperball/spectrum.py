"""Exact single-particle spectrum of the D-dimensional hard-wall ball.

Every level is labelled by a mode index (l, s): angular momentum l >= 0 and
radial index s >= 1.  Its energy, in units of hbar^2/(2 M R^2), is the
square of the s-th positive zero of J_nu with nu = l + (D - 2)/2, and it
carries the SO(D) hyperspherical degeneracy

    g(D, l) = C(D + l - 1, l) - C(D + l - 3, l - 2).

A spectrum is built complete below a cutoff: it contains *every* level with
energy <= e_max.  Completeness follows from two monotonicity facts: zeros
of fixed order increase with s, and the first zero j_{nu,1} exceeds nu, so
the l-loop may stop at the first angular momentum whose order rules out
zeros below sqrt(e_max).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path

import numpy as np

from . import bessel
from .errors import CapacityError, ConvergenceError, CutoffError, DomainError

__all__ = [
    "ModeIndex",
    "Level",
    "Shell",
    "Spectrum",
    "degeneracy",
    "build_spectrum",
    "counting_function",
    "fermi_energy",
    "max_angular_momentum",
    "shell_decomposition",
    "read_spectrum",
    "write_spectrum",
    "SPECTRUM_CACHE_MAGIC",
]

_INT64_MAX = 2**63 - 1

SPECTRUM_CACHE_MAGIC = "hyperball-spectrum v1"


@dataclass(frozen=True)
class ModeIndex:
    """Quantum numbers of one radial-angular mode."""

    dim: int
    l: int
    s: int


@dataclass(frozen=True)
class Level:
    """One energy level: mode labels, Bessel zero, energy, degeneracy."""

    mode: ModeIndex
    zero: float
    energy: float
    degeneracy: int


@dataclass(frozen=True)
class Shell:
    """A run of levels between consecutive l = 0 levels in energy order.

    ``start_position`` and ``end_position`` are 1-based inclusive positions
    in the degeneracy-resolved state ordering, so
    ``state_count == end_position - start_position + 1``.
    """

    index: int
    state_count: int
    start_position: int
    end_position: int


def _validate_dim(dim) -> int:
    if isinstance(dim, bool) or not isinstance(dim, (int, np.integer)):
        raise DomainError("dim must be an int")
    dim = int(dim)
    if dim < 2:
        raise DomainError("dim must be >= 2")
    return dim


def degeneracy(dim: int, l: int) -> int:
    """Exact SO(D) degeneracy of angular momentum l (integer arithmetic)."""
    dim = _validate_dim(dim)
    if isinstance(l, bool) or not isinstance(l, (int, np.integer)):
        raise DomainError("l must be an int")
    l = int(l)
    if l < 0:
        raise DomainError("l must be >= 0")
    g = math.comb(dim + l - 1, l)
    if l >= 2:
        g -= math.comb(dim + l - 3, l - 2)
    if g > _INT64_MAX:
        raise OverflowError(
            f"degeneracy for dim={dim}, l={l} exceeds the int64 cache range"
        )
    return g


class Spectrum:
    """Immutable container for all levels with energy <= e_max.

    Array attributes are sorted by ascending energy (ties broken by l then
    s; distinct Bessel zeros never collide in practice) and marked
    read-only.  ``total_states`` counts states including degeneracy.
    """

    def __init__(self, dim, e_max, ls, ss, zeros, energies, degeneracies):
        self.dim = _validate_dim(dim)
        self.e_max = float(e_max)
        order = np.lexsort((ss, ls, energies))
        self.ls = np.ascontiguousarray(ls, dtype=np.int64)[order]
        self.ss = np.ascontiguousarray(ss, dtype=np.int64)[order]
        self.zeros = np.ascontiguousarray(zeros, dtype=np.float64)[order]
        self.energies = np.ascontiguousarray(energies, dtype=np.float64)[order]
        self.degeneracies = np.ascontiguousarray(degeneracies, dtype=np.int64)[order]
        for arr in (self.ls, self.ss, self.zeros, self.energies, self.degeneracies):
            arr.flags.writeable = False
        if self.energies.size == 0:
            raise CutoffError("a spectrum must contain at least one level")
        if np.any(np.diff(self.energies) < 0.0):
            raise ConvergenceError("spectrum energies are not sorted")
        total = int(np.sum(self.degeneracies, dtype=object))
        if total > _INT64_MAX:
            raise OverflowError("total state count exceeds int64")
        self.total_states = total

    def __len__(self) -> int:
        return int(self.energies.size)

    @cached_property
    def levels(self) -> tuple:
        """Level records in ascending energy order (built lazily)."""
        return tuple(
            Level(
                mode=ModeIndex(self.dim, int(l), int(s)),
                zero=float(z),
                energy=float(e),
                degeneracy=int(g),
            )
            for l, s, z, e, g in zip(
                self.ls, self.ss, self.zeros, self.energies, self.degeneracies
            )
        )

    @cached_property
    def cumulative_states(self) -> np.ndarray:
        """cumulative_states[i] = number of states in levels[:i] (length n+1)."""
        out = np.empty(self.energies.size + 1, dtype=np.int64)
        out[0] = 0
        np.cumsum(self.degeneracies, out=out[1:])
        return out

    @cached_property
    def running_max_l(self) -> np.ndarray:
        """running_max_l[i] = max angular momentum among levels[: i + 1]."""
        return np.maximum.accumulate(self.ls)

    @cached_property
    def energies_shifted(self) -> np.ndarray:
        """energies - ground energy, exact zero in the first slot."""
        out = self.energies - self.energies[0]
        out.flags.writeable = False
        return out

    @cached_property
    def degeneracies_f(self) -> np.ndarray:
        """Degeneracies as float64 for kernel sums."""
        out = self.degeneracies.astype(np.float64)
        out.flags.writeable = False
        return out


def _order_for(dim: int, l: int) -> bessel.BesselOrder:
    return bessel.BesselOrder(2 * l + dim - 2)


def build_spectrum(dim: int, e_max: float) -> Spectrum:
    """Enumerate every level of the dim-ball with energy <= e_max."""
    dim = _validate_dim(dim)
    e_max = float(e_max)
    if not math.isfinite(e_max) or e_max <= 0.0:
        raise DomainError("e_max must be finite and positive")
    x_max = math.sqrt(e_max)

    ground = bessel.zero(_order_for(dim, 0), 1)
    if ground > x_max:
        raise CutoffError(
            f"e_max={e_max:g} lies below the ground level "
            f"({ground * ground:.6g}); no spectrum exists under this cutoff"
        )

    ls, ss, zs, gs = [], [], [], []
    l = 0
    while True:
        order = _order_for(dim, l)
        if order.nu >= x_max:
            break
        zeros = bessel.zeros_up_to(order, x_max)
        if zeros.size == 0:
            # Double-check emptiness independently: the first zero of this
            # order must genuinely lie beyond the cutoff.
            if bessel.zero(order, 1) <= x_max:
                raise ConvergenceError(
                    f"zero scan for l={l} missed a zero below the cutoff"
                )
            break
        g = degeneracy(dim, l)
        ls.append(np.full(zeros.size, l, dtype=np.int64))
        ss.append(np.arange(1, zeros.size + 1, dtype=np.int64))
        zs.append(zeros)
        gs.append(np.full(zeros.size, g, dtype=np.int64))
        l += 1

    ls = np.concatenate(ls)
    ss = np.concatenate(ss)
    zs = np.concatenate(zs)
    gs = np.concatenate(gs)
    return Spectrum(dim, e_max, ls, ss, zs, zs * zs, gs)


def counting_function(spec: Spectrum, energy: float) -> int:
    """Number of states with level energy <= the given energy (closed count)."""
    energy = float(energy)
    if not math.isfinite(energy):
        raise DomainError("energy must be finite")
    if energy > spec.e_max:
        raise CutoffError(
            f"counting at energy {energy:g} exceeds the cutoff {spec.e_max:g}"
        )
    idx = int(np.searchsorted(spec.energies, energy, side="right"))
    return int(spec.cumulative_states[idx])


def _position_level(spec: Spectrum, n: int) -> int:
    """Index of the level containing the n-th state (1-based n)."""
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)):
        raise DomainError("n must be an int")
    n = int(n)
    if n < 1:
        raise DomainError("n must be >= 1")
    if n > spec.total_states:
        raise CapacityError(
            f"requested state {n} but only {spec.total_states} states exist "
            f"below e_max={spec.e_max:g}"
        )
    return int(np.searchsorted(spec.cumulative_states[1:], n, side="left"))


def fermi_energy(spec: Spectrum, n: int) -> float:
    """Energy of the highest occupied level when n states are filled."""
    return float(spec.energies[_position_level(spec, n)])


def max_angular_momentum(spec: Spectrum, n: int) -> int:
    """Largest l among the first n states in the filling order."""
    return int(spec.running_max_l[_position_level(spec, n)])


def shell_decomposition(spec: Spectrum) -> list:
    """Split the state ordering into shells delimited by l = 0 levels.

    Shell k starts at the k-th l = 0 level (the ground level opens shell 1)
    and ends just before the next one; the final shell ends at the cutoff.
    """
    starts = np.flatnonzero(spec.ls == 0)
    if starts.size == 0 or starts[0] != 0:
        raise ConvergenceError("spectrum does not start with an l=0 level")
    bounds = np.append(starts, len(spec))
    cum = spec.cumulative_states
    shells = []
    for k in range(starts.size):
        a, b = int(bounds[k]), int(bounds[k + 1])
        shells.append(
            Shell(
                index=k + 1,
                state_count=int(cum[b] - cum[a]),
                start_position=int(cum[a]) + 1,
                end_position=int(cum[b]),
            )
        )
    return shells


# ----------------------------------------------------------------------
# cache file format (plain text, deterministic, round-trips bit-exactly)
# ----------------------------------------------------------------------

def write_spectrum(spec: Spectrum, path) -> None:
    """Write a spectrum cache file (ASCII, LF endings, fixed-width rows)."""
    path = Path(path)
    lines = [
        SPECTRUM_CACHE_MAGIC,
        f"dim {spec.dim}",
        f"emax {spec.e_max:.17g}",
        f"levels {len(spec)}",
        f"states {spec.total_states}",
    ]
    for l, s, z, e, g in zip(
        spec.ls, spec.ss, spec.zeros, spec.energies, spec.degeneracies
    ):
        lines.append(f"{l:6d} {s:6d} {z:25.17e} {e:25.17e} {g:20d}")
    payload = "\n".join(lines) + "\n"
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_bytes(payload.encode("ascii"))
    tmp.replace(path)


def read_spectrum(path) -> Spectrum:
    """Read a spectrum cache file written by :func:`write_spectrum`."""
    path = Path(path)
    text = path.read_bytes().decode("ascii")
    lines = text.split("\n")
    if not lines or lines[0] != SPECTRUM_CACHE_MAGIC:
        raise DomainError(f"{path} is not a spectrum cache file")

    def field(i, name):
        key, _, value = lines[i].partition(" ")
        if key != name:
            raise DomainError(f"{path}: expected header '{name}', got {lines[i]!r}")
        return value

    dim = int(field(1, "dim"))
    e_max = float(field(2, "emax"))
    n_levels = int(field(3, "levels"))
    n_states = int(field(4, "states"))

    body = lines[5 : 5 + n_levels]
    if len(body) != n_levels or any(not row.strip() for row in body):
        raise DomainError(f"{path}: truncated cache file")
    ls = np.empty(n_levels, dtype=np.int64)
    ss = np.empty(n_levels, dtype=np.int64)
    zs = np.empty(n_levels, dtype=np.float64)
    es = np.empty(n_levels, dtype=np.float64)
    gs = np.empty(n_levels, dtype=np.int64)
    for i, row in enumerate(body):
        parts = row.split()
        if len(parts) != 5:
            raise DomainError(f"{path}: malformed record on line {i + 6}")
        ls[i] = int(parts[0])
        ss[i] = int(parts[1])
        zs[i] = float(parts[2])
        es[i] = float(parts[3])
        gs[i] = int(parts[4])
    spec = Spectrum(dim, e_max, ls, ss, zs, es, gs)
    if spec.total_states != n_states:
        raise DomainError(
            f"{path}: state count mismatch (header {n_states}, "
            f"records {spec.total_states})"
        )
    return spec
