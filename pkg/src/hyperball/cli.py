"""Command-line interface: spectra, thermodynamic scans, and Weyl tables.

Subcommands
-----------
spectrum    build (or load) a spectrum and write its cache file
thermo      fixed-N thermodynamic scan over a temperature grid
tc-scan     Bose condensation temperature versus particle number
fermi-scan  Fermi energy versus particle number with the smoothed prediction
weyl        exact versus smoothed state counts on a wavenumber grid

Temperatures on the ``thermo`` grid are specified as fractions of the
natural scale of the chosen statistics: T_F(n) for fermions and T_c(n)
for bosons.  The ``weyl`` subcommand reuses --tmin/--tmax/--points as the
dimensionless wavenumber (kR) grid.

Exit codes: 0 success; 2 configuration or domain error; 3 numerical
failure; 4 inadequate spectral cutoff (or capacity exceeded).

Spectra are cached as plain-text files named
``spectrum_d{dim}_emax{e_max}.txt`` inside --cache-dir (default: the
HYPERBALL_CACHE_DIR environment variable, else ``.hyperball-cache`` in
the working directory).  Reruns with identical inputs produce
byte-identical cache files and output tables.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import asymptotics, spectrum, thermo, weyl
from .errors import (
    CapacityError,
    ConvergenceError,
    CutoffError,
    DomainError,
    HyperballError,
)

__all__ = [
    "RunConfig",
    "build_parser",
    "cmd_spectrum",
    "cmd_thermo",
    "cmd_tc_scan",
    "cmd_fermi_scan",
    "cmd_weyl",
    "main",
]

_ENV_CACHE_DIR = "HYPERBALL_CACHE_DIR"
_DEFAULT_CACHE_DIR = ".hyperball-cache"


@dataclass
class RunConfig:
    """Parsed, validated invocation parameters shared by the subcommands."""

    command: str
    dim: int
    stat: thermo.Statistics | None = None
    n_values: list = field(default_factory=list)
    tmin: float = 0.1
    tmax: float = 1.0
    points: int = 16
    log_grid: bool = False
    e_max: float | None = None          # None means "auto"
    out: str | None = None
    fmt: str = "csv"
    cache_dir: str | None = None


# ----------------------------------------------------------------------
# helpers
# ----------------------------------------------------------------------

def _parse_n_list(text: str) -> list:
    values = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        value = float(part)
        if not math.isfinite(value) or value <= 0.0:
            raise DomainError(f"--n entries must be positive (got {part!r})")
        values.append(value)
    if not values:
        raise DomainError("--n must contain at least one value")
    return values


def _temperature_grid(cfg: RunConfig) -> np.ndarray:
    if cfg.points < 1:
        raise DomainError("--points must be >= 1")
    if cfg.tmin <= 0.0 or cfg.tmax < cfg.tmin:
        raise DomainError("need 0 < tmin <= tmax")
    if cfg.points == 1:
        return np.array([cfg.tmin])
    if cfg.log_grid:
        return np.geomspace(cfg.tmin, cfg.tmax, cfg.points)
    return np.linspace(cfg.tmin, cfg.tmax, cfg.points)


def _resolve_cache_dir(cfg: RunConfig) -> Path:
    if cfg.cache_dir:
        return Path(cfg.cache_dir)
    env = os.environ.get(_ENV_CACHE_DIR, "")
    if env:
        return Path(env)
    return Path(_DEFAULT_CACHE_DIR)


def _cache_path(cache_dir: Path, dim: int, e_max: float) -> Path:
    return cache_dir / f"spectrum_d{dim}_emax{e_max:.17g}.txt"


def _auto_e_max(cfg: RunConfig) -> float:
    """Cutoff rule: cover 60 thermal widths above mu plus a Fermi margin.

    The temperature scale is estimated from the smoothed spectrum: T_F for
    fermions, the thermodynamic-limit (or capacity-bound, D = 2) critical
    temperature for bosons.  The post-hoc tail-adequacy checks inside the
    thermodynamic operations still validate the result.
    """
    if cfg.e_max is not None:
        return cfg.e_max
    d = cfg.dim
    n_max = max(cfg.n_values) if cfg.n_values else 1000.0
    ef = asymptotics.fermi_energy_weyl(d, n_max)
    if cfg.stat is thermo.Statistics.BOSE:
        if d >= 3:
            omega = weyl.unit_ball_volume(d)
            c_d = omega * omega / (2.0 * math.pi) ** d
            t_ref = (
                n_max
                / (c_d * math.gamma(0.5 * d + 1.0) * asymptotics.riemann_zeta(0.5 * d))
            ) ** (2.0 / d)
        else:
            t_ref = asymptotics.tc_upper_bound(d, n_max)
    else:
        t_ref = ef
    t_max_abs = cfg.tmax * t_ref
    mu_margin = ef                     # fermi mu <= E_F + O(T); bose mu <= E_0
    return max(60.0 * t_max_abs + mu_margin, 10.0 * ef, 100.0)


def _get_spectrum(cfg: RunConfig, write_cache: bool = True):
    e_max = _auto_e_max(cfg)
    cache_dir = _resolve_cache_dir(cfg)
    path = _cache_path(cache_dir, cfg.dim, e_max)
    if path.is_file():
        spec = spectrum.read_spectrum(path)
        if spec.dim == cfg.dim and spec.e_max == e_max:
            return spec, path
    spec = spectrum.build_spectrum(cfg.dim, e_max)
    if write_cache:
        cache_dir.mkdir(parents=True, exist_ok=True)
        spectrum.write_spectrum(spec, path)
    return spec, path


def _format_cell(value) -> str:
    if isinstance(value, float):
        return f"{value:.17g}"
    if value is None:
        return ""
    return str(value)


def _emit(cfg: RunConfig, columns: list, rows: list) -> None:
    if cfg.fmt == "json":
        payload = {
            "command": cfg.command,
            "columns": columns,
            "rows": [
                [None if (isinstance(v, float) and math.isnan(v)) else v for v in row]
                for row in rows
            ],
        }
        text = json.dumps(payload, indent=2) + "\n"
    else:
        lines = [",".join(columns)]
        for row in rows:
            lines.append(",".join(_format_cell(v) for v in row))
        text = "\n".join(lines) + "\n"
    if cfg.out:
        Path(cfg.out).write_bytes(text.encode("ascii"))
    else:
        sys.stdout.write(text)


# ----------------------------------------------------------------------
# subcommands
# ----------------------------------------------------------------------

def cmd_spectrum(cfg: RunConfig) -> int:
    spec, path = _get_spectrum(cfg)
    columns = ["dim", "e_max", "levels", "states", "ground_energy", "cache_file"]
    rows = [
        [
            spec.dim,
            spec.e_max,
            len(spec),
            spec.total_states,
            float(spec.energies[0]),
            str(path),
        ]
    ]
    _emit(cfg, columns, rows)
    return 0


def cmd_thermo(cfg: RunConfig) -> int:
    if len(cfg.n_values) != 1:
        raise DomainError("thermo needs exactly one --n value")
    n = cfg.n_values[0]
    stat = cfg.stat or thermo.Statistics.FERMI
    spec, _ = _get_spectrum(cfg)
    bose = stat is thermo.Statistics.BOSE
    if bose:
        t_ref = thermo.critical_temperature(spec, n)
    else:
        t_ref = thermo.fermi_temperature(spec, int(round(n)))

    columns = [
        "T_over_Ts",
        "T_over_Tref",
        "mu_over_Es",
        "N",
        "E_over_Es",
        "W_over_Es",
        "S_over_kB",
        "P",
        "Cv_over_kB",
        "condensate_fraction",
    ]
    rows = []
    for frac in _temperature_grid(cfg):
        t_abs = float(frac) * t_ref
        try:
            point = thermo.thermo_point(spec, n, t_abs, stat, with_cv=True)
        except HyperballError as exc:
            raise type(exc)(
                f"grid point T/Tref={float(frac):.6g} (T={t_abs:.6g}): {exc}"
            ) from exc
        rows.append(
            [
                point.temperature,
                float(frac),
                point.mu,
                point.n_achieved,
                point.energy,
                point.grand_potential,
                point.entropy,
                point.pressure,
                point.heat_capacity,
                point.condensate_fraction if bose else None,
            ]
        )
    _emit(cfg, columns, rows)
    return 0


def cmd_tc_scan(cfg: RunConfig) -> int:
    if not cfg.n_values:
        raise DomainError("tc-scan needs --n with one or more values")
    cfg.stat = thermo.Statistics.BOSE
    spec, _ = _get_spectrum(cfg)
    columns = ["N", "Tc_over_Ts", "bound_over_Ts"]
    rows = []
    for n in cfg.n_values:
        tc = thermo.critical_temperature(spec, n)
        try:
            bound = asymptotics.tc_upper_bound(cfg.dim, n)
        except DomainError:
            bound = None
        rows.append([n, tc, bound])
    _emit(cfg, columns, rows)
    return 0


def cmd_fermi_scan(cfg: RunConfig) -> int:
    if not cfg.n_values:
        raise DomainError("fermi-scan needs --n with one or more values")
    cfg.stat = thermo.Statistics.FERMI
    spec, _ = _get_spectrum(cfg)
    columns = ["N", "EF_over_Es", "weyl_prediction"]
    rows = []
    for n in cfg.n_values:
        n_int = int(round(n))
        if n_int != n:
            raise DomainError("fermi-scan --n values must be integers")
        rows.append(
            [
                n_int,
                spectrum.fermi_energy(spec, n_int),
                asymptotics.fermi_energy_weyl(cfg.dim, n_int),
            ]
        )
    _emit(cfg, columns, rows)
    return 0


def cmd_weyl(cfg: RunConfig) -> int:
    k_grid = _temperature_grid(cfg)          # reused as the kR grid
    if cfg.e_max is None:
        cfg.e_max = max(float(np.max(k_grid)) ** 2 * 1.000001, 100.0)
    spec, _ = _get_spectrum(cfg)
    columns = ["k", "exact_count", "weyl_count", "residual"]
    rows = [list(r) for r in weyl.weyl_residual(spec, k_grid)]
    _emit(cfg, columns, rows)
    return 0


# ----------------------------------------------------------------------
# argument parsing and entry point
# ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hyperball",
        description=(
            "Spectra and quantum-gas thermodynamics of the D-dimensional "
            "hard-wall spherical box (energies in hbar^2/(2MR^2), k_B = 1)."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, *, needs_stat=False, needs_n=False):
        p.add_argument("--dim", type=int, required=True, help="spatial dimension D >= 2")
        if needs_stat:
            p.add_argument(
                "--stat",
                choices=["bose", "fermi"],
                default="fermi",
                help="quantum statistics (default: fermi)",
            )
        if needs_n:
            p.add_argument(
                "--n",
                type=str,
                default=None,
                help="particle number(s), comma-separated",
            )
        p.add_argument(
            "--emax",
            type=str,
            default="auto",
            help="spectral cutoff in box units, or 'auto' (default)",
        )
        p.add_argument("--out", type=str, default=None, help="output file (default: stdout)")
        p.add_argument(
            "--format",
            dest="fmt",
            choices=["csv", "json"],
            default="csv",
            help="output format (default: csv)",
        )
        p.add_argument(
            "--cache-dir",
            type=str,
            default=None,
            help=f"spectrum cache directory (default: ${_ENV_CACHE_DIR} "
            f"or ./{_DEFAULT_CACHE_DIR})",
        )

    def add_grid(p, what):
        p.add_argument("--tmin", type=float, default=0.1, help=f"grid start ({what})")
        p.add_argument("--tmax", type=float, default=1.0, help=f"grid end ({what})")
        p.add_argument("--points", type=int, default=16, help="number of grid points")
        p.add_argument(
            "--log", action="store_true", help="logarithmic grid spacing"
        )

    p = sub.add_parser("spectrum", help="build a spectrum and write its cache")
    add_common(p, needs_n=True, needs_stat=True)

    p = sub.add_parser("thermo", help="fixed-N thermodynamics on a temperature grid")
    add_common(p, needs_stat=True, needs_n=True)
    add_grid(p, "fraction of T_F or T_c")

    p = sub.add_parser("tc-scan", help="condensation temperature vs particle number")
    add_common(p, needs_n=True)

    p = sub.add_parser("fermi-scan", help="Fermi energy vs particle number")
    add_common(p, needs_n=True)

    p = sub.add_parser("weyl", help="exact vs smoothed counting on a kR grid")
    add_common(p)
    add_grid(p, "wavenumber kR")

    return parser


def _config_from_args(args) -> RunConfig:
    cfg = RunConfig(command=args.command, dim=args.dim)
    if getattr(args, "stat", None):
        cfg.stat = thermo.Statistics.parse(args.stat)
    if getattr(args, "n", None):
        cfg.n_values = _parse_n_list(args.n)
    for name in ("tmin", "tmax", "points"):
        if hasattr(args, name):
            setattr(cfg, name, getattr(args, name))
    cfg.log_grid = bool(getattr(args, "log", False))
    emax_text = getattr(args, "emax", "auto")
    if emax_text != "auto":
        cfg.e_max = float(emax_text)
        if not math.isfinite(cfg.e_max) or cfg.e_max <= 0.0:
            raise DomainError("--emax must be positive (or 'auto')")
    cfg.out = getattr(args, "out", None)
    cfg.fmt = getattr(args, "fmt", "csv")
    cfg.cache_dir = getattr(args, "cache_dir", None)
    return cfg


_HANDLERS = {
    "spectrum": cmd_spectrum,
    "thermo": cmd_thermo,
    "tc-scan": cmd_tc_scan,
    "fermi-scan": cmd_fermi_scan,
    "weyl": cmd_weyl,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _config_from_args(args)
        return _HANDLERS[cfg.command](cfg)
    except (DomainError,) as exc:
        print(f"hyperball: configuration error: {exc}", file=sys.stderr)
        return 2
    except (CutoffError, CapacityError) as exc:
        print(f"hyperball: inadequate cutoff/capacity: {exc}", file=sys.stderr)
        return 4
    except (ConvergenceError, HyperballError) as exc:
        print(f"hyperball: numerical failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
