"""Numerical kernel backend selection.

The compiled extension ``hyperball._kernels._core`` (Cython) is preferred
when it imported cleanly at build time; otherwise the numpy reference
implementation ``hyperball._kernels._pure`` is used.  Both expose the same
three functions with identical semantics:

    bessel_j_pair(twice_nu, x)          -> (J_nu, J_{nu-1}) arrays
    refine_zeros(twice_nu, lo, hi, s0)  -> polished roots array
    gc_sums(eshift, deg, mu_rel, T, b)  -> (number, energy_shift_sum, w_sum)

Set the environment variable ``HYPERBALL_PURE_PYTHON=1`` to force the pure
backend even when the extension is available (useful for benchmarking and
for debugging suspected extension issues).  ``BACKEND`` reports which one
is active: ``"compiled"`` or ``"python"``.
"""

from __future__ import annotations

import os

from . import _pure

_FORCE_PURE = os.environ.get("HYPERBALL_PURE_PYTHON", "") == "1"

if not _FORCE_PURE:
    try:
        from . import _core as _impl  # type: ignore[attr-defined]
    except ImportError:
        _impl = _pure
else:
    _impl = _pure

BACKEND: str = _impl.BACKEND

bessel_j_pair = _impl.bessel_j_pair
refine_zeros = _impl.refine_zeros
gc_sums = _impl.gc_sums


def available_backends() -> tuple[str, ...]:
    """Names of the backends importable in this installation."""
    names = ["python"]
    try:
        from . import _core  # noqa: F401
    except ImportError:
        pass
    else:
        names.insert(0, "compiled")
    return tuple(names)


def get_backend(name: str):
    """Return the backend module for ``name`` ("compiled" or "python")."""
    if name == "python":
        return _pure
    if name == "compiled":
        from . import _core
        return _core
    raise ValueError(f"unknown backend {name!r}")
