"""Pure-Python (numpy) implementation of the numerical kernels.

This is the reference backend.  The compiled extension ``_core`` mirrors it
routine for routine; regime boundaries and recurrences must stay identical in
both so that results agree to a few ulps.

The three kernels are:

* ``bessel_j_pair(twice_nu, x)`` -- vectorised evaluation of the cylinder
  function pair ``(J_nu(x), J_{nu-1}(x))`` for integer or half-integer order
  ``nu = twice_nu / 2 >= 0`` and ``x > 0``.
* ``refine_zeros(twice_nu, lo, hi, sign_lo)`` -- safeguarded Newton iteration
  that polishes one root of ``J_nu`` inside each sign-change bracket.
* ``gc_sums(eshift, deg, mu_rel, temperature, bose)`` -- grand-canonical
  occupation sums over a level list, in energy units shifted so that the
  condensate regime suffers no cancellation.

Evaluation regimes for ``bessel_j_pair`` (order nu, argument x):

1. ascending power series        when ``x < 2*sqrt(nu + 1)``
   (terms decrease from the first one, so no cancellation),
2. Hankel asymptotic expansion   when ``x > 40 + nu**2``
   (phase reduced with a two-part pi/2 split so large arguments keep
   full precision),
3. upward three-term recurrence  when ``nu <= x - 2*cbrt(x) - 2``
   (stable below the turning point; anchored on exact trigonometric
   forms for half-integer order and on regime-2 values of J_0, J_1 for
   integer order, hence the extra ``x > 42`` requirement there),
4. Miller backward recurrence    otherwise
   (normalised by the even-order sum identity for integer families and
   by the larger of the two exact trigonometric anchors J_{1/2}, J_{3/2}
   for half-integer families).
"""

from __future__ import annotations

import math

import numpy as np

BACKEND = "python"

# Two-part representation of pi/2 (high part exact in 33 bits) used for
# phase reduction: n * _PIO2_HI is exact for n < 2**20, so subtracting it
# from x loses nothing, and the low part restores the remainder.
_PIO2_HI = 1.57079632673412561417e00
_PIO2_LO = 6.07710050650619224932e-11

_RESCALE_THRESHOLD = 1e250
_RESCALE_FACTOR = 1e-250

_SQRT_2_OVER_PI = math.sqrt(2.0 / math.pi)


# ----------------------------------------------------------------------
# regime 1: ascending power series
# ----------------------------------------------------------------------

def _series_pair(twice_nu, x):
    """Power-series evaluation of (J_nu, J_{nu-1}) for twice_nu >= 2."""
    nu = 0.5 * twice_nu
    logx2 = np.log(0.5 * x)
    pref_a = np.exp(nu * logx2 - math.lgamma(nu + 1.0))
    pref_b = np.exp((nu - 1.0) * logx2 - math.lgamma(nu))
    q = 0.25 * x * x

    t = np.ones_like(x)
    u = np.ones_like(x)
    sum_a = np.ones_like(x)
    sum_b = np.ones_like(x)
    for k in range(72):
        t = -t * q / ((k + 1.0) * (nu + k + 1.0))
        u = -u * q / ((k + 1.0) * (nu + k))
        sum_a += t
        sum_b += u
        if max(np.max(np.abs(t)), np.max(np.abs(u))) < 1e-18:
            break
    return pref_a * sum_a, pref_b * sum_b


# ----------------------------------------------------------------------
# regime 2: Hankel asymptotic expansion with exact phase reduction
# ----------------------------------------------------------------------

def _reduced_trig(x, theta):
    """Return (cos(x - theta), sin(x - theta)) accurate for large x.

    The multiple of pi/2 nearest to x - theta is removed using the split
    high/low representation, so the reduced argument keeps ~1e-15 absolute
    accuracy even when x is of order 1e6 (theta stays of order nu).
    """
    m = np.floor((x - theta) / (0.5 * math.pi) + 0.5)
    # x - m*_PIO2_HI is exact (Sterbenz cancellation; the high part has
    # only 33 significant bits so the product below is exact too).
    r = ((x - m * _PIO2_HI) - theta) - m * _PIO2_LO
    c = np.cos(r)
    s = np.sin(r)
    quad = np.mod(m, 4.0).astype(np.int64)
    cos_out = np.choose(quad, [c, -s, -c, s])
    sin_out = np.choose(quad, [s, c, -s, -c])
    return cos_out, sin_out


def _hankel_one(twice_nu, x):
    """Asymptotic J_nu(x) for a single order, valid for x > 40 + nu**2."""
    nu = 0.5 * twice_nu
    mu4 = 4.0 * nu * nu
    inv8x = 1.0 / (8.0 * x)

    p = np.ones_like(x)
    q = np.zeros_like(x)
    a = np.ones_like(x)
    for m in range(1, 44):
        a = a * (mu4 - (2.0 * m - 1.0) ** 2) * inv8x / m
        half = m // 2
        sign = -1.0 if half % 2 else 1.0
        if m % 2 == 0:
            p += sign * a
        else:
            q += sign * a
        if np.max(np.abs(a)) < 1e-17:
            break

    theta = (2.0 * nu + 1.0) * (0.25 * math.pi)
    cos_chi, sin_chi = _reduced_trig(x, theta)
    amp = _SQRT_2_OVER_PI / np.sqrt(x)
    return amp * (p * cos_chi - q * sin_chi)


def _hankel_pair(twice_nu, x):
    return _hankel_one(twice_nu, x), _hankel_one(twice_nu - 2, x)


# ----------------------------------------------------------------------
# regime 3: upward recurrence from exact anchors
# ----------------------------------------------------------------------

def _upward_half_pair(twice_nu, x):
    """Upward recurrence for half-integer order, anchored on sin/cos forms."""
    amp = _SQRT_2_OVER_PI / np.sqrt(x)
    s = np.sin(x)
    c = np.cos(x)
    b = amp * s                  # J_{1/2}
    a = amp * (s / x - c)        # J_{3/2}
    if twice_nu == 1:
        return b, amp * c        # J_{1/2}, J_{-1/2}
    if twice_nu == 3:
        return a, b
    for to in range(3, twice_nu - 1, 2):     # to == 2*order of the top value
        a, b = (to / x) * a - b, a
    return a, b


def _upward_int_pair(twice_nu, x):
    """Upward recurrence for integer order, anchored on Hankel J_1, J_0."""
    a, b = _hankel_pair(2, x)                # J_1, J_0
    n = twice_nu // 2
    for k in range(1, n):
        a, b = (2.0 * k / x) * a - b, a
    return a, b


# ----------------------------------------------------------------------
# regime 4: Miller backward recurrence
# ----------------------------------------------------------------------

def _miller_start_order(top, xmax):
    base = max(top, xmax)
    return int(base + 14.0 * base ** (1.0 / 3.0)) + 26


def _miller_int_pair(twice_nu, x):
    """Backward recurrence for integer order, even-sum normalisation."""
    n = twice_nu // 2
    m_start = _miller_start_order(n, float(np.max(x)))
    if m_start % 2:
        m_start += 1

    jp = np.zeros_like(x)                    # holds J_{k+1} (unnormalised)
    jc = np.full_like(x, 1e-30)              # holds J_k, seeded at k = m_start
    norm = np.zeros_like(x)                  # J_0 + 2 * sum_{k even >= 2} J_k
    tgt_a = np.zeros_like(x)                 # J_n capture
    tgt_b = np.zeros_like(x)                 # J_{n-1} capture

    for k in range(m_start, -1, -1):
        if k == n:
            tgt_a = jc.copy()
        elif k == n - 1:
            tgt_b = jc.copy()
        if k % 2 == 0:
            norm += jc if k == 0 else 2.0 * jc
        if k > 0:
            jn = (2.0 * k / x) * jc - jp
            jp = jc
            jc = jn
            big = np.abs(jc) > _RESCALE_THRESHOLD
            if big.any():
                for arr in (jc, jp, norm, tgt_a, tgt_b):
                    arr[big] *= _RESCALE_FACTOR
    return tgt_a / norm, tgt_b / norm


def _miller_half_pair(twice_nu, x):
    """Backward recurrence for half-integer order, trigonometric anchors."""
    kt = (twice_nu - 1) // 2                 # target J_{kt + 1/2}
    m_start = _miller_start_order(kt, float(np.max(x)))

    jp = np.zeros_like(x)
    jc = np.full_like(x, 1e-30)
    tgt_a = np.zeros_like(x)
    tgt_b = np.zeros_like(x)
    anchor32 = np.zeros_like(x)              # J_{3/2} capture

    for k in range(m_start, -1, -1):         # order at this step is k + 1/2
        if k == kt:
            tgt_a = jc.copy()
        elif k == kt - 1:
            tgt_b = jc.copy()
        if k == 1:
            anchor32 = jc.copy()
        if k > 0:
            jn = ((2.0 * k + 1.0) / x) * jc - jp
            jp = jc
            jc = jn
            big = np.abs(jc) > _RESCALE_THRESHOLD
            if big.any():
                for arr in (jc, jp, tgt_a, tgt_b, anchor32):
                    arr[big] *= _RESCALE_FACTOR
    # jc now holds the unnormalised J_{1/2}.
    amp = _SQRT_2_OVER_PI / np.sqrt(x)
    s = np.sin(x)
    c = np.cos(x)
    exact12 = amp * s
    exact32 = amp * (s / x - c)
    use12 = np.abs(exact12) >= np.abs(exact32)
    with np.errstate(divide="ignore", invalid="ignore"):
        scale = np.where(use12, exact12 / jc, exact32 / anchor32)
    return tgt_a * scale, tgt_b * scale


# ----------------------------------------------------------------------
# dispatcher
# ----------------------------------------------------------------------

def bessel_j_pair(twice_nu, x):
    """Return (J_nu(x), J_{nu-1}(x)) for nu = twice_nu/2, elementwise on x.

    ``x`` must be a float64 array with strictly positive entries; ``twice_nu``
    a non-negative Python int.  Validation happens in the public wrappers.
    """
    x = np.ascontiguousarray(x, dtype=np.float64)
    if twice_nu == 0:
        a1, a0 = bessel_j_pair(2, x)
        return a0, -a1                       # J_{-1} = -J_1
    if twice_nu == 1:
        amp = _SQRT_2_OVER_PI / np.sqrt(x)
        return amp * np.sin(x), amp * np.cos(x)

    nu = 0.5 * twice_nu
    out_a = np.empty_like(x)
    out_b = np.empty_like(x)

    m_series = x < 2.0 * math.sqrt(nu + 1.0)
    rest = ~m_series
    m_hankel = rest & (x > 40.0 + nu * nu)
    rest &= ~m_hankel
    m_up = rest & (nu <= x - 2.0 * np.cbrt(x) - 2.0)
    if twice_nu % 2 == 0:
        m_up &= x > 42.0
    m_miller = rest & ~m_up

    if twice_nu % 2 == 0:
        up_fn, miller_fn = _upward_int_pair, _miller_int_pair
    else:
        up_fn, miller_fn = _upward_half_pair, _miller_half_pair

    for mask, fn in (
        (m_series, _series_pair),
        (m_hankel, _hankel_pair),
        (m_up, up_fn),
        (m_miller, miller_fn),
    ):
        if mask.any():
            a, b = fn(twice_nu, x[mask])
            out_a[mask] = a
            out_b[mask] = b
    return out_a, out_b


# ----------------------------------------------------------------------
# zero refinement
# ----------------------------------------------------------------------

def refine_zeros(twice_nu, lo, hi, sign_lo):
    """Polish one root of J_nu in each bracket [lo_i, hi_i].

    ``sign_lo`` is the sign of J_nu at the left edge of every bracket (the
    scan guarantees a single sign change per bracket).  Newton steps use
    J'_nu = J_{nu-1} - (nu/x) J_nu and fall back to bisection whenever a
    step leaves the current bracket; the bracket itself shrinks with every
    function evaluation, so the iteration cannot escape or stall.

    Returns the converged roots; raises no exceptions itself (the caller
    checks residuals and budget).  Output entry i is NaN only if the input
    bracket was invalid.
    """
    lo = np.array(lo, dtype=np.float64, copy=True)
    hi = np.array(hi, dtype=np.float64, copy=True)
    sign_lo = np.asarray(sign_lo, dtype=np.float64)
    if lo.size == 0:
        return lo

    nu = 0.5 * twice_nu
    x = 0.5 * (lo + hi)
    done = np.zeros(lo.shape, dtype=bool)

    for _ in range(100):
        ja, jb = bessel_j_pair(twice_nu, x)
        deriv = jb - (nu / x) * ja
        sg = np.sign(ja)

        hit = (sg == 0.0) & ~done
        shrink_lo = (sg == sign_lo) & ~done
        shrink_hi = (sg == -sign_lo) & ~done
        lo[shrink_lo] = x[shrink_lo]
        hi[shrink_hi] = x[shrink_hi]

        with np.errstate(divide="ignore", invalid="ignore"):
            step = ja / deriv
        x_new = x - step
        bad = ~np.isfinite(x_new) | (x_new <= lo) | (x_new >= hi)
        x_new = np.where(bad, 0.5 * (lo + hi), x_new)

        converged = np.abs(x_new - x) <= 4.0 * np.finfo(float).eps * x
        x = np.where(done | hit, x, x_new)
        done |= hit | converged
        if done.all():
            break
    return x


# ----------------------------------------------------------------------
# grand-canonical sums
# ----------------------------------------------------------------------

def gc_sums(eshift, deg, mu_rel, temperature, bose):
    """Occupation sums over levels with shifted energies.

    ``eshift`` holds E_i - E_ref (ascending, E_ref the lowest retained
    energy) and ``mu_rel`` holds mu - E_ref, so the Bose condensate regime
    evaluates x = (E_i - mu)/T without catastrophic cancellation.

    Returns ``(number, energy_shift_sum, w_sum)`` where

    * number          = sum_i g_i <n_i>
    * energy_shift_sum= sum_i g_i eshift_i <n_i>
    * w_sum           = sum_i g_i * ln(1 - exp(-x_i))      (Bose)
                        sum_i g_i * ln(1 + exp(-x_i))      (Fermi)

    so the grand potential is  +T * w_sum  for bosons and  -T * w_sum  for
    fermions.  Summation uses numpy pairwise reduction: a fixed,
    deterministic blocking that is bit-stable across runs.
    """
    x = (eshift - mu_rel) / temperature
    if bose:
        with np.errstate(over="ignore"):
            occ = 1.0 / np.expm1(x)          # overflow -> inf -> occ = 0
        logw = np.log(-np.expm1(-x))
    else:
        t = np.exp(-np.abs(x))
        occ = np.where(x >= 0.0, t, 1.0) / (1.0 + t)
        logw = np.log1p(t) + np.where(x < 0.0, -x, 0.0)
    number = float(np.sum(deg * occ))
    energy_shift_sum = float(np.sum(deg * eshift * occ))
    w_sum = float(np.sum(deg * logw))
    return number, energy_shift_sum, w_sum
