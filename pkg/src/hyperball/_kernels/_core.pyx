# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled implementation of the numerical kernels.

Mirrors ``_pure.py`` routine for routine; see that module for the regime
matrix and the stability notes.  The only intentional difference is that
the Miller backward recurrence picks its start order per element instead
of per batch (starting higher is always at least as accurate, so the two
backends agree to a few ulps).
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport (cbrt, cos, exp, expm1, fabs, floor, lgamma, log,
                        log1p, sin, sqrt)

cnp.import_array()

BACKEND = "compiled"

cdef double _PIO2_HI = 1.57079632673412561417e00
cdef double _PIO2_LO = 6.07710050650619224932e-11
cdef double _RESCALE_THRESHOLD = 1e250
cdef double _RESCALE_FACTOR = 1e-250
cdef double _SQRT_2_OVER_PI = 0.7978845608028653558798921
cdef double _PI = 3.14159265358979323846264338327950288
cdef double _EPS4 = 8.881784197001252e-16          # 4 * double epsilon


# ----------------------------------------------------------------------
# scalar evaluation of (J_nu, J_{nu-1})
# ----------------------------------------------------------------------

cdef void _series_pair(int twice_nu, double x, double* out_a, double* out_b) nogil:
    cdef double nu = 0.5 * twice_nu
    cdef double logx2 = log(0.5 * x)
    cdef double pref_a = exp(nu * logx2 - lgamma(nu + 1.0))
    cdef double pref_b = exp((nu - 1.0) * logx2 - lgamma(nu))
    cdef double q = 0.25 * x * x
    cdef double t = 1.0, u = 1.0, sum_a = 1.0, sum_b = 1.0
    cdef int k
    for k in range(72):
        t = -t * q / ((k + 1.0) * (nu + k + 1.0))
        u = -u * q / ((k + 1.0) * (nu + k))
        sum_a += t
        sum_b += u
        if fabs(t) < 1e-18 and fabs(u) < 1e-18:
            break
    out_a[0] = pref_a * sum_a
    out_b[0] = pref_b * sum_b


cdef double _hankel_one(int twice_nu, double x) nogil:
    cdef double nu = 0.5 * twice_nu
    cdef double mu4 = 4.0 * nu * nu
    cdef double inv8x = 1.0 / (8.0 * x)
    cdef double p = 1.0, q = 0.0, a = 1.0
    cdef double sign
    cdef int m, half
    for m in range(1, 44):
        a = a * (mu4 - (2.0 * m - 1.0) * (2.0 * m - 1.0)) * inv8x / m
        half = m >> 1
        sign = -1.0 if (half & 1) else 1.0
        if m & 1:
            q += sign * a
        else:
            p += sign * a
        if fabs(a) < 1e-17:
            break

    cdef double theta = (2.0 * nu + 1.0) * (0.25 * _PI)
    cdef double mm = floor((x - theta) / (0.5 * _PI) + 0.5)
    cdef double r = ((x - mm * _PIO2_HI) - theta) - mm * _PIO2_LO
    cdef double c = cos(r)
    cdef double s = sin(r)
    cdef int quad = <int>(mm - 4.0 * floor(mm / 4.0))
    cdef double cos_chi, sin_chi
    if quad == 0:
        cos_chi = c
        sin_chi = s
    elif quad == 1:
        cos_chi = -s
        sin_chi = c
    elif quad == 2:
        cos_chi = -c
        sin_chi = -s
    else:
        cos_chi = s
        sin_chi = -c
    return _SQRT_2_OVER_PI / sqrt(x) * (p * cos_chi - q * sin_chi)


cdef void _hankel_pair(int twice_nu, double x, double* out_a, double* out_b) nogil:
    out_a[0] = _hankel_one(twice_nu, x)
    out_b[0] = _hankel_one(twice_nu - 2, x)


cdef void _upward_half_pair(int twice_nu, double x, double* out_a,
                            double* out_b) nogil:
    cdef double amp = _SQRT_2_OVER_PI / sqrt(x)
    cdef double s = sin(x)
    cdef double c = cos(x)
    cdef double b = amp * s
    cdef double a = amp * (s / x - c)
    cdef double tmp
    cdef int to
    if twice_nu == 1:
        out_a[0] = b
        out_b[0] = amp * c
        return
    if twice_nu == 3:
        out_a[0] = a
        out_b[0] = b
        return
    for to in range(3, twice_nu - 1, 2):
        tmp = (to / x) * a - b
        b = a
        a = tmp
    out_a[0] = a
    out_b[0] = b


cdef void _upward_int_pair(int twice_nu, double x, double* out_a,
                           double* out_b) nogil:
    cdef double a, b, tmp
    _hankel_pair(2, x, &a, &b)                     # a = J_1, b = J_0
    cdef int n = twice_nu >> 1
    cdef int k
    for k in range(1, n):
        tmp = (2.0 * k / x) * a - b
        b = a
        a = tmp
    out_a[0] = a
    out_b[0] = b


cdef int _miller_start_order(int top, double x) nogil:
    cdef double base = top if top > x else x
    return <int>(base + 14.0 * cbrt(base)) + 26


cdef void _miller_int_pair(int twice_nu, double x, double* out_a,
                           double* out_b) nogil:
    cdef int n = twice_nu >> 1
    cdef int m_start = _miller_start_order(n, x)
    if m_start & 1:
        m_start += 1
    cdef double jp = 0.0
    cdef double jc = 1e-30
    cdef double norm = 0.0
    cdef double tgt_a = 0.0, tgt_b = 0.0
    cdef double jn
    cdef int k
    for k in range(m_start, -1, -1):
        if k == n:
            tgt_a = jc
        elif k == n - 1:
            tgt_b = jc
        if (k & 1) == 0:
            norm += jc if k == 0 else 2.0 * jc
        if k > 0:
            jn = (2.0 * k / x) * jc - jp
            jp = jc
            jc = jn
            if fabs(jc) > _RESCALE_THRESHOLD:
                jc *= _RESCALE_FACTOR
                jp *= _RESCALE_FACTOR
                norm *= _RESCALE_FACTOR
                tgt_a *= _RESCALE_FACTOR
                tgt_b *= _RESCALE_FACTOR
    out_a[0] = tgt_a / norm
    out_b[0] = tgt_b / norm


cdef void _miller_half_pair(int twice_nu, double x, double* out_a,
                            double* out_b) nogil:
    cdef int kt = (twice_nu - 1) >> 1
    cdef int m_start = _miller_start_order(kt, x)
    cdef double jp = 0.0
    cdef double jc = 1e-30
    cdef double tgt_a = 0.0, tgt_b = 0.0, anchor32 = 0.0
    cdef double jn
    cdef int k
    for k in range(m_start, -1, -1):
        if k == kt:
            tgt_a = jc
        elif k == kt - 1:
            tgt_b = jc
        if k == 1:
            anchor32 = jc
        if k > 0:
            jn = ((2.0 * k + 1.0) / x) * jc - jp
            jp = jc
            jc = jn
            if fabs(jc) > _RESCALE_THRESHOLD:
                jc *= _RESCALE_FACTOR
                jp *= _RESCALE_FACTOR
                tgt_a *= _RESCALE_FACTOR
                tgt_b *= _RESCALE_FACTOR
                anchor32 *= _RESCALE_FACTOR
    cdef double amp = _SQRT_2_OVER_PI / sqrt(x)
    cdef double s = sin(x)
    cdef double c = cos(x)
    cdef double exact12 = amp * s
    cdef double exact32 = amp * (s / x - c)
    cdef double scale
    if fabs(exact12) >= fabs(exact32):
        scale = exact12 / jc
    else:
        scale = exact32 / anchor32
    out_a[0] = tgt_a * scale
    out_b[0] = tgt_b * scale


cdef void _pair_scalar(int twice_nu, double x, double* out_a,
                       double* out_b) nogil:
    cdef double nu, a, b, amp
    if twice_nu == 0:
        _pair_scalar(2, x, &a, &b)
        out_a[0] = b                               # J_0
        out_b[0] = -a                              # J_{-1} = -J_1
        return
    if twice_nu == 1:
        amp = _SQRT_2_OVER_PI / sqrt(x)
        out_a[0] = amp * sin(x)
        out_b[0] = amp * cos(x)
        return
    nu = 0.5 * twice_nu
    if x < 2.0 * sqrt(nu + 1.0):
        _series_pair(twice_nu, x, out_a, out_b)
    elif x > 40.0 + nu * nu:
        _hankel_pair(twice_nu, x, out_a, out_b)
    elif nu <= x - 2.0 * cbrt(x) - 2.0 and ((twice_nu & 1) == 1 or x > 42.0):
        if twice_nu & 1:
            _upward_half_pair(twice_nu, x, out_a, out_b)
        else:
            _upward_int_pair(twice_nu, x, out_a, out_b)
    else:
        if twice_nu & 1:
            _miller_half_pair(twice_nu, x, out_a, out_b)
        else:
            _miller_int_pair(twice_nu, x, out_a, out_b)


def bessel_j_pair(int twice_nu, x):
    """Return (J_nu(x), J_{nu-1}(x)) elementwise; see the pure backend."""
    cdef cnp.ndarray[cnp.float64_t, ndim=1] arr = np.ascontiguousarray(
        x, dtype=np.float64
    )
    cdef Py_ssize_t m = arr.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out_a = np.empty(m, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out_b = np.empty(m, dtype=np.float64)
    cdef Py_ssize_t i
    cdef double a = 0.0, b = 0.0
    with nogil:
        for i in range(m):
            _pair_scalar(twice_nu, arr[i], &a, &b)
            out_a[i] = a
            out_b[i] = b
    return out_a, out_b


def refine_zeros(int twice_nu, lo_in, hi_in, sign_in):
    """Safeguarded Newton polish of bracketed roots; see the pure backend."""
    cdef cnp.ndarray[cnp.float64_t, ndim=1] lo = np.array(
        lo_in, dtype=np.float64, copy=True
    )
    cdef cnp.ndarray[cnp.float64_t, ndim=1] hi = np.array(
        hi_in, dtype=np.float64, copy=True
    )
    cdef cnp.ndarray[cnp.float64_t, ndim=1] sgn = np.ascontiguousarray(
        sign_in, dtype=np.float64
    )
    cdef Py_ssize_t m = lo.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.empty(m, dtype=np.float64)
    cdef double nu = 0.5 * twice_nu
    cdef Py_ssize_t i
    cdef int it
    cdef double a, b, lo_i, hi_i, s0, xc, xn, deriv, step, sg
    with nogil:
        for i in range(m):
            lo_i = lo[i]
            hi_i = hi[i]
            s0 = sgn[i]
            xc = 0.5 * (lo_i + hi_i)
            for it in range(100):
                _pair_scalar(twice_nu, xc, &a, &b)
                if a == 0.0:
                    break
                sg = 1.0 if a > 0.0 else -1.0
                if sg == s0:
                    lo_i = xc
                else:
                    hi_i = xc
                deriv = b - (nu / xc) * a
                if deriv != 0.0:
                    step = a / deriv
                    xn = xc - step
                else:
                    xn = 0.5 * (lo_i + hi_i)
                if not (xn > lo_i and xn < hi_i):
                    xn = 0.5 * (lo_i + hi_i)
                if fabs(xn - xc) <= _EPS4 * xc:
                    xc = xn
                    break
                xc = xn
            out[i] = xc
    return out


def gc_sums(eshift_in, deg_in, double mu_rel, double temperature, bint bose):
    """Occupancy sums over shifted energies; see the pure backend.

    Serial ascending-energy summation: a fixed deterministic order, so
    results are bit-stable across runs.
    """
    cdef cnp.ndarray[cnp.float64_t, ndim=1] esh = np.ascontiguousarray(
        eshift_in, dtype=np.float64
    )
    cdef cnp.ndarray[cnp.float64_t, ndim=1] deg = np.ascontiguousarray(
        deg_in, dtype=np.float64
    )
    cdef Py_ssize_t m = esh.shape[0]
    cdef double number = 0.0, energy_shift_sum = 0.0, w_sum = 0.0
    cdef double x, occ, logw, t
    cdef Py_ssize_t i
    with nogil:
        for i in range(m):
            x = (esh[i] - mu_rel) / temperature
            if bose:
                occ = 1.0 / expm1(x)
                logw = log(-expm1(-x))
            else:
                t = exp(-fabs(x))
                occ = (t if x >= 0.0 else 1.0) / (1.0 + t)
                logw = log1p(t) + (-x if x < 0.0 else 0.0)
            number += deg[i] * occ
            energy_shift_sum += deg[i] * esh[i] * occ
            w_sum += deg[i] * logw
    return number, energy_shift_sum, w_sum
