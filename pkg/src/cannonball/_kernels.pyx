# Compiled inner loops. Every function here has a numpy twin in _fallback.py
# with the same signature; cannonball.kernels picks one at import time.
import numpy as np
cimport numpy as cnp
from libc.math cimport cos, sin, sqrt, pow
from libc.stdint cimport int64_t, uint64_t

cnp.import_array()

NATIVE_MAX_N = 3_000_000

cdef double TWO_PI = 6.283185307179586
cdef double TWO_M53 = 1.0 / 9007199254740992.0
cdef Py_ssize_t LEAF = 64


cdef inline int64_t _pyramidal(int64_t n) noexcept nogil:
    cdef int64_t t = n * (n + 1) // 2
    cdef int64_t u = 2 * n + 1
    if t % 3 == 0:
        return (t // 3) * u
    return t * (u // 3)


cdef inline int64_t _isqrt(int64_t p) noexcept nogil:
    cdef int64_t r = <int64_t>sqrt(<double>p)
    while r * r > p:
        r -= 1
    while (r + 1) * (r + 1) <= p:
        r += 1
    return r


def sequence_block(Py_ssize_t lo, Py_ssize_t hi):
    """P_n, isqrt(P_n) and a_n for n in [lo, hi) as int64 arrays."""
    if lo < 0 or hi - 1 > NATIVE_MAX_N:
        raise ValueError(f"native range is [0, {NATIVE_MAX_N}]")
    cdef Py_ssize_t count = max(hi - lo, 0)
    P_arr = np.empty(count, dtype=np.int64)
    r_arr = np.empty(count, dtype=np.int64)
    a_arr = np.empty(count, dtype=np.int64)
    cdef int64_t[::1] P = P_arr
    cdef int64_t[::1] R = r_arr
    cdef int64_t[::1] A = a_arr
    cdef Py_ssize_t i
    cdef int64_t p, r, below, above
    with nogil:
        for i in range(count):
            p = _pyramidal(lo + i)
            r = _isqrt(p)
            below = p - r * r
            above = (r + 1) * (r + 1) - p
            P[i] = p
            R[i] = r
            A[i] = below if below < above else above
    return P_arr, r_arr, a_arr


def divisor_sieve(const int64_t[::1] a):
    """b[n] = sum of a[d] over d | n, for 1 <= n < len(a); b[0] = 0."""
    cdef Py_ssize_t x = a.shape[0] - 1
    b_arr = np.zeros(x + 1, dtype=np.int64)
    cdef int64_t[::1] b = b_arr
    cdef Py_ssize_t d, k
    cdef int64_t ad
    with nogil:
        for d in range(1, x + 1):
            ad = a[d]
            if ad == 0:
                continue
            k = d
            while k <= x:
                b[k] += ad
                k += d
    return b_arr


cdef void _pw_exp(const uint64_t[::1] u, Py_ssize_t lo, Py_ssize_t hi, uint64_t m,
                  double* re, double* im) noexcept nogil:
    cdef Py_ssize_t i, mid
    cdef double r0 = 0.0, i0 = 0.0, r1 = 0.0, i1 = 0.0, ang
    if hi - lo <= LEAF:
        for i in range(lo, hi):
            # m * u wraps mod 2^64, i.e. the angle is reduced mod 1 exactly
            ang = TWO_PI * (<double>((u[i] * m) >> 11) * TWO_M53)
            r0 += cos(ang)
            i0 += sin(ang)
        re[0] = r0
        im[0] = i0
        return
    mid = lo + (hi - lo) // 2
    _pw_exp(u, lo, mid, m, &r0, &i0)
    _pw_exp(u, mid, hi, m, &r1, &i1)
    re[0] = r0 + r1
    im[0] = i0 + i1


def exp_sums(const uint64_t[::1] u, const int64_t[::1] ms):
    """sum_i e(m u_i / 2^64) for each m in ms."""
    cdef Py_ssize_t j, nm = ms.shape[0], n = u.shape[0]
    out_arr = np.empty(nm, dtype=np.complex128)
    cdef double[::1] re = np.empty(nm, dtype=np.float64)
    cdef double[::1] im = np.empty(nm, dtype=np.float64)
    cdef double r, s
    with nogil:
        for j in range(nm):
            _pw_exp(u, 0, n, <uint64_t>ms[j], &r, &s)
            re[j] = r
            im[j] = s
    out_arr.real = np.asarray(re)
    out_arr.imag = np.asarray(im)
    return out_arr


cdef void _pw_chi(const int64_t[::1] a, Py_ssize_t lo, Py_ssize_t hi, int64_t n0, int64_t q,
                  const double[::1] cre, const double[::1] cim,
                  double* re, double* im) noexcept nogil:
    cdef Py_ssize_t i, mid
    cdef int64_t res
    cdef double r0 = 0.0, i0 = 0.0, r1 = 0.0, i1 = 0.0, w
    if hi - lo <= LEAF:
        for i in range(lo, hi):
            res = (n0 + i) % q
            w = <double>a[i]
            r0 += w * cre[res]
            i0 += w * cim[res]
        re[0] = r0
        im[0] = i0
        return
    mid = lo + (hi - lo) // 2
    _pw_chi(a, lo, mid, n0, q, cre, cim, &r0, &i0)
    _pw_chi(a, mid, hi, n0, q, cre, cim, &r1, &i1)
    re[0] = r0 + r1
    im[0] = i0 + i1


def chi_weighted_sum(const int64_t[::1] a, int64_t n0, const double[::1] cre,
                     const double[::1] cim):
    """sum_i a[i] * chi(n0 + i), chi given by its table over residues mod q."""
    cdef int64_t q = cre.shape[0]
    cdef double r = 0.0, s = 0.0
    with nogil:
        _pw_chi(a, 0, a.shape[0], n0, q, cre, cim, &r, &s)
    return complex(r, s)


cdef double _pw_pow(const double[::1] v, Py_ssize_t lo, Py_ssize_t hi, double n0,
                    double s) noexcept nogil:
    cdef Py_ssize_t i, mid
    cdef double acc = 0.0
    if hi - lo <= LEAF:
        for i in range(lo, hi):
            acc += v[i] * pow(n0 + <double>i, -s)
        return acc
    mid = lo + (hi - lo) // 2
    return _pw_pow(v, lo, mid, n0, s) + _pw_pow(v, mid, hi, n0, s)


def power_sum(const double[::1] v, int64_t n0, double s):
    """sum_i v[i] * (n0 + i)^(-s)."""
    cdef double out
    with nogil:
        out = _pw_pow(v, 0, v.shape[0], <double>n0, s)
    return out
