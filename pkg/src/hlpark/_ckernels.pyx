# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: u-vector scan and per-block R_n accumulation.

Mirrors ``_pykernels`` exactly; the test suite runs both against the same
oracles.
"""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t, INT64_MAX
from libc.stdlib cimport malloc, free

cnp.import_array()

cdef enum:
    MAXN = 20  # 20! < 2**63


cdef inline void _u_scan(int n, const int* s, int* u) noexcept nogil:
    cdef int i, p, j, x
    cdef int last = 0, prev = 0
    for i in range(n):
        x = s[i]
        if i > 0 and s[i - 1] > x:
            prev = last
            last = i
        if last == 0:
            u[i] = 0
            continue
        j = last + 1
        for p in range(prev, last):
            if s[p] > x:
                j = p + 1
                break
        u[i] = j


cdef inline int _maj(int n, const int* s) noexcept nogil:
    cdef int t, m = 0
    for t in range(1, n):
        if s[t - 1] > s[t]:
            m += n - t
    return m


cdef inline bint _next_perm(int n, int* a) noexcept nogil:
    cdef int i = n - 2, j, tmp, lo, hi
    while i >= 0 and a[i] > a[i + 1]:
        i -= 1
    if i < 0:
        return False
    j = n - 1
    while a[j] < a[i]:
        j -= 1
    tmp = a[i]; a[i] = a[j]; a[j] = tmp
    lo = i + 1
    hi = n - 1
    while lo < hi:
        tmp = a[lo]; a[lo] = a[hi]; a[hi] = tmp
        lo += 1
        hi -= 1
    return True


cdef void _unrank(int n, long long rank, int* out):
    cdef int pool[MAXN]
    cdef long long fact[MAXN + 1]
    cdef int i, q, r
    fact[0] = 1
    for i in range(1, n + 1):
        fact[i] = fact[i - 1] * i
    for i in range(n):
        pool[i] = i
    for i in range(n):
        q = <int>(rank // fact[n - 1 - i])
        rank = rank % fact[n - 1 - i]
        out[i] = pool[q]
        for r in range(q, n - 1 - i):
            pool[r] = pool[r + 1]


def u_vector(sigma):
    cdef int n = len(sigma)
    cdef int i
    if n > MAXN:
        raise ValueError(f"compiled kernel supports n <= {MAXN}")
    cdef int s[MAXN]
    cdef int u[MAXN]
    for i in range(n):
        s[i] = sigma[i]
    _u_scan(n, s, u)
    return tuple([u[i] for i in range(n)])


def maj(sigma):
    cdef int n = len(sigma)
    cdef int i
    if n > MAXN:
        raise ValueError(f"compiled kernel supports n <= {MAXN}")
    cdef int s[MAXN]
    for i in range(n):
        s[i] = sigma[i]
    return _maj(n, s)


def rpoly_block(int n, long long start, long long stop):
    """Coefficient matrix ``[maj][t-degree]`` summed over lex ranks ``[start, stop)``."""
    if n < 1 or n > MAXN:
        raise ValueError(f"compiled kernel supports 1 <= n <= {MAXN}")
    cdef int top = n * (n - 1) // 2
    out = np.zeros((top + 1, top + 1), dtype=np.int64)
    cdef int64_t[:, ::1] acc = out
    cdef int s[MAXN]
    cdef int u[MAXN]
    cdef int64_t* poly = <int64_t*>malloc((top + 1) * sizeof(int64_t))
    cdef int64_t* tmp = <int64_t*>malloc((top + 1) * sizeof(int64_t))
    cdef long long r
    cdef int i, m, deg, d, mj, newdeg
    cdef int64_t window, c
    cdef bint overflow = False
    if poly == NULL or tmp == NULL:
        free(poly)
        free(tmp)
        raise MemoryError()
    try:
        _unrank(n, start, s)
        with nogil:
            r = start
            while r < stop:
                _u_scan(n, s, u)
                mj = _maj(n, s)
                poly[0] = 1
                deg = 0
                for i in range(n):
                    m = i - u[i] + 1
                    if m == 1:
                        continue
                    newdeg = deg + m - 1
                    window = 0
                    for d in range(newdeg + 1):
                        if d <= deg:
                            window += poly[d]
                        if d - m >= 0:
                            window -= poly[d - m]
                        tmp[d] = window
                    for d in range(newdeg + 1):
                        poly[d] = tmp[d]
                    deg = newdeg
                for d in range(deg + 1):
                    c = poly[d]
                    if acc[mj, d] > INT64_MAX - c:
                        overflow = True
                        break
                    acc[mj, d] += c
                if overflow:
                    break
                r += 1
                if r < stop:
                    _next_perm(n, s)
    finally:
        free(poly)
        free(tmp)
    if overflow:
        raise OverflowError("coefficient exceeds signed 64-bit range")
    return out
