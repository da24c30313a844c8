# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled enumeration kernel (int64).

Same search as ``_kernels_py.enumerate_ellipsoid``. The caller guarantees
that every intermediate quantity fits in 62 bits; see
``lattice._fits_int64``.
"""
from libc.math cimport sqrt
from libc.stdlib cimport malloc, free
from libc.stdint cimport int64_t


cdef inline int64_t _isqrt(int64_t n) nogil:
    cdef int64_t r = <int64_t>sqrt(<double>n)
    while r > 0 and r * r > n:
        r -= 1
    while (r + 1) * (r + 1) <= n:
        r += 1
    return r


cdef inline int64_t _floor_div(int64_t num, int64_t den) nogil:
    # den > 0
    cdef int64_t q = num / den
    if (num % den != 0) and (num < 0):
        q -= 1
    return q


cdef inline int64_t _ceil_div(int64_t num, int64_t den) nogil:
    return -_floor_div(-num, den)


def enumerate_ellipsoid(tmats, bounds, gram, gd, long long dmin, long long dmax,
                        long long smin, long long smax, long long max_count):
    cdef int rho = len(gd)
    cdef int k, i, j
    cdef int64_t a, b, c, acc, disc, r, deg, self_int
    cdef Py_ssize_t off

    cdef int64_t* tflat = <int64_t*>malloc(sizeof(int64_t) * rho * rho * rho)
    cdef int64_t* bnd = <int64_t*>malloc(sizeof(int64_t) * rho)
    cdef int64_t* g = <int64_t*>malloc(sizeof(int64_t) * rho * rho)
    cdef int64_t* gdv = <int64_t*>malloc(sizeof(int64_t) * rho)
    cdef int64_t* x = <int64_t*>malloc(sizeof(int64_t) * rho)
    cdef int64_t* hi = <int64_t*>malloc(sizeof(int64_t) * rho)
    if not (tflat and bnd and g and gdv and x and hi):
        free(tflat); free(bnd); free(g); free(gdv); free(x); free(hi)
        raise MemoryError()

    out = []
    try:
        # level k uses a (k+1)x(k+1) matrix stored at offset k*rho*rho
        for k in range(rho):
            t = tmats[k]
            for i in range(k + 1):
                for j in range(k + 1):
                    tflat[k * rho * rho + i * rho + j] = t[i][j]
            bnd[k] = bounds[k]
            gdv[k] = gd[k]
            for j in range(rho):
                g[k * rho + j] = gram[k][j]
            x[k] = 0
            hi[k] = -1

        k = 0
        # descending into level k: compute its range, set x[k] = lo
        while True:
            off = k * rho * rho
            a = tflat[off + k * rho + k]
            b = 0
            for j in range(k):
                b += tflat[off + k * rho + j] * x[j]
            c = 0
            for i in range(k):
                acc = 0
                for j in range(k):
                    acc += tflat[off + i * rho + j] * x[j]
                c += acc * x[i]
            disc = b * b - a * (c - bnd[k])
            if disc >= 0:
                r = _isqrt(disc)
                x[k] = _ceil_div(-b - r, a)
                hi[k] = _floor_div(-b + r, a)
            else:
                x[k] = 1
                hi[k] = 0

            # advance: emit leaves, backtrack exhausted levels
            while True:
                if x[k] > hi[k]:
                    x[k] = 0
                    if k == 0:
                        return out
                    k -= 1
                    x[k] += 1
                    continue
                if k + 1 < rho:
                    k += 1
                    break
                deg = 0
                for i in range(rho):
                    deg += gdv[i] * x[i]
                if dmin <= deg <= dmax:
                    self_int = 0
                    for i in range(rho):
                        acc = 0
                        for j in range(rho):
                            acc += g[i * rho + j] * x[j]
                        self_int += acc * x[i]
                    if smin <= self_int <= smax:
                        out.append(tuple([x[i] for i in range(rho)]))
                        if len(out) > max_count:
                            return out
                x[k] += 1
    finally:
        free(tflat); free(bnd); free(g); free(gdv); free(x); free(hi)
