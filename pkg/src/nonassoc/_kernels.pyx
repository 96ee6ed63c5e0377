# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels over monomial multiplication tables.

Same surface as ``_kernels_py``; tables are int64 buffers
(``array.array('q')``) holding ``sign`` and ``idx`` in row-major order.
"""
from libc.stdlib cimport calloc, free
from libc.string cimport memset

IDENTITY_CODES = {
    "associative": 0,
    "commutative": 1,
    "alternative": 2,
    "flexible": 3,
    "moufang": 4,
}


def mul_monomial(const long long[::1] sign, const long long[::1] idx, Py_ssize_t dim, a, b):
    cdef list out = [0] * dim
    cdef list al = list(a)
    cdef list bl = list(b)
    cdef Py_ssize_t i, j, row
    cdef long long s
    cdef object ai, bj
    cdef char* bnz = <char*> calloc(dim, 1)
    try:
        for j in range(dim):
            bnz[j] = 1 if bl[j] else 0
        for i in range(dim):
            ai = al[i]
            if not ai:
                continue
            row = i * dim
            for j in range(dim):
                if not bnz[j]:
                    continue
                s = sign[row + j]
                if s == 1:
                    out[idx[row + j]] += ai * bl[j]
                elif s == -1:
                    out[idx[row + j]] -= ai * bl[j]
                elif s != 0:
                    out[idx[row + j]] += s * ai * bl[j]
    finally:
        free(bnz)
    return out


cdef inline long long _m(const long long[::1] sign, const long long[::1] idx,
                         Py_ssize_t dim, long long l, long long r, long long* out_idx) nogil:
    cdef Py_ssize_t k = l * dim + r
    out_idx[0] = idx[k]
    return sign[k]


# (a b) c  and  a (b c)
cdef inline void _lc(const long long[::1] sign, const long long[::1] idx, Py_ssize_t dim,
                     long long a, long long b, long long c, long long* vec, long long w) nogil:
    cdef long long m1, m2
    cdef long long s = _m(sign, idx, dim, a, b, &m1)
    s *= _m(sign, idx, dim, m1, c, &m2)
    vec[m2] += w * s


cdef inline void _rc(const long long[::1] sign, const long long[::1] idx, Py_ssize_t dim,
                     long long a, long long b, long long c, long long* vec, long long w) nogil:
    cdef long long m1, m2
    cdef long long s = _m(sign, idx, dim, b, c, &m1)
    s *= _m(sign, idx, dim, a, m1, &m2)
    vec[m2] += w * s


cdef inline bint _nz(long long* vec, Py_ssize_t dim) nogil:
    cdef Py_ssize_t m
    for m in range(dim):
        if vec[m] != 0:
            return True
    return False


def associator_tensor(const long long[::1] sign, const long long[::1] idx, Py_ssize_t dim):
    cdef Py_ssize_t n4 = dim * dim * dim * dim
    cdef long long* buf = <long long*> calloc(n4, sizeof(long long))
    cdef Py_ssize_t i, j, k, base, m
    cdef list out
    try:
        with nogil:
            for i in range(dim):
                for j in range(dim):
                    for k in range(dim):
                        base = ((i * dim + j) * dim + k) * dim
                        _lc(sign, idx, dim, i, j, k, buf + base, 1)
                        _rc(sign, idx, dim, i, j, k, buf + base, -1)
        out = [buf[m] for m in range(n4)]
    finally:
        free(buf)
    return out


cdef inline long long _chain3r(const long long[::1] sign, const long long[::1] idx, Py_ssize_t dim,
                               long long a, long long b, long long c, long long d, long long* m) nogil:
    # a (b (c d))
    cdef long long t1, t2
    cdef long long s = _m(sign, idx, dim, c, d, &t1)
    s *= _m(sign, idx, dim, b, t1, &t2)
    s *= _m(sign, idx, dim, a, t2, m)
    return s


cdef inline long long _chain3l(const long long[::1] sign, const long long[::1] idx, Py_ssize_t dim,
                               long long a, long long b, long long c, long long d, long long* m) nogil:
    # ((a b) c) d
    cdef long long t1, t2
    cdef long long s = _m(sign, idx, dim, a, b, &t1)
    s *= _m(sign, idx, dim, t1, c, &t2)
    s *= _m(sign, idx, dim, t2, d, m)
    return s


cdef inline long long _pairs(const long long[::1] sign, const long long[::1] idx, Py_ssize_t dim,
                             long long a, long long b, long long c, long long d, long long* m) nogil:
    # (a b)(c d)
    cdef long long t1, t2
    cdef long long s = _m(sign, idx, dim, a, b, &t1)
    s *= _m(sign, idx, dim, c, d, &t2)
    s *= _m(sign, idx, dim, t1, t2, m)
    return s


cdef inline long long _mid(const long long[::1] sign, const long long[::1] idx, Py_ssize_t dim,
                           long long a, long long b, long long c, long long d, long long* m) nogil:
    # (a (b c)) d
    cdef long long t1, t2
    cdef long long s = _m(sign, idx, dim, b, c, &t1)
    s *= _m(sign, idx, dim, a, t1, &t2)
    s *= _m(sign, idx, dim, t2, d, m)
    return s


def scan_identity(const long long[::1] sign, const long long[::1] idx, Py_ssize_t dim, int code):
    cdef long long* vec = <long long*> calloc(dim, sizeof(long long))
    cdef Py_ssize_t i, j, k, a, b, x, y
    cdef long long m, s
    cdef object found = None
    try:
        if code == 0:
            for i in range(dim):
                for j in range(dim):
                    for k in range(dim):
                        memset(vec, 0, dim * sizeof(long long))
                        _lc(sign, idx, dim, i, j, k, vec, 1)
                        _rc(sign, idx, dim, i, j, k, vec, -1)
                        if _nz(vec, dim):
                            return (i, j, k)
        elif code == 1:
            for i in range(dim):
                for j in range(dim):
                    memset(vec, 0, dim * sizeof(long long))
                    s = _m(sign, idx, dim, i, j, &m)
                    vec[m] += s
                    s = _m(sign, idx, dim, j, i, &m)
                    vec[m] -= s
                    if _nz(vec, dim):
                        return (i, j)
        elif code == 2:
            for i in range(dim):
                for j in range(i, dim):
                    for k in range(dim):
                        memset(vec, 0, dim * sizeof(long long))
                        _lc(sign, idx, dim, i, j, k, vec, 1)
                        _lc(sign, idx, dim, j, i, k, vec, 1)
                        _rc(sign, idx, dim, i, j, k, vec, -1)
                        _rc(sign, idx, dim, j, i, k, vec, -1)
                        if _nz(vec, dim):
                            return (i, j, k)
                        memset(vec, 0, dim * sizeof(long long))
                        _lc(sign, idx, dim, k, i, j, vec, 1)
                        _lc(sign, idx, dim, k, j, i, vec, 1)
                        _rc(sign, idx, dim, k, i, j, vec, -1)
                        _rc(sign, idx, dim, k, j, i, vec, -1)
                        if _nz(vec, dim):
                            return (k, i, j)
        elif code == 3:
            for i in range(dim):
                for j in range(i, dim):
                    for k in range(dim):
                        memset(vec, 0, dim * sizeof(long long))
                        _lc(sign, idx, dim, i, k, j, vec, 1)
                        _lc(sign, idx, dim, j, k, i, vec, 1)
                        _rc(sign, idx, dim, i, k, j, vec, -1)
                        _rc(sign, idx, dim, j, k, i, vec, -1)
                        if _nz(vec, dim):
                            return (i, k, j)
        elif code == 4:
            for a in range(dim):
                for b in range(a, dim):
                    for x in range(dim):
                        for y in range(dim):
                            # z(x(zy)) - ((zx)z)y
                            memset(vec, 0, dim * sizeof(long long))
                            s = _chain3r(sign, idx, dim, a, x, b, y, &m); vec[m] += s
                            s = _chain3r(sign, idx, dim, b, x, a, y, &m); vec[m] += s
                            s = _chain3l(sign, idx, dim, a, x, b, y, &m); vec[m] -= s
                            s = _chain3l(sign, idx, dim, b, x, a, y, &m); vec[m] -= s
                            if _nz(vec, dim):
                                return (a, b, x, y)
                            # x(z(yz)) - ((xz)y)z
                            memset(vec, 0, dim * sizeof(long long))
                            s = _chain3r(sign, idx, dim, x, a, y, b, &m); vec[m] += s
                            s = _chain3r(sign, idx, dim, x, b, y, a, &m); vec[m] += s
                            s = _chain3l(sign, idx, dim, x, a, y, b, &m); vec[m] -= s
                            s = _chain3l(sign, idx, dim, x, b, y, a, &m); vec[m] -= s
                            if _nz(vec, dim):
                                return (a, b, x, y)
                            # (zx)(yz) - (z(xy))z
                            memset(vec, 0, dim * sizeof(long long))
                            s = _pairs(sign, idx, dim, a, x, y, b, &m); vec[m] += s
                            s = _pairs(sign, idx, dim, b, x, y, a, &m); vec[m] += s
                            s = _mid(sign, idx, dim, a, x, y, b, &m); vec[m] -= s
                            s = _mid(sign, idx, dim, b, x, y, a, &m); vec[m] -= s
                            if _nz(vec, dim):
                                return (a, b, x, y)
        else:
            raise ValueError(f"unknown identity code {code}")
    finally:
        free(vec)
    return found
