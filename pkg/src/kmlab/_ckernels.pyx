# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled integer kernels.

Same contract as kmlab._kernels_py but on C int64.  Inputs are bounds
checked up front; anything that could overflow 64-bit intermediate
arithmetic raises OverflowError so the caller can retry with the pure
Python big-int path.
"""

from libc.stdlib cimport malloc, free

SIGN_ZERO = 0
SIGN_POS = 1
SIGN_NEG = 2
SIGN_MIXED = 3

# |entry| bounds such that the worst intermediate sum stays below 2^62
# for ranks up to 16.
cdef long long MAT_LIMIT = 1 << 28
cdef long long PAIR_LIMIT = 1 << 26


cdef long long* _load(object seq, Py_ssize_t count, long long limit) except NULL:
    cdef long long* buf = <long long*> malloc(count * sizeof(long long))
    if buf == NULL:
        raise MemoryError()
    cdef Py_ssize_t i
    cdef long long x
    try:
        for i in range(count):
            x = seq[i]
            if x > limit or x < -limit:
                raise OverflowError("kernel input outside compiled range")
            buf[i] = x
    except:
        free(buf)
        raise
    return buf


def mat_mul(a, b, Py_ssize_t n):
    """Product of two n*n matrices given as flat row-major tuples."""
    if n > 16:
        raise OverflowError("rank outside compiled range")
    cdef long long* pa = _load(a, n * n, MAT_LIMIT)
    cdef long long* pb
    cdef long long* po
    cdef Py_ssize_t i, j, k
    cdef long long aik
    try:
        pb = _load(b, n * n, MAT_LIMIT)
    except:
        free(pa)
        raise
    po = <long long*> malloc(n * n * sizeof(long long))
    if po == NULL:
        free(pa)
        free(pb)
        raise MemoryError()
    for i in range(n * n):
        po[i] = 0
    for i in range(n):
        for k in range(n):
            aik = pa[i * n + k]
            if aik != 0:
                for j in range(n):
                    po[i * n + j] += aik * pb[k * n + j]
    out = tuple([po[i] for i in range(n * n)])
    free(pa)
    free(pb)
    free(po)
    return out


def mat_vec(m, v, Py_ssize_t n):
    """Image of a length-n vector under a flat n*n matrix."""
    if n > 16:
        raise OverflowError("rank outside compiled range")
    cdef long long* pm = _load(m, n * n, MAT_LIMIT)
    cdef long long* pv
    cdef Py_ssize_t i, j
    cdef long long s
    try:
        pv = _load(v, n, MAT_LIMIT)
    except:
        free(pm)
        raise
    res = []
    for i in range(n):
        s = 0
        for j in range(n):
            s += pm[i * n + j] * pv[j]
        res.append(s)
    free(pm)
    free(pv)
    return tuple(res)


def bilinear(a, d, v, Py_ssize_t n):
    """Pairing sum d_i * a[i][j] * v_j over a flat n*n matrix."""
    if n > 16:
        raise OverflowError("rank outside compiled range")
    cdef long long* pa = _load(a, n * n, 128)
    cdef long long* pd
    cdef long long* pv
    cdef Py_ssize_t i, j
    cdef long long total = 0, s
    try:
        pd = _load(d, n, PAIR_LIMIT)
    except:
        free(pa)
        raise
    try:
        pv = _load(v, n, PAIR_LIMIT)
    except:
        free(pa)
        free(pd)
        raise
    for i in range(n):
        if pd[i] != 0:
            s = 0
            for j in range(n):
                s += pa[i * n + j] * pv[j]
            total += pd[i] * s
    free(pa)
    free(pd)
    free(pv)
    return total


def row_dot(a, Py_ssize_t i, v, Py_ssize_t n):
    """Dot product of row i of a flat n*n matrix with a vector."""
    if n > 16:
        raise OverflowError("rank outside compiled range")
    cdef long long* pa = _load(a, n * n, MAT_LIMIT)
    cdef long long* pv
    cdef Py_ssize_t j
    cdef long long s = 0
    try:
        pv = _load(v, n, MAT_LIMIT)
    except:
        free(pa)
        raise
    for j in range(n):
        s += pa[i * n + j] * pv[j]
    free(pa)
    free(pv)
    return s


def vec_sign(v):
    """Sign class of a vector: zero, nonneg, nonpos, or mixed."""
    cdef bint has_pos = False, has_neg = False
    cdef long long x
    for item in v:
        x = item
        if x > 0:
            has_pos = True
        elif x < 0:
            has_neg = True
    if has_pos and has_neg:
        return SIGN_MIXED
    if has_pos:
        return SIGN_POS
    if has_neg:
        return SIGN_NEG
    return SIGN_ZERO


def batch_signs(m, vecs, Py_ssize_t n, Py_ssize_t count):
    """Sign classes of count vectors (flat, concatenated) under a matrix."""
    if n > 16:
        raise OverflowError("rank outside compiled range")
    cdef long long* pm = _load(m, n * n, MAT_LIMIT)
    cdef long long* pv
    cdef Py_ssize_t t, i, j, base
    cdef long long s
    cdef bint has_pos, has_neg
    try:
        pv = _load(vecs, n * count, MAT_LIMIT)
    except:
        free(pm)
        raise
    out = bytearray(count)
    for t in range(count):
        base = t * n
        has_pos = False
        has_neg = False
        for i in range(n):
            s = 0
            for j in range(n):
                s += pm[i * n + j] * pv[base + j]
            if s > 0:
                has_pos = True
            elif s < 0:
                has_neg = True
        if has_pos and has_neg:
            out[t] = SIGN_MIXED
        elif has_pos:
            out[t] = SIGN_POS
        elif has_neg:
            out[t] = SIGN_NEG
        else:
            out[t] = SIGN_ZERO
    free(pm)
    free(pv)
    return bytes(out)
