"""Pure Python integer kernels.

Reference implementation of the hot inner loops: small dense integer
matrix/vector products and sign classification.  Works on flat tuples and
arbitrary-precision ints, so it never overflows.  The compiled module
``kmlab._ckernels`` mirrors these signatures exactly; ``kmlab.kernels``
picks whichever is available.
"""

from __future__ import annotations

SIGN_ZERO = 0
SIGN_POS = 1
SIGN_NEG = 2
SIGN_MIXED = 3


def mat_mul(a, b, n):
    """Product of two n*n matrices given as flat row-major tuples."""
    out = [0] * (n * n)
    for i in range(n):
        ibase = i * n
        for k in range(n):
            aik = a[ibase + k]
            if aik:
                kbase = k * n
                for j in range(n):
                    out[ibase + j] += aik * b[kbase + j]
    return tuple(out)


def mat_vec(m, v, n):
    """Image of a length-n vector under a flat n*n matrix."""
    return tuple(
        sum(m[i * n + j] * v[j] for j in range(n)) for i in range(n)
    )


def bilinear(a, d, v, n):
    """Pairing sum d_i * a[i][j] * v_j over a flat n*n matrix."""
    total = 0
    for i in range(n):
        di = d[i]
        if di:
            ibase = i * n
            total += di * sum(a[ibase + j] * v[j] for j in range(n))
    return total


def row_dot(a, i, v, n):
    """Dot product of row i of a flat n*n matrix with a vector."""
    ibase = i * n
    return sum(a[ibase + j] * v[j] for j in range(n))


def vec_sign(v):
    """Sign class of a vector: zero, nonneg, nonpos, or mixed."""
    has_pos = False
    has_neg = False
    for x in v:
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


def batch_signs(m, vecs, n, count):
    """Sign classes of count vectors (flat, concatenated) under a matrix."""
    out = bytearray(count)
    for t in range(count):
        base = t * n
        has_pos = False
        has_neg = False
        for i in range(n):
            s = 0
            ibase = i * n
            for j in range(n):
                s += m[ibase + j] * vecs[base + j]
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
    return bytes(out)
