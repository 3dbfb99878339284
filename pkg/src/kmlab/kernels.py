"""Kernel dispatch: compiled fast path with pure Python fallback.

The compiled module is selected at import time when present.  Each wrapper
also falls back per call on OverflowError, since the compiled kernels only
accept inputs that fit 64-bit intermediate arithmetic (indefinite-type
coordinates grow without bound).
"""

from __future__ import annotations

from kmlab import _kernels_py as _py

SIGN_ZERO = _py.SIGN_ZERO
SIGN_POS = _py.SIGN_POS
SIGN_NEG = _py.SIGN_NEG
SIGN_MIXED = _py.SIGN_MIXED

try:
    from kmlab import _ckernels as _c

    BACKEND = "compiled"
except ImportError:
    _c = None
    BACKEND = "python"


if _c is not None:

    def mat_mul(a, b, n):
        try:
            return _c.mat_mul(a, b, n)
        except OverflowError:
            return _py.mat_mul(a, b, n)

    def mat_vec(m, v, n):
        try:
            return _c.mat_vec(m, v, n)
        except OverflowError:
            return _py.mat_vec(m, v, n)

    def bilinear(a, d, v, n):
        try:
            return _c.bilinear(a, d, v, n)
        except OverflowError:
            return _py.bilinear(a, d, v, n)

    def row_dot(a, i, v, n):
        try:
            return _c.row_dot(a, i, v, n)
        except OverflowError:
            return _py.row_dot(a, i, v, n)

    def vec_sign(v):
        try:
            return _c.vec_sign(v)
        except OverflowError:
            return _py.vec_sign(v)

    def batch_signs(m, vecs, n, count):
        try:
            return _c.batch_signs(m, vecs, n, count)
        except OverflowError:
            return _py.batch_signs(m, vecs, n, count)

else:
    mat_mul = _py.mat_mul
    mat_vec = _py.mat_vec
    bilinear = _py.bilinear
    row_dot = _py.row_dot
    vec_sign = _py.vec_sign
    batch_signs = _py.batch_signs

for _f in (mat_mul, mat_vec, bilinear, row_dot, vec_sign, batch_signs):
    if _f.__doc__ is None:
        _f.__doc__ = getattr(_py, _f.__name__).__doc__
