import pytest
from hypothesis import given, strategies as st

from kmlab import _kernels_py as py
from kmlab import kernels

ck = pytest.importorskip("kmlab._ckernels")

small = st.integers(-100, 100)


@st.composite
def mat_vec_case(draw):
    n = draw(st.integers(1, 5))
    m = draw(st.tuples(*[small] * (n * n)))
    v = draw(st.tuples(*[small] * n))
    return n, m, v


@given(mat_vec_case())
def test_mat_vec_agreement(case):
    n, m, v = case
    assert ck.mat_vec(m, v, n) == py.mat_vec(m, v, n)


@given(mat_vec_case())
def test_mat_mul_agreement(case):
    n, m, _ = case
    assert ck.mat_mul(m, m, n) == py.mat_mul(m, m, n)


@given(mat_vec_case(), st.data())
def test_bilinear_and_row_dot_agreement(case, data):
    n, m, v = case
    a = tuple(x % 9 - 4 for x in m)
    d = data.draw(st.tuples(*[small] * n))
    assert ck.bilinear(a, d, v, n) == py.bilinear(a, d, v, n)
    i = data.draw(st.integers(0, n - 1))
    assert ck.row_dot(m, i, v, n) == py.row_dot(m, i, v, n)


@given(st.lists(st.integers(-5, 5), min_size=1, max_size=6))
def test_vec_sign_agreement(v):
    t = tuple(v)
    assert ck.vec_sign(t) == py.vec_sign(t)


def test_sign_codes():
    assert py.vec_sign((0, 0)) == kernels.SIGN_ZERO
    assert py.vec_sign((1, 0)) == kernels.SIGN_POS
    assert py.vec_sign((0, -2)) == kernels.SIGN_NEG
    assert py.vec_sign((1, -1)) == kernels.SIGN_MIXED


def test_batch_signs_agreement():
    m = (2, -2, -2, 2)
    vecs = (1, 0, 0, 1, 2, 1, -1, 1, 0, 0)
    assert ck.batch_signs(m, vecs, 2, 5) == py.batch_signs(m, vecs, 2, 5)


def test_compiled_overflow_raises():
    big = (1 << 40, 0, 0, 1 << 40)
    with pytest.raises(OverflowError):
        ck.mat_mul(big, big, 2)


def test_dispatch_falls_back_on_big_ints():
    big = (10 ** 30, 1, 1, -(10 ** 30))
    assert kernels.mat_mul(big, big, 2) == py.mat_mul(big, big, 2)
    v = (10 ** 25, -(10 ** 25))
    assert kernels.mat_vec(big, v, 2) == py.mat_vec(big, v, 2)
    assert kernels.vec_sign((10 ** 40, 1)) == kernels.SIGN_POS


def test_backend_reports():
    assert kernels.BACKEND in ("compiled", "python")


def test_benchmark_importable():
    import importlib.util
    import pathlib

    path = (
        pathlib.Path(__file__).resolve().parent.parent
        / "benchmarks"
        / "bench_kernels.py"
    )
    spec = importlib.util.spec_from_file_location("bench_kernels", path)
    mod = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(mod)
    m, roots = mod.workload()
    assert len(m) == 9 and len(roots) % 3 == 0
