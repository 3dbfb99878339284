import itertools
import json

import pytest
from hypothesis import given, strategies as st

from kmlab import gcm
from kmlab.errors import EmptyIndexSet, GCMValidationError, IndexOutOfRange


def test_validate_accepts_a2():
    A = gcm.validate([[2, -1], [-1, 2]])
    assert A.n == 2
    assert A.a(1, 2) == -1


def test_validate_asymmetric_zero():
    with pytest.raises(GCMValidationError) as err:
        gcm.validate([[2, -1], [0, 2]])
    assert err.value.code == "asymmetric-zero"
    assert err.value.cell == (1, 2)


def test_validate_positive_off_diagonal():
    with pytest.raises(GCMValidationError) as err:
        gcm.validate([[2, 1], [-1, 2]])
    assert err.value.code == "positive-off-diagonal"
    assert err.value.cell == (1, 2)


def test_validate_diagonal_and_shape():
    with pytest.raises(GCMValidationError) as err:
        gcm.validate([[1, 0], [0, 2]])
    assert err.value.code == "diagonal-not-two"
    with pytest.raises(GCMValidationError) as err:
        gcm.validate([[2, 0, 0], [0, 2, 0]])
    assert err.value.code == "non-square"


def test_classify_examples():
    assert gcm.classify(gcm.validate([[2, -1], [-1, 2]])).kind == gcm.FINITE
    assert gcm.classify(gcm.validate([[2, -2], [-2, 2]])).kind == gcm.AFFINE
    assert gcm.classify(gcm.validate([[2, -3], [-3, 2]])).kind == gcm.INDEFINITE


def test_classify_decomposable_worst_kind():
    # finite block plus affine block: overall affine
    A = gcm.validate(
        [[2, 0, 0], [0, 2, -2], [0, -2, 2]]
    )
    t = gcm.classify(A)
    assert t.kind == gcm.AFFINE
    assert t.component_kinds() == [gcm.FINITE, gcm.AFFINE]


def test_components():
    assert gcm.components(gcm.validate([[2, 0], [0, 2]])) == [(1,), (2,)]
    assert gcm.components(gcm.validate([[2, -1], [-1, 2]])) == [(1, 2)]
    path = gcm.validate([[2, -1, 0], [-1, 2, -1], [0, -1, 2]])
    assert gcm.components(path) == [(1, 2, 3)]


def test_submatrix(rank3):
    sub = gcm.submatrix(rank3, (1, 2))
    assert sub.entries == ((2, -2), (-2, 2))
    single = gcm.submatrix(rank3, (2,))
    assert single.entries == ((2,),)
    with pytest.raises(EmptyIndexSet):
        gcm.submatrix(rank3, ())
    with pytest.raises(IndexOutOfRange):
        gcm.submatrix(rank3, (0, 1))
    with pytest.raises(IndexOutOfRange):
        gcm.submatrix(rank3, (4,))


AFFINE_RANK_LE_4 = [
    [[2, -2], [-2, 2]],
    [[2, -4], [-1, 2]],
    [[2, -1, -1], [-1, 2, -1], [-1, -1, 2]],
    [[2, -1, 0], [-2, 2, -2], [0, -1, 2]],
    [[2, -1, 0], [-1, 2, -3], [0, -1, 2]],
    [[2, -1, 0, -1], [-1, 2, -1, 0], [0, -1, 2, -1], [-1, 0, -1, 2]],
    [[2, -1, 0, 0], [-2, 2, -1, 0], [0, -1, 2, -2], [0, 0, -1, 2]],
]


@pytest.mark.parametrize("matrix", AFFINE_RANK_LE_4)
def test_affine_proper_subsets_are_finite(matrix):
    A = gcm.validate(matrix)
    t = gcm.classify(A)
    assert t.kind == gcm.AFFINE and len(t.components) == 1
    n = A.n
    for size in range(1, n):
        for J in itertools.combinations(range(1, n + 1), size):
            assert gcm.classify(gcm.submatrix(A, J)).kind == gcm.FINITE


def _gcm_strategy():
    def build(n, offdiag):
        rows = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
        k = 0
        for i in range(n):
            for j in range(i + 1, n):
                a, b = offdiag[k]
                rows[i][j], rows[j][i] = a, b
                k += 1
        return rows

    pair = st.one_of(
        st.just((0, 0)),
        st.tuples(st.integers(-3, -1), st.integers(-3, -1)),
    )
    return st.integers(2, 3).flatmap(
        lambda n: st.tuples(
            st.just(n), st.lists(pair, min_size=n * (n - 1) // 2,
                                 max_size=n * (n - 1) // 2)
        ).map(lambda t: build(*t))
    )


@given(_gcm_strategy(), st.randoms(use_true_random=False))
def test_classify_permutation_invariant(matrix, rng):
    A = gcm.validate(matrix)
    n = A.n
    perm = list(range(n))
    rng.shuffle(perm)
    permuted = [[matrix[perm[i]][perm[j]] for j in range(n)] for i in range(n)]
    assert gcm.classify(gcm.validate(permuted)).kind == gcm.classify(A).kind


@given(_gcm_strategy())
def test_serialize_roundtrip(matrix):
    A = gcm.validate(matrix, name="x")
    again = gcm.from_json_dict(json.loads(json.dumps(A.to_json_dict())))
    assert again == A
    assert again.canonical_bytes() == A.canonical_bytes()


def test_canonical_bytes_ignore_name():
    a = gcm.validate([[2, -1], [-1, 2]], name="one")
    b = gcm.validate([[2, -1], [-1, 2]], name="two")
    assert a.canonical_bytes() == b.canonical_bytes()
    assert a.hash() == b.hash()


def test_determinant_exact():
    assert gcm.determinant([[2, -1], [-1, 2]]) == 3
    assert gcm.determinant([[2, -2], [-2, 2]]) == 0
    assert gcm.determinant([[2, -3], [-3, 2]]) == -5
    assert gcm.determinant([[2, -2, -1], [-2, 2, 0], [-1, 0, 2]]) == -2
