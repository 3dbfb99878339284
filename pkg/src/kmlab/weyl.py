"""Weyl group elements, reduced words, inversion sets, and enumeration.

Elements are identified by their integer action matrix on the root
lattice (columns are the images of the simple roots), which is faithful
for the standard realization with linearly independent simple roots.
Words are tuples of 1-based generator indices and denote products read
left to right: (i1, i2) means r_{i1} r_{i2}, acting on the left.
"""

from __future__ import annotations

import functools
import os
from dataclasses import dataclass

from kmlab import kernels
from kmlab.errors import DimensionMismatch, IndexOutOfRange
from kmlab.gcm import GeneralizedCartanMatrix
from kmlab.roots import RealRoot, reflect_coroot_vector, reflect_root_vector

Word = tuple[int, ...]


@functools.lru_cache(maxsize=None)
def _reflection_matrices(A: GeneralizedCartanMatrix):
    """Flat action matrices of the simple reflections, root and coroot side."""
    n = A.n
    root_side = []
    coroot_side = []
    for i in range(n):
        m = [[1 if r == c else 0 for c in range(n)] for r in range(n)]
        for j in range(n):
            m[i][j] -= A.entries[i][j]
        root_side.append(tuple(x for row in m for x in row))
        mc = [[1 if r == c else 0 for c in range(n)] for r in range(n)]
        for k in range(n):
            mc[i][k] -= A.entries[k][i]
        coroot_side.append(tuple(x for row in mc for x in row))
    return tuple(root_side), tuple(coroot_side)


def _identity_flat(n: int) -> tuple[int, ...]:
    return tuple(1 if i == j else 0 for i in range(n) for j in range(n))


def _check_word(A: GeneralizedCartanMatrix, word) -> Word:
    w = tuple(word)
    for s in w:
        if not 1 <= s <= A.n:
            raise IndexOutOfRange(f"generator {s} outside 1..{A.n}")
    return w


@dataclass(frozen=True, eq=False)
class WeylElement:
    """A group element keyed by its action matrix, with a reduced word."""

    n: int
    action: tuple[int, ...]
    word: Word

    @property
    def length(self) -> int:
        return len(self.word)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, WeylElement)
            and self.n == other.n
            and self.action == other.action
        )

    def __hash__(self) -> int:
        return hash((self.n, self.action))

    def column(self, i: int) -> tuple[int, ...]:
        """Image of the i-th simple root (1-based) under this element."""
        n = self.n
        return tuple(self.action[r * n + (i - 1)] for r in range(n))


def identity(A: GeneralizedCartanMatrix) -> WeylElement:
    return WeylElement(A.n, _identity_flat(A.n), ())


def action_of_word(A: GeneralizedCartanMatrix, word) -> tuple[int, ...]:
    """Flat action matrix of a word (not necessarily reduced)."""
    word = _check_word(A, word)
    mats, _ = _reflection_matrices(A)
    m = _identity_flat(A.n)
    for s in word:
        m = kernels.mat_mul(m, mats[s - 1], A.n)
    return m


def apply(A: GeneralizedCartanMatrix, w, v) -> tuple[int, ...]:
    """Left action of a WeylElement or word on a root-side vector."""
    v = tuple(v)
    if len(v) != A.n:
        raise DimensionMismatch(f"expected length {A.n}, got {len(v)}")
    if isinstance(w, WeylElement):
        return kernels.mat_vec(w.action, v, A.n)
    word = _check_word(A, w)
    for s in reversed(word):
        v = reflect_root_vector(A, s, v)
    return v


def apply_real(A: GeneralizedCartanMatrix, word, x: RealRoot) -> RealRoot:
    """Left action of a word on a real root, tracking the coroot."""
    word = _check_word(A, word)
    root, coroot = x.root, x.coroot
    for s in reversed(word):
        root = reflect_root_vector(A, s, root)
        coroot = reflect_coroot_vector(A, s, coroot)
    return RealRoot(root, coroot)


def is_reduced(A: GeneralizedCartanMatrix, word) -> bool:
    """True when the word's length equals the element's length."""
    word = _check_word(A, word)
    mats, _ = _reflection_matrices(A)
    n = A.n
    m = _identity_flat(n)
    for s in word:
        col = tuple(m[r * n + (s - 1)] for r in range(n))
        if kernels.vec_sign(col) != kernels.SIGN_POS:
            return False
        m = kernels.mat_mul(m, mats[s - 1], n)
    return True


def reduce_word(A: GeneralizedCartanMatrix, word) -> Word:
    """A reduced word for the same element, by iterated deletion.

    Appending a letter that would send a positive simple root negative
    triggers the exchange condition; the matching earlier letter is found
    by walking the candidate inversion root back through the suffix and
    both letters are removed.
    """
    word = _check_word(A, word)
    out: list[int] = []
    for s in word:
        img = apply(A, tuple(out), _unit_vec(A.n, s - 1))
        if kernels.vec_sign(img) == kernels.SIGN_POS:
            out.append(s)
            continue
        v = _unit_vec(A.n, s - 1)
        delete_at = None
        for j in range(len(out) - 1, -1, -1):
            if v == _unit_vec(A.n, out[j] - 1):
                delete_at = j
                break
            v = reflect_root_vector(A, out[j], v)
        assert delete_at is not None
        del out[delete_at]
    return tuple(out)


def _unit_vec(n: int, i: int) -> tuple[int, ...]:
    return tuple(1 if j == i else 0 for j in range(n))


def from_word(A: GeneralizedCartanMatrix, word) -> WeylElement:
    """The element of a word, canonicalized to a reduced word."""
    red = reduce_word(A, word)
    return WeylElement(A.n, action_of_word(A, red), red)


def inverse(A: GeneralizedCartanMatrix, w: WeylElement) -> WeylElement:
    return from_word(A, tuple(reversed(w.word)))


@dataclass(frozen=True)
class InversionSet:
    """The positive real roots sent negative by the owning element."""

    owner: WeylElement
    roots: tuple[RealRoot, ...]

    def vectors(self) -> set[tuple[int, ...]]:
        return {r.root for r in self.roots}

    def __len__(self) -> int:
        return len(self.roots)

    def __iter__(self):
        return iter(self.roots)

    def certificate_words(self) -> tuple[Word, Word]:
        """Words making the set all-positive resp. all-negative."""
        return (), self.owner.word


def inversion_set(A: GeneralizedCartanMatrix, word) -> InversionSet:
    """Inversion set of a word, with coroots attached.

    For a reduced word i1..ik the members are the suffix images
    r_{ik} ... r_{it+1} (alpha_{it}), one per position t.  With
    KMLAB_DEBUG set, closedness of the result is verified on the spot.
    """
    el = from_word(A, word)
    red = el.word
    mats, cmats = _reflection_matrices(A)
    n = A.n
    suffix = _identity_flat(n)
    suffix_c = _identity_flat(n)
    out = []
    for t in range(len(red) - 1, -1, -1):
        s = red[t]
        root = tuple(suffix[r * n + (s - 1)] for r in range(n))
        coroot = tuple(suffix_c[r * n + (s - 1)] for r in range(n))
        out.append(RealRoot(root, coroot))
        suffix = kernels.mat_mul(suffix, mats[s - 1], n)
        suffix_c = kernels.mat_mul(suffix_c, cmats[s - 1], n)
    out.sort(key=lambda r: (sum(r.root), r.root))
    inv = InversionSet(owner=el, roots=tuple(out))
    if os.environ.get("KMLAB_DEBUG"):
        _assert_closed(A, inv)
    return inv


def _assert_closed(A: GeneralizedCartanMatrix, inv: InversionSet) -> None:
    from kmlab.roots import classify_vector

    vecs = inv.vectors()
    for x in vecs:
        for y in vecs:
            s = tuple(a + b for a, b in zip(x, y))
            if s in vecs or all(c == 0 for c in s):
                continue
            if any(c != 0 for c in s) and classify_vector(A, s).is_root:
                raise AssertionError(
                    f"inversion set of {inv.owner.word} is not closed at {s}"
                )


def enumerate_elements(A: GeneralizedCartanMatrix, L: int):
    """Yield every element of length <= L once, in (length, word) order.

    Breadth-first right multiplication with matrix-keyed deduplication;
    the first word found for an element is its lexicographically least
    reduced word.
    """
    if L < 0:
        return
    mats, _ = _reflection_matrices(A)
    n = A.n
    e = identity(A)
    yield e
    seen = {e.action}
    current = [e]
    for _ in range(L):
        nxt: list[WeylElement] = []
        for w in current:
            for i in range(1, n + 1):
                col = w.column(i)
                if kernels.vec_sign(col) != kernels.SIGN_POS:
                    continue
                act = kernels.mat_mul(w.action, mats[i - 1], n)
                if act in seen:
                    continue
                seen.add(act)
                nxt.append(WeylElement(n, act, w.word + (i,)))
        if not nxt:
            return
        yield from nxt
        current = nxt


def length_counts(A: GeneralizedCartanMatrix, L: int) -> list[int]:
    """Number of elements of each length 0..L (truncated when W is finite)."""
    counts: list[int] = []
    for w in enumerate_elements(A, L):
        while len(counts) <= w.length:
            counts.append(0)
        counts[w.length] += 1
    return counts
