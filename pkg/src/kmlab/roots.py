"""Roots as integer vectors over the simple-root basis.

Real roots carry their coroot coordinate vector (over the simple coroots)
so that pairings never need to be recomputed from reflection words.  The
sign convention: a root is positive when all coordinates are >= 0 and
negative when all are <= 0; vectors of mixed sign are never roots.
"""

from __future__ import annotations

from dataclasses import dataclass

from kmlab import kernels
from kmlab.errors import (
    CapTooSmall,
    DimensionMismatch,
    ZeroVector,
)
from kmlab.gcm import GeneralizedCartanMatrix

REAL = "real"
IMAGINARY = "imaginary"
NOT_ROOT = "not-root"


@dataclass(frozen=True)
class RealRoot:
    """A real root with its coroot, both as integer coordinate tuples."""

    root: tuple[int, ...]
    coroot: tuple[int, ...]

    @property
    def height(self) -> int:
        return abs(sum(self.root))

    def is_positive(self) -> bool:
        return kernels.vec_sign(self.root) == kernels.SIGN_POS

    def __neg__(self) -> "RealRoot":
        return RealRoot(
            tuple(-x for x in self.root), tuple(-x for x in self.coroot)
        )


@dataclass(frozen=True)
class RootClass:
    """Outcome of classifying a vector: real, imaginary, or not a root."""

    kind: str
    real: RealRoot | None = None

    @property
    def is_root(self) -> bool:
        return self.kind in (REAL, IMAGINARY)


def _check_dim(A: GeneralizedCartanMatrix, v) -> tuple[int, ...]:
    t = tuple(v)
    if len(t) != A.n:
        raise DimensionMismatch(f"expected length {A.n}, got {len(t)}")
    return t


def height(v) -> int:
    """Height of the positive representative: abs of the coordinate sum."""
    return abs(sum(v))


def pairing(A: GeneralizedCartanMatrix, v, d) -> int:
    """Pairing <v, d> of a root vector with a coroot vector."""
    v = _check_dim(A, v)
    d = _check_dim(A, d)
    return kernels.bilinear(A.flat, d, v, A.n)


def _unit(n: int, i: int) -> tuple[int, ...]:
    return tuple(1 if j == i else 0 for j in range(n))


def simple_root(A: GeneralizedCartanMatrix, i: int) -> RealRoot:
    """The i-th simple root (1-based) with its coroot."""
    _check_index(A, i)
    e = _unit(A.n, i - 1)
    return RealRoot(e, e)


def _check_index(A: GeneralizedCartanMatrix, i: int) -> None:
    if not 1 <= i <= A.n:
        from kmlab.errors import IndexOutOfRange

        raise IndexOutOfRange(f"generator {i} outside 1..{A.n}")


def reflect_root_vector(A: GeneralizedCartanMatrix, i: int, v) -> tuple[int, ...]:
    """Simple reflection r_i on a root-side vector (1-based i)."""
    c = kernels.row_dot(A.flat, i - 1, v, A.n)
    if c == 0:
        return tuple(v)
    out = list(v)
    out[i - 1] -= c
    return tuple(out)


def reflect_coroot_vector(A: GeneralizedCartanMatrix, i: int, d) -> tuple[int, ...]:
    """Simple reflection r_i on a coroot-side vector (1-based i)."""
    c = sum(d[k] * A.entries[k][i - 1] for k in range(A.n))
    if c == 0:
        return tuple(d)
    out = list(d)
    out[i - 1] -= c
    return tuple(out)


def simple_reflection(A: GeneralizedCartanMatrix, i: int, x):
    """Apply r_i to a RealRoot (both sides) or a plain root vector."""
    _check_index(A, i)
    if isinstance(x, RealRoot):
        return RealRoot(
            reflect_root_vector(A, i, x.root),
            reflect_coroot_vector(A, i, x.coroot),
        )
    return reflect_root_vector(A, i, _check_dim(A, x))


def reflect(A: GeneralizedCartanMatrix, beta: RealRoot, v) -> tuple[int, ...]:
    """Reflection through the wall of beta: v - <v, beta^vee> beta."""
    v = _check_dim(A, v)
    c = kernels.bilinear(A.flat, beta.coroot, v, A.n)
    return tuple(v[j] - c * beta.root[j] for j in range(A.n))


def reflect_real(A: GeneralizedCartanMatrix, beta: RealRoot, x: RealRoot) -> RealRoot:
    """Reflection through the wall of beta applied to a real root."""
    c = kernels.bilinear(A.flat, beta.coroot, x.root, A.n)
    croot = tuple(x.root[j] - c * beta.root[j] for j in range(A.n))
    c2 = kernels.bilinear(A.flat, x.coroot, beta.root, A.n)
    cco = tuple(x.coroot[j] - c2 * beta.coroot[j] for j in range(A.n))
    return RealRoot(croot, cco)


def support(v) -> tuple[int, ...]:
    """1-based indices of the nonzero coordinates."""
    return tuple(j + 1 for j, x in enumerate(v) if x != 0)


def _support_connected(A: GeneralizedCartanMatrix, v) -> bool:
    supp = [j for j, x in enumerate(v) if x != 0]
    if not supp:
        return False
    todo = [supp[0]]
    seen = {supp[0]}
    members = set(supp)
    while todo:
        i = todo.pop()
        for j in members:
            if j not in seen and A.entries[i][j] != 0:
                seen.add(j)
                todo.append(j)
    return seen == members


def classify_vector(A: GeneralizedCartanMatrix, v) -> RootClass:
    """Decide whether a vector is a real root, an imaginary root, or no root.

    Mixed-sign vectors are rejected outright.  Otherwise the positive
    representative is walked down by simple reflections, always reflecting
    at an index of maximal positive pairing (smallest index on ties).  The
    walk ends at a simple root (real: the coroot is recovered by replaying
    the recorded word on the coroot side), at a vector with all pairings
    <= 0 (imaginary exactly when the support is connected), or leaves the
    positive cone (not a root).
    """
    v = _check_dim(A, v)
    sign = kernels.vec_sign(v)
    if sign == kernels.SIGN_ZERO:
        raise ZeroVector("cannot classify the zero vector")
    if sign == kernels.SIGN_MIXED:
        return RootClass(NOT_ROOT)
    flipped = sign == kernels.SIGN_NEG
    cur = tuple(-x for x in v) if flipped else v

    n = A.n
    word: list[int] = []
    while True:
        if sum(cur) == 1:
            simple_idx = cur.index(1)
            break
        pairings = [kernels.row_dot(A.flat, i, cur, n) for i in range(n)]
        best = max(pairings)
        if best <= 0:
            if _support_connected(A, cur):
                return RootClass(IMAGINARY)
            return RootClass(NOT_ROOT)
        i = pairings.index(best)
        nxt = list(cur)
        nxt[i] -= best
        if kernels.vec_sign(nxt) != kernels.SIGN_POS:
            return RootClass(NOT_ROOT)
        word.append(i)
        cur = tuple(nxt)

    coroot = _unit(n, simple_idx)
    for i in reversed(word):
        coroot = reflect_coroot_vector(A, i + 1, coroot)
    if flipped:
        return RootClass(
            REAL, RealRoot(v, tuple(-x for x in coroot))
        )
    return RootClass(REAL, RealRoot(v, coroot))


@dataclass(frozen=True)
class RootTable:
    """All positive real roots up to a height cap, sorted by (height, coords)."""

    gcm: GeneralizedCartanMatrix
    height_cap: int
    positive: tuple[RealRoot, ...]

    def __post_init__(self):
        object.__setattr__(
            self, "_by_vector", {r.root: r for r in self.positive}
        )

    def lookup(self, v) -> RealRoot | None:
        """The table entry for a vector, negating as needed; None if absent."""
        t = tuple(v)
        hit = self._by_vector.get(t)
        if hit is not None:
            return hit
        neg = self._by_vector.get(tuple(-x for x in t))
        return -neg if neg is not None else None

    def signed(self) -> list[RealRoot]:
        """Positive and negative roots of the table, positives first."""
        return list(self.positive) + [-r for r in self.positive]

    def __len__(self) -> int:
        return len(self.positive)

    def __iter__(self):
        return iter(self.positive)


def generate_real_roots(A: GeneralizedCartanMatrix, H: int) -> RootTable:
    """Positive real roots of height <= H with coroots, by orbit search.

    Breadth-first closure of the simple roots under simple reflections,
    pruning at the height cap.  Any positive real root of height h is
    reachable from a simple root through positive roots of height <= h,
    so the result is exactly the set of positive real roots up to H.
    """
    if H < 1:
        raise CapTooSmall("height cap must be at least 1")
    n = A.n
    found: dict[tuple[int, ...], RealRoot] = {}
    frontier: list[RealRoot] = []
    for i in range(1, n + 1):
        rr = simple_root(A, i)
        found[rr.root] = rr
        frontier.append(rr)
    while frontier:
        fresh: list[RealRoot] = []
        for rr in frontier:
            for i in range(1, n + 1):
                img = simple_reflection(A, i, rr)
                if img.root in found:
                    continue
                if kernels.vec_sign(img.root) != kernels.SIGN_POS:
                    continue
                if sum(img.root) > H:
                    continue
                found[img.root] = img
                fresh.append(img)
        frontier = fresh
    ordered = tuple(
        sorted(found.values(), key=lambda r: (sum(r.root), r.root))
    )
    return RootTable(gcm=A, height_cap=H, positive=ordered)
