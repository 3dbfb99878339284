"""Generalized Cartan matrices: validation, type classification, submatrices.

A generalized Cartan matrix (GCM) is a square integer matrix with 2 on the
diagonal, non-positive entries off the diagonal, and a symmetric zero
pattern.  The pairing convention used everywhere in this package is

    <alpha_j, alpha_i^vee> = a[i][j]

so row i of the matrix is the coroot functional of node i.  All node
indices are 1-based at the API surface.
"""

from __future__ import annotations

import hashlib
import itertools
import json
from dataclasses import dataclass, field

from kmlab.errors import EmptyIndexSet, GCMValidationError, IndexOutOfRange

FINITE = "finite"
AFFINE = "affine"
INDEFINITE = "indefinite"

_KIND_ORDER = {FINITE: 0, AFFINE: 1, INDEFINITE: 2}


@dataclass(frozen=True)
class GeneralizedCartanMatrix:
    """A validated GCM.  ``entries`` is a tuple of row tuples."""

    entries: tuple[tuple[int, ...], ...]
    name: str = ""
    flat: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(
            self, "flat", tuple(x for row in self.entries for x in row)
        )

    @property
    def n(self) -> int:
        return len(self.entries)

    def a(self, i: int, j: int) -> int:
        """Entry a[i][j] with 1-based indices."""
        return self.entries[i - 1][j - 1]

    def to_json_dict(self) -> dict:
        return {"name": self.name, "matrix": [list(r) for r in self.entries]}

    def canonical_bytes(self) -> bytes:
        """Row-major, no whitespace; the cache identity of the matrix."""
        return json.dumps(
            [list(r) for r in self.entries], separators=(",", ":")
        ).encode("ascii")

    def hash(self) -> str:
        return hashlib.sha256(self.canonical_bytes()).hexdigest()[:16]


@dataclass(frozen=True)
class MatrixType:
    """Classification of a GCM and of each connected diagram component."""

    kind: str
    components: tuple[tuple[tuple[int, ...], str], ...]

    def component_kinds(self) -> list[str]:
        return [kind for _, kind in self.components]


def validate(matrix, name: str = "") -> GeneralizedCartanMatrix:
    """Check the GCM axioms and return the validated matrix.

    Raises GCMValidationError naming the violated axiom and the offending
    1-based cell.
    """
    rows = [tuple(row) for row in matrix]
    n = len(rows)
    if n == 0 or any(len(r) != n for r in rows):
        raise GCMValidationError("non-square")
    for i in range(n):
        for j in range(n):
            x = rows[i][j]
            if not isinstance(x, int) or isinstance(x, bool):
                raise GCMValidationError("non-integer", (i + 1, j + 1))
    for i in range(n):
        if rows[i][i] != 2:
            raise GCMValidationError("diagonal-not-two", (i + 1, i + 1))
    for i in range(n):
        for j in range(n):
            if i != j and rows[i][j] > 0:
                raise GCMValidationError(
                    "positive-off-diagonal", (i + 1, j + 1)
                )
    for i in range(n):
        for j in range(i + 1, n):
            if (rows[i][j] == 0) != (rows[j][i] == 0):
                cell = (i + 1, j + 1) if rows[i][j] != 0 else (j + 1, i + 1)
                raise GCMValidationError("asymmetric-zero", cell)
    return GeneralizedCartanMatrix(tuple(rows), name=name)


def from_json_dict(data: dict) -> GeneralizedCartanMatrix:
    return validate(data["matrix"], name=str(data.get("name", "")))


def load(path) -> GeneralizedCartanMatrix:
    with open(path, "rb") as fh:
        return from_json_dict(json.load(fh))


def determinant(rows: list[list[int]]) -> int:
    """Exact integer determinant (fraction-free Bareiss elimination)."""
    m = [list(r) for r in rows]
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k] != 0:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def components(A: GeneralizedCartanMatrix) -> list[tuple[int, ...]]:
    """Connected components of the Dynkin diagram, as sorted 1-based tuples."""
    n = A.n
    seen = [False] * n
    comps = []
    for start in range(n):
        if seen[start]:
            continue
        stack = [start]
        seen[start] = True
        comp = []
        while stack:
            i = stack.pop()
            comp.append(i)
            for j in range(n):
                if not seen[j] and A.entries[i][j] != 0:
                    seen[j] = True
                    stack.append(j)
        comps.append(tuple(sorted(k + 1 for k in comp)))
    return comps


def _principal_minor(A: GeneralizedCartanMatrix, idx: tuple[int, ...]) -> int:
    rows = [[A.entries[i][j] for j in idx] for i in idx]
    return determinant(rows)


def _classify_component(A: GeneralizedCartanMatrix, comp: tuple[int, ...]) -> str:
    idx = tuple(i - 1 for i in comp)
    m = len(idx)
    full = _principal_minor(A, idx)
    proper_positive = all(
        _principal_minor(A, sub) > 0
        for size in range(1, m)
        for sub in itertools.combinations(idx, size)
    )
    if full > 0 and proper_positive:
        return FINITE
    if full == 0 and proper_positive:
        return AFFINE
    return INDEFINITE


def classify(A: GeneralizedCartanMatrix) -> MatrixType:
    """Classify by exact principal minors, per connected component.

    A component is finite when all its principal minors are positive,
    affine when its determinant vanishes and all proper principal minors
    are positive, and indefinite otherwise.  The overall kind is the worst
    component kind.  Exponential in component size; intended for the small
    ranks this package targets.
    """
    comps = components(A)
    classified = tuple((comp, _classify_component(A, comp)) for comp in comps)
    kind = max(
        (k for _, k in classified), key=_KIND_ORDER.__getitem__, default=FINITE
    )
    return MatrixType(kind=kind, components=classified)


def submatrix(A: GeneralizedCartanMatrix, J) -> GeneralizedCartanMatrix:
    """Restriction of the matrix to the 1-based index set J."""
    idx = sorted(set(J))
    if not idx:
        raise EmptyIndexSet("submatrix requires a nonempty index set")
    if idx[0] < 1 or idx[-1] > A.n:
        raise IndexOutOfRange(f"indices {idx} outside 1..{A.n}")
    rows = tuple(
        tuple(A.entries[i - 1][j - 1] for j in idx) for i in idx
    )
    label = f"{A.name}[{','.join(map(str, idx))}]" if A.name else ""
    return GeneralizedCartanMatrix(rows, name=label)
