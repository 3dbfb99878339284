"""Affine parabolic subsystems and the projection to a finite system.

An indecomposable affine matrix has a one-dimensional integer kernel
spanned by the primitive positive null root delta.  Subtracting the
right multiple of delta from a real root lands in a finite root system
supported away from a chosen node; the size of that finite system bounds
the length of any nilpotent sequence in the affine system.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from kmlab import kernels, pairs
from kmlab.errors import CapExceeded, NotAffine
from kmlab.gcm import AFFINE, FINITE, GeneralizedCartanMatrix, classify, submatrix
from kmlab.roots import (
    RealRoot,
    classify_vector,
    generate_real_roots,
    pairing,
    support,
)
from kmlab.weyl import WeylElement, apply, identity


@dataclass(frozen=True)
class ParabolicSubsystem:
    """Roots supported on an index block, possibly conjugated."""

    gcm: GeneralizedCartanMatrix
    J: tuple[int, ...]
    conjugator: WeylElement | None = None

    def contains(self, v) -> bool:
        """Membership via the support test on the de-conjugated vector."""
        w = self.conjugator
        if w is not None and w.word:
            v = apply(self.gcm, tuple(reversed(w.word)), v)
        return set(support(v)) <= set(self.J)


def _affine_indecomposable(A: GeneralizedCartanMatrix) -> None:
    t = classify(A)
    if t.kind != AFFINE or len(t.components) != 1:
        raise NotAffine(f"matrix is {t.kind} with {len(t.components)} component(s)")


def null_root(A: GeneralizedCartanMatrix) -> tuple[int, ...]:
    """Primitive positive integer kernel vector of an affine matrix."""
    _affine_indecomposable(A)
    n = A.n
    rows = [[Fraction(x) for x in row] for row in A.entries]
    pivots: list[tuple[int, int]] = []
    r = 0
    for c in range(n):
        pivot = next((i for i in range(r, n) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = rows[r][c]
        rows[r] = [x / inv for x in rows[r]]
        for i in range(n):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append((r, c))
        r += 1
    free = [c for c in range(n) if c not in {c for _, c in pivots}]
    if len(free) != 1:
        raise NotAffine(f"kernel dimension {len(free)} is not 1")
    sol = [Fraction(0)] * n
    sol[free[0]] = Fraction(1)
    for i, c in reversed(pivots):
        sol[c] = -sum(rows[i][k] * sol[k] for k in range(c + 1, n))
    denom = 1
    for x in sol:
        denom = denom * x.denominator // _gcd(denom, x.denominator)
    ints = [int(x * denom) for x in sol]
    g = 0
    for x in ints:
        g = _gcd(g, abs(x))
    ints = [x // g for x in ints]
    if any(x < 0 for x in ints):
        ints = [-x for x in ints]
    if any(x <= 0 for x in ints):
        raise NotAffine("kernel vector is not strictly positive")
    return tuple(ints)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


@dataclass(frozen=True)
class AffineProjection:
    """Null root and distinguished node of an affine matrix."""

    gcm: GeneralizedCartanMatrix
    delta: tuple[int, ...]
    node0: int


def make_projection(A: GeneralizedCartanMatrix, node0: int | None = None) -> AffineProjection:
    """Projection data; node0 defaults to the smallest index whose
    deletion leaves a finite-kind submatrix."""
    delta = null_root(A)
    if node0 is None:
        for i in range(1, A.n + 1):
            rest = [j for j in range(1, A.n + 1) if j != i]
            if not rest or classify(submatrix(A, rest)).kind == FINITE:
                node0 = i
                break
        else:
            raise NotAffine("no deletable node leaves a finite submatrix")
    return AffineProjection(gcm=A, delta=delta, node0=node0)


def project(p: AffineProjection, v) -> tuple:
    """Image of a vector with the null-root contribution removed.

    The multiple of delta is chosen to zero the node0 coordinate; for
    untwisted types it is an integer, for twisted ones a rational, so
    entries are ints when integral and Fractions otherwise.
    """
    c = Fraction(v[p.node0 - 1], p.delta[p.node0 - 1])
    out = []
    for j in range(len(v)):
        x = Fraction(v[j]) - c * p.delta[j]
        out.append(int(x) if x.denominator == 1 else x)
    return tuple(out)


def finite_projected_count(A: GeneralizedCartanMatrix, cap: int | None = None) -> int:
    """Number of distinct nonzero projected real roots, both signs.

    The projection pattern repeats with the height of delta, so the
    default cap of twice that height plus two already sees every image.
    """
    p = make_projection(A)
    if cap is None:
        cap = 2 * sum(p.delta) + 2
    table = generate_real_roots(A, cap)
    images = set()
    for r in table.signed():
        img = project(p, r.root)
        if any(x != 0 for x in img):
            images.add(img)
    return len(images)


def affine_parabolics(A: GeneralizedCartanMatrix) -> list[ParabolicSubsystem]:
    """All standard parabolics whose block is indecomposable affine."""
    out = []
    idx = range(1, A.n + 1)
    for size in range(1, A.n + 1):
        for J in itertools.combinations(idx, size):
            sub = submatrix(A, J)
            t = classify(sub)
            if t.kind == AFFINE and len(t.components) == 1:
                out.append(ParabolicSubsystem(gcm=A, J=J, conjugator=identity(A)))
    return out


@dataclass(frozen=True)
class GeneratedSubsystem:
    """Reflection closure of a root set, truncated at a height cap."""

    roots: frozenset
    rank: int
    kind: str | None
    truncated: bool
    basis_pair: tuple[RealRoot, RealRoot] | None = None


def _int_rank(vectors) -> int:
    rows = [list(map(Fraction, v)) for v in vectors]
    if not rows:
        return 0
    cols = len(rows[0])
    rank = 0
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c] / rows[r][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        rank += 1
        r += 1
        if r == len(rows):
            break
    return rank


def _lattice_basis_2d(vectors):
    """Basis of the rank-2 integer lattice spanned by the vectors."""
    basis: list[list[int]] = []
    for v in vectors:
        vec = list(v)
        for b in basis:
            piv = next(i for i, x in enumerate(b) if x != 0)
            while vec[piv] != 0 and b[piv] != 0:
                if abs(vec[piv]) >= abs(b[piv]):
                    q = vec[piv] // b[piv]
                    vec = [a - q * c for a, c in zip(vec, b)]
                else:
                    b[:], vec = vec, b[:]
        if any(x != 0 for x in vec):
            basis.append(vec)
            basis.sort(key=lambda b: next(i for i, x in enumerate(b) if x != 0))
    return basis


def _coords_in_basis(basis, v):
    """Integer coordinates of v in a 2-vector lattice basis, or None."""
    b1, b2 = basis
    for i, j in itertools.combinations(range(len(v)), 2):
        det = b1[i] * b2[j] - b1[j] * b2[i]
        if det != 0:
            x = Fraction(v[i] * b2[j] - v[j] * b2[i], det)
            y = Fraction(b1[i] * v[j] - b1[j] * v[i], det)
            if x.denominator != 1 or y.denominator != 1:
                return None
            if all(x * b1[k] + y * b2[k] == v[k] for k in range(len(v))):
                return (int(x), int(y))
            return None
    return None


def subsystem_generated(A: GeneralizedCartanMatrix, S, cap: int) -> GeneratedSubsystem:
    """Close a root set under reflections in its own members.

    Images above the height cap are dropped (the closure is infinite
    outside finite type); ``truncated`` records whether that happened.
    For rank 2 the kind is read off a lattice-basis pair: pairing product
    up to 3 is finite, exactly 4 affine, 5 or more indefinite.
    """
    members: dict[tuple[int, ...], RealRoot] = {}
    todo: list[RealRoot] = []
    for s in S:
        r = s if isinstance(s, RealRoot) else classify_vector(A, s).real
        if r is None:
            raise ValueError(f"{tuple(s)} is not a real root")
        if r.height > cap:
            raise CapExceeded(f"input member {r.root} above height cap {cap}")
        if r.root not in members:
            members[r.root] = r
            todo.append(r)
    truncated = False
    while todo:
        fresh: list[RealRoot] = []
        current = list(members.values())
        for mirror in todo:
            for x in current:
                for img in (
                    _reflect_real(A, mirror, x),
                    _reflect_real(A, x, mirror),
                ):
                    if img.root in members:
                        continue
                    if img.height > cap:
                        truncated = True
                        continue
                    members[img.root] = img
                    fresh.append(img)
        todo = fresh
    rank = _int_rank([r.root for r in members.values()])
    kind = None
    basis_pair = None
    if rank == 2:
        basis = _lattice_basis_2d(sorted(members))
        ordered = sorted(members.values(), key=lambda r: (r.height, r.root))
        for a, b in itertools.combinations(ordered, 2):
            ca = _coords_in_basis(basis, a.root)
            cb = _coords_in_basis(basis, b.root)
            if ca is None or cb is None:
                continue
            if abs(ca[0] * cb[1] - ca[1] * cb[0]) != 1:
                continue
            prod = pairing(A, a.root, b.coroot) * pairing(A, b.root, a.coroot)
            basis_pair = (a, b)
            if prod <= 3:
                kind = "finite"
            elif prod == 4:
                kind = "affine"
            else:
                kind = "indefinite"
            break
        if kind is None:
            raise CapExceeded(
                f"no lattice-basis pair found within height cap {cap}"
            )
    return GeneratedSubsystem(
        roots=frozenset(members),
        rank=rank,
        kind=kind,
        truncated=truncated,
        basis_pair=basis_pair,
    )


def _reflect_real(A: GeneralizedCartanMatrix, mirror: RealRoot, x: RealRoot) -> RealRoot:
    c = kernels.bilinear(A.flat, mirror.coroot, x.root, A.n)
    root = tuple(x.root[j] - c * mirror.root[j] for j in range(A.n))
    c2 = kernels.bilinear(A.flat, x.coroot, mirror.root, A.n)
    coroot = tuple(x.coroot[j] - c2 * mirror.coroot[j] for j in range(A.n))
    return RealRoot(root, coroot)


@dataclass(frozen=True)
class ClauseResult:
    status: str  # "passed", "failed", or "skipped"
    detail: str


@dataclass(frozen=True)
class AffineMembershipReport:
    alpha: tuple[int, ...]
    J: tuple[int, ...]
    clauses: dict

    @property
    def failed(self) -> bool:
        return any(c.status == "failed" for c in self.clauses.values())


def affine_membership_check(
    A: GeneralizedCartanMatrix,
    parab: ParabolicSubsystem,
    alpha: RealRoot,
    *,
    inner: RealRoot | None = None,
    outer: RealRoot | None = None,
    parallel: list[RealRoot] | None = None,
    gamma: RealRoot | None = None,
    chain: list[RealRoot] | None = None,
) -> AffineMembershipReport:
    """Check the membership implications for a root and an affine parabolic.

    Three sufficient conditions for alpha to lie in the parabolic are
    evaluated on supplied witnesses: (squeeze) half-spaces of two members
    strictly sandwich alpha's; (meets-parallel) alpha's wall crosses
    eight pairwise parallel member walls and pairs nontrivially with a
    member; (chain) a nested chain of n members sits above alpha with
    final pairing below n/2, checked together with its contrapositive.
    A clause whose hypotheses fail is reported as skipped.
    """
    clauses: dict[str, ClauseResult] = {}
    member = parab.contains(alpha.root)

    if inner is not None and outer is not None:
        ok_hyp = (
            parab.contains(inner.root)
            and parab.contains(outer.root)
            and _strictly_inside(A, inner, alpha)
            and _strictly_inside(A, alpha, outer)
        )
        if not ok_hyp:
            clauses["squeeze"] = ClauseResult("skipped", "hypotheses not met")
        elif member:
            clauses["squeeze"] = ClauseResult("passed", "membership confirmed")
        else:
            clauses["squeeze"] = ClauseResult(
                "failed", f"sandwiched root {alpha.root} outside block"
            )

    if parallel is not None and gamma is not None:
        hyp = len(parallel) >= 8
        if hyp:
            eight = parallel[:8]
            hyp = all(parab.contains(b.root) for b in eight)
            hyp = hyp and parab.contains(gamma.root)
            hyp = hyp and all(
                pairs.classify_pair(A, a, b).tag in (pairs.NESTED, pairs.SKEW)
                for a, b in itertools.combinations(eight, 2)
            )
            hyp = hyp and all(pairs.walls_meet(A, alpha, b) for b in eight)
            hyp = hyp and pairing(A, alpha.root, gamma.coroot) != 0
        if not hyp:
            clauses["meets-parallel"] = ClauseResult(
                "skipped", "hypotheses not met"
            )
        elif member:
            clauses["meets-parallel"] = ClauseResult(
                "passed", "membership confirmed"
            )
        else:
            clauses["meets-parallel"] = ClauseResult(
                "failed", f"crossing root {alpha.root} outside block"
            )

    if chain:
        n = len(chain)
        links = [(alpha, chain[0])] + list(zip(chain, chain[1:]))
        chain_ok = all(parab.contains(b.root) for b in chain) and all(
            _strictly_inside(A, a, b) for a, b in links
        )
        if not chain_ok:
            clauses["chain"] = ClauseResult("skipped", "hypotheses not met")
        else:
            p = pairing(A, chain[-1].root, alpha.coroot)
            if 2 * p < n and not member:
                clauses["chain"] = ClauseResult(
                    "failed",
                    f"pairing {p} below {n}/2 but {alpha.root} outside block",
                )
            elif not member:
                clauses["chain"] = ClauseResult(
                    "passed", f"contrapositive holds: pairing {p} >= {n}/2"
                )
            else:
                clauses["chain"] = ClauseResult(
                    "passed" if 2 * p < n else "skipped",
                    f"pairing {p}, chain length {n}, member",
                )
    return AffineMembershipReport(alpha=alpha.root, J=parab.J, clauses=clauses)


def _strictly_inside(A: GeneralizedCartanMatrix, a: RealRoot, b: RealRoot) -> bool:
    rel = pairs.classify_pair(A, a, b)
    return rel.tag == pairs.NESTED and rel.direction == pairs.ALPHA_INSIDE_BETA
