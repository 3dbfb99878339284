"""Decision procedures on pairs and finite sets of real roots.

Walls and half-spaces are never materialized as point sets.  The two
facts driving everything here are taken as definitions:

* the subsystem generated by two real roots is finite exactly when the
  product of their mutual pairings is 0..3 ("the walls meet");
* the half-spaces are nested exactly when that product is >= 4 with
  positive pairings; with negative pairings the walls are parallel but
  unnested (the half-spaces are disjoint, or cover everything).

Chamber geometry enters only through exact rational linear feasibility:
a point x of the realization is represented by the integer vector
y_j = <alpha_j, x>, so the half-space of a root gamma is just
{y : gamma . y > 0} and the fundamental chamber is the positive orthant.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from kmlab import kernels
from kmlab.errors import CapExceeded, ImaginaryInput, NotNested
from kmlab.gcm import GeneralizedCartanMatrix
from kmlab.roots import (
    IMAGINARY,
    NOT_ROOT,
    RealRoot,
    classify_vector,
    height,
    pairing,
    reflect_root_vector,
)

EQUAL = "equal"
OPPOSITE = "opposite"
FINITE_MEET = "finite-meet"
NESTED = "nested"
SKEW = "skew"

ALPHA_INSIDE_BETA = "alpha-inside-beta"
BETA_INSIDE_ALPHA = "beta-inside-alpha"


class _Undecided:
    """Honest third outcome of the bounded search procedures."""

    def __repr__(self) -> str:
        return "UNDECIDED"

    def __bool__(self) -> bool:
        raise TypeError("UNDECIDED is neither true nor false; compare with 'is'")


UNDECIDED = _Undecided()


@dataclass(frozen=True)
class PairRelation:
    """Relation of two real-root half-spaces, with the exact pairings."""

    tag: str
    pairings: tuple[int, int]
    product: int
    direction: str | None = None


@dataclass(frozen=True)
class PrenilpotencyCertificate:
    """Words sending a set into the positive resp. negative roots."""

    positivizer: tuple[int, ...]
    negativizer: tuple[int, ...]


def classify_pair(A: GeneralizedCartanMatrix, a: RealRoot, b: RealRoot) -> PairRelation:
    """Exact relation of two real roots of the same matrix."""
    if a.root == b.root:
        return PairRelation(EQUAL, (2, 2), 4)
    if all(x == -y for x, y in zip(a.root, b.root)):
        return PairRelation(OPPOSITE, (-2, -2), 4)
    p = pairing(A, a.root, b.coroot)
    q = pairing(A, b.root, a.coroot)
    prod = p * q
    if prod < 0 or (prod >= 4 and (p > 0) != (q > 0)):
        raise AssertionError(
            f"pairing signs disagree at product {prod}: {a} vs {b}"
        )
    if prod < 4:
        return PairRelation(FINITE_MEET, (p, q), prod)
    if p > 0:
        return PairRelation(
            NESTED, (p, q), prod, direction=nested_direction(A, a, b)
        )
    return PairRelation(SKEW, (p, q), prod)


def nested_direction(A: GeneralizedCartanMatrix, a: RealRoot, b: RealRoot) -> str:
    """Which of two nested half-spaces contains the other.

    Mixed signs: the positive root owns the larger half-space, because
    the fundamental chamber lies in every positive root's half-space and
    no negative root's.  Both negative: negate and swap.

    Both positive: descend with simple reflections, which preserve the
    relation, until one member is a simple root alpha_i.  The simple
    root's half-space is then the inner one: if the other half-space
    were inside, the chamber adjacent across the i-th wall would lie in
    the complement of the other root's half-space, forcing r_i to negate
    it, which only happens to alpha_i itself.  Descent lowers the height
    of the tracked member every step, so this terminates.
    """
    p = pairing(A, a.root, b.coroot)
    q = pairing(A, b.root, a.coroot)
    if a.root == b.root or all(x == -y for x, y in zip(a.root, b.root)):
        raise NotNested("pair is equal or opposite")
    if p * q < 4 or p <= 0:
        raise NotNested(f"pairings ({p}, {q}) are not nested")
    sa = kernels.vec_sign(a.root)
    sb = kernels.vec_sign(b.root)
    if sa == kernels.SIGN_POS and sb == kernels.SIGN_POS:
        return _nested_direction_positive(A, a.root, b.root)
    if sa == kernels.SIGN_POS:
        return BETA_INSIDE_ALPHA
    if sb == kernels.SIGN_POS:
        return ALPHA_INSIDE_BETA
    flipped = nested_direction(A, -a, -b)
    return (
        BETA_INSIDE_ALPHA
        if flipped == ALPHA_INSIDE_BETA
        else ALPHA_INSIDE_BETA
    )


def _nested_direction_positive(A: GeneralizedCartanMatrix, va, vb) -> str:
    n = A.n
    while True:
        if sum(va) == 1:
            return ALPHA_INSIDE_BETA
        if sum(vb) == 1:
            return BETA_INSIDE_ALPHA
        lower = va if (sum(va), va) <= (sum(vb), vb) else vb
        pairings = [kernels.row_dot(A.flat, i, lower, n) for i in range(n)]
        i = pairings.index(max(pairings)) + 1
        va = reflect_root_vector(A, i, va)
        vb = reflect_root_vector(A, i, vb)


def reflect_root_vector_by(A: GeneralizedCartanMatrix, beta: RealRoot, v):
    """Reflection of a root-side vector through the wall of beta."""
    c = kernels.bilinear(A.flat, beta.coroot, v, A.n)
    return tuple(v[j] - c * beta.root[j] for j in range(A.n))


def is_prenilpotent_pair(A: GeneralizedCartanMatrix, a: RealRoot, b: RealRoot) -> bool:
    """Whether {a, b} is prenilpotent: nested, equal, or a crossing pair."""
    tag = classify_pair(A, a, b).tag
    return tag in (EQUAL, FINITE_MEET, NESTED)


def walls_meet(A: GeneralizedCartanMatrix, a: RealRoot, b: RealRoot) -> bool:
    """Whether the walls intersect (equal walls count as meeting)."""
    tag = classify_pair(A, a, b).tag
    return tag in (EQUAL, OPPOSITE, FINITE_MEET)


def closure(A: GeneralizedCartanMatrix, vectors, cap: int) -> frozenset:
    """Smallest superset closed under 'the sum of two members is a root'.

    Saturates pairwise sums, consulting classify_vector for root-ness.
    Raises CapExceeded as soon as a member would exceed the height cap,
    which signals either a non-prenilpotent input or a cap too small.
    """
    result = {tuple(v) for v in vectors}
    for v in result:
        if _height_or_none(v) is not None and height(v) > cap:
            raise CapExceeded(f"input member {v} above height cap {cap}")
    frontier = list(result)
    while frontier:
        fresh = []
        for x in frontier:
            for y in list(result):
                s = tuple(a + b for a, b in zip(x, y))
                if s in result or all(c == 0 for c in s):
                    continue
                if not classify_vector(A, s).is_root:
                    continue
                if height(s) > cap:
                    raise CapExceeded(
                        f"closure member {s} above height cap {cap}"
                    )
                result.add(s)
                fresh.append(s)
        frontier = fresh
    return frozenset(result)


def _height_or_none(v):
    sign = kernels.vec_sign(v)
    if sign in (kernels.SIGN_POS, kernels.SIGN_NEG):
        return height(v)
    return None


# ---------------------------------------------------------------------------
# Exact rational feasibility of strict homogeneous systems {row . y > 0}.


def _normalize_row(row):
    g = 0
    for x in row:
        g = gcd(g, abs(x))
    if g > 1:
        return tuple(x // g for x in row)
    return tuple(row)


def feasible_point(rows) -> tuple[Fraction, ...] | None:
    """A strictly feasible rational point of {row . y > 0}, or None.

    Fourier-Motzkin elimination on strict homogeneous inequalities; the
    combination of a positive-coefficient and a negative-coefficient row
    preserves strictness, and a vanishing combination certifies
    infeasibility.
    """
    rows = [_normalize_row(r) for r in rows]
    if not rows:
        return ()
    n = len(rows[0])
    levels: list[list[tuple[int, ...]]] = [None] * n
    cur = sorted(set(rows))
    for j in range(n - 1, 0, -1):
        levels[j] = cur
        pos = [r for r in cur if r[j] > 0]
        neg = [r for r in cur if r[j] < 0]
        keep = {r for r in cur if r[j] == 0}
        for rp in pos:
            for rn in neg:
                comb = tuple(
                    rp[k] * (-rn[j]) + rn[k] * rp[j] for k in range(n)
                )
                if all(c == 0 for c in comb):
                    return None
                keep.add(_normalize_row(comb))
        cur = sorted(keep)
    levels[0] = cur

    point: list[Fraction] = [Fraction(0)] * n
    for j in range(n):
        lo = None
        hi = None
        for r in levels[j]:
            if r[j] == 0:
                continue
            rest = sum(
                (Fraction(r[k]) * point[k] for k in range(j)), Fraction(0)
            )
            bound = -rest / r[j]
            if r[j] > 0:
                lo = bound if lo is None or bound > lo else lo
            else:
                hi = bound if hi is None or bound < hi else hi
        if lo is None and hi is None:
            point[j] = Fraction(0)
        elif lo is None:
            point[j] = hi - 1
        elif hi is None:
            point[j] = lo + 1
        else:
            if lo >= hi:
                return None
            point[j] = (lo + hi) / 2
    return tuple(point)


def _integer_point(point) -> tuple[int, ...]:
    scale = lcm(*(f.denominator for f in point)) if point else 1
    return tuple(int(f * scale) for f in point)


def _as_real_roots(A: GeneralizedCartanMatrix, members) -> list[RealRoot]:
    out = []
    for m in members:
        if isinstance(m, RealRoot):
            out.append(m)
            continue
        cls = classify_vector(A, m)
        if cls.kind == IMAGINARY:
            raise ImaginaryInput(f"{tuple(m)} is an imaginary root")
        if cls.kind == NOT_ROOT:
            raise ValueError(f"{tuple(m)} is not a root")
        out.append(cls.real)
    return out


def make_all_positive(A: GeneralizedCartanMatrix, members, max_steps: int | None = None):
    """A word sending every member positive, or UNDECIDED.

    Chamber walk.  While a member is negative, cross a simple wall that
    the whole cone {y : gamma . y > 0 for all current members} lies
    strictly behind (decided by exact Fourier-Motzkin feasibility).  When
    no wall separates the full cone, fall back to walking a strictly
    feasible rational point of the cone toward the fundamental chamber.
    Success is verified by replay; hitting the step cap, or an infeasible
    cone, yields UNDECIDED.
    """
    reals = _as_real_roots(A, members)
    psi = [r.root for r in reals]
    if all(kernels.vec_sign(v) == kernels.SIGN_POS for v in psi):
        return ()
    if max_steps is None:
        max_steps = 10 * max(1, len(psi)) * max(
            (height(v) for v in psi), default=1
        )
    n = A.n
    point = feasible_point(psi)
    if point is None:
        return UNDECIDED
    y = list(_integer_point(point))
    units = [tuple(1 if k == j else 0 for k in range(n)) for j in range(n)]
    word: list[int] = []

    def success():
        for r in reals:
            img = r.root
            for s in reversed(word):
                img = reflect_root_vector(A, s, img)
            if kernels.vec_sign(img) != kernels.SIGN_POS:
                raise AssertionError("chamber walk produced a bad word")
        return tuple(word)

    for _ in range(max_steps):
        if all(kernels.vec_sign(v) == kernels.SIGN_POS for v in psi):
            return success()
        crossing = None
        for i in range(n):
            if feasible_point(psi + [units[i]]) is None:
                crossing = i
                break
        if crossing is None:
            negatives = [i for i in range(n) if y[i] < 0]
            if not negatives:
                return UNDECIDED
            crossing = negatives[0]
        word.insert(0, crossing + 1)
        psi = [reflect_root_vector(A, crossing + 1, v) for v in psi]
        yi = y[crossing]
        y = [y[j] - A.entries[crossing][j] * yi for j in range(n)]
    if all(kernels.vec_sign(v) == kernels.SIGN_POS for v in psi):
        return success()
    return UNDECIDED


def is_prenilpotent_set(A: GeneralizedCartanMatrix, members, max_steps: int | None = None):
    """Certificate, False on a pairwise obstruction, or UNDECIDED.

    A pair that is opposite or has disjoint half-spaces rules the set
    out; otherwise both a positivizer and a negativizer are searched for
    with the chamber walk.
    """
    reals = _as_real_roots(A, members)
    for a, b in itertools.combinations(reals, 2):
        if classify_pair(A, a, b).tag in (OPPOSITE, SKEW):
            return False
    pos = make_all_positive(A, reals, max_steps)
    if pos is UNDECIDED:
        return UNDECIDED
    neg = make_all_positive(A, [-r for r in reals], max_steps)
    if neg is UNDECIDED:
        return UNDECIDED
    return PrenilpotencyCertificate(positivizer=pos, negativizer=neg)


def max_nested_chain(A: GeneralizedCartanMatrix, members) -> tuple[RealRoot, ...]:
    """Longest sequence of strictly nested half-spaces, inner to outer.

    Longest path in the DAG of nested directions, with deterministic
    (height, coordinates) tie-breaking.  Finite subsystems have no nested
    pairs, so chains there have length at most 1.
    """
    reals = _as_real_roots(A, members)
    uniq: dict[tuple[int, ...], RealRoot] = {}
    for r in reals:
        uniq.setdefault(r.root, r)
    nodes = sorted(uniq.values(), key=lambda r: (r.height, r.root))
    if not nodes:
        return ()
    succ: dict[tuple[int, ...], list[RealRoot]] = {r.root: [] for r in nodes}
    for a, b in itertools.combinations(nodes, 2):
        rel = classify_pair(A, a, b)
        if rel.tag != NESTED:
            continue
        if rel.direction == ALPHA_INSIDE_BETA:
            succ[a.root].append(b)
        else:
            succ[b.root].append(a)
    best: dict[tuple[int, ...], tuple[int, RealRoot | None]] = {}

    def walk(r: RealRoot) -> int:
        got = best.get(r.root)
        if got is not None:
            return got[0]
        top, pick = 1, None
        for s in sorted(succ[r.root], key=lambda t: (t.height, t.root)):
            cand = 1 + walk(s)
            if cand > top:
                top, pick = cand, s
        best[r.root] = (top, pick)
        return top

    start = max(
        nodes, key=lambda r: (walk(r), (-r.height, tuple(-x for x in r.root)))
    )
    chain = [start]
    while best[chain[-1].root][1] is not None:
        chain.append(best[chain[-1].root][1])
    return tuple(chain)


@dataclass(frozen=True)
class PairingBoundReport:
    """Empirical maximum pairing over summing prenilpotent pairs."""

    value: int | None
    witness: tuple[RealRoot, RealRoot] | None
    scanned: int
    height_cap: int


def empirical_pairing_bound(table) -> PairingBoundReport:
    """Scan max <a, b^vee> over prenilpotent pairs whose sum is a root.

    Both signs of every table entry participate; the statistic is taken
    over ordered pairs since the underlying bound is symmetric in the
    unordered pair.  Returns value None when no pair qualifies.
    """
    A = table.gcm
    signed = table.signed()
    best: int | None = None
    witness = None
    scanned = 0
    for a, b in itertools.permutations(signed, 2):
        s = tuple(x + y for x, y in zip(a.root, b.root))
        if all(c == 0 for c in s):
            continue
        if not is_prenilpotent_pair(A, a, b):
            continue
        if not classify_vector(A, s).is_root:
            continue
        scanned += 1
        p = pairing(A, a.root, b.coroot)
        if best is None or p > best:
            best = p
            witness = (a, b)
    return PairingBoundReport(
        value=best, witness=witness, scanned=scanned, height_cap=table.height_cap
    )
