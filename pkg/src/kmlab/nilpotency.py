"""Nilpotent sequences and the nilpotency degree of an inversion set.

A sequence of roots is nilpotent when its term set is prenilpotent and
every partial sum is a root.  For a closed set of positive real roots
every partial sum of such a sequence stays inside the set, which makes
the maximal length computable by dynamic programming over the set in
height order.  A memoless depth-first search serves as the independent
oracle.
"""

from __future__ import annotations

from dataclasses import dataclass

from kmlab import pairs
from kmlab.affine import finite_projected_count, make_projection, project
from kmlab.errors import (
    BoundViolated,
    CapExceeded,
    NotAChain,
    NotClosed,
    NotAllPositive,
    NS1Violation,
    NS2Violation,
)
from kmlab.gcm import GeneralizedCartanMatrix
from kmlab.roots import (
    IMAGINARY,
    NOT_ROOT,
    RealRoot,
    classify_vector,
    pairing,
)
from kmlab.weyl import InversionSet, Word, enumerate_elements, inversion_set


@dataclass(frozen=True)
class NilpotentSequence:
    """Terms (repetition allowed) together with their partial sums."""

    terms: tuple[RealRoot, ...]
    partial_sums: tuple[RealRoot, ...]

    def __len__(self) -> int:
        return len(self.terms)


@dataclass(frozen=True)
class DegreeReport:
    word: Word
    length: int
    degree: int
    witness: NilpotentSequence
    invset_size: int
    max_chain: int


def check_sequence(
    A: GeneralizedCartanMatrix, seq, context: InversionSet | None = None
) -> NilpotentSequence:
    """Validate a candidate sequence of root vectors.

    The term-set prenilpotency check is free when every term lies in a
    supplied inversion set (identity positivizes, the owner negativizes);
    otherwise a certificate is searched for, and an undecided search is
    reported as a violation carrying UNDECIDED.  Each partial sum must
    classify as a root.
    """
    vectors = [tuple(v.root) if isinstance(v, RealRoot) else tuple(v) for v in seq]
    if not vectors:
        raise ValueError("sequence must be nonempty")
    terms = []
    for k, v in enumerate(vectors, start=1):
        cls = classify_vector(A, v)
        if cls.kind == IMAGINARY:
            raise NS1Violation(f"term {k} is imaginary")
        if cls.kind == NOT_ROOT:
            raise NS2Violation(k)
        terms.append(cls.real)

    if context is not None and all(
        v in context.vectors() for v in vectors
    ):
        pass  # subset of an inversion set: certificate comes for free
    else:
        outcome = pairs.is_prenilpotent_set(A, terms)
        if outcome is pairs.UNDECIDED:
            raise NS1Violation(pairs.UNDECIDED)
        if outcome is False:
            raise NS1Violation("pairwise obstruction")

    sums = []
    acc = tuple(0 for _ in range(A.n))
    for k, v in enumerate(vectors, start=1):
        acc = tuple(a + b for a, b in zip(acc, v))
        cls = classify_vector(A, acc)
        if cls.kind != "real":
            raise NS2Violation(k)
        sums.append(cls.real)
    return NilpotentSequence(terms=tuple(terms), partial_sums=tuple(sums))


def _as_positive_real_roots(A, Phi) -> list[RealRoot]:
    out = []
    for x in Phi:
        r = x if isinstance(x, RealRoot) else classify_vector(A, x).real
        if r is None:
            raise ValueError(f"{tuple(x)} is not a real root")
        if not r.is_positive():
            raise NotAllPositive(f"{r.root} is not positive")
        out.append(r)
    return out


def degree_dp(A: GeneralizedCartanMatrix, Phi, verify: bool = True):
    """Maximal nilpotent-sequence length in a closed positive set.

    Closedness puts every partial sum inside the set, so the best length
    ending at a sum s is 1 + the best length over predecessors s - b.
    Processing in height order makes one pass suffice.  The witness is
    rebuilt by backtracking with (height, coords) tie-breaking.
    Returns (degree, witness).
    """
    members = _as_positive_real_roots(A, Phi)
    by_vec = {r.root: r for r in members}
    if verify:
        vecs = list(by_vec)
        for i, x in enumerate(vecs):
            for y in vecs[i:]:
                s = tuple(a + b for a, b in zip(x, y))
                if s in by_vec or all(c == 0 for c in s):
                    continue
                if classify_vector(A, s).is_root:
                    raise NotClosed(f"{x} + {y} = {s} is a root outside the set")
    if not members:
        return 0, NilpotentSequence((), ())

    order = sorted(by_vec, key=lambda v: (sum(v), v))
    best: dict[tuple[int, ...], int] = {}
    back: dict[tuple[int, ...], tuple[int, ...] | None] = {}
    for s in order:
        best[s] = 1
        back[s] = None
        chosen_prev = None
        for b in order:
            if sum(b) >= sum(s):
                break
            prev = tuple(x - y for x, y in zip(s, b))
            got = best.get(prev)
            if got is None:
                continue
            better = got + 1 > best[s] or (
                got + 1 == best[s]
                and chosen_prev is not None
                and (sum(prev), prev) < (sum(chosen_prev), chosen_prev)
            )
            if better:
                best[s] = got + 1
                back[s] = b
                chosen_prev = prev
    top = max(order, key=lambda v: (best[v], -sum(v), tuple(-x for x in v)))
    degree = best[top]

    terms_rev = []
    cur = top
    while back[cur] is not None:
        terms_rev.append(back[cur])
        cur = tuple(x - y for x, y in zip(cur, back[cur]))
    terms_rev.append(cur)
    terms = tuple(by_vec[v] for v in reversed(terms_rev))
    sums = []
    acc = tuple(0 for _ in range(A.n))
    for t in terms:
        acc = tuple(a + b for a, b in zip(acc, t.root))
        sums.append(by_vec[acc])
    return degree, NilpotentSequence(terms=terms, partial_sums=tuple(sums))


def degree_dfs(A: GeneralizedCartanMatrix, Phi, cap: int) -> int:
    """Brute-force degree: plain recursion, no memo, partial sums checked
    as roots by classification alone.  Raises CapExceeded when any
    sequence would exceed the depth cap."""
    vecs = sorted(
        {tuple(x.root) if isinstance(x, RealRoot) else tuple(x) for x in Phi}
    )
    if not vecs:
        return 0
    best = 0

    def extend(acc, depth):
        nonlocal best
        if depth > best:
            best = depth
        if depth >= cap:
            raise CapExceeded(f"sequence depth reached cap {cap}")
        for v in vecs:
            s = tuple(a + b for a, b in zip(acc, v)) if acc else v
            if classify_vector(A, s).is_root:
                extend(s, depth + 1)

    extend(None, 0)
    return best


def degree_of_word(A: GeneralizedCartanMatrix, word) -> DegreeReport:
    """Inversion set, degree, witness, and chain statistic of a word."""
    inv = inversion_set(A, word)
    degree, witness = degree_dp(A, inv.roots, verify=False)
    chain = pairs.max_nested_chain(A, inv.roots)
    return DegreeReport(
        word=inv.owner.word,
        length=inv.owner.length,
        degree=degree,
        witness=witness,
        invset_size=len(inv),
        max_chain=len(chain),
    )


def sweep(A: GeneralizedCartanMatrix, L: int):
    """One DegreeReport per element of length <= L, in enumeration order."""
    for w in enumerate_elements(A, L):
        yield degree_of_word(A, w.word)


@dataclass(frozen=True)
class SweepSummary:
    max_length: int
    count: int
    per_length_max: tuple[int, ...]
    global_max: int
    plateau: bool


def summarize(reports, max_length: int) -> SweepSummary:
    """Per-length maxima, the global maximum, and plateau detection.

    The plateau flag records that the running maximum did not move over
    the last three length classes of the sweep.
    """
    per_length: list[int] = [0] * (max_length + 1)
    seen_len = -1
    count = 0
    for rep in reports:
        count += 1
        seen_len = max(seen_len, rep.length)
        if rep.degree > per_length[rep.length]:
            per_length[rep.length] = rep.degree
    per_length = per_length[: seen_len + 1]
    running = []
    acc = 0
    for m in per_length:
        acc = max(acc, m)
        running.append(acc)
    plateau = len(running) >= 3 and running[-1] == running[-3]
    return SweepSummary(
        max_length=max_length,
        count=count,
        per_length_max=tuple(per_length),
        global_max=running[-1] if running else 0,
        plateau=plateau,
    )


def chain_count_inequality(
    A: GeneralizedCartanMatrix,
    seq: NilpotentSequence,
    chain_positions,
    bound: int,
):
    """Check the counting inequality along a nested chain of a sequence.

    ``chain_positions`` are 1-based indices into the terms whose
    half-spaces must form a chain (pairwise nested).  For each chain
    position i, the number of earlier terms pairing negatively against
    term i must be at least (earlier-chain-count - bound) / 3.
    Returns (ok, failures) where failures lists offending positions.
    """
    I = sorted(set(chain_positions))
    terms = seq.terms
    if any(i < 1 or i > len(terms) for i in I):
        raise NotAChain("chain positions outside the sequence")
    for a_pos in I:
        for b_pos in I:
            if a_pos >= b_pos:
                continue
            rel = pairs.classify_pair(A, terms[a_pos - 1], terms[b_pos - 1])
            if rel.tag != pairs.NESTED:
                raise NotAChain(
                    f"terms at {a_pos},{b_pos} are {rel.tag}, not nested"
                )
    failures = []
    for i in I:
        earlier_chain = sum(1 for j in I if j < i)
        negative = sum(
            1
            for j in range(1, i)
            if pairing(A, terms[j - 1].root, terms[i - 1].coroot) < 0
        )
        if 3 * negative < earlier_chain - bound:
            failures.append(i)
    return (not failures), failures


@dataclass(frozen=True)
class AffineBoundReport:
    bound: int
    max_degree: int
    words_checked: int
    projection_failures: tuple


def affine_bound_check(A: GeneralizedCartanMatrix, L: int) -> AffineBoundReport:
    """Sweep an affine system and compare degrees with the projected size.

    Every witness is also projected and revalidated: each projected
    partial sum must be a (nonzero) projected real root or zero.  A
    degree above the bound raises BoundViolated and would indicate an
    implementation fault.
    """
    proj = make_projection(A)
    bound = finite_projected_count(A)
    cap = 2 * sum(proj.delta) + 2
    from kmlab.roots import generate_real_roots

    images = set()
    for r in generate_real_roots(A, cap).signed():
        img = project(proj, r.root)
        if any(x != 0 for x in img):
            images.add(img)
    zero = tuple(0 for _ in range(A.n))
    max_degree = 0
    count = 0
    failures = []
    for rep in sweep(A, L):
        count += 1
        if rep.degree > bound:
            raise BoundViolated(rep.word)
        max_degree = max(max_degree, rep.degree)
        for s in rep.witness.partial_sums:
            img = project(proj, s.root)
            if img != zero and img not in images:
                failures.append((rep.word, s.root))
    return AffineBoundReport(
        bound=bound,
        max_degree=max_degree,
        words_checked=count,
        projection_failures=tuple(failures),
    )
