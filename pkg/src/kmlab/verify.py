"""Verification suites behind the CLI ``verify`` command.

Each suite scans a bounded configuration space and produces a
VerificationReport whose counterexample field is None exactly when no
scanned configuration contradicts the predicate under test.  Chamber
geometry is checked through sign masks: chamber u satisfies a root
gamma when u(gamma) is positive, and each tag or direction forbids a
sign pattern that a sound classification never exhibits.
"""

from __future__ import annotations

import itertools
import random

from kmlab import kernels, pairs
from kmlab.affine import affine_membership_check, affine_parabolics
from kmlab.errors import CapExceeded
from kmlab.gcm import GeneralizedCartanMatrix
from kmlab.nilpotency import affine_bound_check, chain_count_inequality, sweep
from kmlab.reports import VerificationReport, gcm_summary
from kmlab.roots import IMAGINARY, classify_vector, generate_real_roots, pairing
from kmlab.weyl import enumerate_elements, inversion_set

DEFAULT_HEIGHT = 5
DEFAULT_LENGTH = 10


def chamber_sign_masks(A: GeneralizedCartanMatrix, table, length_cap: int):
    """Bitmask per signed root: bit i set when chamber i lies in its
    half-space.  Negative roots get the complement of their positive."""
    chambers = list(enumerate_elements(A, length_cap))
    posroots = list(table.positive)
    n = A.n
    flat = tuple(x for r in posroots for x in r.root)
    pos_masks = [0] * len(posroots)
    for ci, u in enumerate(chambers):
        codes = kernels.batch_signs(u.action, flat, n, len(posroots))
        bit = 1 << ci
        for ri, code in enumerate(codes):
            if code == kernels.SIGN_POS:
                pos_masks[ri] |= bit
    full = (1 << len(chambers)) - 1
    masks = {}
    for r, m in zip(posroots, pos_masks):
        masks[r.root] = m
        masks[tuple(-x for x in r.root)] = ~m & full
    return masks, len(chambers)


def run_pairs_lemmas(
    A: GeneralizedCartanMatrix,
    height_cap: int = DEFAULT_HEIGHT,
    length_cap: int = DEFAULT_LENGTH,
    **_,
) -> VerificationReport:
    """Pair tags and nested directions against the chamber-sign oracle.

    Forbidden patterns: a nested pair must never show a chamber inside
    the inner half-space but outside the outer one; a skew pair must not
    show chambers in both the intersection and the complement of the
    union (that would make the walls cross); equal and opposite pairs
    constrain both patterns.  Also checks classification symmetry and
    the floor of -3 on pairings of prenilpotent pairs.
    """
    table = generate_real_roots(A, height_cap)
    masks, n_chambers = chamber_sign_masks(A, table, length_cap)
    full = (1 << n_chambers) - 1
    signed = table.signed()
    scanned = 0
    counterexample = None
    for a, b in itertools.combinations(signed, 2):
        scanned += 1
        rel = pairs.classify_pair(A, a, b)
        rev = pairs.classify_pair(A, b, a)
        if rel.tag != rev.tag or (
            rel.tag == pairs.NESTED
            and {rel.direction, rev.direction}
            != {pairs.ALPHA_INSIDE_BETA, pairs.BETA_INSIDE_ALPHA}
        ):
            counterexample = {
                "kind": "symmetry",
                "alpha": list(a.root),
                "beta": list(b.root),
                "tags": [rel.tag, rev.tag],
            }
            break
        if rel.tag in (pairs.EQUAL, pairs.FINITE_MEET, pairs.NESTED):
            p, q = rel.pairings
            if min(p, q) < -3:
                counterexample = {
                    "kind": "pairing-floor",
                    "alpha": list(a.root),
                    "beta": list(b.root),
                    "pairings": [p, q],
                }
                break
        ma, mb = masks[a.root], masks[b.root]
        both = ma & mb
        a_only = ma & ~mb & full
        b_only = ~ma & mb & full
        neither = ~ma & ~mb & full
        bad = False
        if rel.tag == pairs.EQUAL:
            bad = bool(a_only or b_only)
        elif rel.tag == pairs.OPPOSITE:
            bad = bool(both or neither)
        elif rel.tag == pairs.NESTED:
            if rel.direction == pairs.ALPHA_INSIDE_BETA:
                bad = bool(a_only)
            else:
                bad = bool(b_only)
        elif rel.tag == pairs.SKEW:
            bad = bool(both and neither)
        if bad:
            counterexample = {
                "kind": "sign-pattern",
                "alpha": list(a.root),
                "beta": list(b.root),
                "tag": rel.tag,
                "direction": rel.direction,
            }
            break
    return VerificationReport(
        check="pairs-lemmas",
        gcm=gcm_summary(A),
        params={"height_cap": height_cap, "length_cap": length_cap,
                "chambers": n_chambers},
        counterexample=counterexample,
        scanned_count=scanned,
    )


def run_closure(
    A: GeneralizedCartanMatrix,
    trials: int = 1000,
    seed: int = 20260809,
    length_cap: int = 8,
    **_,
) -> VerificationReport:
    """Closure laws on random subsets of inversion sets.

    The closure of a subset of an inversion set must stay inside it,
    be idempotent, and contain only real roots.
    """
    rng = random.Random(seed)
    scanned = 0
    counterexample = None
    for _ in range(trials):
        k = rng.randint(1, max(1, length_cap))
        word = tuple(rng.randint(1, A.n) for _ in range(k))
        inv = inversion_set(A, word)
        if not inv.roots:
            continue
        size = rng.randint(1, len(inv.roots))
        subset = [r.root for r in rng.sample(list(inv.roots), size)]
        cap = sum(sum(v) for v in subset) + 1
        scanned += 1
        try:
            closed = pairs.closure(A, subset, cap)
            again = pairs.closure(A, closed, cap)
        except CapExceeded as exc:
            counterexample = {
                "kind": "cap", "word": list(word),
                "subset": [list(v) for v in subset], "error": str(exc),
            }
            break
        problem = None
        if again != closed:
            problem = "not idempotent"
        elif not closed <= inv.vectors():
            problem = "escapes the inversion set"
        elif any(
            classify_vector(A, v).kind == IMAGINARY for v in closed
        ):
            problem = "contains an imaginary root"
        if problem:
            counterexample = {
                "kind": problem, "word": list(word),
                "subset": [list(v) for v in subset],
            }
            break
    return VerificationReport(
        check="closure",
        gcm=gcm_summary(A),
        params={"trials": trials, "seed": seed, "length_cap": length_cap},
        counterexample=counterexample,
        scanned_count=scanned,
    )


def run_prenilp4(
    A: GeneralizedCartanMatrix,
    height_cap: int = 3,
    max_steps: int = 400,
    **_,
) -> VerificationReport:
    """Wall-meeting transfer within prenilpotent triples and quadruples.

    Triples: when the half-spaces of two members are nested, a third
    member pairing negatively against the inner one transfers a wall
    crossing of the reflected root to itself.  Quadruples: crossings of
    a nested pair against another nested pair propagate between levels.
    Triples or quadruples whose prenilpotency search is undecided are
    skipped and counted.
    """
    table = generate_real_roots(A, height_cap)
    signed = table.signed()
    nested_pairs = []
    for a, b in itertools.permutations(signed, 2):
        rel = pairs.classify_pair(A, a, b)
        if rel.tag == pairs.NESTED:
            nested_pairs.append((a, b, rel.direction))
    scanned = 0
    undecided = 0
    counterexample = None

    def prenil(members) -> bool | None:
        out = pairs.is_prenilpotent_set(A, members, max_steps)
        if out is pairs.UNDECIDED:
            return None
        return out is not False

    for a, a2, _direction in nested_pairs:
        if counterexample:
            break
        for g in signed:
            if g.root in (a.root, a2.root):
                continue
            if pairing(A, a.root, g.coroot) >= 0:
                continue
            refl = pairs.reflect_root_vector_by(A, g, a.root)
            refl_real = classify_vector(A, refl).real
            if refl_real is None or not pairs.walls_meet(A, refl_real, a2):
                continue
            ok = prenil([a, a2, g])
            if ok is None:
                undecided += 1
                continue
            if not ok:
                continue
            scanned += 1
            if not pairs.walls_meet(A, g, a2):
                counterexample = {
                    "kind": "triple-transfer",
                    "alpha": list(a.root), "alpha2": list(a2.root),
                    "gamma": list(g.root),
                }
                break

    for (a, a2, d1), (b, b2, d2) in itertools.product(nested_pairs, repeat=2):
        if counterexample:
            break
        if d1 != pairs.ALPHA_INSIDE_BETA or d2 != pairs.ALPHA_INSIDE_BETA:
            continue
        roots_set = {a.root, a2.root, b.root, b2.root}
        if len(roots_set) < 4:
            continue
        if not (
            pairs.walls_meet(A, b, a2)
            and pairs.walls_meet(A, b2, a2)
            and pairs.walls_meet(A, b2, a)
        ):
            continue
        ok = prenil([a, a2, b, b2])
        if ok is None:
            undecided += 1
            continue
        if not ok:
            continue
        scanned += 1
        if not pairs.walls_meet(A, b, a):
            counterexample = {
                "kind": "quadruple-transfer",
                "alpha": list(a.root), "alpha2": list(a2.root),
                "beta": list(b.root), "beta2": list(b2.root),
            }
            break
    return VerificationReport(
        check="prenilp4",
        gcm=gcm_summary(A),
        params={"height_cap": height_cap, "max_steps": max_steps},
        counterexample=counterexample,
        scanned_count=scanned,
        undecided_count=undecided,
    )


def run_affine_membership(
    A: GeneralizedCartanMatrix, height_cap: int = 9, **_
) -> VerificationReport:
    """Membership implications for every affine parabolic block.

    For every signed root, the best available witnesses (a sandwiching
    pair, eight pairwise parallel crossed walls, a nested chain above)
    are assembled from the block and the implications checked.
    """
    parabs = affine_parabolics(A)
    if not parabs:
        return VerificationReport(
            check="affine-membership",
            gcm=gcm_summary(A),
            params={"height_cap": height_cap},
            counterexample=None,
            scanned_count=0,
            notes=("no affine parabolic subsystem",),
        )
    table = generate_real_roots(A, height_cap)
    signed = table.signed()
    scanned = 0
    counterexample = None
    for parab in parabs:
        if counterexample:
            break
        block = [r for r in signed if parab.contains(r.root)]
        for alpha in signed:
            inner = outer = None
            above = []
            meets = []
            gamma = None
            for b in block:
                if b.root == alpha.root or b.root == tuple(-x for x in alpha.root):
                    continue
                rel = pairs.classify_pair(A, alpha, b)
                if rel.tag == pairs.NESTED:
                    if rel.direction == pairs.ALPHA_INSIDE_BETA:
                        above.append(b)
                        if outer is None:
                            outer = b
                    elif inner is None:
                        inner = b
                elif rel.tag == pairs.FINITE_MEET:
                    meets.append(b)
                if gamma is None and pairing(A, alpha.root, b.coroot) != 0:
                    gamma = b
            parallel8 = []
            for b in meets:
                if all(
                    pairs.classify_pair(A, b, c).tag
                    in (pairs.NESTED, pairs.SKEW)
                    for c in parallel8
                ):
                    parallel8.append(b)
                if len(parallel8) == 8:
                    break
            chain = list(pairs.max_nested_chain(A, above)) if above else None
            rep = affine_membership_check(
                A,
                parab,
                alpha,
                inner=inner,
                outer=outer,
                parallel=parallel8 if len(parallel8) >= 8 else None,
                gamma=gamma,
                chain=chain,
            )
            scanned += sum(
                1 for c in rep.clauses.values() if c.status != "skipped"
            )
            if rep.failed:
                counterexample = {
                    "alpha": list(alpha.root),
                    "J": list(parab.J),
                    "clauses": {
                        k: (v.status, v.detail) for k, v in rep.clauses.items()
                    },
                }
                break
    return VerificationReport(
        check="affine-membership",
        gcm=gcm_summary(A),
        params={"height_cap": height_cap},
        counterexample=counterexample,
        scanned_count=scanned,
    )


def run_claim1(
    A: GeneralizedCartanMatrix,
    length_cap: int = 6,
    height_cap: int = 8,
    **_,
) -> VerificationReport:
    """Chain-counting inequality over all swept witness sequences.

    The empirical pairing bound of the matrix replaces the abstract
    constant; the nested-chain positions are extracted from each witness
    and the per-position inequality is checked.
    """
    bound_rep = pairs.empirical_pairing_bound(
        generate_real_roots(A, height_cap)
    )
    # the inequality needs a nonnegative constant: the first chain
    # position has an empty pairing sum, bounded only by khat >= 0
    khat = max(bound_rep.value if bound_rep.value is not None else 0, 0)
    scanned = 0
    counterexample = None
    for rep in sweep(A, length_cap):
        if not rep.witness.terms:
            continue
        chain = pairs.max_nested_chain(A, rep.witness.terms)
        chain_vecs = {r.root for r in chain}
        positions = []
        seen = set()
        for pos, t in enumerate(rep.witness.terms, start=1):
            if t.root in chain_vecs and t.root not in seen:
                positions.append(pos)
                seen.add(t.root)
        if not positions:
            continue
        scanned += 1
        ok, failures = chain_count_inequality(
            A, rep.witness, positions, khat
        )
        if not ok:
            counterexample = {
                "word": list(rep.word),
                "chain_positions": positions,
                "failures": failures,
                "khat": khat,
            }
            break
    return VerificationReport(
        check="claim1",
        gcm=gcm_summary(A),
        params={
            "length_cap": length_cap,
            "height_cap": height_cap,
            "khat": khat,
            "khat_raw": bound_rep.value,
        },
        counterexample=counterexample,
        scanned_count=scanned,
    )


def run_affine_bound(
    A: GeneralizedCartanMatrix, length_cap: int = 10, **_
) -> VerificationReport:
    """Degrees of an affine sweep against the projected-system size."""
    rep = affine_bound_check(A, length_cap)
    counterexample = None
    if rep.projection_failures:
        word, root = rep.projection_failures[0]
        counterexample = {
            "kind": "projection",
            "word": list(word),
            "partial_sum": list(root),
        }
    return VerificationReport(
        check="affine-bound",
        gcm=gcm_summary(A),
        params={"length_cap": length_cap, "bound": rep.bound,
                "max_degree": rep.max_degree},
        counterexample=counterexample,
        scanned_count=rep.words_checked,
    )


SUITES = {
    "pairs-lemmas": run_pairs_lemmas,
    "closure": run_closure,
    "prenilp4": run_prenilp4,
    "affine-membership": run_affine_membership,
    "claim1": run_claim1,
    "affine-bound": run_affine_bound,
}
