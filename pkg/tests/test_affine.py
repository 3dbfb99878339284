from fractions import Fraction

import pytest

from conftest import make
from kmlab import affine, gcm, roots
from kmlab.errors import CapExceeded, NotAffine


def rr(A, v):
    return roots.classify_vector(A, v).real


def test_null_root_examples(a2, a1tilde, a2tilde):
    assert affine.null_root(a1tilde) == (1, 1)
    assert affine.null_root(a2tilde) == (1, 1, 1)
    with pytest.raises(NotAffine):
        affine.null_root(a2)


def test_null_root_twisted():
    A = gcm.validate([[2, -4], [-1, 2]])
    assert affine.null_root(A) == (2, 1)


def test_projection_examples(a1tilde):
    p = affine.make_projection(a1tilde)
    assert p.node0 == 1
    assert affine.project(p, (2, 1)) == (0, -1)
    assert affine.project(p, (1, 1)) == (0, 0)
    assert affine.project(p, (0, 1)) == (0, 1)


def test_projection_twisted_is_rational():
    A = gcm.validate([[2, -4], [-1, 2]])
    p = affine.make_projection(A)
    assert p.delta == (2, 1)
    img = affine.project(p, (1, 1))
    assert img[0] == 0
    assert img[1] == Fraction(1, 2)


def test_projection_node_choice_changes_reps_not_count(a2tilde):
    base = affine.finite_projected_count(a2tilde)
    for node0 in (1, 2, 3):
        p = affine.make_projection(a2tilde, node0=node0)
        images = set()
        for r in roots.generate_real_roots(a2tilde, 8).signed():
            img = affine.project(p, r.root)
            if any(x != 0 for x in img):
                images.add(img)
        assert len(images) == base


def test_finite_projected_count(a1tilde, a2tilde):
    assert affine.finite_projected_count(a1tilde) == 2
    assert affine.finite_projected_count(a2tilde) == 6


def test_finite_projected_count_stable(a1tilde, a2tilde):
    for A in (a1tilde, a2tilde):
        base = 2 * sum(affine.null_root(A)) + 2
        assert affine.finite_projected_count(
            A, base
        ) == affine.finite_projected_count(A, base + 2)


def test_affine_parabolics(a2, a2tilde, rank3):
    assert affine.affine_parabolics(a2) == []
    [p] = affine.affine_parabolics(rank3)
    assert p.J == (1, 2)
    [p] = affine.affine_parabolics(a2tilde)
    assert p.J == (1, 2, 3)


def test_parabolic_membership(rank3):
    [p] = affine.affine_parabolics(rank3)
    assert p.contains((2, 1, 0))
    assert p.contains((-3, -2, 0))
    assert not p.contains((0, 0, 1))
    assert not p.contains((1, 0, 1))


def test_subsystem_generated_affine(a1tilde):
    sub = affine.subsystem_generated(a1tilde, [(1, 0), (2, 1)], 12)
    assert sub.rank == 2
    assert sub.kind == "affine"
    a, b = sub.basis_pair
    prod = roots.pairing(a1tilde, a.root, b.coroot) * roots.pairing(
        a1tilde, b.root, a.coroot
    )
    assert prod == 4


def test_subsystem_generated_finite(a2):
    sub = affine.subsystem_generated(a2, [(1, 0), (0, 1)], 10)
    assert sub.rank == 2
    assert sub.kind == "finite"
    assert not sub.truncated
    assert len(sub.roots) == 6


def test_subsystem_generated_indefinite(hyp2):
    sub = affine.subsystem_generated(hyp2, [(1, 0), (0, 1)], 15)
    assert sub.rank == 2
    assert sub.kind == "indefinite"
    assert sub.truncated


def test_subsystem_contains_input_and_reflections(a1tilde):
    sub = affine.subsystem_generated(a1tilde, [(1, 0), (2, 1)], 12)
    assert (1, 0) in sub.roots and (2, 1) in sub.roots
    a = rr(a1tilde, (1, 0))
    b = rr(a1tilde, (2, 1))
    img = roots.reflect(a1tilde, a, b.root)
    if abs(sum(img)) <= 12:
        assert img in sub.roots


def test_subsystem_input_above_cap(a1tilde):
    with pytest.raises(CapExceeded):
        affine.subsystem_generated(a1tilde, [(5, 4)], 3)


def block_chain(A, n, start=1):
    """Ascending family (k+1, k, 0) of the affine block of rank3."""
    return [rr(A, (k + 1, k, 0)) for k in range(start, start + n)]


def test_membership_squeeze_clause(rank3):
    [p] = affine.affine_parabolics(rank3)
    alpha = rr(rank3, (2, 1, 0))
    rep = affine.affine_membership_check(
        rank3, p, alpha,
        inner=rr(rank3, (1, 0, 0)), outer=rr(rank3, (3, 2, 0)),
    )
    assert rep.clauses["squeeze"].status == "passed"


def test_membership_chain_contrapositive(rank3):
    [p] = affine.affine_parabolics(rank3)
    alpha = -rr(rank3, (0, 0, 1))
    chain = block_chain(rank3, 4)
    rep = affine.affine_membership_check(rank3, p, alpha, chain=chain)
    assert rep.clauses["chain"].status == "passed"
    # the final pairing really is at least n/2
    assert roots.pairing(rank3, chain[-1].root, alpha.coroot) * 2 >= 4


def test_membership_seven_walls_skipped(a2tilde):
    [p] = affine.affine_parabolics(a2tilde)
    alpha = rr(a2tilde, (0, 1, 0))
    fam = [rr(a2tilde, (k + 1, k, k)) for k in range(1, 8)]
    gamma = rr(a2tilde, (0, 1, 0))
    rep = affine.affine_membership_check(
        a2tilde, p, alpha, parallel=fam, gamma=gamma
    )
    assert rep.clauses["meets-parallel"].status == "skipped"


def test_membership_eight_walls_passes(a2tilde):
    [p] = affine.affine_parabolics(a2tilde)
    alpha = rr(a2tilde, (0, 1, 0))
    fam = [rr(a2tilde, (k + 1, k, k)) for k in range(1, 9)]
    gamma = rr(a2tilde, (0, 1, 0))
    rep = affine.affine_membership_check(
        a2tilde, p, alpha, parallel=fam, gamma=gamma
    )
    assert rep.clauses["meets-parallel"].status == "passed"


def test_conjugated_membership_equivariance(rank3):
    from kmlab import weyl

    w = weyl.from_word(rank3, (3, 1))
    u = weyl.from_word(rank3, (2, 3))
    uw = weyl.from_word(rank3, u.word + w.word)
    moved = affine.ParabolicSubsystem(gcm=rank3, J=(1, 2), conjugator=w)
    moved_more = affine.ParabolicSubsystem(gcm=rank3, J=(1, 2), conjugator=uw)
    for r in roots.generate_real_roots(rank3, 6).signed():
        image = weyl.apply(rank3, u, r.root)
        assert moved.contains(r.root) == moved_more.contains(image)


def test_twisted_affine_pipeline():
    # delta has a coefficient above 1, so projections are half-integral
    # and the projected system is non-reduced with four elements
    A = gcm.validate([[2, -4], [-1, 2]], name="twisted")
    p = affine.make_projection(A)
    assert p.delta == (2, 1)
    images = set()
    for r in roots.generate_real_roots(A, 12).signed():
        img = affine.project(p, r.root)
        if any(x != 0 for x in img):
            images.add(img)
    assert affine.finite_projected_count(A) == 4
    assert {abs(i[1]) for i in images} == {Fraction(1, 2), 1}

    from kmlab import nilpotency

    rep = nilpotency.affine_bound_check(A, 10)
    assert rep.bound == 4
    assert rep.max_degree <= 4
    assert rep.projection_failures == ()


def test_membership_chain_direct_for_member(rank3):
    # a block root under a long enough block chain: pairing falls below
    # n/2 and membership is confirmed through the direct implication
    [p] = affine.affine_parabolics(rank3)
    alpha = rr(rank3, (1, 0, 0))
    chain = block_chain(rank3, 6)
    n = len(chain)
    pair = roots.pairing(rank3, chain[-1].root, alpha.coroot)
    assert 2 * pair < n
    rep = affine.affine_membership_check(rank3, p, alpha, chain=chain)
    assert rep.clauses["chain"].status == "passed"
