"""Shared fixtures: reference matrices and an independent orbit oracle."""

from __future__ import annotations

import pytest

from kmlab import gcm

MATRICES = {
    "a2": [[2, -1], [-1, 2]],
    "b2": [[2, -2], [-1, 2]],
    "g2": [[2, -1], [-3, 2]],
    "a1tilde": [[2, -2], [-2, 2]],
    "a2tilde": [[2, -1, -1], [-1, 2, -1], [-1, -1, 2]],
    "hyp2": [[2, -3], [-3, 2]],
    "rank3": [[2, -2, -1], [-2, 2, 0], [-1, 0, 2]],
}

# The four rank-2 systems exercised throughout: one finite simply laced,
# one finite multiply laced, one affine, one indefinite.
FOUR_REFERENCE = ("a2", "g2", "a1tilde", "hyp2")
ALL_REFERENCE = tuple(MATRICES)


def make(name: str) -> gcm.GeneralizedCartanMatrix:
    return gcm.validate(MATRICES[name], name=name)


@pytest.fixture
def a2():
    return make("a2")


@pytest.fixture
def b2():
    return make("b2")


@pytest.fixture
def g2():
    return make("g2")


@pytest.fixture
def a1tilde():
    return make("a1tilde")


@pytest.fixture
def a2tilde():
    return make("a2tilde")


@pytest.fixture
def hyp2():
    return make("hyp2")


@pytest.fixture
def rank3():
    return make("rank3")


def orbit_oracle(matrix_rows, height_cap):
    """Positive real roots by a standalone breadth-first orbit search.

    Kept independent of the package internals on purpose: plain lists,
    explicit reflection arithmetic, no coroots.
    """
    n = len(matrix_rows)
    simples = []
    for i in range(n):
        v = [0] * n
        v[i] = 1
        simples.append(tuple(v))

    def reflect(i, v):
        c = sum(matrix_rows[i][j] * v[j] for j in range(n))
        out = list(v)
        out[i] -= c
        return tuple(out)

    found = set(simples)
    frontier = list(simples)
    while frontier:
        nxt = []
        for v in frontier:
            for i in range(n):
                w = reflect(i, v)
                if w in found:
                    continue
                if any(x < 0 for x in w):
                    continue
                if sum(w) > height_cap:
                    continue
                found.add(w)
                nxt.append(w)
        frontier = nxt
    return found
