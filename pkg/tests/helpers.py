"""Shared strategies and brute-force checks for the tests."""

import itertools

from hypothesis import strategies as st

from actforge.families import FAMILY_NAMES, family_monoid, small_acts


def all_small_acts(max_size=4):
    for name in FAMILY_NAMES:
        for label, A in small_acts(name, max_size):
            yield name, label, A


SMALL_ACTS = list(all_small_acts())


@st.composite
def act_and_pairs(draw, max_pairs=4):
    _, _, A = draw(st.sampled_from(SMALL_ACTS))
    elem = st.integers(0, A.size - 1)
    pairs = draw(st.lists(st.tuples(elem, elem), max_size=max_pairs))
    return A, pairs


def brute_generates(A, U):
    return {A.action[u][m] for u in U for m in range(A.base.order)} == set(range(A.size))


def brute_min_generating_size(A):
    for k in range(1, A.size + 1):
        if any(brute_generates(A, c) for c in itertools.combinations(range(A.size), k)):
            return k
    raise AssertionError


def brute_diagonal_generates(M, U, V):
    """(u, v)m over U×V covers M×M."""
    n = M.order
    got = {(M.table[u][m], M.table[v][m]) for u in U for v in V for m in range(n)}
    return len(got) == n * n


def family(name):
    return family_monoid(name)
