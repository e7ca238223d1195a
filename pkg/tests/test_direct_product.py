import pytest

from actforge.act import direct_product_act, is_generating_set, minimal_generating_set, right_regular_act
from actforge.diagonal import diagonal_presentation, rectangular_generating_set, square_generating_set
from actforge.direct_product import (
    build_decomposition,
    crucial_identity_check,
    dp_factor_presentation,
    dp_generating_set,
    dp_presentation,
    dp_satisfied,
    rho_pair,
)
from actforge.errors import NotGenerating
from actforge.families import FAMILY_NAMES, family_monoid, small_acts
from actforge.monoid import cyclic_group, semilattice2
from actforge.presentation import is_presentation_of, presentation_on_generators, reduce_presentation


def act_presentation(A):
    X = tuple(minimal_generating_set(A))
    P, assign = presentation_on_generators(A, X)
    return reduce_presentation(P, A, assign), assign


def test_z2_decomposition():
    d = build_decomposition(cyclic_group(2), (0, 1), (0, 1))
    assert d.at(0, 1) == (0, 1, 0)
    assert d.at(1, 0) == (0, 1, 1)  # first hit in scan order: (1, g)·g
    assert d.delta(1, 1) == (0, 0)


@pytest.mark.parametrize("name", FAMILY_NAMES)
def test_decomposition_and_crucial_identity(name):
    M = family_monoid(name)
    for g in (square_generating_set(M), rectangular_generating_set(M)):
        d = build_decomposition(M, g.U, g.V)
        for m in range(M.order):
            for n in range(M.order):
                a, b, c = d.at(m, n)
                assert a in g.U and b in g.V
                assert (M.mul(a, c), M.mul(b, c)) == (m, n)
        assert crucial_identity_check(M, d)


def test_decomposition_needs_generating_pair():
    with pytest.raises(NotGenerating):
        build_decomposition(semilattice2(), (0,), (0,))


@pytest.mark.parametrize("name", ["Z2", "E2", "T2", "Z2^0"])
def test_dp_generating_set(name):
    M = family_monoid(name)
    g = square_generating_set(M)
    acts = small_acts(name)[:3]
    for _, A in acts:
        for _, B in acts:
            X, Y = minimal_generating_set(A), minimal_generating_set(B)
            setup = dp_generating_set(A, X, B, Y, g.U, g.V)
            assert is_generating_set(direct_product_act(A, B), setup.Z)
            assert len(setup.Z) <= len(X) * len(g.U) * len(Y) * len(g.V)


def test_dp_generating_set_rejects_bad_x():
    M = semilattice2()
    A = right_regular_act(M)
    with pytest.raises(NotGenerating):
        dp_generating_set(A, (1,), A, (0,), (0, 1), (0, 1))


@pytest.mark.parametrize("name", ["trivial", "Z2", "Z3", "E2", "T2", "E2^0", "Z2xE2"])
def test_dp_presentation(name):
    M = family_monoid(name)
    for g in (square_generating_set(M), rectangular_generating_set(M)):
        P_diag, assign_diag = diagonal_presentation(M, g.U, g.V)
        acts = small_acts(name)[:3]
        for _, A in acts:
            for _, B in acts:
                PA, aA = act_presentation(A)
                PB, aB = act_presentation(B)
                setup, P, assign, counts = dp_presentation(PA, aA, A, PB, aB, B, P_diag, assign_diag)
                assert is_presentation_of(P, setup.product, assign)
                assert dp_satisfied(setup, P, assign)
                assert sum(counts) == len(P.relations)
                assert counts[0] == len(P_diag.relations) * len(aA) * len(aB)


def test_rho():
    M = cyclic_group(2)
    A = right_regular_act(M)
    setup = dp_generating_set(A, (0,), A, (0,), (0, 1), (0, 1))
    w = rho_pair(setup, (0, 0), (0, 1))
    # (x·1, y·g) -> (x·1, y·g)·1
    assert w.elem == 0
    assert setup.evaluate(w) == setup.product.action[0 * 2 + 1][0]


@pytest.mark.parametrize("name", ["Z2", "E2", "T2"])
def test_dp_factor_presentation(name):
    M = family_monoid(name)
    g = square_generating_set(M)
    P_diag, assign_diag = diagonal_presentation(M, g.U)
    acts = small_acts(name)[:3]
    for _, A in acts:
        for _, B in acts:
            PA, aA = act_presentation(A)
            PB, aB = act_presentation(B)
            setup, P, assign, _ = dp_presentation(PA, aA, A, PB, aB, B, P_diag, assign_diag)
            Q, qa, n_images = dp_factor_presentation(P, assign, A, B, aA, g.U)
            assert is_presentation_of(Q, A, qa)
            assert n_images <= len(P.relations)
