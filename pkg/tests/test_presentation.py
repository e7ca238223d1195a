import pytest
from hypothesis import given, strategies as st

from actforge.act import act_isomorphic, free_act, minimal_generating_set, right_regular_act, trivial_act
from actforge.errors import NotAPresentation, NotMonoidGeneratingSet, OutOfRange
from actforge.monoid import cyclic_group, semilattice2
from actforge.oracles import kernel_partition, naive_congruence_partition
from actforge.presentation import (
    ActPresentation,
    ActRelation,
    FreeActElem,
    canonical_presentation,
    defined_act,
    is_consequence,
    is_irredundant,
    is_presentation_of,
    presentation_on_generators,
    reduce_presentation,
    relation_sides,
    replay_consequence,
    symmetrize,
)
from helpers import SMALL_ACTS

Z2 = cyclic_group(2)
W = FreeActElem


def oracle_presents(P, A, assign):
    """Independent check: naive closure partition equals the evaluation kernel."""
    n = P.monoid.order
    F = free_act(range(P.num_gens), P.monoid)
    closure = naive_congruence_partition(F.action, n, P.index_pairs())
    kernel = kernel_partition([A.action[assign[x]][m] for x in range(P.num_gens) for m in range(n)])
    gen_ok = {A.action[a][m] for a in assign for m in range(n)} == set(range(A.size))
    return gen_ok and closure == kernel


def test_canonical_z2_regular():
    A = right_regular_act(Z2)
    P, assign = canonical_presentation(A, [1])
    assert set(P.relations) == {ActRelation(W(0, 1), W(1, 0)), ActRelation(W(1, 1), W(0, 0))}
    assert assign == (0, 1)
    assert is_presentation_of(P, A, assign)
    assert oracle_presents(P, A, assign)


def test_canonical_rejects_non_generating_xm():
    with pytest.raises(NotMonoidGeneratingSet):
        canonical_presentation(right_regular_act(Z2), [0])


def test_relation_range_checked():
    with pytest.raises(OutOfRange):
        ActPresentation(("x",), Z2, [((0, 0), (1, 0))])


def test_free_act_presentation_has_no_relations():
    P, gens = presentation_on_generators(right_regular_act(Z2), [0])
    assert P.relations == () and gens == (0,)
    assert is_presentation_of(P, right_regular_act(Z2), gens)


def test_verdict_reports_witness():
    A = trivial_act(Z2)
    P = ActPresentation(("x",), Z2, ())
    v = is_presentation_of(P, A, (0,))
    assert not v and v.witness == ((0, 0), (0, 1))
    assert (v.closure_classes, v.kernel_classes) == (2, 1)
    assert v.to_json()["ok"] is False


def test_verdict_relation_not_satisfied():
    A = right_regular_act(Z2)
    P = ActPresentation(("x",), Z2, [((0, 0), (0, 1))])
    v = is_presentation_of(P, A, (0,))
    assert not v and "satisfy" in v.reason


def test_verdict_not_generating():
    A = right_regular_act(semilattice2())
    v = is_presentation_of(ActPresentation(("x",), A.base, ()), A, (1,))
    assert not v and "generate" in v.reason


@pytest.mark.parametrize("case", SMALL_ACTS, ids=lambda c: f"{c[0]}-{c[1]}")
def test_presentations_agree_with_oracle(case):
    _, _, A = case
    P, assign = canonical_presentation(A)
    assert is_presentation_of(P, A, assign) and oracle_presents(P, A, assign)
    Q, gens = presentation_on_generators(A, minimal_generating_set(A))
    assert is_presentation_of(Q, A, gens) and oracle_presents(Q, A, gens)
    R = reduce_presentation(Q, A, gens)
    assert is_presentation_of(R, A, gens) and is_irredundant(R, A, gens)
    assert set(R.relations) <= set(Q.relations)
    B, _ = defined_act(R)
    assert act_isomorphic(A, B) is not None


def test_reduce_rejects_invalid_input():
    with pytest.raises(NotAPresentation):
        reduce_presentation(ActPresentation(("x",), Z2, ()), trivial_act(Z2), (0,))


def test_symmetrize_and_sides():
    r = [ActRelation(W(0, 0), W(1, 1)), ActRelation(W(1, 1), W(0, 0))]
    sym, origin = symmetrize(r)
    assert sym == r and origin == [(0, True), (1, True)]
    # sides form a multiset: duplicates kept
    assert relation_sides(r) == [W(0, 0), W(1, 1), W(1, 1), W(0, 0)]


@given(st.sampled_from(SMALL_ACTS), st.data())
def test_consequences_match_kernel(case, data):
    _, _, A = case
    P, assign = canonical_presentation(A)
    n = A.base.order
    w1 = W(data.draw(st.integers(0, A.size - 1)), data.draw(st.integers(0, n - 1)))
    w2 = W(data.draw(st.integers(0, A.size - 1)), data.draw(st.integers(0, n - 1)))
    cert = is_consequence(P, w1, w2)
    equal = A.action[w1.gen][w1.elem] == A.action[w2.gen][w2.elem]
    assert (cert is not None) == equal
    if cert is not None:
        assert replay_consequence(P, w1, w2, cert)
