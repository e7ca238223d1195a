import itertools

import pytest

from actforge.act import right_regular_act, validate_act
from actforge.errors import BadIdentity, NotAssociative, OutOfRange, SizeLimitExceeded
from actforge.limits import set_size_cap
from actforge.monoid import (
    adjoin_zero,
    attach_act_monoid,
    chain_semilattice,
    cyclic_group,
    direct_product_monoid,
    full_transformation_monoid,
    generated_submonoid,
    is_ideal,
    is_monoid_generating_set,
    left_zero_monoid,
    semilattice2,
    submonoid,
    symmetric_group,
    trivial_monoid,
    validate_monoid,
)


def brute_associative(M):
    T = M.table
    r = range(M.order)
    return all(T[T[a][b]][c] == T[a][T[b][c]] for a in r for b in r for c in r)


def test_trivial():
    M = validate_monoid(1, [[0]], 0)
    assert M.order == 1 and M.identity == 0


def test_z2_valid():
    M = validate_monoid(2, [[0, 1], [1, 0]], 0)
    assert M.table == ((0, 1), (1, 0))


def test_bad_identity_witness():
    # table[1][1]=0, table[0][1]=1, table[1][0]=0: 1·0 != 1 breaks the right identity law
    with pytest.raises(BadIdentity) as e:
        validate_monoid(2, [[0, 1], [0, 0]], 0)
    assert e.value.witness == {"a": 1}


def test_not_associative_first_triple():
    # x*y = y+1 mod 3 except the identity row: not associative
    table = [[0, 1, 2], [1, 2, 0], [2, 2, 2]]
    table[1] = [1, 0, 0]
    with pytest.raises(NotAssociative) as e:
        validate_monoid(3, table, 0)
    a, b, c = (e.value.witness[k] for k in "abc")
    T = table
    assert T[T[a][b]][c] != T[a][T[b][c]]
    # the witness is the first failing triple in index order
    for x, y, z in itertools.product(range(3), repeat=3):
        if T[T[x][y]][z] != T[x][T[y][z]]:
            assert (x, y, z) == (a, b, c)
            break


def test_out_of_range():
    with pytest.raises(OutOfRange):
        validate_monoid(2, [[0, 2], [1, 0]], 0)
    with pytest.raises(OutOfRange):
        validate_monoid(2, [[0, 1]], 0)


def test_direct_product_trivial():
    P = direct_product_monoid(trivial_monoid(), trivial_monoid())
    assert P.order == 1


def test_direct_product_z2_z2():
    P = direct_product_monoid(cyclic_group(2), cyclic_group(2))
    assert P.order == 4 and brute_associative(P)


def test_direct_product_e2_z2_identity():
    P = direct_product_monoid(semilattice2(), cyclic_group(2))
    assert P.order == 4
    assert P.identity == 0 * 2 + 0
    # componentwise: (z, g)(z, g) = (z, 1)
    assert P.mul(1 * 2 + 1, 1 * 2 + 1) == 1 * 2 + 0


def test_adjoin_zero():
    M0 = adjoin_zero(trivial_monoid())
    assert M0.order == 2 and all(M0.mul(1, x) == 1 == M0.mul(x, 1) for x in range(2))
    Z = adjoin_zero(cyclic_group(2))
    assert Z.order == 3 and brute_associative(Z)
    # old products unchanged
    assert [row[:2] for row in Z.table[:2]] == [(0, 1), (1, 0)]


def test_double_zero():
    M00 = adjoin_zero(adjoin_zero(cyclic_group(2)))
    inner, outer = 2, 3
    assert M00.mul(inner, outer) == outer == M00.mul(outer, inner)
    assert M00.mul(inner, 1) == inner


def test_attach_act_trivial():
    M = trivial_monoid()
    A = validate_act(M, 1, [[0]])
    Um = attach_act_monoid(M, A)
    assert Um.order == 2 and Um.identity == 0
    assert all(Um.mul(1, x) == 1 == Um.mul(x, 1) for x in range(2))


def test_attach_act_z2():
    Z2 = cyclic_group(2)
    Um = attach_act_monoid(Z2, right_regular_act(Z2))
    assert Um.order == 4 and Um.identity == Z2.identity and brute_associative(Um)
    A_part = [2, 3]
    assert is_ideal(Um, A_part)
    assert all(Um.mul(x, a) in A_part and Um.mul(a, x) in A_part for x in range(4) for a in A_part)


def test_transformations():
    assert full_transformation_monoid(1).order == 1
    T2 = full_transformation_monoid(2)
    assert T2.order == 4
    T3 = full_transformation_monoid(3)
    assert T3.order == 27 and brute_associative(T3)


def test_transformation_convention():
    n = 3
    maps = list(itertools.product(range(n), repeat=n))
    T = full_transformation_monoid(n)
    idx = {f: i for i, f in enumerate(maps)}
    for i in range(n):
        kappa = idx[(i,) * n]
        for f in maps:
            # kappa_i * f = kappa_{f(i)}, f * kappa_i = kappa_i
            assert T.mul(kappa, idx[f]) == idx[(f[i],) * n]
            assert T.mul(idx[f], kappa) == kappa
    # right-regular act axioms hold under this order
    validate_act(T, T.order, T.table)


def test_symmetric_group():
    S3 = symmetric_group(3)
    assert S3.order == 6 and all(sorted(row) == list(range(6)) for row in S3.table)


def test_other_families():
    assert chain_semilattice(3).table == ((0, 1, 2), (1, 1, 2), (2, 2, 2))
    L = left_zero_monoid(2)
    assert all(L.mul(z, n) == z for z in (1, 2) for n in range(3))


def test_generators():
    for M in (cyclic_group(3), full_transformation_monoid(2), symmetric_group(3), adjoin_zero(semilattice2())):
        assert is_monoid_generating_set(M, M.generators)
        assert generated_submonoid(M, M.generators) == set(range(M.order))
    assert cyclic_group(3).generators == (1,)


def test_submonoid():
    M = adjoin_zero(cyclic_group(2))
    N, emb = submonoid(M, [0, 1])
    assert N.order == 2 and list(emb) == [0, 1] and N.table == ((0, 1), (1, 0))


def test_size_cap():
    set_size_cap(10)
    with pytest.raises(SizeLimitExceeded) as e:
        direct_product_monoid(cyclic_group(3), cyclic_group(4))
    assert e.value.exit_code == 3


def test_env_cap(monkeypatch):
    monkeypatch.setenv("ACTFORGE_CAP", "5")
    with pytest.raises(SizeLimitExceeded):
        cyclic_group(6)


def test_attach_act_identity_is_monoid_identity():
    for M in (trivial_monoid(), cyclic_group(2), semilattice2(), full_transformation_monoid(2)):
        for A in (right_regular_act(M), validate_act(M, 1, [[0] * M.order])):
            assert attach_act_monoid(M, A).identity == M.identity
