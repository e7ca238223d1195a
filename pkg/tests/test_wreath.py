import itertools

import pytest
from hypothesis import given, strategies as st

from actforge.act import free_act, minimal_generating_set, right_regular_act, trivial_act, validate_act
from actforge.errors import HypothesisFails, NotGenerating, NotLeftZero, SizeLimitExceeded
from actforge.families import family_monoid, small_acts
from actforge.monoid import cyclic_group, direct_product_monoid, left_zero_monoid, semilattice2, trivial_monoid
from actforge.presentation import canonical_presentation, is_presentation_of, presentation_on_generators, reduce_presentation
from actforge.wreath import (
    ConnectednessCertificate,
    all_namaps,
    check_connectivity_hypothesis,
    compare_condition_with_verification,
    finite_A_fg_N_U,
    is_U_connected,
    left_zero_U,
    left_zero_certificate,
    namap_constant,
    namap_product,
    namap_rank,
    namap_shift,
    reduce_T1,
    reduced_T1_verifies,
    replay_connectedness,
    wreath_act,
    wreath_factor_presentations,
    wreath_generating_set,
    wreath_monoid,
    wreath_presentation,
    wreath_projections,
)

Z2 = cyclic_group(2)


def act_presentation(A):
    X = tuple(minimal_generating_set(A))
    P, assign = presentation_on_generators(A, X)
    return reduce_presentation(P, A, assign), assign


def test_namap_product_example():
    # |A| = 2 over Z2: (1, g)(g, g) = (g, 1)
    assert namap_product(Z2, (0, 1), (1, 1)) == (1, 0)


def test_namap_shift_and_rank():
    A = right_regular_act(Z2)
    assert namap_shift(A, 1, (0, 1)) == (1, 0)
    assert namap_constant(A, 1) == (1, 1)
    maps = all_namaps(Z2, A)
    assert maps == [(0, 0), (1, 0), (0, 1), (1, 1)]
    assert [namap_rank(Z2, t) for t in maps] == [0, 1, 2, 3]


def test_map_cap():
    with pytest.raises(SizeLimitExceeded):
        all_namaps(cyclic_group(3), validate_act(Z2, 6, [[a, a ^ 1] for a in range(6)]))


def oracle_wreath_table(M, N, A):
    maps = list(itertools.product(range(N.order), repeat=A.size))
    elems = [(m, th) for m in range(M.order) for th in maps]

    def mul(x, y):
        (m, th), (n, ph) = x, y
        shifted = tuple(ph[A.action[a][m]] for a in range(A.size))
        return M.table[m][n], tuple(N.table[th[a]][shifted[a]] for a in range(A.size))

    return elems, {(x, y): mul(x, y) for x in elems for y in elems}


@pytest.mark.parametrize("mn", [("Z2", "Z2"), ("E2", "Z2"), ("Z2", "E2"), ("trivial", "Z3")])
def test_wreath_monoid_matches_oracle(mn):
    M, N = (family_monoid(n) for n in mn)
    A = small_acts(mn[0])[1][1] if M.order > 1 else trivial_act(M)
    wp = wreath_monoid(M, N, A)
    elems, table = oracle_wreath_table(M, N, A)
    assert wp.monoid.order == len(elems)
    for x in elems:
        for y in elems:
            assert wp.decode(wp.monoid.mul(wp.encode(*x), wp.encode(*y))) == table[(x, y)]
    assert wp.decode(wp.monoid.identity) == (M.identity, namap_constant(A, N.identity))


def test_wreath_size_example():
    A = right_regular_act(Z2)
    assert wreath_monoid(Z2, Z2, A).monoid.order == 8


def test_singleton_a_gives_direct_product():
    for M, N in ((Z2, semilattice2()), (semilattice2(), cyclic_group(3))):
        wp = wreath_monoid(M, N, trivial_act(M))
        assert wp.monoid.table == direct_product_monoid(M, N).table


def test_wreath_act_action():
    A = right_regular_act(Z2)
    B = right_regular_act(semilattice2())
    wp, W = wreath_act(A, B)
    for a in range(2):
        for b in range(2):
            for i in range(wp.monoid.order):
                m, th = wp.decode(i)
                assert W.act(a * 2 + b, i) == A.act(a, m) * 2 + B.act(b, th[a])


def test_wreath_generating_set_and_projections():
    A = right_regular_act(Z2)
    B = small_acts("E2")[2][1]
    wp, W = wreath_act(A, B)
    Z = wreath_generating_set(A, (0,), B, tuple(minimal_generating_set(B)))
    assert len({W.act(z, i) for z in Z for i in range(wp.monoid.order)}) == W.size
    assert wreath_projections(B, Z) == ((0,), tuple(minimal_generating_set(B)))
    with pytest.raises(NotGenerating):
        wreath_generating_set(A, (0,), right_regular_act(semilattice2()), (1,))


CASES = [("Z2", 1, "Z2", 1), ("Z2", 1, "E2", 1), ("E2", 1, "Z2", 1), ("E2", 2, "E2", 2), ("Z3", 1, "Z2", 0)]


def wreath_case(case):
    a_name, ai, b_name, bi = case
    A = small_acts(a_name)[ai][1]
    B = small_acts(b_name)[bi][1]
    PA, aA = act_presentation(A)
    PB, aB = act_presentation(B)
    return A, B, wreath_presentation(PA, aA, A, PB, aB, B)


@pytest.mark.parametrize("case", CASES)
def test_wreath_presentation(case):
    A, B, wpres = wreath_case(case)
    assert is_presentation_of(wpres.presentation, wpres.act, wpres.assign)
    assert len(wpres.t1) == len(wpres.X) * len(wpres.Y) * len(wpres.wp.maps)
    (PA, X), (PB, Y) = wreath_factor_presentations(wpres.presentation, wpres.assign, wpres.wp, A, B)
    assert is_presentation_of(PA, A, X) and is_presentation_of(PB, B, Y)


def brute_connected(N, U, a, theta, phi):
    """Reachability over every ψ ∈ N^A, without solving coordinates."""
    size = len(theta)
    psis = list(itertools.product(range(N.order), repeat=size))
    edges = set()
    for u in U:
        c = (u[a],) * size
        for psi in psis:
            x, y = namap_product(N, u, psi), namap_product(N, c, psi)
            edges.add((x, y))
            edges.add((y, x))
    seen, stack = {tuple(theta)}, [tuple(theta)]
    while stack:
        s = stack.pop()
        for x, y in edges:
            if x == s and y not in seen:
                seen.add(y)
                stack.append(y)
    return tuple(phi) in seen


@given(st.sampled_from(["Z2", "E2", "Z3", "T2"]), st.data())
def test_connectedness_matches_brute(n_name, data):
    N = family_monoid(n_name)
    size = 2
    maps = list(itertools.product(range(N.order), repeat=size))
    U = data.draw(st.lists(st.sampled_from(maps), min_size=1, max_size=2))
    theta = data.draw(st.sampled_from(maps))
    phi = data.draw(st.sampled_from(maps))
    a = data.draw(st.integers(0, size - 1))
    cert = is_U_connected(theta, phi, U, a, N)
    assert (cert is not None) == brute_connected(N, U, a, theta, phi)
    if cert is not None:
        assert replay_connectedness(N, U, a, theta, phi, cert)
        assert replay_connectedness(N, U, a, phi, theta, cert.reversed())
        again = ConnectednessCertificate.from_json(cert.to_json())
        assert replay_connectedness(N, U, a, theta, phi, again)


def test_connectedness_example():
    N = semilattice2()
    cert = is_U_connected((1, 0), (1, 1), [(0, 1)], 0, N)
    assert len(cert) == 1 and cert.to_json() == [{"mode": "toU", "u": 0, "psi": [1, 0]}]


def test_hypothesis_fails():
    A = right_regular_act(Z2)
    with pytest.raises(HypothesisFails):
        check_connectivity_hypothesis(Z2, A, [(0, 0)], (0,))


@pytest.mark.parametrize("n", [2, 3])
def test_finite_a_fg_n(n):
    N = cyclic_group(n)
    A = right_regular_act(Z2)
    U = finite_A_fg_N_U(A, N, N.generators)
    assert len(U) == 2
    certs = check_connectivity_hypothesis(N, A, U, range(2))
    for (x, theta), cert in certs.items():
        assert replay_connectedness(N, U, x, theta, namap_constant(A, theta[x]), cert)


def test_left_zero_u_and_certificate():
    N = left_zero_monoid(2)
    A = right_regular_act(Z2)
    z = 1
    U = left_zero_U(A, (0,), N, z)
    assert U == [(0, 1)]
    for theta in all_namaps(N, A):
        cert = left_zero_certificate(N, A, 0, theta, z)
        assert len(cert) == 2
        assert replay_connectedness(N, U, 0, theta, namap_constant(A, theta[0]), cert)
    with pytest.raises(NotLeftZero):
        left_zero_U(A, (0,), Z2, 1)


@pytest.mark.parametrize("case", CASES)
def test_reduce_t1_fg(case):
    A, B, wpres = wreath_case(case)
    N = B.base
    U = finite_A_fg_N_U(A, N, N.generators, wpres.X)
    red, certs = reduce_T1(wpres, U)
    assert len(red.t1) < len(wpres.t1)
    assert is_presentation_of(red.presentation, red.act, red.assign)
    for (x, theta), cert in certs.items():
        assert replay_connectedness(N, U, x, theta, namap_constant(A, theta[x]), cert)


def test_reduce_t1_left_zero():
    A = right_regular_act(Z2)
    B = right_regular_act(left_zero_monoid(2))
    PA, aA = act_presentation(A)
    PB, aB = act_presentation(B)
    wpres = wreath_presentation(PA, aA, A, PB, aB, B)
    U = left_zero_U(A, wpres.X, B.base, 1)
    red, _ = reduce_T1(wpres, U)
    assert len(red.t1) == len(wpres.X) * len(wpres.Y)
    assert is_presentation_of(red.presentation, red.act, red.assign)


def test_trivial_wreath():
    M = trivial_monoid()
    A = trivial_act(M)
    PA, aA = act_presentation(A)
    wpres = wreath_presentation(PA, aA, A, PA, aA, A)
    assert wpres.act.size == 1 and wpres.wp.monoid.order == 1


@pytest.mark.parametrize("a_name,b_name", [("Z2", "Z2"), ("Z2", "E2"), ("E2", "E2"), ("Z2", "Z3"), ("E2", "T2")])
def test_condition_matches_verification_for_free_acts(a_name, b_name):
    A = right_regular_act(family_monoid(a_name))
    for B in (right_regular_act(family_monoid(b_name)), free_act(range(2), family_monoid(b_name))):
        PA, aA = act_presentation(A)
        PB, aB = act_presentation(B)
        agree, disagree = compare_condition_with_verification(wreath_presentation(PA, aA, A, PB, aB, B))
        assert agree > 0 and disagree == []


def test_condition_not_necessary_for_trivial_b():
    A = right_regular_act(Z2)
    B = trivial_act(semilattice2())
    PA, aA = act_presentation(A)
    PB, aB = act_presentation(B)
    wpres = wreath_presentation(PA, aA, A, PB, aB, B)
    _, disagree = compare_condition_with_verification(wpres)
    assert disagree and all(ok and not cond for _, ok, cond in disagree)
    assert not reduced_T1_verifies(wreath_case(("Z2", 1, "E2", 1))[2], [])


def test_empty_u_not_connected():
    assert is_U_connected((0, 1), (1, 1), [], 0, Z2) is None
    assert len(is_U_connected((0, 1), (0, 1), [], 0, Z2)) == 0


def test_trivial_n_needs_no_u():
    A = right_regular_act(Z2)
    B = trivial_act(trivial_monoid())
    PA, aA = act_presentation(A)
    PB, aB = act_presentation(B)
    wpres = wreath_presentation(PA, aA, A, PB, aB, B)
    red, certs = reduce_T1(wpres, [])
    assert red.t1 == () and certs == {}
    assert is_presentation_of(red.presentation, red.act, red.assign)


def test_left_zero_of_e2_zero_extension():
    N = family_monoid("E2^0")
    A = right_regular_act(Z2)
    B = right_regular_act(N)
    PA, aA = act_presentation(A)
    PB, aB = act_presentation(B)
    wpres = wreath_presentation(PA, aA, A, PB, aB, B)
    U = left_zero_U(A, wpres.X, N, 2)
    assert len(U) == len(wpres.X)
    red, _ = reduce_T1(wpres, U)
    assert len(red.t1) == len(wpres.X) * len(wpres.Y) * len(U)
    assert is_presentation_of(red.presentation, red.act, red.assign)


def test_canonical_z2_factors():
    A = right_regular_act(Z2)
    PA, aA = canonical_presentation(A)
    wpres = wreath_presentation(PA, aA, A, PA, aA, A)
    (QA, X), (QB, Y) = wreath_factor_presentations(wpres.presentation, wpres.assign, wpres.wp, A, A)
    assert is_presentation_of(QA, A, X) and is_presentation_of(QB, A, Y)


def test_singleton_b_factor():
    A = right_regular_act(Z2)
    B = trivial_act(semilattice2())
    PA, aA = act_presentation(A)
    PB, aB = act_presentation(B)
    wpres = wreath_presentation(PA, aA, A, PB, aB, B)
    _, (QB, Y) = wreath_factor_presentations(wpres.presentation, wpres.assign, wpres.wp, A, B)
    assert Y == (0,) and is_presentation_of(QB, B, Y)


def test_left_zero_certificate_is_the_three_equalities():
    # θ = c₁θ, φ_xθ = φ_x c_{xθ}, c₁c_{xθ} = c_{xθ}: two steps of the chain
    N = left_zero_monoid(2)
    A = right_regular_act(Z2)
    theta = (2, 0)
    cert = left_zero_certificate(N, A, 0, theta, 1)
    first, second = cert.steps
    assert (first.from_u, first.psi) == (False, theta)
    assert (second.from_u, second.psi) == (True, namap_constant(A, theta[0]))


def test_generator_identity_exhaustive():
    # (a, b) = (x, y)(m, c_n) whenever a = xm, b = yn
    for a_name, b_name in (("Z2", "E2"), ("E2", "Z3"), ("T2", "Z2")):
        A = small_acts(a_name)[1][1]
        B = small_acts(b_name)[1][1]
        wp, W = wreath_act(A, B)
        for x, y in itertools.product(range(A.size), range(B.size)):
            for m, n in itertools.product(range(A.base.order), range(B.base.order)):
                target = A.act(x, m) * B.size + B.act(y, n)
                assert W.act(x * B.size + y, wp.encode(m, wp.constant(n))) == target
