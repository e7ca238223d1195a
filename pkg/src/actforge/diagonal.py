"""Diagonal acts M×M and the constructions built on them.

Conventions: the pair (a, b) of the diagonal act of an order-n monoid lives
at index ``a*n + b``.  Presentations of diagonal acts carry generator labels
that are the pairs themselves, and the accompanying assignment maps each
generator to its pair index.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .act import direct_product_act, is_generating_set, right_regular_act
from .errors import ComplementNotIdeal, IdentityNotInU, NotGenerating, VerificationFailed
from .limits import EXHAUSTIVE_CAP, check_size
from .monoid import adjoin_zero, attach_act_monoid, direct_product_monoid, is_ideal, submonoid
from .presentation import (
    ActPresentation,
    ActRelation,
    FreeActElem,
    is_presentation_of,
    presentation_on_generators,
    reduce_presentation,
    relation_sides,
)


@dataclass(frozen=True)
class DiagonalGenerators:
    U: tuple
    V: tuple

    def pairs(self, n):
        return tuple(u * n + v for u in self.U for v in self.V)


def diagonal_act(M):
    check_size(M.order ** 2, "diagonal act")
    R = right_regular_act(M)
    return direct_product_act(R, R)


def pair_index(M, a, b):
    return a * M.order + b


def pair_of(M, i):
    return divmod(i, M.order)


def generates_diagonal(M, U, V=None):
    V = U if V is None else V
    D = diagonal_act(M)
    return is_generating_set(D, [pair_index(M, u, v) for u in U for v in V])


def square_generating_set(M, cap=EXHAUSTIVE_CAP):
    """Smallest U (lexicographically first) with U×U generating M×M.

    Past ``cap`` the search stops and returns U = M, which always works.
    """
    D = diagonal_act(M)
    n = M.order
    orbits = [set(row) for row in D.action]
    for k in range(1, min(n, cap) + 1):
        for U in itertools.combinations(range(n), k):
            got = set()
            for u in U:
                for v in U:
                    got |= orbits[u * n + v]
            if len(got) == n * n:
                return DiagonalGenerators(U, U)
    return DiagonalGenerators(tuple(range(n)), tuple(range(n)))


def rectangular_generating_set(M, cap=EXHAUSTIVE_CAP):
    """Smallest |U|·|V| with U×V generating M×M (ties: lexicographic on (U, V))."""
    D = diagonal_act(M)
    n = M.order
    if n > cap:
        return DiagonalGenerators(tuple(range(n)), tuple(range(n)))
    orbits = [set(row) for row in D.action]
    subsets = [s for k in range(1, n + 1) for s in itertools.combinations(range(n), k)]
    best = None
    for U in subsets:
        for V in subsets:
            if best is not None and len(U) * len(V) >= best[0]:
                continue
            got = set()
            for u in U:
                for v in V:
                    got |= orbits[u * n + v]
            if len(got) == n * n:
                best = (len(U) * len(V), U, V)
    return DiagonalGenerators(best[1], best[2])


def zero_extension_generators(M, U):
    """Generators of the diagonal M⁰-act: ((U ∪ {0}) × (U ∪ {0})) minus (0, 0).

    Returns (M⁰, list of pair indices in the diagonal M⁰-act, list of pairs).
    """
    U = tuple(sorted(set(U)))
    if not generates_diagonal(M, U):
        raise NotGenerating("U×U does not generate M×M", U=list(U))
    M0 = adjoin_zero(M)
    zero = M.order
    ext = U + (zero,)
    pairs = [(a, b) for a in ext for b in ext if (a, b) != (zero, zero)]
    Z = [pair_index(M0, a, b) for a, b in pairs]
    if not is_generating_set(diagonal_act(M0), Z):
        raise NotGenerating("zero extension failed to generate (should not happen)")
    return M0, Z, pairs


def product_diagonal_generators(M, N, U, V):
    """(U×V)×(U×V) inside the diagonal (M×N)-act.

    Returns (M×N, generator indices, generator labels ((u1, v1), (u2, v2))).
    """
    if not generates_diagonal(M, U):
        raise NotGenerating("U×U does not generate M×M")
    if not generates_diagonal(N, V):
        raise NotGenerating("V×V does not generate N×N")
    MN = direct_product_monoid(M, N)
    nN = N.order
    labels = [((u1, v1), (u2, v2)) for u1 in U for v1 in V for u2 in U for v2 in V]
    Z = [pair_index(MN, u1 * nN + v1, u2 * nN + v2) for (u1, v1), (u2, v2) in labels]
    if not is_generating_set(diagonal_act(MN), Z):
        raise NotGenerating("product generators failed to generate (should not happen)")
    return MN, Z, labels


def project_diagonal_generators(M, N, W):
    """Projection U' of W ⊆ M×N (indices) to M; U'×U' generates M×M when W×W does."""
    return tuple(sorted({w // N.order for w in W}))


def project_diagonal_generators_second(M, N, W):
    return tuple(sorted({w % N.order for w in W}))


def diagonal_presentation(M, U, V=None, reduce=True):
    """A presentation of M×M on the generators U×V (labels are pairs)."""
    V = U if V is None else V
    D = diagonal_act(M)
    gens = [pair_index(M, u, v) for u in U for v in V]
    labels = [(u, v) for u in U for v in V]
    P, assign = presentation_on_generators(D, gens, labels=labels)
    if reduce:
        P = reduce_presentation(P, D, assign)
    return P, assign


def regular_presentation(M, U, reduce=True):
    """A presentation of the right-regular act on generators U (labels are elements)."""
    R = right_regular_act(M)
    P, assign = presentation_on_generators(R, U)
    if reduce:
        P = reduce_presentation(P, R, assign)
    return P, assign


def _verify(P, A, assign, what):
    verdict = is_presentation_of(P, A, assign)
    if not verdict:
        raise VerificationFailed(f"{what}: {verdict.reason}", witness=verdict.witness)
    return verdict


def restrict_presentation_to_submonoid(P, assign, M, N_elems, U):
    """Keep the relations of a U×U presentation of M×M that live over N.

    N must be a submonoid whose complement is an ideal.  Returns
    (N as a monoid, embedding new->old, presentation over N, assignment).
    """
    N, emb = submonoid(M, N_elems)
    rest = [m for m in range(M.order) if m not in set(emb)]
    if rest and not is_ideal(M, rest):
        raise ComplementNotIdeal("M \\ N is not an ideal")
    old_to_new = {o: i for i, o in enumerate(emb)}
    V = [u for u in sorted(set(U)) if u in old_to_new]
    n = M.order
    # generators of P whose pair lies in V×V
    keep_gen = {}
    for g, a in enumerate(assign):
        x, y = divmod(a, n)
        if x in old_to_new and y in old_to_new and x in V and y in V:
            keep_gen[g] = len(keep_gen)
    labels = [P.gen_labels[g] for g in keep_gen]
    new_assign = []
    for g in keep_gen:
        x, y = divmod(assign[g], n)
        new_assign.append(old_to_new[x] * N.order + old_to_new[y])
    rels = []
    for r in P.relations:
        if all(w.gen in keep_gen and w.elem in old_to_new for w in r):
            rels.append(ActRelation(*(FreeActElem(keep_gen[w.gen], old_to_new[w.elem]) for w in r)))
    Q = ActPresentation(labels, N, rels)
    _verify(Q, diagonal_act(N), new_assign, "restricted presentation")
    return N, emb, Q, tuple(new_assign)


def zero_extension_presentation(M, P_diag, diag_assign, P_M, m_assign):
    """Presentation of the diagonal M⁰-act from presentations of M×M and of M.

    Relations: those of P_diag (re-indexed), S₁ = {(u,0)·m = (v,0)·n},
    S₂ = {(0,u)·m = (0,v)·n} for each (u·m, v·n) in S, and x·0 = y·0 for
    every ordered pair of generators.
    """
    U = sorted({u for a in diag_assign for u in divmod(a, M.order)})
    M0, Z, pairs = zero_extension_generators(M, U)
    zero = M.order
    where = {p: i for i, p in enumerate(pairs)}
    n = M.order
    rels = []
    for r in P_diag.relations:
        rels.append(ActRelation(*(FreeActElem(where[divmod(diag_assign[w.gen], n)], w.elem) for w in r)))
    for r in P_M.relations:
        u, v = m_assign[r.lhs.gen], m_assign[r.rhs.gen]
        rels.append(ActRelation(FreeActElem(where[(u, zero)], r.lhs.elem), FreeActElem(where[(v, zero)], r.rhs.elem)))
    for r in P_M.relations:
        u, v = m_assign[r.lhs.gen], m_assign[r.rhs.gen]
        rels.append(ActRelation(FreeActElem(where[(zero, u)], r.lhs.elem), FreeActElem(where[(zero, v)], r.rhs.elem)))
    for x in range(len(Z)):
        for y in range(len(Z)):
            rels.append(ActRelation(FreeActElem(x, zero), FreeActElem(y, zero)))
    P = ActPresentation(pairs, M0, rels)
    _verify(P, diagonal_act(M0), Z, "zero-extension presentation")
    return M0, P, tuple(Z)


def _sides_with_generators(P):
    """Relation sides of P (as a multiset), followed by x·1 for every generator x.

    The bare generator words cover elements that no relation touches; without
    them a factor presentation with no relations (a free factor) would
    contribute no relations at all to the product.
    """
    one = P.monoid.identity
    return list(relation_sides(P.relations)) + [FreeActElem(x, one) for x in range(P.num_gens)]


def _literal_sides(P):
    return list(relation_sides(P.relations))


def product_diagonal_presentation(M, N, P_M, assign_M, P_N, assign_N, literal=False, verify=True):
    """Presentation ⟨Z | T₁, T₂⟩ of the diagonal (M×N)-act.

    ``P_M`` presents M×M on U×U and ``P_N`` presents N×N on V×V.

    T₁: ((u1,v),(u2,v'))·(m,n) = ((u3,v),(u4,v'))·(m',n) for each relation
        (u1,u2)·m = (u3,u4)·m' of P_M and each side (v,v')·n of P_N.
    T₂: the same with the roles of the coordinates swapped.

    With ``literal=True`` only relation sides are used; otherwise the bare
    generators x·1 are added to the side sets (see ``_sides_with_generators``).
    """
    nM, nN = M.order, N.order
    U = sorted({u for a in assign_M for u in divmod(a, nM)})
    V = sorted({v for a in assign_N for v in divmod(a, nN)})
    MN, Z, labels = product_diagonal_generators(M, N, U, V)
    where = {lab: i for i, lab in enumerate(labels)}
    pm = [divmod(a, nM) for a in assign_M]
    pn = [divmod(a, nN) for a in assign_N]
    sides = _literal_sides if literal else _sides_with_generators

    def gen(u1, v1, u2, v2):
        return where[((u1, v1), (u2, v2))]

    T1 = []
    for r in P_M.relations:
        (u1, u2), (u3, u4) = pm[r.lhs.gen], pm[r.rhs.gen]
        for w in sides(P_N):
            v, v2 = pn[w.gen]
            T1.append(ActRelation(FreeActElem(gen(u1, v, u2, v2), r.lhs.elem * nN + w.elem),
                                  FreeActElem(gen(u3, v, u4, v2), r.rhs.elem * nN + w.elem)))
    T2 = []
    for r in P_N.relations:
        (v1, v2), (v3, v4) = pn[r.lhs.gen], pn[r.rhs.gen]
        for w in sides(P_M):
            u, u2 = pm[w.gen]
            T2.append(ActRelation(FreeActElem(gen(u, v1, u2, v2), w.elem * nN + r.lhs.elem),
                                  FreeActElem(gen(u, v3, u2, v4), w.elem * nN + r.rhs.elem)))
    P = ActPresentation(labels, MN, T1 + T2)
    if verify:
        _verify(P, diagonal_act(MN), Z, "product diagonal presentation")
    return MN, P, tuple(Z), len(T1), len(T2)


def product_diagonal_factor_presentation(M, N, P, assign, second=False):
    """Project a presentation of the diagonal (M×N)-act onto M×M (or N×N).

    Each generator ((u1,v1),(u2,v2))·(m,n) maps to (u1,u2)·m (resp.
    (v1,v2)·n).  P's generators must be a full product (U×V)×(U×V).
    """
    nM, nN = M.order, N.order
    MN_n = nM * nN
    gens = [divmod(a, MN_n) for a in assign]
    quads = [(divmod(x, nN), divmod(y, nN)) for x, y in gens]
    pick = 1 if second else 0
    target, tn = (N, nN) if second else (M, nM)
    proj = [(q[0][pick], q[1][pick]) for q in quads]
    new_labels = sorted(set(proj))
    where = {p: i for i, p in enumerate(new_labels)}
    W = sorted({c for q in quads for c in (q[0][pick], q[1][pick])})
    if set(new_labels) != {(a, b) for a in W for b in W}:
        raise NotGenerating("projection of the generators is not a square U×U")

    def image(w):
        mm = divmod(w.elem, nN)[pick]
        return FreeActElem(where[proj[w.gen]], mm)

    rels = [ActRelation(image(r.lhs), image(r.rhs)) for r in P.relations]
    Q = ActPresentation(new_labels, target, rels)
    new_assign = tuple(a * tn + b for a, b in new_labels)
    _verify(Q, diagonal_act(target), new_assign, "factor of product diagonal presentation")
    return Q, new_assign


def attach_act_generators(M, A, X, U):
    """V = XU ∪ U inside U(M, A); V×V generates the diagonal U(M, A)-act.

    Returns (U(M, A), V as indices).  A-elements sit at ``|M| + a``.
    """
    if M.identity not in U:
        raise IdentityNotInU("U must contain the identity")
    if not is_generating_set(A, X):
        raise NotGenerating("X does not generate A")
    if not generates_diagonal(M, U):
        raise NotGenerating("U×U does not generate M×M")
    Umon = attach_act_monoid(M, A)
    nm = M.order
    V = sorted({nm + A.action[x][u] for x in X for u in U} | set(U))
    if not generates_diagonal(Umon, V):
        raise NotGenerating("V×V failed to generate (should not happen)")
    return Umon, tuple(V)


def attach_act_projections(M, A, W):
    """Split a generating set W×W of the diagonal U(M, A)-act into (W∩A, W∩M)."""
    nm = M.order
    XA = tuple(sorted(w - nm for w in W if w >= nm))
    UM = tuple(sorted(w for w in W if w < nm))
    return XA, UM


def attach_act_factor_presentation(M, A, Umon, P, assign, X, U):
    """Presentation of A over M from a V×V presentation of the U(M,A) diagonal.

    Each x' in XU is written x' = χ(x')·α(x') with the smallest (x, u).
    Relations of P with sides (x', u)·m, x' ∈ XU, u ∈ U, m ∈ M map to
    χ(x')·α(x')m; add x·u = y·v whenever xu = yv in A.
    """
    nm = M.order
    n = Umon.order
    X = sorted(X)
    U = sorted(U)
    xpos = {x: i for i, x in enumerate(X)}
    decomp = {}
    for x in X:
        for u in U:
            decomp.setdefault(A.action[x][u], (x, u))
    rels = []

    def image(w):
        a, b = divmod(assign[w.gen], n)
        if a < nm or a - nm not in decomp or b not in U or w.elem >= nm:
            return None
        x, u = decomp[a - nm]
        return FreeActElem(xpos[x], M.table[u][w.elem])

    for r in P.relations:
        lhs, rhs = image(r.lhs), image(r.rhs)
        if lhs is not None and rhs is not None:
            rels.append(ActRelation(lhs, rhs))
    n_images = len(rels)
    for x in X:
        for u in U:
            for y in X:
                for v in U:
                    if A.action[x][u] == A.action[y][v]:
                        rels.append(ActRelation(FreeActElem(xpos[x], u), FreeActElem(xpos[y], v)))
    Q = ActPresentation(X, M, rels)
    _verify(Q, A, tuple(X), "factor presentation from U(M, A)")
    return Q, tuple(X), n_images
