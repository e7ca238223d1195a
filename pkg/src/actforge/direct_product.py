"""Generating sets and presentations for direct products A×B of M-acts."""

from __future__ import annotations

from dataclasses import dataclass

from .act import direct_product_act, is_generating_set
from .diagonal import _literal_sides, _sides_with_generators, generates_diagonal
from .errors import NotGenerating, VerificationFailed
from .presentation import ActPresentation, ActRelation, FreeActElem, is_presentation_of, satisfies


@dataclass(frozen=True)
class DiagonalDecomposition:
    """(m, n) = (alpha·gamma, beta·gamma) with alpha in U, beta in V, per pair."""

    monoid: object
    U: tuple
    V: tuple
    alpha: tuple  # indexed by m*|M| + n
    beta: tuple
    gamma: tuple

    def at(self, m, n):
        i = m * self.monoid.order + n
        return self.alpha[i], self.beta[i], self.gamma[i]

    def delta(self, m, n):
        i = m * self.monoid.order + n
        return self.alpha[i], self.beta[i]


def build_decomposition(M, U, V):
    """Choose δ(m, n) = (α, β) and γ for every pair.

    Scan (u, v) in index order and then s in index order; the first triple
    with (us, vs) = (m, n) wins.
    """
    U, V = tuple(sorted(U)), tuple(sorted(V))
    if not generates_diagonal(M, U, V):
        raise NotGenerating("U×V does not generate the diagonal act")
    n = M.order
    choice = [None] * (n * n)
    T = M.table
    for u in U:
        for v in V:
            for s in range(n):
                i = T[u][s] * n + T[v][s]
                if choice[i] is None:
                    choice[i] = (u, v, s)
    alpha, beta, gamma = zip(*choice)
    d = DiagonalDecomposition(M, U, V, alpha, beta, gamma)
    for m in range(n):
        for k in range(n):
            a, b, g = d.at(m, k)
            assert (T[a][g], T[b][g]) == (m, k)
    return d


def crucial_identity_check(M, d):
    """(m1m2, n1n2) = (m1u, n1v)γ(m2,n2) = δ(m1u, n1v)(γ(m1u, n1v)γ(m2,n2))
    with u = α(m2, n2), v = β(m2, n2), for all m1, m2, n1, n2."""
    T = M.table
    r = range(M.order)
    for m2 in r:
        for n2 in r:
            u, v, g2 = d.at(m2, n2)
            for m1 in r:
                for n1 in r:
                    target = (T[m1][m2], T[n1][n2])
                    a, b = T[m1][u], T[n1][v]
                    if (T[a][g2], T[b][g2]) != target:
                        return False
                    a2, b2, g3 = d.at(a, b)
                    g = T[g3][g2]
                    if (T[a2][g], T[b2][g]) != target:
                        return False
    return True


class ProductSetup:
    """Z = XU × YV with provenance, and the map ρ : F_X × F_Y -> F_Z.

    ``X``/``Y`` are the generator images (act elements) of the factor
    presentations; generators of F_Z are distinct pairs (x·u, y·v) of A×B.
    """

    def __init__(self, A, X, B, Y, d):
        self.A, self.B, self.X, self.Y, self.d = A, B, tuple(X), tuple(Y), d
        self.M = A.base
        self.product = direct_product_act(A, B)
        self.Z = []
        self.provenance = []
        self.index = {}
        for xi, x in enumerate(self.X):
            for u in d.U:
                for yi, y in enumerate(self.Y):
                    for v in d.V:
                        z = A.action[x][u] * B.size + B.action[y][v]
                        if z not in self.index:
                            self.index[z] = len(self.Z)
                            self.Z.append(z)
                            self.provenance.append((xi, u, yi, v))

    def gen_of(self, x, u, y, v):
        """Generator index of (x_gen·u, y_gen·v); x, y index X and Y."""
        return self.index[self.A.action[self.X[x]][u] * self.B.size + self.B.action[self.Y[y]][v]]

    def rho(self, wa, wb):
        """(x·m, y·n) -> (xα(m,n), yβ(m,n))·γ(m,n)."""
        a, b, g = self.d.at(wa.elem, wb.elem)
        return FreeActElem(self.gen_of(wa.gen, a, wb.gen, b), g)

    def evaluate(self, w):
        return self.product.action[self.Z[w.gen]][w.elem]

    @property
    def labels(self):
        return [(self.A.action[self.X[x]][u], self.B.action[self.Y[y]][v]) for x, u, y, v in self.provenance]


def dp_generating_set(A, X, B, Y, U, V):
    """Z = XU × YV; returns the ProductSetup (Z indices are ``setup.Z``)."""
    if not is_generating_set(A, X):
        raise NotGenerating("X does not generate A")
    if not is_generating_set(B, Y):
        raise NotGenerating("Y does not generate B")
    d = build_decomposition(A.base, U, V)
    setup = ProductSetup(A, X, B, Y, d)
    if not is_generating_set(setup.product, setup.Z):
        raise NotGenerating("XU×YV failed to generate A×B (should not happen)")
    return setup


def rho_pair(setup, wa, wb):
    return setup.rho(FreeActElem(*wa), FreeActElem(*wb))


def _scale(M, w, u):
    """(x·m)·u = x·(mu)."""
    return FreeActElem(w.gen, M.table[w.elem][u])


def dp_presentation(P_A, assign_A, A, P_B, assign_B, B, P_diag, assign_diag, d=None, literal=False, verify=True):
    """Presentation ⟨Z | T₁, T₂, T₃⟩ of A×B.

    T₁: (xu, yv)·m = (xu', yv')·n for x ∈ X, y ∈ Y and each relation
        (u,v)·m = (u',v')·n of the diagonal presentation.
    T₂: ρ(w₁u, wv) = ρ(w₂u, wv) for (w₁, w₂) ∈ R, w a side of S, u ∈ U, v ∈ V.
    T₃: ρ(wu, w₁v) = ρ(wu, w₂v) for w a side of R, (w₁, w₂) ∈ S.

    Unless ``literal``, side sets also contain the bare generators, which
    keeps the construction complete when a factor presentation has no
    relation touching some generator.

    Returns (setup, presentation, assignment, (|T₁|, |T₂|, |T₃|)).
    """
    M = A.base
    n = M.order
    diag_pairs = [divmod(a, n) for a in assign_diag]
    U = sorted({p[0] for p in diag_pairs})
    V = sorted({p[1] for p in diag_pairs})
    if d is None:
        d = build_decomposition(M, U, V)
    setup = ProductSetup(A, assign_A, B, assign_B, d)
    # Z must contain (xu, yv) for every diagonal generator (u, v)
    T1 = []
    for r in P_diag.relations:
        (u, v), (u2, v2) = diag_pairs[r.lhs.gen], diag_pairs[r.rhs.gen]
        for x in range(len(setup.X)):
            for y in range(len(setup.Y)):
                T1.append(ActRelation(FreeActElem(setup.gen_of(x, u, y, v), r.lhs.elem),
                                      FreeActElem(setup.gen_of(x, u2, y, v2), r.rhs.elem)))
    sides = _literal_sides if literal else _sides_with_generators
    T2 = []
    for r in P_A.relations:
        for w in sides(P_B):
            for u in d.U:
                for v in d.V:
                    wv = _scale(M, w, v)
                    T2.append(ActRelation(setup.rho(_scale(M, r.lhs, u), wv), setup.rho(_scale(M, r.rhs, u), wv)))
    T3 = []
    for w in sides(P_A):
        for r in P_B.relations:
            for u in d.U:
                for v in d.V:
                    wu = _scale(M, w, u)
                    T3.append(ActRelation(setup.rho(wu, _scale(M, r.lhs, v)), setup.rho(wu, _scale(M, r.rhs, v))))
    P = ActPresentation(setup.labels, M, T1 + T2 + T3)
    assign = tuple(setup.Z)
    if verify:
        verdict = is_presentation_of(P, setup.product, assign)
        if not verdict:
            raise VerificationFailed(f"direct product presentation: {verdict.reason}", witness=verdict.witness)
    return setup, P, assign, (len(T1), len(T2), len(T3))


def dp_satisfied(setup, P, assign):
    """A×B satisfies every relation (checked independently of full verification)."""
    return satisfies(setup.product, assign, P.relations)


@dataclass(frozen=True)
class GeneratorDecomposition:
    """x' = χ(x')·α(x') for every x' in XU, smallest (x, u) first."""

    chi: dict
    alpha: dict


def build_generator_decomposition(A, X, U):
    chi, alpha = {}, {}
    for x in sorted(X):
        for u in sorted(U):
            xp = A.action[x][u]
            if xp not in chi:
                chi[xp], alpha[xp] = x, u
    return GeneratorDecomposition(chi, alpha)


def dp_factor_presentation(P, assign, A, B, X, U, g=None):
    """Presentation of A from a presentation of A×B on Z = XU × YU.

    ρ : (x', y')·m -> χ(x')·α(x')m, applied to every relation, plus
    x·u = y·v for x, y ∈ X and u, v ∈ U with xu = yv in A.
    Returns (presentation, assignment, number of ρ-image relations).
    """
    M = A.base
    X, U = sorted(X), sorted(U)
    if not generates_diagonal(M, U):
        raise NotGenerating("U×U does not generate the diagonal act")
    g = build_generator_decomposition(A, X, U) if g is None else g
    xpos = {x: i for i, x in enumerate(X)}
    nb = B.size

    def image(w):
        xp = assign[w.gen] // nb
        return FreeActElem(xpos[g.chi[xp]], M.table[g.alpha[xp]][w.elem])

    images = []
    seen = set()
    for r in P.relations:
        rel = ActRelation(image(r.lhs), image(r.rhs))
        if rel not in seen:
            seen.add(rel)
            images.append(rel)
    extra = [ActRelation(FreeActElem(xpos[x], u), FreeActElem(xpos[y], v))
             for x in X for u in U for y in X for v in U if A.action[x][u] == A.action[y][v]]
    Q = ActPresentation(X, M, images + extra)
    verdict = is_presentation_of(Q, A, X)
    if not verdict:
        raise VerificationFailed(f"factor presentation: {verdict.reason}", witness=verdict.witness)
    return Q, tuple(X), len(images)
