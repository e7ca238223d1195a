"""Wreath products W(M, N | A) and A≀B.

A map θ : A -> N is a tuple of length |A| (``theta[a]`` is aθ).  Maps are
ranked in base |N| with a = 0 as the least significant digit, and the
wreath monoid element (m, θ) is stored at ``m * |N|^|A| + rank(θ)``.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from typing import NamedTuple

from .act import FiniteAct, is_generating_set, validate_act
from .errors import HypothesisFails, NotGenerating, NotLeftZero, NotMonoidGeneratingSet, VerificationFailed
from .limits import MAP_CAP, check_size
from .monoid import is_monoid_generating_set, validate_monoid
from .presentation import ActPresentation, ActRelation, FreeActElem, is_presentation_of


def namap_product(N, theta, phi):
    """a(θφ) = (aθ)(aφ)."""
    T = N.table
    return tuple(T[t][p] for t, p in zip(theta, phi))


def namap_shift(A, m, phi):
    """a(ᵐφ) = (am)φ."""
    return tuple(phi[A.action[a][m]] for a in range(A.size))


def namap_constant(A, n):
    return (n,) * A.size


def all_namaps(N, A):
    check_size(N.order ** A.size, "N^A", cap=MAP_CAP)
    # rank order: digit for a = 0 varies fastest
    return [tuple(reversed(t)) for t in itertools.product(range(N.order), repeat=A.size)]


def namap_rank(N, theta):
    r = 0
    for v in reversed(theta):
        r = r * N.order + v
    return r


@dataclass(frozen=True, eq=False)
class WreathProduct:
    """The monoid W(M, N | A) with its element codec."""

    M: object
    N: object
    A: object
    monoid: object
    maps: tuple

    def encode(self, m, theta):
        return m * len(self.maps) + namap_rank(self.N, theta)

    def decode(self, i):
        m, r = divmod(i, len(self.maps))
        return m, self.maps[r]

    def constant(self, n):
        return namap_constant(self.A, n)

    def unit(self, theta):
        """(1, θ)."""
        return self.encode(self.M.identity, theta)


def wreath_monoid(M, N, A):
    """(m, θ)(n, φ) = (mn, θ·ᵐφ), identity (1, c₁)."""
    maps = all_namaps(N, A)
    k = len(maps)
    check_size(M.order * k, "wreath monoid")
    W = WreathProduct(M, N, A, None, tuple(maps))
    table = []
    for m in range(M.order):
        for theta in maps:
            row = []
            for n in range(M.order):
                for phi in maps:
                    row.append(W.encode(M.table[m][n], namap_product(N, theta, namap_shift(A, m, phi))))
            table.append(row)
    labels = [f"({M.label(m)},{''.join(N.label(v) for v in th)})" for m in range(M.order) for th in maps]
    monoid = validate_monoid(M.order * k, table, W.encode(M.identity, namap_constant(A, N.identity)), labels)
    return WreathProduct(M, N, A, monoid, tuple(maps))


def wreath_act(A, B, wp=None):
    """A≀B over W(M, N | A): (a, b)(m, θ) = (am, b(aθ)); (a, b) at a*|B| + b."""
    wp = wreath_monoid(A.base, B.base, A) if wp is None else wp
    check_size(A.size * B.size, "wreath act")
    nb = B.size
    action = []
    for a in range(A.size):
        for b in range(B.size):
            row = []
            for i in range(wp.monoid.order):
                m, theta = wp.decode(i)
                row.append(A.action[a][m] * nb + B.action[b][theta[a]])
            action.append(row)
    labels = [f"({A.label(a)},{B.label(b)})" for a in range(A.size) for b in range(B.size)]
    return wp, validate_act(wp.monoid, A.size * B.size, action, labels)


def wreath_generating_set(A, X, B, Y):
    """X×Y as indices of A≀B."""
    if not is_generating_set(A, X):
        raise NotGenerating("X does not generate A")
    if not is_generating_set(B, Y):
        raise NotGenerating("Y does not generate B")
    return tuple(x * B.size + y for x in X for y in Y)


def wreath_projections(B, U):
    """Projections of U ⊆ A≀B to A and to B."""
    return tuple(sorted({u // B.size for u in U})), tuple(sorted({u % B.size for u in U}))


@dataclass(frozen=True, eq=False)
class WreathPresentation:
    """⟨X×Y | T₁, T₂, T₃⟩ with the three relation blocks kept apart."""

    wp: WreathProduct
    act: FiniteAct
    gen_pairs: tuple  # (x index into X, y index into Y)
    X: tuple  # generator images in A
    Y: tuple  # generator images in B
    t1: tuple
    t2: tuple
    t3: tuple

    @property
    def assign(self):
        nb = self.act.size // self.wp.A.size
        return tuple(self.X[x] * nb + self.Y[y] for x, y in self.gen_pairs)

    @property
    def presentation(self):
        return ActPresentation(self.gen_pairs, self.wp.monoid, self.t1 + self.t2 + self.t3)

    def gen(self, x, y):
        return x * len(self.Y) + y


def _t2_t3(wp, P_A, P_B, nX, nY):
    N = wp.N
    c1 = wp.constant(N.identity)
    t2 = []
    for r in P_A.relations:
        for y in range(nY):
            t2.append(ActRelation(FreeActElem(r.lhs.gen * nY + y, wp.encode(r.lhs.elem, c1)),
                                  FreeActElem(r.rhs.gen * nY + y, wp.encode(r.rhs.elem, c1))))
    t3 = []
    for x in range(nX):
        for r in P_B.relations:
            t3.append(ActRelation(FreeActElem(x * nY + r.lhs.gen, wp.unit(wp.constant(r.lhs.elem))),
                                  FreeActElem(x * nY + r.rhs.gen, wp.unit(wp.constant(r.rhs.elem)))))
    return tuple(t2), tuple(t3)


def _t1(wp, X, nY, maps):
    out = []
    for xi, x in enumerate(X):
        for y in range(nY):
            g = xi * nY + y
            for theta in maps:
                out.append(ActRelation(FreeActElem(g, wp.unit(theta)), FreeActElem(g, wp.unit(wp.constant(theta[x])))))
    return tuple(out)


def _verify(P, act, assign, what):
    verdict = is_presentation_of(P, act, assign)
    if not verdict:
        raise VerificationFailed(f"{what}: {verdict.reason}", witness=verdict.witness)
    return verdict


def wreath_presentation(P_A, assign_A, A, P_B, assign_B, B, wp=None, verify=True):
    """The presentation of A≀B on X×Y.

    T₁: (x,y)·(1,θ) = (x,y)·(1,c_{xθ}) for every θ ∈ N^A;
    T₂: (x,y)·(m,c₁) = (x',y)·(m',c₁) for (x·m, x'·m') ∈ R;
    T₃: (x,y)·(1,c_n) = (x,y')·(1,c_{n'}) for (y·n, y'·n') ∈ S.
    """
    wp, act = wreath_act(A, B, wp)
    X, Y = tuple(assign_A), tuple(assign_B)
    nX, nY = len(X), len(Y)
    check_size(nX * nY * wp.monoid.order, "free act on X×Y")
    t1 = _t1(wp, X, nY, wp.maps)
    t2, t3 = _t2_t3(wp, P_A, P_B, nX, nY)
    pairs = tuple((x, y) for x in range(nX) for y in range(nY))
    res = WreathPresentation(wp, act, pairs, X, Y, t1, t2, t3)
    if verify:
        _verify(res.presentation, act, res.assign, "wreath presentation")
    return res


def wreath_factor_presentations(P, assign, wp, A, B):
    """Presentations of A and B read off a presentation of A≀B on X×Y.

    ρ_X : (x, y)·(m, θ) -> x·m and ρ_Y : (x, y)·(m, θ) -> y·(xθ), with x
    evaluated in A.  P's generators must be exactly X×Y.
    """
    nb = B.size
    pairs = [divmod(a, nb) for a in assign]
    X = sorted({p[0] for p in pairs})
    Y = sorted({p[1] for p in pairs})
    if sorted(pairs) != sorted((x, y) for x in X for y in Y) or len(pairs) != len(set(pairs)):
        raise NotGenerating("presentation generators are not a full product X×Y")
    xpos = {x: i for i, x in enumerate(X)}
    ypos = {y: i for i, y in enumerate(Y)}

    def rho_x(w):
        x, _ = pairs[w.gen]
        m, _ = wp.decode(w.elem)
        return FreeActElem(xpos[x], m)

    def rho_y(w):
        x, y = pairs[w.gen]
        _, theta = wp.decode(w.elem)
        return FreeActElem(ypos[y], theta[x])

    RX = [ActRelation(rho_x(r.lhs), rho_x(r.rhs)) for r in P.relations]
    RY = [ActRelation(rho_y(r.lhs), rho_y(r.rhs)) for r in P.relations]
    PA = ActPresentation(X, A.base, RX)
    PB = ActPresentation(Y, B.base, RY)
    _verify(PA, A, X, "wreath factor presentation (A)")
    _verify(PB, B, Y, "wreath factor presentation (B)")
    return (PA, tuple(X)), (PB, tuple(Y))


# --- (U, a)-connectedness -------------------------------------------------


class ConnStep(NamedTuple):
    from_u: bool  # True: θ_i = u, φ_i = c_{au};  False: φ_i = u, θ_i = c_{au}
    u: int  # index into U
    psi: tuple


@dataclass(frozen=True)
class ConnectednessCertificate:
    steps: tuple = ()

    def __len__(self):
        return len(self.steps)

    def reversed(self):
        return ConnectednessCertificate(tuple(ConnStep(not s.from_u, s.u, s.psi) for s in reversed(self.steps)))

    def to_json(self):
        return [{"mode": "fromU" if s.from_u else "toU", "u": s.u, "psi": list(s.psi)} for s in self.steps]

    @classmethod
    def from_json(cls, data):
        return cls(tuple(ConnStep(d["mode"] == "fromU", int(d["u"]), tuple(d["psi"])) for d in data))


def _step_ends(N, A_size, U, a, step):
    u = U[step.u]
    c = (u[a],) * A_size
    theta_i, phi_i = (u, c) if step.from_u else (c, u)
    return namap_product(N, theta_i, step.psi), namap_product(N, phi_i, step.psi)


def replay_connectedness(N, U, a, theta, phi, cert):
    """θ = θ₁ψ₁, φ₁ψ₁ = θ₂ψ₂, ..., φ_kψ_k = φ, checked pointwise."""
    U = [tuple(u) for u in U]
    cur = tuple(theta)
    size = len(cur)
    for step in cert.steps:
        if not 0 <= step.u < len(U) or len(step.psi) != size:
            return False
        left, right = _step_ends(N, size, U, a, step)
        if left != cur:
            return False
        cur = right
    return cur == tuple(phi)


def _neighbours(N, U, a, sigma):
    """Every τ one step from σ, each with one witnessing step."""
    T = N.table
    n = N.order
    size = len(sigma)
    out = {}
    for ui, u in enumerate(U):
        c = u[a]
        for from_u in (True, False):
            left = u if from_u else (c,) * size
            right = (c,) * size if from_u else u
            # per coordinate b: ψ(b) with left(b)ψ(b) = σ(b); new value right(b)ψ(b)
            options = []
            for b in range(size):
                vals = {}
                for p in range(n):
                    if T[left[b]][p] == sigma[b]:
                        vals.setdefault(T[right[b]][p], p)
                if not vals:
                    break
                options.append(list(vals.items()))
            else:
                for combo in itertools.product(*options):
                    tau = tuple(v for v, _ in combo)
                    if tau not in out:
                        out[tau] = ConnStep(from_u, ui, tuple(p for _, p in combo))
    return out


def _bfs_tree(N, U, a, source):
    prev = {source: None}
    queue = deque([source])
    while queue:
        sigma = queue.popleft()
        for tau, step in _neighbours(N, U, a, sigma).items():
            if tau not in prev:
                prev[tau] = (sigma, step)
                queue.append(tau)
    return prev


def _path(prev, target):
    steps = []
    w = target
    while prev[w] is not None:
        w, s = prev[w]
        steps.append(s)
    return ConnectednessCertificate(tuple(reversed(steps)))


def is_U_connected(theta, phi, U, a, N):
    """Shortest certificate that θ is (U, a)-connected to φ, or None."""
    theta, phi = tuple(theta), tuple(phi)
    U = [tuple(u) for u in U]
    if theta == phi:
        return ConnectednessCertificate()
    prev = {theta: None}
    queue = deque([theta])
    while queue:
        sigma = queue.popleft()
        for tau, step in _neighbours(N, U, a, sigma).items():
            if tau in prev:
                continue
            prev[tau] = (sigma, step)
            if tau == phi:
                return _path(prev, tau)
            queue.append(tau)
    return None


def check_connectivity_hypothesis(N, A, U, X, certificates=True):
    """For every θ ∈ N^A and x ∈ X: θ = c_{xθ} or θ is (U, x)-connected to c_{xθ}.

    Steps are reversible, so one BFS from each constant c_n per x answers
    every θ.  Returns {(x, θ): certificate} (θ ≠ c_{xθ} only), raising
    ``HypothesisFails`` with a witness otherwise.
    """
    U = [tuple(u) for u in U]
    maps = all_namaps(N, A)
    out = {}
    for x in X:
        trees = {}
        for theta in maps:
            target = namap_constant(A, theta[x])
            if theta == target:
                continue
            if theta[x] not in trees:
                trees[theta[x]] = _bfs_tree(N, U, x, target)
            prev = trees[theta[x]]
            if theta not in prev:
                raise HypothesisFails(f"θ={theta} is not ({x})-connected to its constant", theta=theta, x=x)
            if certificates:
                out[(x, theta)] = _path(prev, theta).reversed()
    return out


def reduce_T1(wpres, U, verify=True):
    """Replace T₁ by T₁' = {(x,y)·(1,θ) = (x,y)·(1,c_{xθ}) : θ ∈ U}.

    The connectivity hypothesis is checked first.  Returns
    (WreathPresentation with the reduced block, certificates).
    """
    wp = wpres.wp
    U = [tuple(u) for u in U]
    certs = check_connectivity_hypothesis(wp.N, wp.A, U, wpres.X)
    t1 = _t1(wp, wpres.X, len(wpres.Y), U)
    res = WreathPresentation(wp, wpres.act, wpres.gen_pairs, wpres.X, wpres.Y, t1, wpres.t2, wpres.t3)
    if verify:
        _verify(res.presentation, res.act, res.assign, "reduced wreath presentation")
    return res, certs


def left_zero_U(A, X, N, z):
    """U = {φ_x : x ∈ X}, φ_x(x) = 1 and φ_x(a) = z otherwise."""
    if any(N.table[z][n] != z for n in range(N.order)):
        raise NotLeftZero(f"{z} is not a left zero", z=z)
    U = [tuple(N.identity if a == x else z for a in range(A.size)) for x in X]
    check_connectivity_hypothesis(N, A, U, X, certificates=False)
    return U


def left_zero_certificate(N, A, x, theta, z):
    """The two-step sequence θ = c₁θ, φ_xθ = φ_x c_{xθ}, c₁c_{xθ} = c_{xθ} (U = [φ_x])."""
    return ConnectednessCertificate((ConnStep(False, 0, tuple(theta)),
                                     ConnStep(True, 0, namap_constant(A, theta[x]))))


def finite_A_fg_N_U(A, N, Xn, X=None):
    """U = {θ(a, x) : a ∈ A, x ∈ Xn} with θ(a, x) sending a to x and the rest to 1."""
    if not is_monoid_generating_set(N, Xn):
        raise NotMonoidGeneratingSet("Xn does not generate N")
    U = []
    for a in range(A.size):
        for x in Xn:
            th = tuple(x if b == a else N.identity for b in range(A.size))
            if th not in U:
                U.append(th)
    X = range(A.size) if X is None else X
    check_connectivity_hypothesis(N, A, U, X, certificates=False)
    return U


def reduced_T1_verifies(wpres, U):
    """Does ⟨X×Y | T₁(U), T₂, T₃⟩ present A≀B?  No hypothesis check."""
    t1 = _t1(wpres.wp, wpres.X, len(wpres.Y), [tuple(u) for u in U])
    res = WreathPresentation(wpres.wp, wpres.act, wpres.gen_pairs, wpres.X, wpres.Y, t1, wpres.t2, wpres.t3)
    return bool(is_presentation_of(res.presentation, res.act, res.assign))


def compare_condition_with_verification(wpres, max_U=2):
    """Run the connectivity condition and the reduced presentation side by side.

    Tries every U ⊆ N^A with |U| ≤ max_U.  Returns (number of agreements,
    list of (U, verifies, condition holds) disagreements).  Sufficiency
    means no disagreement has condition=True; a disagreement with
    verifies=True shows the condition is not necessary for that instance.
    """
    wp = wpres.wp
    maps = wp.maps
    agree, disagree = 0, []
    for k in range(max_U + 1):
        for U in itertools.combinations(maps, k):
            ok = reduced_T1_verifies(wpres, U)
            try:
                check_connectivity_hypothesis(wp.N, wp.A, list(U), wpres.X, certificates=False)
                cond = True
            except HypothesisFails:
                cond = False
            if ok == cond:
                agree += 1
            else:
                disagree.append((U, ok, cond))
    return agree, disagree
