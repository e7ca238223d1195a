"""Acceptance suite over the small family.

Each criterion is a function returning a ``CriterionResult``; ``run_suite``
runs them in order and times each one.  Certificates produced anywhere are
pushed into a shared ledger and replayed by criterion 2, which therefore
runs last even though it is reported second.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field

from . import oracles
from .act import (
    all_generating_sets,
    congruence_closure,
    connect_sequence,
    is_generating_set,
    minimal_generating_set,
    replay_certificate,
    right_regular_act,
    single_application_graph,
)
from .diagonal import (
    attach_act_factor_presentation,
    attach_act_generators,
    attach_act_projections,
    diagonal_act,
    diagonal_presentation,
    generates_diagonal,
    pair_index,
    product_diagonal_factor_presentation,
    product_diagonal_generators,
    product_diagonal_presentation,
    project_diagonal_generators,
    project_diagonal_generators_second,
    rectangular_generating_set,
    regular_presentation,
    restrict_presentation_to_submonoid,
    square_generating_set,
    zero_extension_generators,
    zero_extension_presentation,
)
from .direct_product import (
    build_decomposition,
    crucial_identity_check,
    dp_factor_presentation,
    dp_generating_set,
    dp_presentation,
    dp_satisfied,
)
from .errors import ActForgeError
from .families import FAMILY_NAMES, family_monoid, small_acts
from .monoid import chain_semilattice, is_ideal, left_zero_monoid, semilattice2
from .presentation import (
    canonical_presentation,
    is_irredundant,
    is_presentation_of,
    presentation_on_generators,
    reduce_presentation,
)
from .wreath import (
    left_zero_certificate,
    finite_A_fg_N_U,
    left_zero_U,
    namap_constant,
    reduce_T1,
    replay_connectedness,
    wreath_act,
    wreath_factor_presentations,
    wreath_generating_set,
    wreath_monoid,
    wreath_presentation,
    wreath_projections,
)

FREE_CAP = 2000
WREATH_CAP = 64


@dataclass
class CriterionResult:
    number: int
    title: str
    ok: bool
    checked: int = 0
    failures: list = field(default_factory=list)
    elapsed: float = 0.0
    limit: float = None

    @property
    def passed(self):
        return self.ok and not self.failures and (self.limit is None or self.elapsed < self.limit)

    def line(self):
        status = "PASS" if self.passed else "FAIL"
        lim = f" (limit {self.limit:g}s)" if self.limit is not None else ""
        extra = f"; first failure: {self.failures[0]}" if self.failures else ""
        return f"[{status}] {self.number:2d}. {self.title}: {self.checked} checks, {self.elapsed:.2f}s{lim}{extra}"

    def to_json(self):
        return {"criterion": self.number, "title": self.title, "passed": self.passed, "checked": self.checked,
                "failures": [str(f) for f in self.failures[:5]], "elapsed": round(self.elapsed, 3),
                "limit": self.limit}


class _Context:
    """State shared across criteria: caches, certificates, wreath outputs."""

    def __init__(self, seed):
        self.seed = seed
        self.certs = []  # (description, zero-arg replay callable)
        self.wreath_outputs = []
        self._pres = {}
        self._diag = {}

    def act_presentation(self, A):
        if A not in self._pres:
            gens = minimal_generating_set(A).elems
            P, assign = presentation_on_generators(A, gens)
            self._pres[A] = (reduce_presentation(P, A, assign), assign)
        return self._pres[A]

    def diag_presentation(self, M, U, V):
        key = (M, tuple(U), tuple(V))
        if key not in self._diag:
            self._diag[key] = diagonal_presentation(M, U, V)
        return self._diag[key]


def _monoids():
    return [(n, family_monoid(n)) for n in FAMILY_NAMES]


def _attempt(res, what, fn):
    """Run one check; exceptions and False count as failures."""
    res.checked += 1
    try:
        ok = fn()
    except ActForgeError as e:
        res.failures.append(f"{what}: {type(e).__name__}: {e}")
        return None
    if ok is False or ok is None:
        res.failures.append(what)
    return ok


# --- 1 ---------------------------------------------------------------------


def crit_closure(ctx):
    res = CriterionResult(1, "congruence closure = naive fixpoint", True, limit=5.0)
    rng = random.Random(ctx.seed)
    for name, M in _monoids():
        for aname, A in small_acts(name, 6):
            for trial in range(100):
                k = rng.randint(0, 3)
                pairs = [(rng.randrange(A.size), rng.randrange(A.size)) for _ in range(k)]
                c = congruence_closure(A, pairs)
                naive = oracles.naive_congruence_partition(A.action, M.order, pairs)
                res.checked += 1
                if c.class_of != naive:
                    res.failures.append((name, aname, pairs))
                if trial % 20 == 0:
                    _collect_derivations(ctx, f"{name}/{aname}", A, c)
    return res


def _collect_derivations(ctx, label, A, c):
    graph = single_application_graph(A, c.pairs)
    for cls in c.classes():
        for a, b in itertools.combinations(cls, 2):
            forest_cert = c.certificate(a, b)
            bfs_cert = connect_sequence(A, c.pairs, a, b, graph=graph)
            ctx.certs.append((f"{label} forest {a}~{b}",
                              lambda A=A, c=c, a=a, b=b, x=forest_cert: replay_certificate(A, c.pairs, a, b, x)))
            ctx.certs.append((f"{label} bfs {a}~{b}",
                              lambda A=A, c=c, a=a, b=b, x=bfs_cert: replay_certificate(A, c.pairs, a, b, x)
                              and replay_certificate(A, c.pairs, b, a, x.reversed())))


# --- 2 ---------------------------------------------------------------------


def crit_certificates(ctx):
    res = CriterionResult(2, "every certificate replays", True)
    for what, replay in ctx.certs:
        _attempt(res, what, replay)
    return res


# --- 3 ---------------------------------------------------------------------


def _uv_choices(M):
    sq = square_generating_set(M)
    rect = rectangular_generating_set(M)
    everything = tuple(range(M.order))
    out = []
    for U, V in ((sq.U, sq.V), (rect.U, rect.V), (everything, everything)):
        if (U, V) not in out:
            out.append((U, V))
    return out


def crit_dp_generating(ctx):
    res = CriterionResult(3, "XU×YV generates A×B", True, limit=10.0)
    for name, M in _monoids():
        acts = [(n, A) for n, A in small_acts(name) if A.size <= 3]
        uvs = _uv_choices(M)
        for (an, A), (bn, B) in itertools.product(acts, acts):
            for X in all_generating_sets(A):
                for Y in all_generating_sets(B):
                    for U, V in uvs:
                        def check(A=A, X=X, B=B, Y=Y, U=U, V=V):
                            s = dp_generating_set(A, X, B, Y, U, V)
                            return (is_generating_set(s.product, s.Z)
                                    and oracles.brute_is_generating(s.product.action, s.Z)
                                    and len(s.Z) <= len(X) * len(U) * len(Y) * len(V))
                        _attempt(res, f"{name} {an}×{bn} X={X} Y={Y} U={U} V={V}", check)
    return res


# --- 4 ---------------------------------------------------------------------


def crit_dp_presentation(ctx):
    res = CriterionResult(4, "T1,T2,T3 presents A×B", True, limit=60.0)
    for name, M in _monoids():
        acts = small_acts(name)
        for (U, V), (an, A), (bn, B) in itertools.product(_uv_choices(M), acts, acts):
            P_A, aA = ctx.act_presentation(A)
            P_B, aB = ctx.act_presentation(B)
            bound = len(aA) * len(U) * len(aB) * len(V) * M.order
            if bound > FREE_CAP:
                continue
            P_diag, a_diag = ctx.diag_presentation(M, U, V)

            def check(A=A, B=B, P_A=P_A, aA=aA, P_B=P_B, aB=aB):
                setup, P, assign, _ = dp_presentation(P_A, aA, A, P_B, aB, B, P_diag, a_diag, verify=False)
                return dp_satisfied(setup, P, assign) and bool(is_presentation_of(P, setup.product, assign))
            _attempt(res, f"{name} {an}×{bn} U={U} V={V}", check)
    return res


# --- 5 ---------------------------------------------------------------------


def crit_crucial_identity(ctx):
    res = CriterionResult(5, "crucial identity for every decomposition", True, limit=1.0)
    for name, M in _monoids():
        for U, V in _uv_choices(M):
            _attempt(res, f"{name} U={U} V={V}", lambda M=M, U=U, V=V: crucial_identity_check(M, build_decomposition(M, U, V)))
    return res


# --- 6 / 10 ----------------------------------------------------------------


def _wreath_instances():
    for (mn, M), (nn, N) in itertools.product(_monoids(), _monoids()):
        for an, A in small_acts(mn):
            if M.order * N.order ** A.size > WREATH_CAP:
                continue
            for bn, B in small_acts(nn):
                yield (mn, M, an, A), (nn, N, bn, B)


def crit_wreath(ctx):
    res = CriterionResult(6, "X×Y generates A≀B and T1,T2,T3 presents it", True, limit=60.0)
    wcache = {}
    for (mn, M, an, A), (nn, N, bn, B) in _wreath_instances():
        P_A, X = ctx.act_presentation(A)
        P_B, Y = ctx.act_presentation(B)
        key = (A, N)
        if key not in wcache:
            wcache[key] = wreath_monoid(M, N, A)
        wp = wcache[key]
        if len(X) * len(Y) * wp.monoid.order > FREE_CAP:
            continue
        label = f"{mn}:{an} ≀ {nn}:{bn}"

        def gen_check(A=A, B=B, X=X, Y=Y, wp=wp):
            _, W = wreath_act(A, B, wp)
            Z = wreath_generating_set(A, X, B, Y)
            pa, pb = wreath_projections(B, Z)
            return (is_generating_set(W, Z) and oracles.brute_is_generating(W.action, Z)
                    and is_generating_set(A, pa) and is_generating_set(B, pb))
        _attempt(res, label + " generation", gen_check)

        def pres_check(A=A, B=B, X=X, Y=Y, P_A=P_A, P_B=P_B, wp=wp, label=label):
            w = wreath_presentation(P_A, X, A, P_B, Y, B, wp, verify=False)
            ok = bool(is_presentation_of(w.presentation, w.act, w.assign))
            if ok:
                ctx.wreath_outputs.append((label, w, A, B))
            return ok and len(w.t1) == len(X) * len(Y) * len(wp.maps)
        _attempt(res, label + " presentation", pres_check)
    return res


def crit_wreath_factors(ctx):
    res = CriterionResult(10, "factor presentations of A≀B verify", True)
    for label, w, A, B in ctx.wreath_outputs:
        def check(w=w, A=A, B=B):
            (PA, X), (PB, Y) = wreath_factor_presentations(w.presentation, w.assign, w.wp, A, B)
            return bool(is_presentation_of(PA, A, X)) and bool(is_presentation_of(PB, B, Y))
        _attempt(res, label, check)
    return res


# --- 7 ---------------------------------------------------------------------


def _left_zeros(N):
    return [z for z in range(N.order) if all(N.table[z][n] == z for n in range(N.order))]


def crit_reduce_T1(ctx):
    res = CriterionResult(7, "reduced T1 keeps a presentation of A≀B", True, limit=30.0)
    Ns = [(n, family_monoid(n)) for n in FAMILY_NAMES] + [("LZ2", left_zero_monoid(2))]
    for (mn, M), (nn, N) in itertools.product(_monoids(), Ns):
        Bs = [right_regular_act(N)]
        for an, A in small_acts(mn):
            if M.order * N.order ** A.size > WREATH_CAP:
                continue
            P_A, X = ctx.act_presentation(A)
            for B in Bs:
                P_B, Y = ctx.act_presentation(B)
                wp = wreath_monoid(M, N, A)
                if len(X) * len(Y) * wp.monoid.order > FREE_CAP:
                    continue
                w = wreath_presentation(P_A, X, A, P_B, Y, B, wp, verify=False)
                choices = [(f"fg {N.generators}", lambda A=A, N=N: finite_A_fg_N_U(A, N, N.generators, X))]
                for z in _left_zeros(N):
                    choices.append((f"left zero {z}", lambda A=A, N=N, X=X, z=z: left_zero_U(A, X, N, z)))
                for cname, make_U in choices:
                    label = f"{mn}:{an} ≀ {nn} ({cname})"

                    def check(w=w, make_U=make_U, N=N, label=label):
                        U = make_U()
                        red, certs = reduce_T1(w, U, verify=False)
                        for (x, th), cert in certs.items():
                            target = namap_constant(w.wp.A, th[x])
                            ctx.certs.append((f"{label} θ={th} x={x}",
                                              lambda N=N, U=U, x=x, th=th, t=target, c=cert:
                                              replay_connectedness(N, U, x, th, t, c)))
                        ok = bool(is_presentation_of(red.presentation, red.act, red.assign))
                        if len(w.wp.maps) > len(U):
                            ok = ok and len(red.t1) < len(w.t1)
                        return ok and len(red.t1) == len(X) * len(Y) * len(U)
                    _attempt(res, label, check)
                # the explicit two-step sequence for a left zero
                for z in _left_zeros(N):
                    for x in X:
                        phi = tuple(N.identity if a == x else z for a in range(A.size))
                        for th in wp.maps:
                            cert = left_zero_certificate(N, A, x, th, z)
                            ctx.certs.append((f"left-zero sequence {nn} z={z} θ={th}",
                                              lambda N=N, phi=phi, x=x, th=th, c=cert, A=A:
                                              replay_connectedness(N, [phi], x, th, namap_constant(A, th[x]), c)))
    return res


# --- 8 ---------------------------------------------------------------------


def _ideal_complement_submonoids(M):
    out = []
    others = [m for m in range(M.order) if m != M.identity]
    for k in range(len(others)):
        for extra in itertools.combinations(others, k):
            N = {M.identity, *extra}
            rest = [m for m in range(M.order) if m not in N]
            if all(M.table[a][b] in N for a in N for b in N) and is_ideal(M, rest):
                out.append(tuple(sorted(N)))
    return out


def crit_diagonal(ctx):
    res = CriterionResult(8, "diagonal-act constructions", True, limit=60.0)
    mons = _monoids()
    for name, M in mons:
        sq = square_generating_set(M)
        U = sq.U
        for UU in (U, tuple(range(M.order))):
            _attempt(res, f"{name} zero-extension count U={UU}",
                     lambda M=M, UU=UU: len(zero_extension_generators(M, UU)[1]) == (len(UU) + 1) ** 2 - 1)
        P_diag, a_diag = ctx.diag_presentation(M, U, U)
        P_M, a_M = regular_presentation(M, U)

        def zero_check(M=M, P_diag=P_diag, a_diag=a_diag, P_M=P_M, a_M=a_M):
            M0, P, Z = zero_extension_presentation(M, P_diag, a_diag, P_M, a_M)
            return bool(is_presentation_of(P, diagonal_act(M0), Z))
        _attempt(res, f"{name} zero-extension presentation", zero_check)
        for N_elems in _ideal_complement_submonoids(M):
            def restrict_check(M=M, N_elems=N_elems, P_diag=P_diag, a_diag=a_diag, U=U):
                N, emb, Q, assign = restrict_presentation_to_submonoid(P_diag, a_diag, M, N_elems, U)
                return bool(is_presentation_of(Q, diagonal_act(N), assign))
            _attempt(res, f"{name} restriction to {N_elems}", restrict_check)
    # product diagonals over F×F
    for (mn, M), (nn, N) in itertools.product(mons, mons):
        U, V = square_generating_set(M).U, square_generating_set(N).U

        def forward(M=M, N=N, U=U, V=V):
            MN, Z, labels = product_diagonal_generators(M, N, U, V)
            W = sorted({a for a, _ in labels} | {b for _, b in labels})
            W = sorted({u * N.order + v for u, v in W})
            return (is_generating_set(diagonal_act(MN), Z)
                    and generates_diagonal(M, project_diagonal_generators(M, N, W))
                    and generates_diagonal(N, project_diagonal_generators_second(M, N, W)))
        _attempt(res, f"{mn}×{nn} product diagonal generators", forward)
        if M.order * N.order <= 12:
            def converse(M=M, N=N):
                from .monoid import direct_product_monoid
                W = square_generating_set(direct_product_monoid(M, N)).U
                return (generates_diagonal(M, project_diagonal_generators(M, N, W))
                        and generates_diagonal(N, project_diagonal_generators_second(M, N, W)))
            _attempt(res, f"{mn}×{nn} projections of a minimal generating set", converse)
        if (len(U) * len(V)) ** 2 * M.order * N.order > FREE_CAP:
            continue
        P_M, a_M = ctx.diag_presentation(M, U, U)
        P_N, a_N = ctx.diag_presentation(N, V, V)

        def prod_check(M=M, N=N, P_M=P_M, a_M=a_M, P_N=P_N, a_N=a_N):
            MN, P, Z, _, _ = product_diagonal_presentation(M, N, P_M, a_M, P_N, a_N, verify=False)
            if not is_presentation_of(P, diagonal_act(MN), Z):
                return False
            Q1, q1 = product_diagonal_factor_presentation(M, N, P, Z)
            Q2, q2 = product_diagonal_factor_presentation(M, N, P, Z, second=True)
            return bool(is_presentation_of(Q1, diagonal_act(M), q1)) and bool(is_presentation_of(Q2, diagonal_act(N), q2))
        _attempt(res, f"{mn}×{nn} product diagonal presentation", prod_check)
    # U(M, A)
    for name, M in mons:
        U = tuple(sorted(set(square_generating_set(M).U) | {M.identity}))
        for an, A in small_acts(name)[:4]:
            X = minimal_generating_set(A).elems

            def attach_check(M=M, A=A, X=X, U=U):
                Umon, Vg = attach_act_generators(M, A, X, U)
                XA, UM = attach_act_projections(M, A, Vg)
                if not (is_generating_set(A, XA) and generates_diagonal(M, UM)):
                    return False
                if len(Vg) ** 2 * Umon.order > FREE_CAP:
                    return True
                P, assign = diagonal_presentation(Umon, Vg)
                Q, Xq, _ = attach_act_factor_presentation(M, A, Umon, P, assign, X, U)
                return bool(is_presentation_of(Q, A, Xq))
            _attempt(res, f"U({name},{an})", attach_check)
    # factor presentations out of a direct product (V = U)
    for name, M in mons:
        U = square_generating_set(M).U
        acts = small_acts(name)[:3]
        for (an, A), (bn, B) in itertools.product(acts, acts):
            P_A, aA = ctx.act_presentation(A)
            P_B, aB = ctx.act_presentation(B)
            if len(aA) * len(aB) * len(U) ** 2 * M.order > FREE_CAP:
                continue
            P_diag, a_diag = ctx.diag_presentation(M, U, U)

            def factor_check(A=A, B=B, P_A=P_A, aA=aA, P_B=P_B, aB=aB, P_diag=P_diag, a_diag=a_diag, U=U):
                setup, P, assign, _ = dp_presentation(P_A, aA, A, P_B, aB, B, P_diag, a_diag, verify=False)
                Q, Xq, n_img = dp_factor_presentation(P, assign, A, B, aA, U)
                return bool(is_presentation_of(Q, A, Xq)) and n_img <= len(P.relations)
            _attempt(res, f"{name} factor of {an}×{bn}", factor_check)
    return res


# --- 9 ---------------------------------------------------------------------


def crit_example_identity_row(ctx):
    res = CriterionResult(9, "every generating set of M×M contains {1}×M", True)
    for name, M in (("E2", semilattice2()), ("C3", chain_semilattice(3))):
        D = diagonal_act(M)
        row = {pair_index(M, M.identity, m) for m in range(M.order)}
        sets = all_generating_sets(D)
        res.checked += len(sets)
        for S in sets:
            if not row <= set(S):
                res.failures.append((name, S))
        if not sets:
            res.failures.append((name, "no generating sets"))
    return res


# --- 11 --------------------------------------------------------------------


def crit_reduce(ctx):
    res = CriterionResult(11, "reduced presentations verify and are irredundant", True)
    for name, M in _monoids():
        for an, A in small_acts(name):
            inputs = [canonical_presentation(A), presentation_on_generators(A, minimal_generating_set(A).elems)]
            for k, (P, assign) in enumerate(inputs):
                if P.num_gens * M.order > FREE_CAP:
                    continue

                def check(P=P, assign=assign, A=A):
                    R = reduce_presentation(P, A, assign)
                    return bool(is_presentation_of(R, A, assign)) and is_irredundant(R, A, assign)
                _attempt(res, f"{name}:{an} input {k}", check)
    return res


CRITERIA = {
    1: crit_closure,
    3: crit_dp_generating,
    4: crit_dp_presentation,
    5: crit_crucial_identity,
    6: crit_wreath,
    7: crit_reduce_T1,
    8: crit_diagonal,
    9: crit_example_identity_row,
    10: crit_wreath_factors,
    11: crit_reduce,
    2: crit_certificates,
}


def run_criterion(ctx, number):
    t = time.perf_counter()
    res = CRITERIA[number](ctx)
    res.elapsed = time.perf_counter() - t
    return res


def run_suite(family="small", only=None, seed=0, report=None):
    """Run the criteria (dependencies first) and return results sorted by number.

    ``report`` is called with each result as soon as it is ready.
    """
    if family != "small":
        raise ValueError(f"unknown family {family!r}")
    ctx = _Context(seed)
    wanted = set(CRITERIA) if only is None else set(only)
    # 10 reads the outputs of 6, and 2 replays what everything else produced
    if 10 in wanted:
        wanted.add(6)
    results = []
    for number in CRITERIA:
        if number in wanted:
            res = run_criterion(ctx, number)
            results.append(res)
            if report is not None:
                report(res)
    return sorted(results, key=lambda r: r.number)
