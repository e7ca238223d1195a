"""Finite right acts over a ``FiniteMonoid``.

An act of size k stores ``action[a][m] = a·m`` for ``a < k``.  The
congruence machinery here is shared by every presentation check in the
package: a generated congruence is closed with union-find, and
derivation certificates are sequences of single relation applications
``p·m -> q·m`` that can be replayed element by element.
"""

from __future__ import annotations

import itertools
from collections import Counter, deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import NamedTuple

import numpy as np

from .errors import AssociativityFails, BaseMismatch, IdentityLawFails, NotACongruence, OutOfRange
from .limits import EXHAUSTIVE_CAP, check_size


@dataclass(frozen=True, eq=False)
class FiniteAct:
    base: object
    action: tuple
    labels: tuple = field(default=None)

    @property
    def size(self):
        return len(self.action)

    def __len__(self):
        return len(self.action)

    def act(self, a, m):
        return self.action[a][m]

    def orbit(self, a):
        """The cyclic subact aM."""
        return set(self.action[a])

    def label(self, a):
        if self.labels is None:
            return str(a)
        return str(self.labels[a])

    @cached_property
    def array(self):
        return np.asarray(self.action, dtype=np.int64).reshape(self.size, self.base.order)

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, FiniteAct):
            return NotImplemented
        return self.action == other.action and self.base == other.base

    def __hash__(self):
        return hash(self.action)

    def __repr__(self):
        return f"FiniteAct(size={self.size}, monoid_order={self.base.order})"


@dataclass(frozen=True, eq=False)
class FreeAct(FiniteAct):
    """X × M with (x, m)n = (x, mn); element (x, m) lives at ``x*|M| + m``."""

    gens: tuple = ()

    def encode(self, x, m):
        return x * self.base.order + m

    def decode(self, i):
        return divmod(i, self.base.order)

    @property
    def basis(self):
        return tuple(self.encode(x, self.base.identity) for x in range(len(self.gens)))


@dataclass(frozen=True)
class GeneratingSet:
    elems: tuple
    optimal: bool = True

    def __iter__(self):
        return iter(self.elems)

    def __len__(self):
        return len(self.elems)


class Step(NamedTuple):
    pair: int
    forward: bool
    mult: int


@dataclass(frozen=True)
class DerivationCertificate:
    """Chain ``a = p1·m1, q1·m1 = p2·m2, ..., qk·mk = b``.

    A backward step uses the pair reversed, which is how the symmetric
    closure of the relation set is represented without copying it.
    """

    steps: tuple = ()

    def __len__(self):
        return len(self.steps)

    def reversed(self):
        return DerivationCertificate(tuple(Step(s.pair, not s.forward, s.mult) for s in reversed(self.steps)))

    def to_json(self):
        return [{"pair": s.pair, "direction": "forward" if s.forward else "backward", "mult": s.mult}
                for s in self.steps]

    @classmethod
    def from_json(cls, data):
        return cls(tuple(Step(int(d["pair"]), d["direction"] == "forward", int(d["mult"])) for d in data))


def validate_act(base, size, action, labels=None):
    """Return a ``FiniteAct`` after checking a1 = a and a(mn) = (am)n."""
    if size < 1:
        raise OutOfRange("acts are non-empty")
    n = base.order
    if len(action) != size:
        raise OutOfRange(f"action has {len(action)} rows, expected {size}")
    rows = []
    for a, row in enumerate(action):
        row = tuple(int(v) for v in row)
        if len(row) != n or any(not 0 <= v < size for v in row):
            raise OutOfRange(f"action row {a} malformed", row=a)
        rows.append(row)
    for a in range(size):
        if rows[a][base.identity] != a:
            raise IdentityLawFails(f"{a}·1 != {a}", a=a)
    act = np.asarray(rows, dtype=np.int64)
    T = base.array
    for m in range(n):
        lhs = act[act[:, m]]  # (a·m)·n over all a, n
        rhs = act[:, T[m]]  # a·(mn)
        bad = np.argwhere(lhs != rhs)
        if len(bad):
            a, k = (int(v) for v in bad[0])
            raise AssociativityFails(f"({a}·{m})·{k} != {a}·({m}{k})", a=a, m=m, n=k)
    if labels is not None:
        labels = tuple(labels)
    return FiniteAct(base, tuple(rows), labels)


def right_regular_act(M):
    return FiniteAct(M, M.table, tuple(M.label(i) for i in range(M.order)))


def free_act(X, M):
    """Free act on the labels ``X``; basis is X × {1}."""
    X = tuple(X)
    if not X:
        raise OutOfRange("free act needs at least one generator")
    n = M.order
    check_size(len(X) * n, "free act")
    action = tuple(tuple(x * n + M.table[m][k] for k in range(n)) for x in range(len(X)) for m in range(n))
    labels = tuple(f"{x}.{M.label(m)}" for x in X for m in range(n))
    return FreeAct(M, action, labels, X)


def trivial_act(M):
    return FiniteAct(M, (tuple(0 for _ in range(M.order)),), ("*",))


def _same_base(A, B):
    if not (A.base is B.base or A.base == B.base):
        raise BaseMismatch("acts are over different monoids")


def closure_of(A, U):
    """Union of the orbits uM for u in U."""
    out = set()
    for u in U:
        out.update(A.action[u])
    return out


def is_generating_set(A, U):
    return len(closure_of(A, U)) == A.size


def _forced_generators(A):
    """Elements lying in no orbit but their own; every generating set has them."""
    covered = set()
    for b in range(A.size):
        covered.update(x for x in A.action[b] if x != b)
    return [a for a in range(A.size) if a not in covered]


def minimal_generating_set(A, cap=EXHAUSTIVE_CAP):
    """Smallest generating set, lexicographically first among the smallest.

    Acts larger than ``cap`` get a greedy answer flagged ``optimal=False``.
    """
    if A.size > cap:
        return GeneratingSet(_greedy_generating_set(A), optimal=False)
    forced = _forced_generators(A)
    covered = closure_of(A, forced)
    if len(covered) == A.size:
        return GeneratingSet(tuple(forced))
    rest = [a for a in range(A.size) if a not in forced]
    orbits = [set(A.action[a]) for a in range(A.size)]
    for k in range(1, len(rest) + 1):
        for combo in itertools.combinations(rest, k):
            got = set(covered)
            for a in combo:
                got |= orbits[a]
            if len(got) == A.size:
                return GeneratingSet(tuple(sorted(forced + list(combo))))
    raise AssertionError("unreachable: A generates itself")


def _greedy_generating_set(A):
    orbits = [set(A.action[a]) for a in range(A.size)]
    order = sorted(range(A.size), key=lambda a: (-len(orbits[a]), a))
    chosen, covered = [], set()
    for a in order:
        if a not in covered:
            chosen.append(a)
            covered |= orbits[a]
    for a in list(chosen):
        rest = [b for b in chosen if b != a]
        if len(closure_of(A, rest)) == A.size:
            chosen = rest
    return tuple(sorted(chosen))


def all_generating_sets(A):
    """Every generating subset (exhaustive; for tiny acts only)."""
    check_size(A.size, "generating-set enumeration", cap=EXHAUSTIVE_CAP)
    orbits = [set(A.action[a]) for a in range(A.size)]
    out = []
    for mask in range(1, 1 << A.size):
        U = [a for a in range(A.size) if mask >> a & 1]
        got = set()
        for a in U:
            got |= orbits[a]
        if len(got) == A.size:
            out.append(tuple(U))
    return out


# --- congruences ---------------------------------------------------------


class _UnionFind:
    __slots__ = ("parent", "rank")

    def __init__(self, n):
        self.parent = list(range(n))
        self.rank = [0] * n

    def find(self, x):
        parent = self.parent
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.rank[ra] < self.rank[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        if self.rank[ra] == self.rank[rb]:
            self.rank[ra] += 1
        return True


@dataclass(frozen=True, eq=False)
class ActCongruence:
    """A congruence on ``act`` generated by ``pairs``.

    ``forest`` holds the merge edges actually used by union-find.  Every such
    edge is a single application ``(p_i·m, q_i·m)`` of a generating pair, so a
    path in the forest is a derivation certificate.  Path compression only
    touches the union-find parents, never the forest.
    """

    act: FiniteAct
    pairs: tuple
    class_of: tuple
    forest: tuple  # (u, v, pair index, multiplier) with u = p·m, v = q·m

    @property
    def num_classes(self):
        return max(self.class_of) + 1

    def same(self, a, b):
        return self.class_of[a] == self.class_of[b]

    def classes(self):
        out = [[] for _ in range(self.num_classes)]
        for a, c in enumerate(self.class_of):
            out[c].append(a)
        return out

    def certificate(self, a, b):
        """Derivation certificate read off the merge forest, or None."""
        if not self.same(a, b):
            return None
        if a == b:
            return DerivationCertificate()
        adj = {}
        for u, v, i, m in self.forest:
            adj.setdefault(u, []).append((v, Step(i, True, m)))
            adj.setdefault(v, []).append((u, Step(i, False, m)))
        prev = {a: None}
        queue = deque([a])
        while queue:
            w = queue.popleft()
            if w == b:
                break
            for nxt, step in adj.get(w, ()):
                if nxt not in prev:
                    prev[nxt] = (w, step)
                    queue.append(nxt)
        steps = []
        w = b
        while prev[w] is not None:
            w, step = prev[w]
            steps.append(step)
        return DerivationCertificate(tuple(reversed(steps)))


def _canonical_classes(uf, n):
    ids, class_of = {}, []
    for a in range(n):
        r = uf.find(a)
        if r not in ids:
            ids[r] = len(ids)
        class_of.append(ids[r])
    return tuple(class_of)


def congruence_closure(A, pairs, multipliers=None):
    """Smallest congruence on A containing ``pairs``.

    Worklist closure: union each pair, and for every successful union
    ``(p·m, q·m)`` push ``(p·mx, q·mx)`` for x in a monoid generating set.
    Pushing only for successful unions is enough because the merge edges
    span every class, and their translates by generators keep the relation
    closed under the action.
    """
    M = A.base
    gens = M.generators if multipliers is None else tuple(multipliers)
    pairs = tuple((int(p), int(q)) for p, q in pairs)
    act = A.action
    table = M.table
    uf = _UnionFind(A.size)
    forest = []
    work = [(p, q, i, M.identity) for i, (p, q) in enumerate(pairs)]
    while work:
        u, v, i, m = work.pop()
        if uf.union(u, v):
            forest.append((u, v, i, m))
            for x in gens:
                work.append((act[u][x], act[v][x], i, table[m][x]))
    return ActCongruence(A, pairs, _canonical_classes(uf, A.size), tuple(forest))


def identity_congruence(A):
    return ActCongruence(A, (), tuple(range(A.size)), ())


def single_application_graph(A, pairs):
    """Adjacency {w: [(w', Step)]} with w = p·m, w' = q·m over the symmetrised pairs."""
    adj = {}
    for i, (p, q) in enumerate(pairs):
        rp, rq = A.action[p], A.action[q]
        for m in range(A.base.order):
            u, v = rp[m], rq[m]
            if u == v:
                continue
            adj.setdefault(u, []).append((v, Step(i, True, m)))
            adj.setdefault(v, []).append((u, Step(i, False, m)))
    return adj


def connect_sequence(A, pairs, a, b, graph=None):
    """Shortest derivation certificate from a to b, or None if unconnected."""
    if a == b:
        return DerivationCertificate()
    adj = single_application_graph(A, pairs) if graph is None else graph
    prev = {a: None}
    queue = deque([a])
    while queue:
        w = queue.popleft()
        for nxt, step in adj.get(w, ()):
            if nxt in prev:
                continue
            prev[nxt] = (w, step)
            if nxt == b:
                steps = []
                while prev[nxt] is not None:
                    nxt, s = prev[nxt]
                    steps.append(s)
                return DerivationCertificate(tuple(reversed(steps)))
            queue.append(nxt)
    return None


def replay_certificate(A, pairs, a, b, cert):
    """True iff the certificate walks from a to b by single applications."""
    cur = a
    for step in cert.steps:
        if not 0 <= step.pair < len(pairs) or not 0 <= step.mult < A.base.order:
            return False
        p, q = pairs[step.pair]
        if not step.forward:
            p, q = q, p
        if A.action[p][step.mult] != cur:
            return False
        cur = A.action[q][step.mult]
    return cur == b


def is_congruence(A, class_of):
    rep = {}
    for a in range(A.size):
        rep.setdefault(class_of[a], a)
    for a in range(A.size):
        r = rep[class_of[a]]
        for m in range(A.base.order):
            if class_of[A.action[a][m]] != class_of[A.action[r][m]]:
                return False
    return True


def quotient_act(A, c):
    """A/c with projection list ``proj[a]`` = class id."""
    class_of = c.class_of if isinstance(c, ActCongruence) else tuple(c)
    if not is_congruence(A, class_of):
        raise NotACongruence("partition is not compatible with the action")
    k = max(class_of) + 1
    rep = [None] * k
    for a in range(A.size):
        if rep[class_of[a]] is None:
            rep[class_of[a]] = a
    action = tuple(tuple(class_of[x] for x in A.action[rep[i]]) for i in range(k))
    labels = tuple(f"[{A.label(rep[i])}]" for i in range(k))
    return FiniteAct(A.base, action, labels), tuple(class_of)


def direct_product_act(A, B):
    """(a, b)m = (am, bm); (a, b) is stored at ``a*|B| + b``."""
    _same_base(A, B)
    check_size(A.size * B.size, "direct product act")
    nb = B.size
    action = tuple(
        tuple(ra[m] * nb + rb[m] for m in range(A.base.order))
        for ra in A.action for rb in B.action
    )
    labels = tuple(f"({A.label(a)},{B.label(b)})" for a in range(A.size) for b in range(B.size))
    return FiniteAct(A.base, action, labels)


def disjoint_union_act(acts):
    """A₁ ⊔ ... ⊔ A_k, blocks laid out in order."""
    acts = list(acts)
    for B in acts[1:]:
        _same_base(acts[0], B)
    check_size(sum(A.size for A in acts), "disjoint union act")
    action, labels, offset = [], [], 0
    for i, A in enumerate(acts):
        action += [tuple(offset + x for x in row) for row in A.action]
        labels += [f"{i}:{A.label(a)}" for a in range(A.size)]
        offset += A.size
    return FiniteAct(acts[0].base, tuple(action), tuple(labels))


def orbit_signature(A):
    return Counter(len(set(row)) for row in A.action)


def act_isomorphic(A, B):
    """An M-isomorphism ``phi`` (list, phi[a] in B) or None.

    Backtracks over images of a generating set of A; each choice is
    propagated along the orbit and rejected at the first clash.
    """
    _same_base(A, B)
    if A.size != B.size or orbit_signature(A) != orbit_signature(B):
        return None
    gens = list(minimal_generating_set(A))
    n = A.base.order
    sig_b = [len(set(row)) for row in B.action]
    sig_a = [len(set(row)) for row in A.action]

    def extend(phi, used, g, img):
        phi, used = dict(phi), set(used)
        for m in range(n):
            a, b = A.action[g][m], B.action[img][m]
            if a in phi:
                if phi[a] != b:
                    return None
            else:
                if b in used:
                    return None
                phi[a] = b
                used.add(b)
        return phi, used

    def search(i, phi, used):
        if i == len(gens):
            return phi if len(phi) == A.size else None
        g = gens[i]
        if g in phi:
            res = extend(phi, used, g, phi[g])
            return None if res is None else search(i + 1, *res)
        for img in range(B.size):
            if img in used or sig_b[img] != sig_a[g]:
                continue
            res = extend(phi, used, g, img)
            if res is not None:
                found = search(i + 1, *res)
                if found is not None:
                    return found
        return None

    found = search(0, {}, set())
    if found is None:
        return None
    return [found[a] for a in range(A.size)]


def is_homomorphism(A, B, phi):
    return all(phi[A.action[a][m]] == B.action[phi[a]][m] for a in range(A.size) for m in range(A.base.order))


def is_free(A, cap=EXHAUSTIVE_CAP):
    """A basis (sorted tuple) if A is free, else None.

    A basis element u needs m -> um injective, and the orbits of basis
    elements must partition A; this is an exact-cover search.
    """
    check_size(A.size, "free-basis search", cap=cap)
    n = A.base.order
    candidates = [u for u in range(A.size) if len(set(A.action[u])) == n]
    orbit = {u: frozenset(A.action[u]) for u in candidates}

    def cover(covered, chosen):
        if len(covered) == A.size:
            return chosen
        a = min(x for x in range(A.size) if x not in covered)
        for u in candidates:
            o = orbit[u]
            if a in o and not (o & covered):
                found = cover(covered | o, chosen + [u])
                if found is not None:
                    return found
        return None

    found = cover(frozenset(), [])
    return None if found is None else tuple(sorted(found))
