"""Act presentations ⟨X | R⟩ over the free act F_X.

A free-act element ``x·m`` is a ``FreeActElem(gen, elem)``; inside the free
act it lives at index ``gen*|M| + elem``.  Generator labels are arbitrary
hashable payloads (tuples for composite generators) so the product and
wreath constructions never parse strings.

Verification compares two partitions of F_X: the congruence generated by R
and the kernel of the evaluation map into the target act.  This is exact
and needs no isomorphism search.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

from .act import (
    DerivationCertificate,
    closure_of,
    congruence_closure,
    connect_sequence,
    free_act,
    quotient_act,
    replay_certificate,
)
from .errors import NotAPresentation, NotMonoidGeneratingSet, OutOfRange
from .limits import check_size
from .monoid import is_monoid_generating_set


class FreeActElem(NamedTuple):
    gen: int
    elem: int

    def times(self, M, m):
        return FreeActElem(self.gen, M.table[self.elem][m])


class ActRelation(NamedTuple):
    lhs: FreeActElem
    rhs: FreeActElem

    def reversed(self):
        return ActRelation(self.rhs, self.lhs)


@dataclass(frozen=True, eq=False)
class ActPresentation:
    gen_labels: tuple
    monoid: object
    relations: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "gen_labels", tuple(self.gen_labels))
        rels = tuple(ActRelation(FreeActElem(*r[0]), FreeActElem(*r[1])) for r in self.relations)
        k, n = len(self.gen_labels), self.monoid.order
        for r in rels:
            for w in r:
                if not (0 <= w.gen < k and 0 <= w.elem < n):
                    raise OutOfRange(f"relation side {w} out of range")
        object.__setattr__(self, "relations", rels)

    @property
    def num_gens(self):
        return len(self.gen_labels)

    def with_relations(self, relations):
        return ActPresentation(self.gen_labels, self.monoid, tuple(relations))

    def free_index(self, w):
        gen, elem = w
        return gen * self.monoid.order + elem

    def index_pairs(self):
        n = self.monoid.order
        return [(r.lhs.gen * n + r.lhs.elem, r.rhs.gen * n + r.rhs.elem) for r in self.relations]

    def format_elem(self, w):
        return f"{self.gen_labels[w.gen]}.{self.monoid.label(w.elem)}"

    def __repr__(self):
        return f"ActPresentation(gens={self.num_gens}, relations={len(self.relations)})"


@dataclass
class Verdict:
    """Outcome of ``is_presentation_of``; truthy iff the presentation verifies."""

    ok: bool
    reason: str = ""
    witness: tuple = None
    closure_classes: int = 0
    kernel_classes: int = 0
    extra: dict = field(default_factory=dict)

    def __bool__(self):
        return self.ok

    def to_json(self):
        return {
            "ok": self.ok,
            "reason": self.reason,
            "witness": None if self.witness is None else [list(w) for w in self.witness],
            "closure_classes": self.closure_classes,
            "kernel_classes": self.kernel_classes,
        }


def symmetrize(relations):
    """R ∪ R⁻¹ without duplicates; returns (relations, origin) with
    ``origin[k] = (index into R, forward?)``."""
    out, origin, seen = [], [], set()
    relations = [ActRelation(*r) for r in relations]
    for i, r in enumerate(relations):
        if r not in seen:
            seen.add(r)
            out.append(r)
            origin.append((i, True))
    for i, r in enumerate(relations):
        rr = r.reversed()
        if rr not in seen:
            seen.add(rr)
            out.append(rr)
            origin.append((i, False))
    return out, origin


def relation_sides(relations):
    """Every side of every relation: the left components of R ∪ R⁻¹, as a multiset."""
    out = []
    for r in relations:
        out.append(r[0])
        out.append(r[1])
    return out


def build_free_act(P):
    check_size(P.num_gens * P.monoid.order, "free act of the presentation")
    return free_act(P.gen_labels, P.monoid)


def closure(P, free=None):
    F = build_free_act(P) if free is None else free
    return F, congruence_closure(F, P.index_pairs())


def defined_act(P):
    """The act F_X/ρ(R) and the projection ``proj[free index] -> class``."""
    F, c = closure(P)
    A, proj = quotient_act(F, c)
    return A, proj


def evaluate(A, assign, w):
    return A.action[assign[w.gen]][w.elem]


def satisfies(A, assign, relations):
    return all(evaluate(A, assign, r[0]) == evaluate(A, assign, r[1]) for r in relations)


def is_consequence(P, w1, w2):
    """Derivation certificate for w1 = w2 from P's relations, or None."""
    w1, w2 = FreeActElem(*w1), FreeActElem(*w2)
    if w1 == w2:
        return DerivationCertificate()
    F = build_free_act(P)
    return connect_sequence(F, P.index_pairs(), P.free_index(w1), P.free_index(w2))


def replay_consequence(P, w1, w2, cert):
    F = build_free_act(P)
    return replay_certificate(F, P.index_pairs(), P.free_index(FreeActElem(*w1)), P.free_index(FreeActElem(*w2)), cert)


def is_presentation_of(P, A, assign):
    """Check that ⟨X|R⟩ presents A under ``assign`` (generator -> element).

    (i) the generators' images generate A; (ii) A satisfies R; (iii) the
    congruence generated by R equals the kernel of evaluation F_X -> A.
    Given (ii), the closure refines the kernel, so (iii) fails exactly when
    two words equal in A lie in different closure classes; the first such
    pair is the witness.
    """
    assign = tuple(assign)
    n = P.monoid.order
    if len(assign) != P.num_gens:
        return Verdict(False, "assignment does not cover every generator")
    if not (A.base is P.monoid or A.base == P.monoid):
        return Verdict(False, "act and presentation use different monoids")
    if not (len(closure_of(A, assign)) == A.size):
        return Verdict(False, "generators do not generate the act")
    for r in P.relations:
        if evaluate(A, assign, r.lhs) != evaluate(A, assign, r.rhs):
            return Verdict(False, "act does not satisfy a relation", witness=(tuple(r.lhs), tuple(r.rhs)))
    F, c = closure(P)
    values = [A.action[assign[x]][m] for x in range(P.num_gens) for m in range(n)]
    first_word = {}
    for i, v in enumerate(values):
        j = first_word.setdefault(v, i)
        if not c.same(i, j):
            w1, w2 = F.decode(j), F.decode(i)
            return Verdict(False, "closure separates two words that are equal in the act",
                           witness=(tuple(w1), tuple(w2)), closure_classes=c.num_classes,
                           kernel_classes=len(first_word))
    return Verdict(True, "ok", closure_classes=c.num_classes, kernel_classes=A.size)


def canonical_presentation(A, Xm=None):
    """⟨A | a·x = (ax)·1 for a in A, x in Xm⟩ with generators all of A."""
    M = A.base
    Xm = M.generators if Xm is None else tuple(Xm)
    if not is_monoid_generating_set(M, Xm):
        raise NotMonoidGeneratingSet("Xm does not generate the monoid", Xm=list(Xm))
    one = M.identity
    rels = [ActRelation(FreeActElem(a, x), FreeActElem(A.action[a][x], one)) for a in range(A.size) for x in Xm]
    return ActPresentation(tuple(range(A.size)), M, tuple(rels)), tuple(range(A.size))


def normal_forms(A, gens):
    """For each element a, the first word y·m (y index into gens) reaching it."""
    nf = {}
    for y, g in enumerate(gens):
        for m, a in enumerate(A.action[g]):
            nf.setdefault(a, FreeActElem(y, m))
    return nf


def presentation_on_generators(A, gens, Xm=None, labels=None):
    """A finite presentation of A on an arbitrary generating set ``gens``.

    Choose a normal form ν(a) for every element.  Relations
    y·1 = ν(y) and ν(a)·x = ν(ax) for x in a monoid generating set force
    every word y·m onto ν(ym) by induction on the length of m.
    """
    M = A.base
    gens = tuple(gens)
    Xm = M.generators if Xm is None else tuple(Xm)
    if not is_monoid_generating_set(M, Xm):
        raise NotMonoidGeneratingSet("Xm does not generate the monoid", Xm=list(Xm))
    nf = normal_forms(A, gens)
    if len(nf) != A.size:
        raise NotAPresentation("gens do not generate the act")
    rels, seen = [], set()

    def add(u, v):
        if u != v and (u, v) not in seen and (v, u) not in seen:
            seen.add((u, v))
            rels.append(ActRelation(u, v))

    for y, g in enumerate(gens):
        add(FreeActElem(y, M.identity), nf[g])
    for a in range(A.size):
        w = nf[a]
        for x in Xm:
            add(w.times(M, x), nf[A.action[a][x]])
    labels = gens if labels is None else tuple(labels)
    return ActPresentation(labels, M, tuple(rels)), gens


def dedupe_relations(relations):
    out, seen = [], set()
    for r in relations:
        r = ActRelation(*r)
        if r not in seen and r.reversed() not in seen:
            seen.add(r)
            out.append(r)
    return out


def reduce_presentation(P, A, assign):
    """Greedy irredundant sub-presentation.

    Relations are tried for removal from the highest index down.  Removing r
    keeps the presentation valid iff r still follows from the others, which
    is a single closure query.  One pass suffices: if r was needed while more
    relations were present it is still needed after others are dropped.
    """
    if not is_presentation_of(P, A, assign):
        raise NotAPresentation("input does not present the act")
    F = build_free_act(P)
    pairs = P.index_pairs()
    keep = [True] * len(pairs)
    seen = set()
    for i, (p, q) in enumerate(pairs):
        key = (min(p, q), max(p, q))
        if p == q or key in seen:
            keep[i] = False
        else:
            seen.add(key)
    for i in range(len(pairs) - 1, -1, -1):
        if not keep[i]:
            continue
        keep[i] = False
        c = congruence_closure(F, [pr for pr, k in zip(pairs, keep) if k])
        if not c.same(*pairs[i]):
            keep[i] = True
    return P.with_relations(r for r, k in zip(P.relations, keep) if k)


def is_irredundant(P, A, assign):
    """Removing any single relation breaks verification."""
    for i in range(len(P.relations)):
        Q = P.with_relations(P.relations[:i] + P.relations[i + 1:])
        if is_presentation_of(Q, A, assign):
            return False
    return True
