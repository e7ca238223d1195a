"""Finite monoids stored as multiplication tables.

Elements are the integers ``0..order-1``; ``table[a][b]`` is the product
``a*b``.  Labels are cosmetic and never used for identity.

Transformation monoids compose left-to-right (``x(fg) = (xf)g``) so that the
right-regular act satisfies ``a(mn) = (am)n``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import BadIdentity, NotAssociative, NotSubmonoid, OutOfRange
from .limits import check_size


@dataclass(frozen=True, eq=False)
class FiniteMonoid:
    table: tuple
    identity: int
    labels: tuple = field(default=None)

    @property
    def order(self):
        return len(self.table)

    def __len__(self):
        return len(self.table)

    def mul(self, a, b):
        return self.table[a][b]

    def product(self, elems):
        acc = self.identity
        for e in elems:
            acc = self.table[acc][e]
        return acc

    def label(self, i):
        if self.labels is None:
            return str(i)
        return str(self.labels[i])

    @cached_property
    def array(self):
        return np.asarray(self.table, dtype=np.int64).reshape(self.order, self.order)

    @cached_property
    def generators(self):
        """A small monoid generating set, chosen greedily in index order.

        Non-identity elements are visited in decreasing order of the number of
        elements above them in the right-ideal order, so "large" elements go
        in first and the rest tend to be products of them.
        """
        reach = [len({self.table[a][m] for m in range(self.order)}) for a in range(self.order)]
        order = sorted((a for a in range(self.order) if a != self.identity), key=lambda a: (-reach[a], a))
        gens = []
        closed = {self.identity}
        for a in order:
            if a in closed:
                continue
            gens.append(a)
            closed = generated_submonoid(self, gens)
        # second pass drops anything the later picks made redundant
        for g in list(gens):
            rest = [h for h in gens if h != g]
            if len(generated_submonoid(self, rest)) == self.order:
                gens = rest
        return tuple(sorted(gens))

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, FiniteMonoid):
            return NotImplemented
        return self.identity == other.identity and self.table == other.table

    def __hash__(self):
        return hash((self.identity, self.table))

    def __repr__(self):
        return f"FiniteMonoid(order={self.order}, identity={self.identity})"


def _as_table(order, table):
    if len(table) != order:
        raise OutOfRange(f"table has {len(table)} rows, expected {order}")
    rows = []
    for i, row in enumerate(table):
        row = tuple(int(v) for v in row)
        if len(row) != order:
            raise OutOfRange(f"row {i} has {len(row)} entries, expected {order}", row=i)
        for j, v in enumerate(row):
            if not 0 <= v < order:
                raise OutOfRange(f"table[{i}][{j}] = {v} out of range", cell=(i, j))
        rows.append(row)
    return tuple(rows)


def validate_monoid(order, table, identity, labels=None):
    """Check the table and return a ``FiniteMonoid``.

    Raises ``OutOfRange``, ``BadIdentity`` (witness ``a``) or
    ``NotAssociative`` (witness ``(a, b, c)``, the first failing triple in
    index order).
    """
    if order < 1:
        raise OutOfRange("order must be positive")
    table = _as_table(order, table)
    if not 0 <= identity < order:
        raise OutOfRange(f"identity {identity} out of range")
    for a in range(order):
        if table[identity][a] != a or table[a][identity] != a:
            raise BadIdentity(f"identity law fails at {a}", a=a)
    T = np.asarray(table, dtype=np.int64)
    for a in range(order):
        lhs = T[T[a]]  # (ab)c over all b, c
        rhs = T[a][T]  # a(bc)
        bad = np.argwhere(lhs != rhs)
        if len(bad):
            b, c = (int(v) for v in bad[0])
            raise NotAssociative(f"({a}*{b})*{c} != {a}*({b}*{c})", a=a, b=b, c=c)
    if labels is not None:
        labels = tuple(labels)
        if len(labels) != order:
            raise OutOfRange("labels length mismatch")
    return FiniteMonoid(table, identity, labels)


def from_function(elements, op, identity, labels=None):
    index = {e: i for i, e in enumerate(elements)}
    table = [[index[op(x, y)] for y in elements] for x in elements]
    return validate_monoid(len(elements), table, index[identity], labels)


def trivial_monoid():
    return validate_monoid(1, [[0]], 0, ["1"])


def cyclic_group(n):
    check_size(n, "cyclic group")
    labels = ["1"] + [f"g{i}" if i > 1 else "g" for i in range(1, n)]
    return validate_monoid(n, [[(i + j) % n for j in range(n)] for i in range(n)], 0, labels)


def chain_semilattice(k):
    """Chain ``1 > e1 > ... > e_{k-1}`` under meet; index 0 is the identity."""
    labels = ["1"] + [f"e{i}" for i in range(1, k)]
    return validate_monoid(k, [[max(i, j) for j in range(k)] for i in range(k)], 0, labels)


def semilattice2():
    """The two-element semilattice {1, z} with zz = z."""
    return validate_monoid(2, [[0, 1], [1, 1]], 0, ["1", "z"])


def left_zero_monoid(k):
    """A k-element left-zero semigroup (xy = x) with an identity adjoined."""
    n = k + 1
    table = [[j if i == 0 else i for j in range(n)] for i in range(n)]
    return validate_monoid(n, table, 0, ["1"] + [f"l{i}" for i in range(1, n)])


def full_transformation_monoid(n):
    """All maps {0..n-1} -> {0..n-1}; ``f*g`` applies f first."""
    check_size(n ** n, f"T_{n}")
    maps = list(itertools.product(range(n), repeat=n))
    ident = tuple(range(n))
    return from_function(maps, lambda f, g: tuple(g[f[i]] for i in range(n)), ident,
                         ["".join(map(str, f)) for f in maps])


def symmetric_group(n):
    check_size(math.factorial(n), f"S_{n}")
    perms = list(itertools.permutations(range(n)))
    return from_function(perms, lambda f, g: tuple(g[f[i]] for i in range(n)), tuple(range(n)),
                         ["".join(map(str, p)) for p in perms])


def direct_product_monoid(M, N):
    """Componentwise product; (i, j) is stored at index ``i*|N| + j``."""
    m, n = M.order, N.order
    check_size(m * n, "direct product monoid")
    table = [
        [M.table[i1][i2] * n + N.table[j1][j2] for i2 in range(m) for j2 in range(n)]
        for i1 in range(m) for j1 in range(n)
    ]
    labels = [f"({M.label(i)},{N.label(j)})" for i in range(m) for j in range(n)]
    return validate_monoid(m * n, table, M.identity * n + N.identity, labels)


def adjoin_zero(M):
    """M with a new absorbing element at index ``M.order``."""
    n = M.order
    check_size(n + 1, "M^0")
    table = [list(row) + [n] for row in M.table] + [[n] * (n + 1)]
    labels = [M.label(i) for i in range(n)] + ["0"]
    return validate_monoid(n + 1, table, M.identity, labels)


def attach_act_monoid(M, A):
    """The monoid on M ∪ A in which A is an ideal.

    Indices ``0..|M|-1`` are M, ``|M| + a`` is the act element a.  Products:
    m∘n = mn, a∘m = a·m, anything∘a = a.
    """
    m, k = M.order, A.size
    check_size(m + k, "U(M, A)")
    table = []
    for x in range(m + k):
        row = []
        for y in range(m + k):
            if y >= m:
                row.append(y)
            elif x < m:
                row.append(M.table[x][y])
            else:
                row.append(m + A.action[x - m][y])
        table.append(row)
    labels = [M.label(i) for i in range(m)] + [f"a{i}" for i in range(k)]
    return validate_monoid(m + k, table, M.identity, labels)


def generated_submonoid(M, gens):
    seen = {M.identity}
    frontier = [M.identity]
    gens = list(gens)
    while frontier:
        nxt = []
        for s in frontier:
            for g in gens:
                t = M.table[s][g]
                if t not in seen:
                    seen.add(t)
                    nxt.append(t)
        frontier = nxt
    return seen


def is_monoid_generating_set(M, gens):
    return len(generated_submonoid(M, gens)) == M.order


def submonoid(M, elems):
    """Restrict M to ``elems``; returns (monoid, embedding list new->old)."""
    elems = sorted(set(elems))
    if M.identity not in elems:
        raise NotSubmonoid("submonoid must contain the identity")
    index = {e: i for i, e in enumerate(elems)}
    for a in elems:
        for b in elems:
            if M.table[a][b] not in index:
                raise NotSubmonoid(f"{a}*{b} leaves the subset", a=a, b=b)
    table = [[index[M.table[a][b]] for b in elems] for a in elems]
    labels = [M.label(e) for e in elems]
    return validate_monoid(len(elems), table, index[M.identity], labels), elems


def is_ideal(M, subset):
    subset = set(subset)
    return all(M.table[a][m] in subset and M.table[m][a] in subset for a in subset for m in range(M.order))
