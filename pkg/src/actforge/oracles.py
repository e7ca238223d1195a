"""Brute-force reference implementations.

Nothing here shares code with the fast paths in ``act`` and
``presentation``; these are the independent sides of the dual-route checks.
"""

import itertools

import numpy as np


def naive_congruence_partition(action, order, pairs):
    """Closure by repeated symmetrise / transitive-close / multiply.

    ``action`` is a size×order table.  Returns class ids numbered by first
    occurrence, matching ``ActCongruence.class_of``.
    """
    act = np.asarray(action, dtype=np.int64).reshape(-1, order)
    k = act.shape[0]
    rel = np.eye(k, dtype=bool)
    for p, q in pairs:
        rel[p, q] = True
    while True:
        before = rel.copy()
        rel |= rel.T
        R = rel.astype(np.int32)
        for m in range(order):
            # P[a, a·m] = 1, so (PᵀRP)[c, d] > 0 iff c = am, d = bm for some related a, b
            P = np.zeros((k, k), dtype=np.int32)
            P[np.arange(k), act[:, m]] = 1
            rel |= (P.T @ R @ P) > 0
        # transitive closure by squaring
        while True:
            nxt = rel | ((rel.astype(np.int32) @ rel.astype(np.int32)) > 0)
            if (nxt == rel).all():
                break
            rel = nxt
        if (rel == before).all():
            break
    ids, out = {}, []
    for a in range(k):
        key = int(np.argmax(rel[a]))  # smallest related element
        if key not in ids:
            ids[key] = len(ids)
        out.append(ids[key])
    return tuple(out)


def brute_is_generating(action, U):
    """Generation by enumerating u·m directly from the table rows."""
    reached = {row_val for u in U for row_val in action[u]}
    return len(reached) == len(action)


def brute_isomorphic(A, B):
    """Exhaustive bijection scan; True iff some bijection commutes with the action."""
    if A.size != B.size:
        return False
    n = A.base.order
    for perm in itertools.permutations(range(B.size)):
        if all(perm[A.action[a][m]] == B.action[perm[a]][m] for a in range(A.size) for m in range(n)):
            return True
    return False


def kernel_partition(values):
    """Partition of indices by equal value, numbered by first occurrence."""
    ids, out = {}, []
    for v in values:
        if v not in ids:
            ids[v] = len(ids)
        out.append(ids[v])
    return tuple(out)
