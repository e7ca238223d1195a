"""The fixed family of small monoids and acts used by the suite and tests."""

from __future__ import annotations

import itertools
from functools import lru_cache

from .act import act_isomorphic, congruence_closure, free_act, quotient_act, right_regular_act, trivial_act, validate_act
from .monoid import (
    adjoin_zero,
    attach_act_monoid,
    chain_semilattice,
    cyclic_group,
    direct_product_monoid,
    full_transformation_monoid,
    semilattice2,
    symmetric_group,
    trivial_monoid,
)

FAMILY_NAMES = ("trivial", "Z2", "Z3", "E2", "T2", "E2^0", "Z2^0", "Z2xE2", "U(Z2,Z2)", "S3")


@lru_cache(maxsize=None)
def family_monoid(name):
    if name == "trivial":
        return trivial_monoid()
    if name == "Z2":
        return cyclic_group(2)
    if name == "Z3":
        return cyclic_group(3)
    if name == "E2":
        return semilattice2()
    if name == "T2":
        return full_transformation_monoid(2)
    if name == "E2^0":
        return adjoin_zero(semilattice2())
    if name == "Z2^0":
        return adjoin_zero(cyclic_group(2))
    if name == "Z2xE2":
        return direct_product_monoid(cyclic_group(2), semilattice2())
    if name == "U(Z2,Z2)":
        Z2 = cyclic_group(2)
        return attach_act_monoid(Z2, right_regular_act(Z2))
    if name == "S3":
        return symmetric_group(3)
    if name == "C3":
        return chain_semilattice(3)
    raise KeyError(name)


def family():
    return [(name, family_monoid(name)) for name in FAMILY_NAMES]


def natural_act(name):
    """T₂ on {0, 1} and S₃ on {0, 1, 2}; x·f = f(x)."""
    if name == "T2":
        n, maps = 2, list(itertools.product(range(2), repeat=2))
    elif name == "S3":
        n, maps = 3, list(itertools.permutations(range(3)))
    else:
        return None
    M = family_monoid(name)
    return validate_act(M, n, [[f[x] for f in maps] for x in range(n)], [str(x) for x in range(n)])


def _quotients(M, gens, max_size):
    F = free_act(range(gens), M)
    out = []
    for p, q in itertools.combinations_with_replacement(range(F.size), 2):
        c = congruence_closure(F, [(p, q)])
        if c.num_classes <= max_size:
            A, _ = quotient_act(F, c)
            out.append((f"F{gens}/({p},{q})", A))
    return out


def _dedupe(named):
    kept = []
    for name, A in named:
        if not any(B.size == A.size and act_isomorphic(A, B) is not None for _, B in kept):
            kept.append((name, A))
    return kept


@lru_cache(maxsize=None)
def small_acts(name, max_size=4):
    """Pairwise non-isomorphic acts of size ≤ max_size over a family monoid.

    Sources, in order: the trivial act, the right-regular act, the natural
    action (T₂, S₃), and quotients of free acts on one or two generators by
    a single pair.
    """
    M = family_monoid(name)
    named = [("trivial", trivial_act(M))]
    if M.order <= max_size:
        named.append(("regular", right_regular_act(M)))
    nat = natural_act(name)
    if nat is not None and nat.size <= max_size:
        named.append(("natural", nat))
    named += _quotients(M, 1, max_size)
    named += _quotients(M, 2, max_size)
    return tuple(_dedupe(named))


def sample_acts(name, max_size=4, limit=3):
    """The first ``limit`` acts of ``small_acts`` (trivial, regular, ... first)."""
    return small_acts(name, max_size)[:limit]
