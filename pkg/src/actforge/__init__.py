"""Finite monoid acts: generating sets, presentations with derivation
certificates, diagonal acts, direct products and wreath products."""

from .act import (
    ActCongruence,
    DerivationCertificate,
    FiniteAct,
    congruence_closure,
    connect_sequence,
    direct_product_act,
    free_act,
    is_generating_set,
    minimal_generating_set,
    quotient_act,
    replay_certificate,
    right_regular_act,
    trivial_act,
    validate_act,
)
from .errors import ActForgeError
from .monoid import FiniteMonoid, validate_monoid
from .presentation import (
    ActPresentation,
    ActRelation,
    FreeActElem,
    canonical_presentation,
    is_consequence,
    is_presentation_of,
    presentation_on_generators,
    reduce_presentation,
)

__version__ = "0.1.0"

__all__ = [
    "ActCongruence",
    "ActForgeError",
    "ActPresentation",
    "ActRelation",
    "DerivationCertificate",
    "FiniteAct",
    "FiniteMonoid",
    "FreeActElem",
    "canonical_presentation",
    "congruence_closure",
    "connect_sequence",
    "direct_product_act",
    "free_act",
    "is_consequence",
    "is_generating_set",
    "is_presentation_of",
    "minimal_generating_set",
    "presentation_on_generators",
    "quotient_act",
    "reduce_presentation",
    "replay_certificate",
    "right_regular_act",
    "trivial_act",
    "validate_act",
    "validate_monoid",
]
