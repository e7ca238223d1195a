"""Global size caps.

Every construction that allocates a table checks against these before doing
any work; exceeding a cap raises ``SizeLimitExceeded`` rather than truncating.
"""

import os

from .errors import SizeLimitExceeded

DEFAULT_CAP = 4096
# exhaustive subset searches (minimal generating sets, free bases)
EXHAUSTIVE_CAP = 16
# |N|^|A| for wreath constructions
MAP_CAP = 512

_override = None


def size_cap():
    if _override is not None:
        return _override
    env = os.environ.get("ACTFORGE_CAP")
    if env:
        return int(env)
    return DEFAULT_CAP


def set_size_cap(value):
    """Override the cap for this process; ``None`` restores env/default."""
    global _override
    _override = value


def check_size(n, what, cap=None):
    cap = size_cap() if cap is None else cap
    if n > cap:
        raise SizeLimitExceeded(f"{what} would have {n} elements (cap {cap})", size=n, cap=cap)
    return n
