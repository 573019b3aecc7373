"""Size caps. All of them can be raised, none are silently enforced by truncation."""
from __future__ import annotations

import os

MAX_BASE = 20
MAX_MEMBERS = 1 << 16
MAX_INTERVALS = 1 << 16


def max_scope() -> int:
    """Largest scope for full team-property enumeration (``TEAMDIM_MAX_SCOPE``)."""
    return int(os.environ.get("TEAMDIM_MAX_SCOPE", "4"))


def max_scope_per_team() -> int:
    """Largest scope for single-team queries."""
    return max_scope() + 2
