"""Process-wide defaults (only the tolerance is configurable)."""

from __future__ import annotations

import os

DEFAULT_TOL = 1e-12
BRUTE_FORCE_FACET_CAP = 14


def default_tol() -> float:
    """Tolerance from ``CONEMOM_TOL`` if set, else 1e-12."""
    raw = os.environ.get("CONEMOM_TOL")
    if not raw:
        return DEFAULT_TOL
    value = float(raw)
    if not value > 0:
        raise ValueError(f"CONEMOM_TOL must be positive, got {raw!r}")
    return value
