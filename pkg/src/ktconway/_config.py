"""Runtime switches read from the environment.

``KTCONWAY_DISABLE_NUMBA=1`` forces the pure-numpy kernels even when numba
is importable.  ``KNOT_CROSSING_CAP`` overrides the bracket crossing cap.
"""

import os

DEFAULT_CROSSING_CAP = 120
NAIVE_CROSSING_CAP = 18
# contraction aborts when the number of live boundary states exceeds this
STATE_CAP = 2_000_000


def _truthy(value: str | None) -> bool:
    return (value or "").strip().lower() in {"1", "true", "yes", "on"}


def numba_requested() -> bool:
    return not _truthy(os.environ.get("KTCONWAY_DISABLE_NUMBA"))


def crossing_cap() -> int:
    raw = os.environ.get("KNOT_CROSSING_CAP")
    if raw is None or not raw.strip():
        return DEFAULT_CROSSING_CAP
    try:
        cap = int(raw)
    except ValueError:
        raise ValueError(f"KNOT_CROSSING_CAP must be an integer, got {raw!r}") from None
    if cap < 0:
        raise ValueError("KNOT_CROSSING_CAP must be non-negative")
    return cap
