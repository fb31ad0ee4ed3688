"""Size caps shared by the exhaustive routines.

``AAL_MAX_UNIVERSE`` in the environment overrides the universe cap, which
bounds every loop over all 2^n subsets of a universe.
"""

from __future__ import annotations

import os

DEFAULT_MAX_UNIVERSE = 12
DEFAULT_MAX_LATTICE = 8
# complex algebras of 4-point frames have 16 elements
DEFAULT_MAX_POWERSET_POINTS = 5
DEFAULT_MAX_CONGRUENCE_UNIVERSE = 32


class CapExceeded(ValueError):
    pass


def max_universe() -> int:
    raw = os.environ.get("AAL_MAX_UNIVERSE")
    if raw is None:
        return DEFAULT_MAX_UNIVERSE
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"AAL_MAX_UNIVERSE must be an integer, got {raw!r}") from None
    if value < 1:
        raise ValueError("AAL_MAX_UNIVERSE must be positive")
    return value


def check_cap(value: int, cap: int, what: str) -> None:
    if value > cap:
        raise CapExceeded(f"{what} {value} exceeds cap {cap}")
