"""Run configuration and budget guards.

All size/work limits live here so that library callers and the CLI share one
notion of "too big".  Budget violations always raise; nothing is silently
truncated.
"""

from __future__ import annotations

import dataclasses


class DualpartError(Exception):
    """Base class for all library errors."""

    #: short machine-parsable reason code, used by the CLI exit path
    code = "error"


class InputError(DualpartError):
    """Malformed or invalid input data."""

    code = "invalid-input"


class BudgetError(DualpartError):
    """A configured enumeration or work budget would be exceeded."""

    code = "budget-exceeded"


@dataclasses.dataclass(frozen=True)
class RunConfig:
    """Caps, budgets and reproducibility knobs.

    enumeration_cap: maximum group order for full element enumeration.
    pair_work_cap:   maximum |G|*|H| for the pairwise character-sum engine.
    ideal_cap_n:     maximum poset size for ideal enumeration.
    aut_cap_n:       maximum poset size for automorphism enumeration.
    """

    enumeration_cap: int = 1 << 24
    pair_work_cap: int = 1 << 26
    ideal_cap_n: int = 20
    aut_cap_n: int = 12
    output_format: str = "json"
    parallelism: int = 1
    seed: int = 0

    def __post_init__(self) -> None:
        if self.enumeration_cap <= 0 or self.pair_work_cap <= 0:
            raise InputError("caps must be positive")


DEFAULT_CONFIG = RunConfig()
