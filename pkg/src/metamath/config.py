"""Enumeration guards.  ``MM_GUARD`` overrides the body-length guard."""

from __future__ import annotations

import os
from dataclasses import dataclass


@dataclass(frozen=True)
class Guards:
    body_bits: int = 24  # longest toy-machine body ever enumerated
    binomial_n: int = 4096  # Pascal-triangle oracle
    digit_count: int = 1 << 16  # certified digits per stream
    trial_division: int = 1 << 63  # largest primality candidate

    @property
    def program_bits(self) -> int:
        """Largest self-delimiting program size allowed by ``body_bits``."""
        return 2 * self.body_bits + 2


def guards() -> Guards:
    raw = os.environ.get("MM_GUARD")
    if raw:
        return Guards(body_bits=int(raw))
    return Guards()
