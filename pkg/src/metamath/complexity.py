"""Program-size complexity over the toy machine.

H(x) is the size in bits of the smallest self-delimiting program whose
output is x.  Since halting is decidable here, H is computable exactly up
to the enumeration bound.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import isqrt
from typing import Iterator, Optional

from . import machine
from .config import guards
from .errors import BoundTooLarge, Unresolvable
from .machine import HaltVerdict, ToyProgram


@dataclass(frozen=True)
class ComplexityRecord:
    target: int
    h: Optional[int]
    witness: Optional[ToyProgram]
    search_bound: int

    def to_json(self) -> dict:
        return {
            "target": str(self.target),
            "h": None if self.h is None else str(self.h),
            "witness": None if self.witness is None else self.witness.encoded,
            "search_bound": str(self.search_bound),
        }


def pair(x: int, y: int) -> int:
    """Cantor pairing."""
    return (x + y) * (x + y + 1) // 2 + y


def unpair(n: int) -> tuple:
    s = (isqrt(8 * n + 1) - 1) // 2
    y = n - s * (s + 1) // 2
    return s - y, y


def pair_symmetric(x: int, y: int) -> int:
    """Pairing of the unordered pair {x, y}."""
    return pair(min(x, y), max(x, y))


# programs with identical opcode lists behave identically
_verdict = lru_cache(maxsize=1 << 16)(machine.decide_ops)


def verdict(p: ToyProgram) -> HaltVerdict:
    return _verdict(p.ops)


def _check_bound(bound: int):
    limit = guards().program_bits
    if bound > limit:
        raise BoundTooLarge(f"bound {bound} exceeds guard {limit} (set MM_GUARD)")


def halting_programs(bound: int, decide=verdict) -> Iterator[tuple]:
    """(program, output) for every halting program up to ``bound`` bits, canonically."""
    for p in machine.programs_up_to(bound):
        v = decide(p)
        if v.halts:
            yield p, v.output


def h_of(target: int, bound: int) -> ComplexityRecord:
    _check_bound(bound)
    for p, out in halting_programs(bound):
        if out == target:
            return ComplexityRecord(target, p.size, p, bound)
    return ComplexityRecord(target, None, None, bound)


def elegant_programs(bound: int) -> list:
    """Halting programs that no strictly smaller halting program imitates.

    Equal-size ties are all kept.
    """
    _check_bound(bound)
    best: dict = {}
    out = []
    for p, value in halting_programs(bound):
        size = best.setdefault(value, p.size)
        if size == p.size:
            out.append(p)
    return out


def first_producers(bound: int) -> dict:
    """Map output -> first halting program producing it in canonical order."""
    _check_bound(bound)
    first: dict = {}
    for p, value in halting_programs(bound):
        first.setdefault(value, p)
    return first


def mutual_information(x: int, y: int, bound: int, symmetric: bool = False) -> int:
    """H(x) + H(y) - H(x, y); may be negative on this machine."""
    joint = pair_symmetric(x, y) if symmetric else pair(x, y)
    records = [h_of(x, bound), h_of(y, bound), h_of(joint, bound)]
    missing = [r.target for r in records if r.h is None]
    if missing:
        raise Unresolvable(f"no program within {bound} bits outputs {missing}")
    hx, hy, hxy = (r.h for r in records)
    return hx + hy - hxy
