"""Halting probability of the toy machine.

All quantities are exact dyadic rationals (``fractions.Fraction`` with a
power-of-two denominator).  The exact interval rests on the tail bound:
the 2**l bodies of length l weigh 2**-(2l+2) each, so everything longer
than L weighs 2**-(L+2) in total.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from . import machine
from ._parallel import pmap
from .config import guards
from .errors import PrecisionTooLarge, Uncertifiable
from .machine import HaltVerdict, ToyProgram


@dataclass(frozen=True)
class DyadicRational:
    numerator: int
    exponent: int

    @classmethod
    def from_fraction(cls, x: Fraction) -> "DyadicRational":
        den = x.denominator
        if den & (den - 1):
            raise ValueError(f"{x} is not dyadic")
        return cls(x.numerator, den.bit_length() - 1)

    @property
    def value(self) -> Fraction:
        return Fraction(self.numerator, 1 << self.exponent)

    def to_json(self) -> dict:
        return {"numerator": str(self.numerator), "exponent": str(self.exponent)}

    def __str__(self):
        return f"{self.numerator}/2^{self.exponent}"


@dataclass(frozen=True)
class OmegaInterval:
    lo: Fraction
    hi: Fraction
    body_cutoff: int

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def contains(self, other: "OmegaInterval") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def to_json(self) -> dict:
        return {
            "L": str(self.body_cutoff),
            "lo": DyadicRational.from_fraction(self.lo).to_json(),
            "hi": DyadicRational.from_fraction(self.hi).to_json(),
        }


@dataclass
class ApproxReport:
    N: int
    value: Fraction
    halted_programs: list = field(default_factory=list)  # (body, output, steps)

    def to_json(self) -> dict:
        return {
            "N": str(self.N),
            "value": DyadicRational.from_fraction(self.value).to_json(),
            "halted_programs": [
                {"body": b, "output": str(o), "steps": str(s)} for b, o, s in self.halted_programs
            ],
        }


def _run_for(args):
    body, budget = args
    return machine.run_budgeted(ToyProgram(body), budget)


def omega_approx(N: int, jobs: int = 1) -> ApproxReport:
    """Run every program of at most N bits for N steps; sum 2**-size over halters."""
    progs = list(machine.programs_up_to(N))
    verdicts = pmap(_run_for, [(p.body, N) for p in progs], jobs)
    value = Fraction(0)
    halted = []
    for p, v in zip(progs, verdicts):
        if v.halts:
            value += Fraction(1, 1 << p.size)
            halted.append((p.body, v.output, v.steps))
    return ApproxReport(N, value, halted)


def kraft_sum(N: int, jobs: int = 1) -> Fraction:
    """Mass of all halting programs discovered at stage N; never exceeds 1."""
    return omega_approx(N, jobs).value


def codeword_mass(max_body: int) -> Fraction:
    """Kraft mass of every program with body length <= max_body, halting or not."""
    return sum((Fraction(1 << l, 1 << (2 * l + 2)) for l in range(max_body + 1)), Fraction(0))


def _decide_body(body: str) -> bool:
    return machine.decide_halting(ToyProgram(body)).halts


def _halting_count(length: int, jobs: int = 1) -> int:
    return sum(pmap(_decide_body, machine.bodies(length, length), jobs))


@lru_cache(maxsize=None)
def halting_count(length: int) -> int:
    """Number of bodies of exactly this length whose program halts."""
    return _halting_count(length)


def omega_exact(L: int, jobs: int = 1, guard: Optional[int] = None) -> OmegaInterval:
    """Certified interval [lo, hi] around Omega from all bodies of length <= L."""
    guard = guards().body_bits if guard is None else guard
    if L < 0 or L > guard:
        raise PrecisionTooLarge(f"L={L} outside 0..{guard}")
    lo = Fraction(0)
    for l in range(L + 1):
        count = halting_count(l) if jobs <= 1 else _halting_count(l, jobs)
        lo += Fraction(count, 1 << (2 * l + 2))
    return OmegaInterval(lo, lo + Fraction(1, 1 << (L + 2)), L)


def _floor_scaled(x: Fraction, n: int) -> int:
    return (x.numerator << n) // x.denominator


def certify_prefix(n: int, guard: Optional[int] = None, jobs: int = 1) -> tuple:
    """Smallest L whose interval fixes floor(2**n * Omega); returns (floor, L).

    Omega lies strictly inside every interval (longer halting and diverging
    bodies both exist), so the floor is certified once no integer lies
    strictly between 2**n*lo and 2**n*hi.
    """
    guard = guards().body_bits if guard is None else guard
    for L in range(guard + 1):
        iv = omega_exact(L, jobs, guard)
        m = _floor_scaled(iv.lo, n)
        if iv.hi * (1 << n) <= m + 1:
            return m, L
    raise Uncertifiable(f"first {n} bits not fixed by any interval up to L={guard}")


def omega_bit(n: int, guard: Optional[int] = None, jobs: int = 1) -> int:
    """The certified n-th bit after the binary point (n >= 1)."""
    if n < 1:
        raise ValueError("bits are numbered from 1")
    m, _ = certify_prefix(n, guard, jobs)
    return m & 1


def omega_bits(upto: int, guard: Optional[int] = None, jobs: int = 1) -> str:
    m, _ = certify_prefix(upto, guard, jobs)
    return format(m, "b").zfill(upto) if upto else ""


def bit_of(x: Fraction, n: int) -> int:
    """n-th binary digit after the point of a non-negative rational."""
    return _floor_scaled(x, n) & 1


def chaitin_bit_predicate(n: int, k: int) -> HaltVerdict:
    """Program(n, k): halts at once iff bit n of the k-th approximation is 1."""
    if n < 1 or k < 1:
        raise ValueError("n and k must be >= 1")
    if bit_of(omega_approx(k).value, n):
        return machine.halts(1, 0)
    return machine.DIVERGES


def ord_kieu_predicate(n: int, k: int, stages: int) -> bool:
    """Does 2**n times some approximation j <= stages exceed k > 0?

    Approximations only grow, so checking the last stage suffices.
    """
    return k > 0 and omega_approx(stages).value * (1 << n) > k


def ord_kieu_count(n: int, guard: Optional[int] = None, jobs: int = 1) -> int:
    """Number of k with 2**n * Omega > k > 0, which is floor(2**n * Omega).

    Its parity is bit n of Omega.
    """
    m, _ = certify_prefix(n, guard, jobs)
    return m
