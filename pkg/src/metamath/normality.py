"""Block-frequency statistics for digit strings.

Blocks are counted with overlapping windows, so a prefix of length n gives
n - k + 1 windows of length k.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import sqrt

from .errors import PrefixTooShort

ALPHABET = "0123456789abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ"


@dataclass(frozen=True)
class BlockStats:
    base: int
    k: int
    counts: dict  # block -> count, every one of base**k blocks present
    total_windows: int
    max_deviation: Fraction

    def frequency(self, block: str) -> Fraction:
        return Fraction(self.counts.get(block, 0), self.total_windows)

    def to_json(self) -> dict:
        d = self.max_deviation
        return {
            "base": str(self.base),
            "k": str(self.k),
            "total_windows": str(self.total_windows),
            "max_deviation": f"{d.numerator}/{d.denominator}",
            "counts": {b: str(c) for b, c in self.counts.items()},
        }


@dataclass(frozen=True)
class Verdict:
    passed: bool
    statistic: Fraction
    threshold: float
    k: int

    def __str__(self):
        word = "PASS" if self.passed else "FAIL"
        return f"{word} k={self.k} max_deviation={float(self.statistic):.6f} threshold={self.threshold}"


def _as_text(digits) -> str:
    if isinstance(digits, str):
        return digits
    return "".join(ALPHABET[d] for d in digits)


def all_blocks(base: int, k: int) -> list:
    return ["".join(t) for t in itertools.product(ALPHABET[:base], repeat=k)]


def block_frequencies(digits, base: int, k: int) -> BlockStats:
    text = _as_text(digits)
    if k < 1:
        raise ValueError("k >= 1")
    if len(text) < k:
        raise PrefixTooShort(f"prefix of {len(text)} digits is shorter than k={k}")
    bad = set(text) - set(ALPHABET[:base])
    if bad:
        raise ValueError(f"symbols {sorted(bad)} are not base-{base} digits")
    windows = Counter(text[i : i + k] for i in range(len(text) - k + 1))
    total = len(text) - k + 1
    expected = Fraction(1, base**k)
    counts = {b: windows.get(b, 0) for b in all_blocks(base, k)}
    dev = max(abs(Fraction(c, total) - expected) for c in counts.values())
    return BlockStats(base, k, counts, total, dev)


def simple_normal_test(digits, base: int, threshold: float, k: int = 1) -> Verdict:
    """PASS iff the largest block-frequency deviation is below threshold."""
    stats = block_frequencies(digits, base, k)
    return Verdict(stats.max_deviation < threshold, stats.max_deviation, threshold, k)


def normality_profile(digits, base: int, k_max: int) -> list:
    text = _as_text(digits)
    if len(text) < k_max:
        raise PrefixTooShort(f"prefix of {len(text)} digits is shorter than k={k_max}")
    return [block_frequencies(text, base, k) for k in range(1, k_max + 1)]


def sigma_bound(base: int, k: int, windows: int, sigmas: float = 3.0) -> float:
    """sigmas * sqrt(p(1-p)/n) for block probability p = base**-k."""
    p = base**-k
    return sigmas * sqrt(p * (1 - p) / windows)


def plot_rows(profile: list) -> list:
    """CSV rows (k, block, frequency) for external plotting."""
    rows = []
    for s in profile:
        for block, c in s.counts.items():
            rows.append((s.k, block, float(Fraction(c, s.total_windows))))
    return rows
