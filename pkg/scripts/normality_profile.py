"""Block-frequency deviation against prefix length, as CSV.

Compares the Stoneham number, a Bailey-Crandall number in base 5 and the
Liouville constant, each against its 3-sigma binomial bound.
"""

import argparse
import csv
import sys
from dataclasses import dataclass

from metamath import constants, normality


@dataclass(frozen=True)
class ProfileRun:
    max_log2: int = 14
    k_max: int = 3


def streams(count):
    yield "stoneham", 2, constants.stoneham_bits(count).digits
    yield "bc(5,7)", 5, constants.bailey_crandall_digits(5, 7, count).digits
    yield "liouville", 10, constants.named_digits("liouville", 10, count).digits


def main(cfg: ProfileRun):
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["source", "base", "prefix", "k", "max_deviation", "three_sigma"])
    for name, base, digits in streams(1 << cfg.max_log2):
        for e in range(6, cfg.max_log2 + 1):
            for s in normality.normality_profile(digits[: 1 << e], base, cfg.k_max):
                bound = normality.sigma_bound(base, s.k, s.total_windows)
                w.writerow([name, base, 1 << e, s.k, f"{float(s.max_deviation):.6f}", f"{bound:.6f}"])


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-log2", type=int, default=ProfileRun.max_log2)
    ap.add_argument("--k-max", type=int, default=ProfileRun.k_max)
    main(ProfileRun(**vars(ap.parse_args())))
