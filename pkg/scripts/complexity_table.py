"""H(n) and the elegant programs of the toy machine up to a size bound."""

import argparse
from dataclasses import dataclass

from metamath import complexity


@dataclass(frozen=True)
class TableRun:
    bound: int = 20
    show: int = 32


def main(cfg: TableRun):
    firsts = complexity.first_producers(cfg.bound)
    print(f"{len(firsts)} outputs reachable with programs of <= {cfg.bound} bits")
    print("n H(n) witness")
    for n in sorted(firsts)[: cfg.show]:
        r = complexity.h_of(n, cfg.bound)
        print(f"{n} {r.h} {r.witness.encoded}")
    # any taken jump diverges, so output n needs n INCs and H(n) = 4n + 2
    elegant = complexity.elegant_programs(cfg.bound)
    print(f"\n{len(elegant)} elegant programs")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--bound", type=int, default=TableRun.bound)
    ap.add_argument("--show", type=int, default=TableRun.show)
    main(TableRun(**vars(ap.parse_args())))
