"""Lower approximations, certified intervals and leading bits of the toy Omega."""

import argparse
from dataclasses import dataclass

from metamath import omega


@dataclass(frozen=True)
class OmegaRun:
    max_N: int = 24
    max_L: int = 16
    bits: int = 8
    jobs: int = 1


def main(cfg: OmegaRun):
    print("N approx")
    for N in range(cfg.max_N + 1):
        r = omega.omega_approx(N, jobs=cfg.jobs)
        print(f"{N} {float(r.value):.10f} {r.value}")
    print("\nL lo hi")
    for L in range(cfg.max_L + 1):
        iv = omega.omega_exact(L, jobs=cfg.jobs)
        print(f"{L} {float(iv.lo):.10f} {float(iv.hi):.10f}")
    m, L = omega.certify_prefix(cfg.bits, guard=cfg.max_L, jobs=cfg.jobs)
    print(f"\nfirst {cfg.bits} bits 0.{format(m, 'b').zfill(cfg.bits)} (certified at L={L})")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    for f, d in OmegaRun.__dataclass_fields__.items():
        ap.add_argument(f"--{f.replace('_', '-')}", type=int, default=d.default)
    main(OmegaRun(**vars(ap.parse_args())))
