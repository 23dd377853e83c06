"""Code dimensions and coloring sizes of Q_{n,m} against the theorem bounds.

Prints one CSV row per (n, m):
n, m, code_dim, ceil(n/(m+1)), colors, slog(n,m+1), slog(n,(m+1)^2), seconds

    python3 scripts/grid_sweep.py --n-max 24 --m-max 6 [--realization conjugated]
"""
from __future__ import annotations

import argparse
import csv
import sys
import time
from dataclasses import dataclass

from nobrooks.codes import build_code, greedy_coloring
from nobrooks.slog import slog
from nobrooks.tropical import build_spec, realize


@dataclass
class SweepConfig:
    n_min: int = 2
    n_max: int = 24
    m_max: int = 6
    realization: str = "diagonal"
    seed: int = 0


def sweep(cfg: SweepConfig):
    for n in range(cfg.n_min, cfg.n_max + 1):
        for m in range(1, min(n - 1, cfg.m_max) + 1):
            t0 = time.perf_counter()
            G = realize(build_spec(n, m), cfg.realization, cfg.seed)
            code = build_code(G)
            col = greedy_coloring(G)
            yield (n, m, code.dim, -(-n // (m + 1)), col.size, slog(n, m + 1),
                   slog(n, (m + 1) ** 2), round(time.perf_counter() - t0, 3))


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n-min", type=int, default=2)
    ap.add_argument("--n-max", type=int, default=24)
    ap.add_argument("--m-max", type=int, default=6)
    ap.add_argument("--realization", choices=["diagonal", "conjugated"], default="diagonal")
    ap.add_argument("--seed", type=int, default=0)
    a = ap.parse_args()
    w = csv.writer(sys.stdout)
    w.writerow(["n", "m", "code_dim", "alpha_upper", "colors", "chi_lower", "chi_upper", "seconds"])
    for row in sweep(SweepConfig(a.n_min, a.n_max, a.m_max, a.realization, a.seed)):
        w.writerow(row)
        sys.stdout.flush()


if __name__ == "__main__":
    main()
