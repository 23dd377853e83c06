"""Sample random quantum graphs and record the code dimensions the construction finds.

This is data only: for each trial it lists n, the dimension found, the
guaranteed floor ceil(n/(m+1)^2) and the line ceil(n/(m+1)) met by the
tropical family.  A summary per n is printed at the end.

    python3 scripts/probe_random.py --n 6 12 --m 2 --trials 50 --seed 1
"""
from __future__ import annotations

import argparse
import json
from collections import defaultdict
from dataclasses import dataclass

import numpy as np

from nobrooks.codes import build_code
from nobrooks.qgraph import random_graph


@dataclass
class ProbeConfig:
    n_min: int = 6
    n_max: int = 12
    m: int = 2
    trials: int = 50
    seed: int = 0


def probe(cfg: ProbeConfig) -> list[dict]:
    rng = np.random.default_rng(cfg.seed)
    rows = []
    for _ in range(cfg.trials):
        n = int(rng.integers(cfg.n_min, cfg.n_max + 1))
        seed = int(rng.integers(0, 2 ** 31))
        cert = build_code(random_graph(n, cfg.m, seed))
        rows.append({"n": n, "seed": seed, "dim": cert.dim, "floor": -(-n // (cfg.m + 1) ** 2),
                     "line": -(-n // (cfg.m + 1)), "route": cert.construction["route"],
                     "residual": cert.residual})
    return rows


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, nargs=2, default=[6, 12], metavar=("MIN", "MAX"))
    ap.add_argument("--m", type=int, default=2)
    ap.add_argument("--trials", type=int, default=50)
    ap.add_argument("--seed", type=int, default=0)
    a = ap.parse_args()
    rows = probe(ProbeConfig(a.n[0], a.n[1], a.m, a.trials, a.seed))
    for r in rows:
        print(json.dumps(r))
    by_n = defaultdict(list)
    for r in rows:
        by_n[r["n"]].append(r["dim"])
    for n in sorted(by_n):
        d = by_n[n]
        print(f"n={n:3d} trials={len(d):3d} dims min/mean/max = {min(d)}/{np.mean(d):.2f}/{max(d)}"
              f"  floor={-(-n // (a.m + 1) ** 2)} line={-(-n // (a.m + 1))}")


if __name__ == "__main__":
    main()
