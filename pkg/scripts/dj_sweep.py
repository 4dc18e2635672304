"""Deutsch-Jozsa over many promise functions; reports accuracy and timing per n."""
import argparse
import time
from dataclasses import dataclass

import numpy as np

from simplexsim.algorithms import BooleanOracle, run_deutsch_jozsa


@dataclass
class SweepConfig:
    n_values: tuple[int, ...] = (1, 2, 3, 4, 5)
    balanced_per_n: int = 20
    seed: int = 0


def run(cfg: SweepConfig) -> list[dict]:
    rng = np.random.default_rng(cfg.seed)
    rows = []
    for n in cfg.n_values:
        tables = [BooleanOracle.constant(n, 0), BooleanOracle.constant(n, 1)]
        tables += [BooleanOracle.random_balanced(n, rng) for _ in range(cfg.balanced_per_n)]
        start = time.perf_counter()
        results = [run_deutsch_jozsa(f) for f in tables]
        elapsed = time.perf_counter() - start
        correct = sum(r.verdict == f.promise for r, f in zip(results, tables))
        rows.append({"n": n, "runs": len(tables), "correct": correct,
                     "seconds_per_run": elapsed / len(tables)})
    return rows


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, nargs="+", default=[1, 2, 3, 4, 5])
    ap.add_argument("--balanced", type=int, default=20)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    cfg = SweepConfig(tuple(args.n), args.balanced, args.seed)
    print(f"{'n':>2} {'runs':>5} {'correct':>8} {'s/run':>10}")
    for r in run(cfg):
        print(f"{r['n']:>2} {r['runs']:>5} {r['correct']:>8} {r['seconds_per_run']:>10.4f}")


if __name__ == "__main__":
    main()
