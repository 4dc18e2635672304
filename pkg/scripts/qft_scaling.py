"""QFT wall time and accuracy against the direct DFT as n grows."""
import argparse
import time
from dataclasses import dataclass

import numpy as np

from simplexsim.algorithms import run_qft
from simplexsim.measurement import extract_amplitudes
from simplexsim.oracle_ref import dft
from simplexsim.simplex_core import map_state


@dataclass
class ScalingConfig:
    max_n: int = 6
    repeats: int = 3
    seed: int = 0


def run(cfg: ScalingConfig) -> list[dict]:
    rng = np.random.default_rng(cfg.seed)
    rows = []
    for n in range(1, cfg.max_n + 1):
        times, errs = [], []
        for _ in range(cfg.repeats):
            x = rng.normal(size=2 ** n) + 1j * rng.normal(size=2 ** n)
            x /= np.linalg.norm(x)
            sigma = int(rng.integers(1, n + 1))
            start = time.perf_counter()
            out = run_qft(map_state(x, order=sigma))
            times.append(time.perf_counter() - start)
            errs.append(float(np.abs(extract_amplitudes(out, sigma) - dft(x)).max()))
        rows.append({"n": n, "deviation_length": 8 ** n,
                     "median_s": float(np.median(times)), "max_err": max(errs)})
    return rows


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-n", type=int, default=6)
    ap.add_argument("--repeats", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    cfg = ScalingConfig(args.max_n, args.repeats, args.seed)
    print(f"{'n':>2} {'8^n':>9} {'median s':>10} {'max err':>10}")
    for r in run(cfg):
        print(f"{r['n']:>2} {r['deviation_length']:>9} {r['median_s']:>10.4f} {r['max_err']:>10.2e}")


if __name__ == "__main__":
    main()
