"""Build a Bell pair on simplex states and print its deviation and statistics."""
import argparse
from dataclasses import dataclass

import numpy as np

from simplexsim import gate_lift as gl
from simplexsim.measurement import expect_p, extract_amplitudes, outcome_probabilities
from simplexsim.multiqubit import apply_lifted, cnot, lift_separable, tau
from simplexsim.phase_order import order_phases
from simplexsim.simplex_core import map_qubit, validate_state


@dataclass
class BellConfig:
    order: int = 1
    show_nonzero: bool = True


def run(cfg: BellConfig) -> dict:
    s = tau(map_qubit(1, 0), map_qubit(1, 0))
    s = apply_lifted(lift_separable([gl.H_MAT, None]), s)
    s = order_phases(apply_lifted(cnot(1, 2, 2), s), cfg.order)
    zz = np.kron(gl.Z_MAT, gl.Z_MAT)
    return {
        "state": s,
        "probabilities": outcome_probabilities(s),
        "amplitudes": extract_amplitudes(s),
        "zz": expect_p(zz, s),
        "diagnostics": validate_state(s).as_dict(),
    }


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--order", type=int, default=1, choices=(1, 2))
    ap.add_argument("--hide-deviation", action="store_true")
    args = ap.parse_args()
    cfg = BellConfig(order=args.order, show_nonzero=not args.hide_deviation)
    out = run(cfg)
    if cfg.show_nonzero:
        p = out["state"].p
        for i in np.flatnonzero(np.abs(p) > 1e-12):
            print(f"P[{i:2d}] = {p[i]:+.6f}")
    print("probabilities |00>,|01>,|10>,|11>:", np.round(out["probabilities"], 12))
    print("amplitudes:", np.round(out["amplitudes"], 12))
    print(f"<ZZ> = {out['zz']:.12f}")
    print("diagnostics:", out["diagnostics"])


if __name__ == "__main__":
    main()
