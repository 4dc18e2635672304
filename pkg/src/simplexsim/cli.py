"""Command-line front end: ``simplexsim {run,dj,qft,diff}``.

Exit codes: 0 ok, 1 check failure, 2 usage or parse error.  Reports are JSON
with sorted keys and floats written at 17 significant digits, so the same
flags and seed give byte-identical output.  Wall time is only included with
``--timing``.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
import time
from itertools import product
from pathlib import Path
from typing import Optional

import numpy as np

from . import __version__
from .algorithms import BooleanOracle, run_deutsch_jozsa, run_qft
from .circuit import CircuitFormatError, GateSpec, parse_circuit, run_simplex, simplex_ops
from .measurement import extract_amplitudes, outcome_probabilities
from .oracle_ref import dft, differential_check, random_circuit
from .simplex_core import MAX_QUBITS, CapacityError, map_state, validate_state

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
QFT_MAX_N = 6
DIFF_MAX_N = 6


class UsageError(Exception):
    pass


def _fmt(x) -> str:
    if isinstance(x, bool) or x is None:
        return json.dumps(x)
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        x = float(x)
        if not math.isfinite(x):
            return json.dumps(str(x))
        return format(x, ".17g")
    if isinstance(x, str):
        return json.dumps(x)
    if isinstance(x, dict):
        items = sorted(x.items())
        return "{" + ", ".join(f"{json.dumps(str(k))}: {_fmt(v)}" for k, v in items) + "}"
    if isinstance(x, (list, tuple)):
        return "[" + ", ".join(_fmt(v) for v in x) + "]"
    raise TypeError(f"cannot serialize {type(x).__name__}")


def dumps_report(report: dict) -> str:
    """Deterministic JSON: sorted keys, ``.17g`` floats, trailing newline."""
    return _fmt(report) + "\n"


def _complex_list(c: np.ndarray) -> list:
    return [[float(v.real), float(v.imag)] for v in c]


def _bitstrings(n: int) -> list[str]:
    return ["".join(map(str, b)) for b in product((0, 1), repeat=n)]


def _residuals(s) -> dict:
    return validate_state(s).as_dict()


def _engine(n: int) -> dict:
    return {"name": "simplexsim", "version": __version__, "n": n,
            "deviation_length": 8 ** n}


# hidden test hook: a gate table that lifts every H as X
def _corrupt_table(g: GateSpec, n: int):
    if g.kind == "H":
        g = GateSpec("X", g.slots)
    return simplex_ops(g, n)


def cmd_run(args) -> tuple[dict, int]:
    try:
        text = Path(args.circuit).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {args.circuit}: {exc}") from exc
    try:
        circuit = parse_circuit(text)
    except json.JSONDecodeError as exc:
        raise UsageError(
            f"malformed JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    if not 1 <= args.order <= circuit.n:
        raise UsageError(f"--order must be in 1..{circuit.n}")
    s = run_simplex(circuit, order=args.order)
    probs = outcome_probabilities(s)
    report = {
        "command": "run",
        "engine": _engine(circuit.n),
        "probabilities": {q: float(p) for q, p in zip(_bitstrings(circuit.n), probs)},
        "residuals": _residuals(s),
        "phase_order": s.order,
    }
    if s.order is not None:
        report["amplitudes"] = _complex_list(extract_amplitudes(s))
    ok = validate_state(s).ok(1e-9) and abs(probs.sum() - 1) <= 1e-9
    return report, EXIT_OK if ok else EXIT_FAIL


def _load_table(spec: str, n: int, rng: np.random.Generator) -> BooleanOracle:
    if spec == "constant0":
        return BooleanOracle.constant(n, 0)
    if spec == "constant1":
        return BooleanOracle.constant(n, 1)
    if spec == "random-balanced":
        return BooleanOracle.random_balanced(n, rng)
    try:
        raw = json.loads(Path(spec).read_text())
    except OSError as exc:
        raise UsageError(f"cannot read oracle table {spec}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(
            f"malformed JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    table = raw.get("table") if isinstance(raw, dict) else raw
    if not isinstance(table, list):
        raise UsageError("oracle file must hold a list or {\"table\": [...]}")
    try:
        return BooleanOracle(n, tuple(table))
    except (TypeError, ValueError) as exc:
        raise UsageError(str(exc)) from exc


def cmd_dj(args) -> tuple[dict, int]:
    if not 1 <= args.n or args.n + 1 > MAX_QUBITS:
        raise UsageError(f"--n must satisfy 1 <= n and n+1 <= {MAX_QUBITS}")
    f = _load_table(args.oracle, args.n, np.random.default_rng(args.seed))
    res = run_deutsch_jozsa(f)
    report = {
        "command": "dj",
        "engine": _engine(args.n),
        "verdict": res.verdict,
        "coefficient": res.coefficient,
        "promise": res.promise,
        "flag": res.flag,
        "oracle_terms": res.oracle_terms,
        "residuals": _residuals(res.state),
    }
    ok = res.promise == "unknown" or res.verdict == res.promise
    return report, EXIT_OK if ok else EXIT_FAIL


def _load_sequence(args) -> np.ndarray:
    size = 2 ** args.n
    if args.basis is not None:
        if not 0 <= args.basis < size:
            raise UsageError(f"--basis must be in 0..{size - 1}")
        x = np.zeros(size, dtype=complex)
        x[args.basis] = 1.0
        return x
    try:
        raw = json.loads(Path(args.input).read_text())
    except OSError as exc:
        raise UsageError(f"cannot read {args.input}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(
            f"malformed JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    try:
        x = np.array([complex(v[0], v[1]) if isinstance(v, list) else complex(v)
                      for v in raw], dtype=complex)
    except (TypeError, ValueError, IndexError) as exc:
        raise UsageError(f"bad sequence entry: {exc}") from exc
    if x.size != size:
        raise UsageError(f"sequence has {x.size} entries, expected {size}")
    norm = float(np.vdot(x, x).real)
    if abs(norm - 1) > 1e-9:
        raise UsageError(f"input sequence not normalized (sum |x|^2 = {norm!r})")
    return x


def cmd_qft(args) -> tuple[dict, int]:
    if not 1 <= args.n <= QFT_MAX_N:
        raise UsageError(f"--n must be in 1..{QFT_MAX_N}")
    if not 1 <= args.order <= args.n:
        raise UsageError(f"--order must be in 1..{args.n}")
    x = _load_sequence(args)
    out = run_qft(map_state(x, order=args.order))
    y = extract_amplitudes(out, args.order)
    dev = float(np.abs(y - dft(x)).max())
    report = {
        "command": "qft",
        "engine": _engine(args.n),
        "phase_order": args.order,
        "spectrum": _complex_list(y),
        "max_abs_dev_vs_dft": dev,
        "residuals": _residuals(out),
    }
    return report, EXIT_OK if dev <= args.tol else EXIT_FAIL


def cmd_diff(args) -> tuple[dict, int]:
    if not 1 <= args.n <= DIFF_MAX_N:
        raise UsageError(f"--n must be in 1..{DIFF_MAX_N}")
    if args.trials < 0 or args.depth < 0:
        raise UsageError("--trials and --depth must be non-negative")
    rng = np.random.default_rng(args.seed)
    table = _corrupt_table if args.corrupt_gate_table else None
    trials = []
    for _ in range(args.trials):
        c = random_circuit(args.n, args.depth, rng)
        trials.append(differential_check(c, tolerance=args.tol, table=table).as_dict())
    failed = sum(not t["passed"] for t in trials)
    report = {
        "command": "diff",
        "engine": _engine(args.n),
        "seed": args.seed,
        "depth": args.depth,
        "trials": args.trials,
        "failed": failed,
        "passed": failed == 0,
        "max_abs_dev": max((t["max_abs_dev"] for t in trials), default=0.0),
        "max_state_residual": max((t["state_residual"] for t in trials), default=0.0),
    }
    return report, EXIT_OK if failed == 0 else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="simplexsim",
                                description="Qubit simulation on 8^n probability simplices.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--out", help="write the JSON report here instead of stdout")
        sp.add_argument("--timing", action="store_true",
                        help="include wall time (makes output non-reproducible)")

    r = sub.add_parser("run", help="execute a circuit file")
    r.add_argument("circuit")
    r.add_argument("--order", type=int, default=1)
    common(r)

    d = sub.add_parser("dj", help="Deutsch-Jozsa on a promise function")
    d.add_argument("--n", type=int, required=True)
    d.add_argument("--oracle", default="constant0",
                   help="table file, constant0, constant1, or random-balanced")
    d.add_argument("--seed", type=int, default=0)
    common(d)

    q = sub.add_parser("qft", help="Fourier transform of a sequence")
    q.add_argument("--n", type=int, required=True)
    src = q.add_mutually_exclusive_group(required=True)
    src.add_argument("--input", help="JSON list of numbers or [re, im] pairs")
    src.add_argument("--basis", type=int, help="basis index j")
    q.add_argument("--order", type=int, default=1)
    q.add_argument("--tol", type=float, default=1e-9)
    common(q)

    f = sub.add_parser("diff", help="random-circuit differential test")
    f.add_argument("--n", type=int, default=4)
    f.add_argument("--depth", type=int, default=20)
    f.add_argument("--seed", type=int, default=7)
    f.add_argument("--trials", type=int, default=100)
    f.add_argument("--tol", type=float, default=1e-9)
    f.add_argument("--corrupt-gate-table", action="store_true", help=argparse.SUPPRESS)
    common(f)
    return p


COMMANDS = {"run": cmd_run, "dj": cmd_dj, "qft": cmd_qft, "diff": cmd_diff}


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    start = time.perf_counter()
    try:
        report, code = COMMANDS[args.command](args)
    except (UsageError, CircuitFormatError, CapacityError) as exc:
        print(f"simplexsim: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.timing:
        report["wall_time_s"] = time.perf_counter() - start
    text = dumps_report(report)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
