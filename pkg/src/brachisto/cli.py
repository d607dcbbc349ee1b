"""Command-line entry point.

Subcommands::

    brachisto evolve   --shape 2x2 --initial-amps 1,0,0,0 --final-amps 0,0,0,1 --points 3
    brachisto sample   --shape 2x2 --subspace symmetric --samples 100000 --out run/2q_sym
    brachisto minimize --shape 2x2 --subspace symmetric --out run/floor.json
    brachisto cases    [--out cases.json]
    brachisto replay   run/2q_sym.summary.json

Exit codes: 0 success, 1 tolerance failure (``cases``) or replay mismatch,
2 usage error, 3 numeric/degenerate error.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import os
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__
from .entanglement import entanglement_array
from .errors import ConfigError, DegeneratePathError, DomainError, ShapeError
from .experiments import (
    DEFAULT_BINS,
    DEFAULT_RESTARTS,
    ExperimentConfig,
    make_embedding,
    minimize_avg_entanglement,
    run_case_studies,
    run_distribution,
)
from .geodesic import decompose, evolve_amplitudes
from .qstate import PureState

SCHEMA_VERSION = "1"

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2, 3

class UsageError(Exception):
    pass


def fmt(x: float) -> str:
    return format(float(x), ".17g")


def parse_shape(text: str) -> tuple[int, ...]:
    try:
        shape = tuple(int(p) for p in text.lower().split("x"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad shape {text!r}, expected e.g. 2x2 or 2x2x2")
    if len(shape) < 2 or any(d < 2 for d in shape):
        raise argparse.ArgumentTypeError(f"bad shape {text!r}")
    return shape


def read_state_file(path: str) -> np.ndarray:
    """One amplitude per line as ``re im``; blank lines and ``#`` comments skipped."""
    amps = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            try:
                if len(parts) != 2:
                    raise ValueError
                amps.append(complex(float(parts[0]), float(parts[1])))
            except ValueError:
                raise UsageError(f"{path}:{lineno}: expected 're im', got {line!r}") from None
    return np.array(amps, dtype=np.complex128)


def write_state_file(path, amplitudes) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for a in np.asarray(amplitudes, dtype=np.complex128):
            fh.write(f"{fmt(a.real)} {fmt(a.imag)}\n")


def parse_inline(text: str) -> np.ndarray:
    try:
        return np.array([complex(t.strip().replace(" ", "")) for t in text.split(",")])
    except ValueError:
        raise UsageError(f"cannot parse amplitude list {text!r}") from None


def _complex_pairs(v) -> list[list[float]]:
    return [[float(z.real), float(z.imag)] for z in np.asarray(v)]


def _load_state(file_arg, inline_arg, shape, label) -> PureState:
    if (file_arg is None) == (inline_arg is None):
        raise UsageError(f"give exactly one of --{label} / --{label}-amps")
    amps = read_state_file(file_arg) if file_arg else parse_inline(inline_arg)
    try:
        return PureState(amps, shape)
    except ValueError as exc:
        raise UsageError(f"{label} state: {exc}") from None


# --- payload builders: pure functions of the config echo ------------------------

def evolve_rows(config: dict) -> list[list[str]]:
    shape = tuple(config["shape"])
    psi_I = PureState(np.array([complex(*z) for z in config["initial"]]), shape)
    psi_F = PureState(np.array([complex(*z) for z in config["final"]]), shape)
    path = decompose(psi_I, psi_F)
    if config.get("xi") is not None:
        xi = np.array(config["xi"], dtype=float)
    elif config["points"] == 1:
        xi = np.zeros(1)
    else:
        xi = np.linspace(0.0, path.xi_end, config["points"])
    states = evolve_amplitudes(path, xi)
    states = states / np.linalg.norm(states, axis=-1, keepdims=True)
    ent = entanglement_array(states, shape)
    header = ["xi"]
    for k in range(psi_I.dim):
        header += [f"re_{k}", f"im_{k}"]
    header.append("entanglement")
    rows = [header]
    for x, amps, e in zip(xi, states, ent):
        row = [fmt(x)]
        for a in amps:
            row += [fmt(a.real), fmt(a.imag)]
        row.append(fmt(e))
        rows.append(row)
    return rows


def sample_payload(config: dict):
    cfg = ExperimentConfig(
        shape=tuple(config["shape"]),
        subspace=config["subspace"],
        samples=config["samples"],
        seed=config["seed"],
        bins=config["bins"],
        workers=config["workers"],
    )
    summary = run_distribution(cfg)
    return summary.stats(), summary


def minimize_payload(config: dict) -> dict:
    shape = tuple(config["shape"])
    emb = make_embedding(shape, config["subspace"])
    value, (psi_I, psi_F) = minimize_avg_entanglement(
        shape, config["subspace"], config["budget"], config["seed"],
        maxfev=config.get("maxfev"), workers=config.get("workers", 1),
    )

    def describe(state):
        coeffs = emb.matrix.conj() @ state.amplitudes
        return {"amplitudes": _complex_pairs(state.amplitudes), "coefficients": _complex_pairs(coeffs)}

    return {"value": value, "initial": describe(psi_I), "final": describe(psi_F)}


def cases_payload(config: dict) -> dict:
    results = run_case_studies()
    return {"cases": [r.to_dict() for r in results], "all_passed": all(r.passed for r in results)}


def envelope(command: str, config: dict, payload: dict, elapsed=None) -> dict:
    env = {"schema_version": SCHEMA_VERSION, "command": command, "config": config, "payload": payload}
    if elapsed is not None:
        env["elapsed"] = elapsed
    return env


def write_json(path, obj) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(obj, fh, indent=2)
        fh.write("\n")


def write_csv(path_or_fh, rows) -> None:
    if isinstance(path_or_fh, (str, Path)):
        Path(path_or_fh).parent.mkdir(parents=True, exist_ok=True)
        with open(path_or_fh, "w", encoding="utf-8", newline="") as fh:
            csv.writer(fh, lineterminator="\n").writerows(rows)
    else:
        csv.writer(path_or_fh, lineterminator="\n").writerows(rows)


def hist_rows(summary) -> list[list[str]]:
    rows = [["bin_center", "density"]]
    rows += [[fmt(c), fmt(d)] for c, d in summary.histogram]
    return rows


# --- commands --------------------------------------------------------------------

def cmd_evolve(args) -> int:
    psi_I = _load_state(args.initial, args.initial_amps, args.shape, "initial")
    psi_F = _load_state(args.final, args.final_amps, args.shape, "final")
    if args.points < 1:
        raise UsageError("--points must be >= 1")
    try:
        xi = [float(x) for x in args.xi.split(",")] if args.xi else None
    except ValueError:
        raise UsageError(f"cannot parse --xi {args.xi!r}") from None
    config = {
        "shape": list(args.shape),
        "initial": _complex_pairs(psi_I.amplitudes),
        "final": _complex_pairs(psi_F.amplitudes),
        "points": args.points,
        "xi": xi,
    }
    rows = evolve_rows(config)
    if args.out:
        write_csv(args.out, rows)
    else:
        write_csv(sys.stdout, rows)
    return EXIT_OK


def cmd_sample(args) -> int:
    config = {
        "shape": list(args.shape),
        "subspace": args.subspace,
        "samples": args.samples,
        "seed": args.seed,
        "bins": args.bins,
        "workers": args.workers,
    }
    t0 = time.perf_counter()
    stats, summary = sample_payload(config)
    elapsed = time.perf_counter() - t0 if args.timing else None
    write_csv(f"{args.out}.hist.csv", hist_rows(summary))
    write_json(f"{args.out}.summary.json", envelope("sample", config, stats, elapsed))
    print(json.dumps(stats))
    return EXIT_OK


def cmd_minimize(args) -> int:
    if args.budget < 1:
        raise UsageError("--budget must be >= 1")
    config = {
        "shape": list(args.shape),
        "subspace": args.subspace,
        "budget": args.budget,
        "seed": args.seed,
        "maxfev": args.maxfev,
        "workers": args.workers,
    }
    t0 = time.perf_counter()
    payload = minimize_payload(config)
    elapsed = time.perf_counter() - t0 if args.timing else None
    env = envelope("minimize", config, payload, elapsed)
    if args.out:
        write_json(args.out, env)
    print(fmt(payload["value"]))
    return EXIT_OK


def cmd_cases(args) -> int:
    payload = cases_payload({})
    for c in payload["cases"]:
        status = "PASS" if c["passed"] else "FAIL"
        print(f"{status}  {c['name']:<40s} computed={fmt(c['computed'])} reference={fmt(c['reference'])}")
    if args.out:
        write_json(args.out, envelope("cases", {}, payload))
    return EXIT_OK if payload["all_passed"] else EXIT_FAIL


BUILDERS = {
    "sample": lambda cfg: sample_payload(cfg)[0],
    "minimize": minimize_payload,
    "cases": cases_payload,
}


def cmd_replay(args) -> int:
    with open(args.envelope, encoding="utf-8") as fh:
        env = json.load(fh)
    command = env.get("command")
    if command not in BUILDERS:
        raise UsageError(f"cannot replay command {command!r}")
    fresh = BUILDERS[command](env["config"])
    same = json.dumps(fresh, indent=2) == json.dumps(env["payload"], indent=2)
    print("identical" if same else "MISMATCH")
    return EXIT_OK if same else EXIT_FAIL


def default_seed() -> int:
    raw = os.environ.get("BRACHISTO_SEED")
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise SystemExit(f"BRACHISTO_SEED must be an integer, got {raw!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="brachisto", description=__doc__.split("\n")[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("evolve", help="tabulate the optimal path and its entanglement")
    p.add_argument("--shape", type=parse_shape, required=True)
    p.add_argument("--initial", help="state file, one 're im' pair per line")
    p.add_argument("--initial-amps", help="comma-separated complex amplitudes, e.g. 1,0,0,1j")
    p.add_argument("--final")
    p.add_argument("--final-amps")
    p.add_argument("--points", type=int, default=11, help="uniform grid on [0, theta/2]")
    p.add_argument("--xi", help="explicit comma-separated xi values (overrides --points)")
    p.add_argument("--out", help="CSV path (default: stdout)")
    p.set_defaults(func=cmd_evolve)

    seed = default_seed()

    p = sub.add_parser("sample", help="Monte Carlo distribution of the time-averaged entanglement")
    p.add_argument("--shape", type=parse_shape, required=True)
    p.add_argument("--subspace", choices=["symmetric", "full"], default="full")
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=seed)
    p.add_argument("--bins", type=int, default=DEFAULT_BINS)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", required=True, help="output prefix")
    p.add_argument("--timing", action="store_true", help="record elapsed seconds in the summary")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("minimize", help="search for the smallest time-averaged entanglement")
    p.add_argument("--shape", type=parse_shape, required=True)
    p.add_argument("--subspace", choices=["symmetric", "full"], default="symmetric")
    p.add_argument("--budget", type=int, default=DEFAULT_RESTARTS, help="random restarts")
    p.add_argument("--seed", type=int, default=seed)
    p.add_argument("--maxfev", type=int, default=None, help="evaluations per simplex run")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", help="JSON path")
    p.add_argument("--timing", action="store_true")
    p.set_defaults(func=cmd_minimize)

    p = sub.add_parser("cases", help="check the two-qubit case studies")
    p.add_argument("--out", help="JSON path")
    p.set_defaults(func=cmd_cases)

    p = sub.add_parser("replay", help="re-run a JSON output from its config echo and compare")
    p.add_argument("envelope")
    p.set_defaults(func=cmd_replay)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (UsageError, ConfigError, ShapeError) as exc:
        print(f"brachisto: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DegeneratePathError, DomainError) as exc:
        print(f"brachisto: numeric error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
