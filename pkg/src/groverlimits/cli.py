"""Command-line front end: ``groverlimits {figure,bound,validate,sweep}``."""

from __future__ import annotations

import argparse
import math
import os
import sys

import numpy as np

from . import error_models as em
from .errors import ConfigurationError, DomainError
from .experiments import SweepConfig, emit_csv, format_float, parse_n_values, run_sweep
from .reduced_model import (
    PhaseAngles,
    ReducedParams,
    max_database_size_combined,
    max_database_size_phase,
    simulate_reduced,
)
from .statevector import run_full_search

DEFAULT_N_RANGE = "4..24"
VALIDATE_TOLERANCE = 1e-10

# one entry per plotted curve: (file stem, model)
FIGURES = {
    1: [("fig1_em1_delta0_1e-2", em.EM1(1e-2)),
        ("fig1_em1_delta0_1e-3", em.EM1(1e-3)),
        ("fig1_em1_delta0_1e-4", em.EM1(1e-4))],
    2: [("fig2_em2_s_1e-2", em.EM2(1e-2))],
    3: [("fig3_em3_delta0_1e-2_s_1e-3", em.EM3(1e-2, 1e-3)),
        ("fig3_em3_delta0_1e-3_s_1e-3", em.EM3(1e-3, 1e-3)),
        ("fig3_em3_delta0_1e-4_s_1e-3", em.EM3(1e-4, 1e-3))],
}


def _u64(text):
    value = int(text, 0)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError(f"{text!r} is not an unsigned 64-bit integer")
    return value


def _positive_int(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return value


def _n_range(text):
    try:
        return parse_n_values(text)
    except ConfigurationError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _add_common(p, out_help):
    p.add_argument("--seed", type=_u64, default=0)
    p.add_argument("--out", help=out_help)
    p.add_argument("--samples", type=_positive_int)
    p.add_argument("--engine", choices=("reduced", "full"), default="reduced")
    p.add_argument("--n", type=_n_range, default=None, metavar="RANGE",
                   help="qubit counts: '4..24', '4,8,12' or '16'")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="groverlimits",
        description="Grover search under imperfect phase inversions and Hadamard transforms.")
    sub = parser.add_subparsers(dest="command", required=True)

    fig = sub.add_parser("figure", help="write the preset curves of a figure as CSV")
    fig.add_argument("which", type=int, choices=sorted(FIGURES))
    _add_common(fig, "output directory (default: current directory)")

    bound = sub.add_parser("bound", help="database-size bound for a given gate error")
    bound.add_argument("kind", choices=("phase", "hadamard", "combined"))
    bound.add_argument("param", type=float,
                       help="delta (phase), delta1 (hadamard) or Delta (combined), radians")

    val = sub.add_parser("validate", help="cross-check the reduced model against full simulation")
    val.add_argument("--max-n", type=int, default=10)
    val.add_argument("--trials", type=int, default=20)
    val.add_argument("--seed", type=_u64, default=0)

    sw = sub.add_parser("sweep", help="run one Monte Carlo sweep and write CSV")
    kind = sw.add_mutually_exclusive_group(required=True)
    kind.add_argument("--em1", action="store_true", help="constant phase mismatch")
    kind.add_argument("--em2", action="store_true", help="zero-mean Gaussian mismatch per step")
    kind.add_argument("--em3", action="store_true", help="biased Gaussian mismatch per step")
    kind.add_argument("--hsys", action="store_true", help="systematic Hadamard angle offset")
    kind.add_argument("--leak", action="store_true", help="Hadamard leakage model")
    sw.add_argument("--delta0", type=float, default=0.0)
    sw.add_argument("--s", type=float, default=0.0)
    sw.add_argument("--epsilon", type=float, default=0.0)
    sw.add_argument("--delta1", type=float, default=0.0)
    sw.add_argument("--j-cap-policy", type=float, default=3.0)
    sw.add_argument("--marked", type=int, default=None)
    _add_common(sw, "CSV path (default: standard output)")
    return parser


def _fail(message: str) -> int:
    print(f"groverlimits: error: {message}", file=sys.stderr)
    return 1


def cmd_figure(args) -> int:
    out_dir = args.out or "."
    n_values = args.n or parse_n_values(DEFAULT_N_RANGE)
    os.makedirs(out_dir, exist_ok=True)
    for stem, model in FIGURES[args.which]:
        cfg = SweepConfig(model, n_values, samples_per_n=args.samples, seed=args.seed,
                          engine=args.engine)
        path = os.path.join(out_dir, stem + ".csv")
        emit_csv(run_sweep(cfg), path)
        print(f"wrote {path}", file=sys.stderr)
    return 0


def cmd_bound(args, parser) -> int:
    if not (args.param > 0 and math.isfinite(args.param)):
        parser.error(f"bound parameter must be positive, got {args.param!r}")
    if args.kind == "phase":
        value = max_database_size_phase(args.param)
    elif args.kind == "hadamard":
        value = em.max_database_size_hadamard(args.param)
    else:
        value = max_database_size_combined(args.param)
    print(f"{format_float(value)} log2={math.log2(value):.4f}")
    return 0


def validation_discrepancy(n: int, marked: int, angles: PhaseAngles, j_max: int) -> float:
    reduced = simulate_reduced(angles, ReducedParams(n), j_max)
    full = run_full_search(n, marked, angles, None, j_max)
    return float(np.max(np.abs(reduced.probabilities - full.probabilities)))


def cmd_validate(args, parser) -> int:
    if not 1 <= args.max_n <= 12:
        parser.error(f"--max-n must lie in 1..12, got {args.max_n}")
    if args.trials < 1:
        parser.error(f"--trials must be positive, got {args.trials}")
    rng = np.random.default_rng(args.seed)
    worst, failures = 0.0, []
    for _ in range(args.trials):
        n = int(rng.integers(1, args.max_n + 1))
        marked = int(rng.integers(0, 2**n))
        angles = PhaseAngles(*(float(a) for a in rng.uniform(0.0, 2.0 * math.pi, 2)))
        j_max = 3 * math.ceil(math.pi / 4.0 * math.sqrt(2**n))
        d = validation_discrepancy(n, marked, angles, j_max)
        worst = max(worst, d)
        if d > VALIDATE_TOLERANCE:
            failures.append(f"n={n} marked={marked} theta={angles.theta!r} "
                            f"phi={angles.phi!r} discrepancy={d:.3e}")
    print(f"worst discrepancy {worst:.3e} over {args.trials} trials")
    for line in failures:
        print(f"exceeds {VALIDATE_TOLERANCE:g}: {line}", file=sys.stderr)
    return 1 if failures else 0


def _sweep_model(args):
    if args.em1:
        return em.EM1(args.delta0)
    if args.em2:
        return em.EM2(args.s)
    if args.em3:
        return em.EM3(args.delta0, args.s)
    if args.hsys:
        return em.HadamardSystematic(args.epsilon)
    return em.HadamardLeakage(args.delta1)


def cmd_sweep(args) -> int:
    cfg = SweepConfig(_sweep_model(args), args.n or parse_n_values(DEFAULT_N_RANGE),
                      samples_per_n=args.samples, seed=args.seed,
                      j_cap_policy=args.j_cap_policy, engine=args.engine, marked=args.marked)
    result = run_sweep(cfg)
    emit_csv(result, args.out if args.out else sys.stdout)
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "figure":
            return cmd_figure(args)
        if args.command == "bound":
            return cmd_bound(args, parser)
        if args.command == "validate":
            return cmd_validate(args, parser)
        return cmd_sweep(args)
    except (ConfigurationError, DomainError, OSError) as exc:
        return _fail(str(exc))


if __name__ == "__main__":
    sys.exit(main())
