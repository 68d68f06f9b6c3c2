"""Command-line entry point.

    ctele run [flags]                 one experiment
    ctele sweep --gammas -1,-0.5,0    one experiment per threshold
    ctele compare [flags]             reset arm vs single-attempt baseline
    ctele reproduce-paper --seed 42   the pinned 20-trial preset

Omitted flags fall back to the preset (theta=pi/4, phi=pi/2, gamma=-0.5,
five retries, 20 trials, sampled detection, no noise).  Angles are radians.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass
from typing import Optional, Sequence

from . import output
from .harness import (
    ExperimentSpec,
    compare_reset_vs_baseline,
    gamma_sweep,
    paper_preset,
    run_experiment,
)
from .noise import NoiseConfig, NoiseModel
from .protocol import DetectionSource, MessageParams, ProtocolConfig

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_IO = 3

NOISE_CHOICES = ("none", "x-flip-charlie", "ry-kick-charlie", "random-pauli", "force-detect")
SUBCOMMANDS = ("run", "sweep", "compare", "reproduce-paper")


@dataclass(frozen=True)
class CliInvocation:
    subcommand: str
    spec: ExperimentSpec
    gammas: Optional[tuple[float, ...]] = None
    out_records: Optional[str] = None
    out_summary: Optional[str] = None
    out_plotdata: Optional[str] = None


# --- argument types ----------------------------------------------------------


def _finite(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not math.isfinite(v):
        raise argparse.ArgumentTypeError(f"must be finite, got {text!r}")
    return v


def _gamma(text: str) -> float:
    v = _finite(text)
    if not -1.0 <= v <= 1.0:
        raise argparse.ArgumentTypeError(f"must lie in [-1, 1], got {text}")
    return v


def _probability(text: str) -> float:
    v = _finite(text)
    if not 0.0 <= v <= 1.0:
        raise argparse.ArgumentTypeError(f"must lie in [0, 1], got {text}")
    return v


def _positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {text}")
    return v


def _seed(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError(f"must be a 64-bit unsigned integer, got {text}")
    return v


def _gamma_list(text: str) -> tuple[float, ...]:
    parts = [p for p in text.split(",") if p.strip()]
    if not parts:
        raise argparse.ArgumentTypeError("expected a comma-separated list of thresholds")
    return tuple(_gamma(p.strip()) for p in parts)


# --- parser ------------------------------------------------------------------


def _add_outputs(p: argparse.ArgumentParser) -> None:
    p.add_argument("--out-records", metavar="PATH", help="trial table CSV")
    p.add_argument("--out-summary", metavar="PATH", help="summary JSON (stdout if omitted)")
    p.add_argument("--out-plotdata", metavar="PATH", help="trial,attempts CSV")


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=_seed, default=0)
    p.add_argument("--parallelism", type=_positive_int, default=1)
    _add_outputs(p)


def _add_experiment(p: argparse.ArgumentParser) -> None:
    p.add_argument("--trials", type=_positive_int, default=20)
    p.add_argument("--theta", type=_finite, default=math.pi / 4)
    p.add_argument("--phi", type=_finite, default=math.pi / 2)
    p.add_argument("--gamma", type=_gamma, default=-0.5)
    p.add_argument("--max-retries", type=_positive_int, default=5)
    p.add_argument("--noise-model", choices=NOISE_CHOICES, default="none")
    p.add_argument("--p-interference", type=_probability, default=0.0)
    p.add_argument("--kick-angle", type=_finite, default=math.pi)
    p.add_argument("--detection-source", choices=("sampled", "exact"), default="sampled")
    p.add_argument("--apply-corrections", action="store_true")
    p.add_argument(
        "--reverse-charlie-cnot",
        action="store_true",
        help="use Charlie as control and Bob as target in Charlie's CNOT",
    )
    _add_common(p)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ctele", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="subcommand", required=True, metavar="{" + ",".join(SUBCOMMANDS) + "}")

    _add_experiment(sub.add_parser("run", help="run one experiment"))
    sweep = sub.add_parser("sweep", help="rerun one experiment per gamma")
    sweep.add_argument("--gammas", type=_gamma_list, required=True, metavar="G1,G2,...")
    _add_experiment(sweep)
    _add_experiment(sub.add_parser("compare", help="reset arm vs max_retries=1 baseline"))
    _add_common(sub.add_parser("reproduce-paper", help="pinned 20-trial preset"))
    return parser


def _spec_from(ns: argparse.Namespace) -> ExperimentSpec:
    if ns.subcommand == "reproduce-paper":
        return paper_preset(seed=ns.seed, parallelism=ns.parallelism)
    noise = NoiseConfig(
        model=NoiseModel.parse(ns.noise_model),
        p_interf=ns.p_interference,
        kick_angle=ns.kick_angle,
    )
    protocol = ProtocolConfig(
        gamma=ns.gamma,
        max_retries=ns.max_retries,
        detection_source=DetectionSource.parse(ns.detection_source),
        noise=noise,
        apply_corrections=ns.apply_corrections,
        charlie_cnot_reversed=ns.reverse_charlie_cnot,
    )
    return ExperimentSpec(
        protocol=protocol,
        msg=MessageParams(ns.theta, ns.phi),
        n_trials=ns.trials,
        seed=ns.seed,
        parallelism=ns.parallelism,
    )


def _glue_negative_lists(argv: Sequence[str]) -> list[str]:
    # argparse reads "--gammas -1,0" as a missing value followed by a flag
    out = []
    it = iter(argv)
    for tok in it:
        if tok == "--gammas":
            nxt = next(it, None)
            out.append(tok if nxt is None else f"--gammas={nxt}")
        else:
            out.append(tok)
    return out


def parse_args(argv: Optional[Sequence[str]] = None) -> CliInvocation:
    """Parse and validate; bad flags exit with status 2 and name the flag."""
    argv = sys.argv[1:] if argv is None else argv
    ns = build_parser().parse_args(_glue_negative_lists(argv))
    return CliInvocation(
        subcommand=ns.subcommand,
        spec=_spec_from(ns),
        gammas=getattr(ns, "gammas", None),
        out_records=ns.out_records,
        out_summary=ns.out_summary,
        out_plotdata=ns.out_plotdata,
    )


# --- execution ---------------------------------------------------------------


def _emit_json(payload, path: Optional[str], writer) -> None:
    if path is None:
        sys.stdout.write(json.dumps(payload, indent=2, allow_nan=False) + "\n")
    else:
        output.ensure_parent(path)
        writer(path)


def execute(inv: CliInvocation) -> None:
    spec = inv.spec
    if inv.subcommand == "sweep":
        rows = gamma_sweep(spec, inv.gammas)
        payload = [{"gamma": g, **s.to_dict()} for g, s in rows]
        _emit_json(payload, inv.out_summary, lambda p: output.write_sweep_json(rows, p))
        return

    comparison = None
    if inv.subcommand == "compare":
        report, result, _ = compare_reset_vs_baseline(
            spec.protocol, spec.msg, spec.n_trials, spec.seed, spec.parallelism
        )
        comparison = report.to_dict()
    else:
        result = run_experiment(spec)

    if inv.out_records:
        output.ensure_parent(inv.out_records)
        output.write_records_csv(result.records, inv.out_records)
    if inv.out_plotdata:
        output.ensure_parent(inv.out_plotdata)
        output.write_attempts_plotdata(result.records, inv.out_plotdata)
    payload = output.summary_payload(result.summary, comparison)
    _emit_json(
        payload,
        inv.out_summary,
        lambda p: output.write_summary_json(result.summary, p, comparison),
    )


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        inv = parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        execute(inv)
    except OSError as exc:
        print(f"ctele: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
