"""Command line surface: curve sweeps, CHSH runs, self-checks, single trials.

Angles are radians unless --degrees is given.  Exit codes: 0 success,
1 verification or bound failure, 2 usage error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import sys
from dataclasses import dataclass
from pathlib import Path

from .chsh import (
    ALGEBRAIC_BOUND,
    CANONICAL_SETTINGS,
    LOCAL_BOUND,
    TSIRELSON_BOUND,
    ChshSettings,
    chsh_sampled,
)
from .errors import BellcommError, ConfigurationError
from .laws import LawKind, quantum_cosine_law
from .montecarlo import CurveSweep, sweep_curve
from .protocols import (
    ProtocolKind,
    ProtocolSpec,
    TrialRecord,
    run_trial_adaptive,
    run_trial_fixed,
    run_trial_plain,
    run_trial_quantum,
    run_trial_random_shift,
    run_trial_twoshare,
)
from .svgplot import Series, render_plot
from .verify import run_all_checks

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_IO = 3

CSV_HEADER = ("theta", "E_analytic", "E_mc", "stderr", "n", "protocol", "delta", "seed")


@dataclass(frozen=True)
class RunConfig:
    """Parsed invocation of one subcommand."""

    command: str
    protocol: ProtocolSpec | None = None
    grid_points: int = 61
    n: int = 100_000
    seed: int = 0
    out_path: Path | None = None
    format: str = "csv"
    workers: int = 1
    settings: ChshSettings = CANONICAL_SETTINGS
    a: float | None = None
    b: float | None = None
    lam: float | None = None
    lam2: float | None = None
    delta_draw: float | None = None
    u: float | None = None
    v: float | None = None


def _g17(x: float) -> str:
    return f"{x:.17g}"


def write_curve_csv(sweep: CurveSweep, fh) -> None:
    """Serialize a sweep; floats carry 17 significant digits so the file
    round-trips bit for bit."""
    law = sweep.analytic_reference
    is_fixed = sweep.protocol.kind is ProtocolKind.FIXED_SHIFT
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for theta, est in zip(sweep.grid, sweep.estimates):
        writer.writerow(
            (
                _g17(theta),
                _g17(law.evaluate(theta)) if law is not None else "",
                _g17(est.mean),
                _g17(est.stderr),
                est.n,
                sweep.protocol.kind.value,
                _g17(sweep.protocol.delta) if is_fixed else "",
                sweep.seed,
            )
        )


def read_curve_csv(path: Path) -> list[dict]:
    """Parse a curve CSV back into one dict per grid point."""
    rows = []
    with open(path, newline="") as fh:
        for row in csv.DictReader(fh):
            rows.append(
                {
                    "theta": float(row["theta"]),
                    "E_analytic": (
                        float(row["E_analytic"]) if row["E_analytic"] else None
                    ),
                    "E_mc": float(row["E_mc"]),
                    "stderr": float(row["stderr"]),
                    "n": int(row["n"]),
                    "protocol": row["protocol"],
                    "delta": float(row["delta"]) if row["delta"] else None,
                    "seed": int(row["seed"]),
                }
            )
    return rows


def curve_series(sweep: CurveSweep) -> list[Series]:
    """Plot series for a sweep: analytic law, samples, cosine reference."""
    dense = tuple((j / 256) * math.pi for j in range(257))
    series = []
    law = sweep.analytic_reference
    if law is not None:
        series.append(
            Series(
                "analytic law",
                dense,
                tuple(law.evaluate(t) for t in dense),
                "#1f77b4",
            )
        )
    series.append(
        Series(
            "sampled",
            sweep.grid,
            tuple(est.mean for est in sweep.estimates),
            "#d62728",
        )
    )
    if law is None or law.kind is not LawKind.QUANTUM_COSINE:
        series.append(
            Series(
                "cosine reference",
                dense,
                tuple(quantum_cosine_law(t) for t in dense),
                "#7f7f7f",
            )
        )
    return series


def _sweep_title(sweep: CurveSweep) -> str:
    name = sweep.protocol.kind.value
    if sweep.protocol.kind is ProtocolKind.FIXED_SHIFT:
        name += f" (delta={sweep.protocol.delta:.4f})"
    return f"correlation curve: {name}"


def cmd_curve(config: RunConfig) -> int:
    sweep = sweep_curve(
        config.protocol,
        config.grid_points,
        config.n,
        config.seed,
        workers=config.workers,
    )
    if config.format in ("csv", "both"):
        buf = io.StringIO()
        write_curve_csv(sweep, buf)
        _emit(config, buf.getvalue(), "csv")
    if config.format in ("svg", "both"):
        text = render_plot(curve_series(sweep), _sweep_title(sweep))
        _emit(config, text, "svg")
    return EXIT_OK


def _emit(config: RunConfig, text: str, suffix: str) -> None:
    if config.out_path is None:
        sys.stdout.write(text)
        return
    path = config.out_path
    if config.format == "both":
        path = path.with_suffix("." + suffix)
    with open(path, "w", newline="") as fh:
        fh.write(text)


def cmd_chsh(config: RunConfig) -> int:
    result = chsh_sampled(
        config.protocol,
        config.settings,
        config.n,
        config.seed,
        workers=config.workers,
    )
    print(
        ",".join(
            (
                config.protocol.kind.value,
                _g17(result.s),
                _g17(result.abs_s),
                result.classification.value,
                _g17(result.stderr_s),
                str(config.seed),
            )
        )
    )
    print(
        f"CHSH S = {result.s:.6f}, |S| = {result.abs_s:.6f}"
        f" +- {result.stderr_s:.6f}"
    )
    print(f"classification: {result.classification.value}")
    print(
        f"bounds: local {LOCAL_BOUND:g}, Tsirelson {TSIRELSON_BOUND:.10f},"
        f" algebraic {ALGEBRAIC_BOUND:g}"
    )
    return EXIT_OK


def cmd_verify(config: RunConfig) -> int:
    results = run_all_checks(seed=config.seed, workers=config.workers)
    for res in results:
        print(res.line())
    failed = [res for res in results if not res.passed]
    if failed:
        print(f"{len(failed)} of {len(results)} checks failed")
        return EXIT_CHECK_FAILED
    print(f"all {len(results)} checks passed")
    return EXIT_OK


def _require(value, flag: str):
    if value is None:
        raise ConfigurationError(f"this protocol requires {flag}")
    return value


def run_configured_trial(config: RunConfig) -> TrialRecord:
    """Run one trial from explicit CLI-supplied shares."""
    kind = config.protocol.kind
    a = config.a
    b = config.b
    if kind is ProtocolKind.PLAIN:
        return run_trial_plain(a, b, _require(config.lam, "--lambda"))
    if kind is ProtocolKind.FIXED_SHIFT:
        return run_trial_fixed(
            a, b, _require(config.lam, "--lambda"), config.protocol.delta
        )
    if kind is ProtocolKind.RANDOM_SHIFT:
        return run_trial_random_shift(
            a,
            b,
            _require(config.lam, "--lambda"),
            _require(config.delta_draw, "--delta"),
        )
    if kind is ProtocolKind.TWO_SHARE:
        return run_trial_twoshare(
            a,
            b,
            _require(config.lam, "--lambda"),
            _require(config.lam2, "--lambda2"),
        )
    if kind is ProtocolKind.ADAPTIVE:
        return run_trial_adaptive(
            a, b, config.protocol.k_bits, _require(config.lam, "--lambda")
        )
    return run_trial_quantum(
        a, b, _require(config.u, "--u"), _require(config.v, "--v")
    )


def cmd_trial(config: RunConfig) -> int:
    record = run_configured_trial(config)
    print(f"protocol: {config.protocol.kind.value}")
    print(f"a: {_g17(record.a)}")
    print(f"b: {_g17(record.b)}")
    print(f"shares: ({', '.join(_g17(s) for s in record.shares)})")
    print(f"comm bits: ({', '.join(f'{bit:+d}' for bit in record.comm_bits)})")
    print(f"alpha: {record.alpha:+d}")
    print(f"beta: {record.beta:+d}")
    print(f"product: {record.product:+d}")
    return EXIT_OK


def _seed_type(text: str) -> int:
    value = int(text)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must be a 64-bit unsigned integer")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bellcomm",
        description=(
            "Simulate communication-assisted hidden-variable protocols,"
            " compare them with their closed-form correlation laws, and"
            " evaluate the CHSH functional against the local, Tsirelson,"
            " and algebraic bounds."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, with_protocol=True):
        if with_protocol:
            p.add_argument(
                "--protocol",
                required=True,
                choices=[k.value for k in ProtocolKind],
            )
            p.add_argument(
                "--delta",
                type=float,
                default=None,
                help="shift angle for fixed-shift; drawn shift for a"
                " random-shift trial",
            )
            p.add_argument(
                "--k",
                type=int,
                default=None,
                help="bits per trial for the adaptive protocol (default 3)",
            )
        p.add_argument("--seed", type=_seed_type, default=0)
        p.add_argument("--workers", type=int, default=1)
        p.add_argument(
            "--degrees",
            action="store_true",
            help="interpret all angle arguments as degrees",
        )

    curve = sub.add_parser("curve", help="sweep a correlation curve")
    add_common(curve)
    curve.add_argument("--grid", type=int, default=61)
    curve.add_argument("--n", type=int, default=100_000)
    curve.add_argument("--out", type=Path, default=None)
    curve.add_argument("--format", choices=("csv", "svg", "both"), default="csv")

    chsh_p = sub.add_parser("chsh", help="run a CHSH experiment")
    add_common(chsh_p)
    chsh_p.add_argument("--n", type=int, default=1_000_000)
    for flag in ("--a", "--a-prime", "--b", "--b-prime"):
        chsh_p.add_argument(flag, type=float, default=None)

    verify_p = sub.add_parser("verify", help="run the self-check suite")
    add_common(verify_p, with_protocol=False)

    trial = sub.add_parser("trial", help="run and print a single trial")
    add_common(trial)
    trial.add_argument("--a", type=float, required=True)
    trial.add_argument("--b", type=float, required=True)
    trial.add_argument("--lambda", dest="lam", type=float, default=None)
    trial.add_argument("--lambda2", dest="lam2", type=float, default=None)
    trial.add_argument("--u", type=float, default=None)
    trial.add_argument("--v", type=float, default=None)
    return parser


def _angle(value: float | None, degrees: bool) -> float | None:
    if value is None:
        return None
    return math.radians(value) if degrees else value


def _protocol_from_args(args) -> ProtocolSpec:
    kind = ProtocolKind(args.protocol)
    delta = _angle(args.delta, args.degrees)
    if kind is ProtocolKind.FIXED_SHIFT:
        if delta is None:
            raise ConfigurationError("fixed-shift requires --delta")
        return ProtocolSpec(kind, delta=delta)
    if kind is ProtocolKind.ADAPTIVE:
        return ProtocolSpec(kind, k_bits=args.k if args.k is not None else 3)
    if kind is ProtocolKind.RANDOM_SHIFT:
        # --delta is a per-trial draw for the trial command, not a
        # protocol parameter; other commands must not receive it
        if args.command != "trial" and delta is not None:
            raise ConfigurationError(
                "random-shift takes no --delta; the shift is drawn per trial"
            )
        return ProtocolSpec(kind)
    if delta is not None:
        raise ConfigurationError(f"{kind.value} takes no --delta")
    if args.k is not None:
        raise ConfigurationError(f"{kind.value} takes no --k")
    return ProtocolSpec(kind)


def _config_from_args(args) -> RunConfig:
    if args.command == "verify":
        return RunConfig(
            command="verify", seed=args.seed, workers=args.workers
        )
    protocol = _protocol_from_args(args)
    if args.command == "curve":
        if args.grid < 2:
            raise ConfigurationError("--grid must be at least 2")
        if args.format == "both" and args.out is None:
            raise ConfigurationError("--format both requires --out")
        return RunConfig(
            command="curve",
            protocol=protocol,
            grid_points=args.grid,
            n=args.n,
            seed=args.seed,
            out_path=args.out,
            format=args.format,
            workers=args.workers,
        )
    if args.command == "chsh":
        base = CANONICAL_SETTINGS
        settings = ChshSettings(
            a=_angle(args.a, args.degrees) if args.a is not None else base.a,
            a_prime=(
                _angle(args.a_prime, args.degrees)
                if args.a_prime is not None
                else base.a_prime
            ),
            b=_angle(args.b, args.degrees) if args.b is not None else base.b,
            b_prime=(
                _angle(args.b_prime, args.degrees)
                if args.b_prime is not None
                else base.b_prime
            ),
        )
        return RunConfig(
            command="chsh",
            protocol=protocol,
            n=args.n,
            seed=args.seed,
            workers=args.workers,
            settings=settings,
        )
    return RunConfig(
        command="trial",
        protocol=protocol,
        seed=args.seed,
        a=_angle(args.a, args.degrees),
        b=_angle(args.b, args.degrees),
        lam=_angle(args.lam, args.degrees),
        lam2=_angle(args.lam2, args.degrees),
        delta_draw=_angle(args.delta, args.degrees),
        u=args.u,
        v=args.v,
    )


_COMMANDS = {
    "curve": cmd_curve,
    "chsh": cmd_chsh,
    "verify": cmd_verify,
    "trial": cmd_trial,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        config = _config_from_args(args)
        return _COMMANDS[config.command](config)
    except ConfigurationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO
    except BellcommError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CHECK_FAILED


if __name__ == "__main__":
    raise SystemExit(main())
