"""Command-line front end: norm evaluation, scans, and bound reports.

Subcommands: norms | d1-scan | bounds | qinv | ideal-check.  Reports are
emitted as CSV or JSON (floats with full round-trip precision), so a run
with a fixed seed is byte-reproducible and usable as a regression fixture.

Exit codes: 0 success, 1 invalid configuration, 2 input parse failure,
3 violation certified (d1-scan with --threshold), 4 bound violated.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from .c2norms import DEFAULT_SEED
from .d1 import d1_violation_scan, ideal_check, ideal_landmark_pair
from .optimize import (
    C_SIGMA_GRID,
    DEFAULT_BRACKET,
    DEFAULT_GRID,
    verify_c_bound,
    verify_d_bound,
)
from .seqalg import (
    AlgebraParams,
    BlockSequence,
    QuasiSingular,
    WeightFamily,
    a_norm,
    spectral_invariance_check,
    sup_norm,
)

SEED_ENV_VAR = "BANACH_SEQ_SEED"

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_PARSE = 2
EXIT_CERTIFIED = 3
EXIT_BOUND_VIOLATED = 4

_CSV_FLOAT = "%.17g"


@dataclass(frozen=True)
class RunConfig:
    """Validated parameters of one CLI invocation."""

    subcommand: str
    r: float | None
    weights: WeightFamily
    n: int
    samples: int
    seed: int
    out: str | None
    fmt: str
    threshold: float | None
    grid: int
    sigma_grid: tuple[float, ...]
    sequence_file: str | None


def _default_seed() -> int:
    raw = os.environ.get(SEED_ENV_VAR)
    if raw is None:
        return DEFAULT_SEED
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"{SEED_ENV_VAR} must be an integer, got {raw!r}") from None


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    # Reject bad weight strings (and any other bad parameter) before any
    # computation runs.
    weights = WeightFamily.parse(args.weights)
    seed = args.seed if args.seed is not None else _default_seed()
    sigma_grid = C_SIGMA_GRID
    if getattr(args, "sigma_grid", None):
        try:
            sigma_grid = tuple(float(x) for x in args.sigma_grid.split(","))
        except ValueError:
            raise ValueError(f"--sigma-grid must be comma-separated numbers, got {args.sigma_grid!r}") from None
    n = getattr(args, "n", 100)
    if n < 1:
        raise ValueError(f"--n must be >= 1, got {n}")
    samples = getattr(args, "samples", 1000)
    if samples < 1:
        raise ValueError(f"--samples must be >= 1, got {samples}")
    grid = getattr(args, "grid", DEFAULT_GRID)
    if grid < 3:
        raise ValueError(f"--grid must be >= 3, got {grid}")
    return RunConfig(
        subcommand=args.subcommand,
        r=args.r,
        weights=weights,
        n=n,
        samples=samples,
        seed=seed,
        out=args.out,
        fmt=args.format,
        threshold=getattr(args, "threshold", None),
        grid=grid,
        sigma_grid=sigma_grid,
        sequence_file=getattr(args, "sequence_file", None),
    )


def _require_r(config: RunConfig) -> float:
    if config.r is None:
        raise ValueError("--r is required for this subcommand")
    return config.r


def _load_sequence(path: str) -> BlockSequence:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise _ParseFailure(f"cannot read sequence file {path!r}: {exc}") from None
    try:
        return BlockSequence.loads(text)
    except ValueError as exc:
        raise _ParseFailure(f"cannot parse sequence file {path!r}: {exc}") from None


class _ParseFailure(Exception):
    pass


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _json_text(payload: dict) -> str:
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def _csv_row(header: tuple[str, ...], values: tuple) -> str:
    cells = []
    for value in values:
        if isinstance(value, bool):
            cells.append("true" if value else "false")
        elif isinstance(value, float):
            cells.append(_CSV_FLOAT % value)
        elif value is None:
            cells.append("")
        else:
            cells.append(str(value))
    return ",".join(header) + "\n" + ",".join(cells) + "\n"


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def cmd_norms(config: RunConfig) -> int:
    r = _require_r(config)
    seq = _load_sequence(config.sequence_file)
    p = AlgebraParams(r, config.weights)
    sup, alg = sup_norm(seq), a_norm(seq, p)
    if config.fmt == "csv":
        text = _csv_row(("sup_norm", "a_norm"), (sup, alg))
    else:
        text = _json_text(
            {"sup_norm": sup, "a_norm": alg, "r": r, "weights": config.weights.spec_string()}
        )
    _emit(text, config.out)
    return EXIT_OK


def cmd_d1_scan(config: RunConfig) -> int:
    r = _require_r(config)
    certify = config.threshold is not None
    report = d1_violation_scan(r, config.weights, config.n, certify=certify)
    if config.fmt == "csv":
        text = report.to_csv()
    else:
        payload = report.to_json_dict()
        if certify:
            payload["threshold"] = config.threshold
            payload["threshold_crossing_n"] = report.first_crossing(config.threshold)
        text = _json_text(payload)
    _emit(text, config.out)
    if certify and report.first_crossing(config.threshold) is not None:
        return EXIT_CERTIFIED
    return EXIT_OK


def cmd_bounds(config: RunConfig) -> int:
    d_result = verify_d_bound(DEFAULT_BRACKET, config.grid)
    c_result = verify_c_bound(DEFAULT_BRACKET, config.grid, config.sigma_grid)
    if config.fmt == "csv":
        header = "bound,max_value,argmax_r,grid_points,refinement_iterations,claimed_bound,satisfied"
        rows = [
            "%s,%s,%s,%d,%d,%s,%s"
            % (
                name,
                _CSV_FLOAT % res.max_value,
                _CSV_FLOAT % res.argmax_r,
                res.grid_points,
                res.refinement_iterations,
                _CSV_FLOAT % res.claimed_bound,
                "true" if res.satisfied else "false",
            )
            for name, res in (("d", d_result), ("c_over_sigma", c_result))
        ]
        text = header + "\n" + "\n".join(rows) + "\n"
    else:
        text = _json_text(
            {"d_bound": d_result.to_json_dict(), "c_bound": c_result.to_json_dict()}
        )
    _emit(text, config.out)
    if not (d_result.satisfied and c_result.satisfied):
        return EXIT_BOUND_VIOLATED
    return EXIT_OK


def cmd_qinv(config: RunConfig) -> int:
    r = _require_r(config)
    seq = _load_sequence(config.sequence_file)
    p = AlgebraParams(r, config.weights)
    try:
        report = spectral_invariance_check(seq, p)
    except QuasiSingular as exc:
        payload = {
            "finding": f"numerically quasi-singular, coordinate {exc.index}",
            "quasi_invertible": None,
            "obstruction_index": exc.index,
        }
        _emit(_json_text(payload), config.out)
        return EXIT_OK
    if report.quasi_invertible:
        payload = {
            "finding": "quasi-invertible",
            "quasi_invertible": True,
            "quasi_inverse": report.quasi_inverse.to_json_dict(),
            "quasi_inverse_a_norm": report.quasi_inverse_a_norm,
            "quasi_inverse_sup_norm": report.quasi_inverse_sup_norm,
            "residual_ab": report.residual_ab,
            "residual_ba": report.residual_ba,
            "consistent": report.consistent,
        }
    else:
        payload = {
            "finding": f"not quasi-invertible, coordinate {report.obstruction_index}",
            "quasi_invertible": False,
            "obstruction_index": report.obstruction_index,
            "consistent": report.consistent,
        }
    if config.fmt == "csv":
        header = ("quasi_invertible", "obstruction_index", "residual_ab", "residual_ba")
        text = _csv_row(
            header,
            (
                report.quasi_invertible,
                report.obstruction_index,
                report.residual_ab,
                report.residual_ba,
            ),
        )
    else:
        text = _json_text(payload)
    _emit(text, config.out)
    return EXIT_OK


def cmd_ideal_check(config: RunConfig) -> int:
    r = _require_r(config)
    report = ideal_check(r, config.weights, config.samples, config.n, config.seed)
    if config.fmt == "csv":
        text = report.to_csv()
    else:
        payload = report.to_json_dict()
        payload["r"] = r
        payload["weights"] = config.weights.spec_string()
        # The landmark pair itself, so an unbounded ratio can be reproduced.
        g, f = ideal_landmark_pair(report.witness_n)
        payload["witness_multiplier"] = g.to_json_dict()
        payload["witness_element"] = f.to_json_dict()
        text = _json_text(payload)
    _emit(text, config.out)
    return EXIT_OK


_HANDLERS = {
    "norms": cmd_norms,
    "d1-scan": cmd_d1_scan,
    "bounds": cmd_bounds,
    "qinv": cmd_qinv,
    "ideal-check": cmd_ideal_check,
}


# ---------------------------------------------------------------------------
# Argument parsing
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="banachseq",
        description="Weighted block-sequence norms: evaluation, scans, and bound reports.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common(p: argparse.ArgumentParser, fmt_default: str) -> None:
        p.add_argument("--r", type=float, default=None, help="shape parameter r")
        p.add_argument(
            "--weights",
            default="affine:1,1",
            help='weight family: "affine:<a>,<b>" | "log" | "poly:<p>" | "const:<c>"',
        )
        p.add_argument("--seed", type=int, default=None, help=f"RNG seed (default ${SEED_ENV_VAR} or {DEFAULT_SEED})")
        p.add_argument("--out", default=None, help="output file (default stdout)")
        p.add_argument("--format", choices=("csv", "json"), default=fmt_default)

    p_norms = sub.add_parser("norms", help="sup-norm and algebra norm of a sequence file")
    p_norms.add_argument("sequence_file", help="sequence in the block JSON format")
    common(p_norms, "json")

    p_scan = sub.add_parser("d1-scan", help="scan witness lower bounds on the first-order constant")
    common(p_scan, "csv")
    p_scan.add_argument("--n", type=int, default=100, help="number of blocks to scan")
    p_scan.add_argument(
        "--threshold",
        type=float,
        default=None,
        help="certify a violation when the lower bound reaches this value (exit 3)",
    )

    p_bounds = sub.add_parser("bounds", help="verify the 1.21 and 2*sigma envelope bounds")
    common(p_bounds, "json")
    p_bounds.add_argument("--grid", type=int, default=DEFAULT_GRID, help="grid points over r")
    p_bounds.add_argument(
        "--sigma-grid",
        default=None,
        help="comma-separated sigma values for the multiplication bound",
    )

    p_qinv = sub.add_parser("qinv", help="quasi-inverse and spectral-invariance check")
    p_qinv.add_argument("sequence_file", help="sequence in the block JSON format")
    common(p_qinv, "json")

    p_ideal = sub.add_parser("ideal-check", help="probe the multiplier (ideal) constant")
    common(p_ideal, "json")
    p_ideal.add_argument("--n", type=int, default=100, help="largest block index sampled")
    p_ideal.add_argument("--samples", type=int, default=1000, help="random multiplier pairs")

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = _config_from_args(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        return _HANDLERS[config.subcommand](config)
    except _ParseFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
