"""Command-line front end: analyze datasets, generate worlds, dump windows.

Exit codes: 0 when a run completes (any verdict, including no-verdict),
2 for usage errors, 3 for data errors. The TIMERULES_MAX_WORKERS
environment variable caps how many workers the sweep may fan out to.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import asdict
from pathlib import Path

from .dataset import DataError, load_csv
from .temporalise import TemporalisationSpec, temporalise
from .verdict import RunSpec, run_timers
from .worlds import RobotWorldConfig, generate_periodic, generate_robot_walk

USAGE_ERROR = 2
DATA_ERROR = 3


def _worker_count() -> int:
    raw = os.environ.get("TIMERULES_MAX_WORKERS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _add_analyze(subparsers) -> None:
    p = subparsers.add_parser("analyze", help="run the full sweep and print a verdict")
    p.add_argument("--data", required=True, help="CSV file to analyse")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--decision", "-d", help="decision attribute name")
    group.add_argument(
        "--all-attributes",
        action="store_true",
        help="run the analysis once per attribute",
    )
    p.add_argument("--min-window", type=int, default=2, metavar="A")
    p.add_argument("--max-window", type=int, default=5, metavar="B")
    p.add_argument("--threshold", type=float, default=0.5, help="minimum accuracy")
    p.add_argument("--confidence", type=float, default=0.90, help="interval level")
    p.add_argument(
        "--test-count",
        type=int,
        default=None,
        help="held-out tail size (default: one fifth of the records)",
    )
    p.add_argument(
        "--preference",
        choices=("higher-accuracy", "simpler-method"),
        default="higher-accuracy",
    )
    p.add_argument(
        "--accuracy-mode", choices=("predictive", "training"), default="predictive"
    )
    p.add_argument(
        "--interval-method", choices=("normal", "wilson"), default="normal"
    )
    p.add_argument(
        "--header-mode",
        choices=("first-row-names", "positional"),
        default="first-row-names",
    )
    p.add_argument(
        "--out",
        help="also write <out>.txt and <out>.json report files",
    )


def _add_generate(subparsers) -> None:
    p = subparsers.add_parser("generate", help="write a synthetic CSV plus manifest")
    kinds = p.add_subparsers(dest="kind", required=True)

    robot = kinds.add_parser("robot", help="bounded-board random walk")
    robot.add_argument("--width", type=int, default=8)
    robot.add_argument("--height", type=int, default=8)
    robot.add_argument("--steps", type=int, default=3000)
    robot.add_argument("--seed", type=int, default=0)
    robot.add_argument("--out", required=True, help="CSV output path")

    periodic = kinds.add_parser("periodic", help="cycling single-attribute series")
    periodic.add_argument("--period", type=int, default=8)
    periodic.add_argument("--steps", type=int, default=400)
    periodic.add_argument("--out", required=True, help="CSV output path")

    manifest = kinds.add_parser(
        "from-manifest", help="regenerate a dataset from its manifest"
    )
    manifest.add_argument("manifest", help="manifest JSON written by a previous run")
    manifest.add_argument("--out", help="override the CSV output path")


def _add_dump(subparsers) -> None:
    p = subparsers.add_parser(
        "temporalise-dump", help="write one temporalised dataset as CSV"
    )
    p.add_argument("--data", required=True)
    p.add_argument("--decision", "-d", required=True)
    p.add_argument("--window", type=int, required=True)
    p.add_argument("--position", type=int, required=True)
    p.add_argument(
        "--header-mode",
        choices=("first-row-names", "positional"),
        default="first-row-names",
    )
    p.add_argument("--out", required=True)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="timerules",
        description="Temporal decision rules and causality verdicts over record sequences.",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    _add_analyze(subparsers)
    _add_generate(subparsers)
    _add_dump(subparsers)
    return parser


def _manifest_path(csv_path: Path) -> Path:
    return csv_path.with_suffix(".manifest.json")


def _write_generated(kind: str, config: dict, out: Path) -> None:
    if kind == "robot":
        data = generate_robot_walk(RobotWorldConfig(**config))
    else:
        data = generate_periodic(**config)
    data.to_csv(out)
    manifest = {"kind": kind, "config": config, "csv": out.name, "rows": data.n}
    with open(_manifest_path(out), "w", encoding="utf-8") as handle:
        json.dump(manifest, handle, indent=2)
        handle.write("\n")
    print(f"wrote {data.n} records to {out}")


def _cmd_generate(args: argparse.Namespace) -> int:
    if args.kind == "robot":
        config = asdict(
            RobotWorldConfig(
                width=args.width, height=args.height, steps=args.steps, seed=args.seed
            )
        )
        _write_generated("robot", config, Path(args.out))
    elif args.kind == "periodic":
        generate_periodic(args.period, args.steps)  # validate before writing
        _write_generated(
            "periodic", {"period": args.period, "steps": args.steps}, Path(args.out)
        )
    else:
        with open(args.manifest, encoding="utf-8") as handle:
            manifest = json.load(handle)
        out = Path(args.out) if args.out else Path(args.manifest).parent / manifest["csv"]
        _write_generated(manifest["kind"], manifest["config"], out)
    return 0


def _cmd_analyze(args: argparse.Namespace) -> int:
    data = load_csv(args.data, header_mode=args.header_mode)
    test_count = args.test_count if args.test_count is not None else data.n // 5
    attributes = (
        list(data.attribute_names) if args.all_attributes else [args.decision]
    )
    workers = _worker_count()
    for i, name in enumerate(attributes):
        spec = RunSpec(
            d=name,
            alpha=args.min_window,
            beta=args.max_window,
            ac_th=args.threshold,
            cl=args.confidence,
            preference=args.preference.replace("-", "_"),
            test_count=test_count,
            accuracy_mode=args.accuracy_mode,
            interval_method=args.interval_method,
        )
        report = run_timers(spec, data, workers=workers)
        if i:
            print()
        print(report.render_text())
        if args.out:
            base = args.out if len(attributes) == 1 else f"{args.out}.{name}"
            Path(f"{base}.txt").write_text(report.render_text() + "\n", encoding="utf-8")
            with open(f"{base}.json", "w", encoding="utf-8") as handle:
                json.dump(report.to_dict(), handle, indent=2)
                handle.write("\n")
    return 0


def _cmd_dump(args: argparse.Namespace) -> int:
    data = load_csv(args.data, header_mode=args.header_mode)
    spec = TemporalisationSpec(w=args.window, pos=args.position, d=args.decision)
    temporalise(spec, data).to_csv(args.out)
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "analyze":
            return _cmd_analyze(args)
        if args.command == "generate":
            return _cmd_generate(args)
        return _cmd_dump(args)
    except DataError as exc:
        print(f"timerules: data error: {exc}", file=sys.stderr)
        return DATA_ERROR
    except OSError as exc:
        print(f"timerules: {exc}", file=sys.stderr)
        return DATA_ERROR
    except ValueError as exc:
        print(f"timerules: invalid arguments: {exc}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    raise SystemExit(main())
