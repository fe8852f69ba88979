"""``osp12`` command line: run verification suites and emit reports.

Exit status is 0 when every check passes, 1 when a check fails and 2 on
usage or parameter-file errors.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .params_io import ParamFileError, load_param_file
from .report import dumps
from .suites import SUITES, SuiteConfig, UnsupportedBackend, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _scales(text: str) -> tuple[float, ...]:
    try:
        values = tuple(float(x) for x in text.split(",") if x.strip())
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad scale list {text!r}") from exc
    if len(values) < 2 or any(v <= 0 for v in values) or any(a <= b for a, b in zip(values, values[1:])):
        raise argparse.ArgumentTypeError("scales must be at least two positive, strictly decreasing numbers")
    return values


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="osp12", description="Verify osp(1|2) and UOSp(1|2) identities.")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run a verification suite")
    run.add_argument("suite", choices=[*SUITES, "all"])
    run.add_argument("--tolerance", type=float, default=1e-10)
    run.add_argument("--samples", type=int, default=200)
    run.add_argument("--seed", type=int, default=0)
    run.add_argument("--scales", type=_scales, default=(0.1, 0.03, 0.01))
    run.add_argument("--params", type=Path, help="JSON parameter file")
    run.add_argument("--backend", choices=["exact", "float"])
    run.add_argument("--format", choices=["json", "text"], default="json")
    run.add_argument("--out", type=Path, help="write the report here instead of stdout")

    sub.add_parser("list", help="list the available suites")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK

    if args.command == "list":
        for s in SUITES.values():
            print(f"{s.name:24s} [{s.default_backend}] {s.description}")
        return EXIT_OK

    if args.samples < 1:
        print("osp12: --samples must be positive", file=sys.stderr)
        return EXIT_USAGE
    params = None
    if args.params is not None:
        try:
            params = load_param_file(args.params)
        except ParamFileError as exc:
            print(f"osp12: {exc}", file=sys.stderr)
            return EXIT_USAGE

    config = SuiteConfig(tolerance=args.tolerance, samples=args.samples, seed=args.seed,
                         scales=args.scales, params=params, backend=args.backend)
    try:
        reports = run_suite(args.suite, config)
    except UnsupportedBackend as exc:
        print(f"osp12: {exc}", file=sys.stderr)
        return EXIT_USAGE

    if args.format == "json":
        text = dumps(reports) + "\n"
    else:
        text = "\n\n".join(r.to_text() for r in reports) + "\n"
    if args.out is not None:
        args.out.write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
