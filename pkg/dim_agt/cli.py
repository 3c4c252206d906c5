from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import Any, Sequence

from dim_agt.algebra.genmac import gen_jack, gen_macdonald, table_to_json
from dim_agt.algebra.rmatrix import solve_r_block
from dim_agt.algebra.scalars import Slot, make_point, scalar_to_json
from dim_agt.config import DEFAULT_POINTS, MAX_RMATRIX_LEVEL, Settings
from dim_agt.errors import DimAgtError
from dim_agt.logging_setup import bind_run, setup_logging
from dim_agt.reports import append_run, canonical_json, write_report
from dim_agt.suites import SUITE_NAMES, SuiteOptions, run_suite

logger = logging.getLogger(__name__)

COMMANDS = ("run", "dump-fixture")
FIXTURE_OBJECTS = ("genmac-transition", "k-constants", "r-block", "gen-jack")
SLOT_NAMES = {"none": Slot.NONE, "q": Slot.Q, "lambda": Slot.LAMBDA, "z": Slot.Z}


def dump_fixture(name: str, n_components: int | None = None, level: int = 1, seed: int = 7) -> dict[str, Any]:
    """Canonical JSON payload of one computed object, for diffing against the committed tables."""
    if name == "genmac-transition":
        point = make_point(seed, n_components or 2, max(level, 1))
        basis = gen_macdonald(level, point)
        body = {**basis.to_json(), "monomial": table_to_json(basis.monomial_transition())}
    elif name == "k-constants":
        if level > MAX_RMATRIX_LEVEL:
            raise ValueError(f"k-constants are tabulated up to level {MAX_RMATRIX_LEVEL}")
        point = make_point(seed, 3, max(level, 1))
        body = {
            repr(key): scalar_to_json(value)
            for n in range(level + 1)
            for key, value in solve_r_block(n, 2, (1, 2), point).constants.items()
        }
    elif name == "r-block":
        point = make_point(seed, 3, max(level, 1))
        body = solve_r_block(level, n_components or 3, (1, 2), point).to_json()
    elif name == "gen-jack":
        point = make_point(seed, 2, max(level, 1))
        body = gen_jack(level, point.beta, point.uu).to_json()
    else:
        raise ValueError(f"unknown fixture object {name!r}; expected one of {', '.join(FIXTURE_OBJECTS)}")
    return {"object": name, "level": level, "point": point.describe(), "value": body}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dim-agt", description="Exact checks of DIM algebra free-field identities.")
    commands = parser.add_subparsers(dest="command")

    run = commands.add_parser("run", help="run a verification suite (default command)")
    run.add_argument("--suite", default="all", help=f"one of: {', '.join(SUITE_NAMES)}")
    run.add_argument("--N", dest="n_components", type=int, default=None, help="number of Fock modules")
    run.add_argument("--level", type=int, default=None, help="level cap")
    run.add_argument("--seed", type=int, default=7)
    run.add_argument("--points", type=int, default=DEFAULT_POINTS, help="independent specialization points")
    run.add_argument(
        "--symbolic",
        choices=sorted(SLOT_NAMES),
        default="none",
        help="variable kept formal (series in lambda and z are always formal; those two keep numeric scalars)",
    )
    run.add_argument("--out", type=Path, default=None, help="report path (default: REPORT_DIR/<suite>-<seed>.json)")
    run.add_argument("--no-timings", action="store_true", help="omit wall-clock times from the report")

    dump = commands.add_parser("dump-fixture", help="write a computed object as canonical JSON")
    dump.add_argument("object", help=f"one of: {', '.join(FIXTURE_OBJECTS)}")
    dump.add_argument("--N", dest="n_components", type=int, default=None)
    dump.add_argument("--level", type=int, default=1)
    dump.add_argument("--seed", type=int, default=7)
    dump.add_argument("--out", type=Path, default=None, help="output path (default: stdout)")
    return parser


def _run(args: argparse.Namespace, settings: Settings) -> int:
    if args.symbolic in ("lambda", "z"):
        logger.info("series in %s are always formal; scalars stay numeric", args.symbolic)
    options = SuiteOptions(
        n_components=args.n_components,
        level=args.level,
        seed=args.seed,
        points=args.points,
        slot=SLOT_NAMES[args.symbolic],
    )
    report = run_suite(args.suite, options)
    out = args.out or Path(settings.report_dir) / f"{args.suite}-{args.seed}.json"
    write_report(report, str(out), timings=not args.no_timings)
    if settings.record_history:
        append_run(settings.history_file, report)
    summary = report.summary()
    print(f"[{args.suite}] pass={summary['pass']} fail={summary['fail']} skipped={summary['skipped']} -> {out}")
    for result in report.failures:
        print(f"  - {result.check_id}: {result.anchor}")
    return 0 if report.passed else 1


def _dump(args: argparse.Namespace) -> int:
    text = canonical_json(dump_fixture(args.object, args.n_components, args.level, args.seed))
    if args.out is None:
        sys.stdout.write(text)
    else:
        args.out.parent.mkdir(parents=True, exist_ok=True)
        args.out.write_text(text, encoding="utf-8")
    return 0


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    if not argv or argv[0] not in (*COMMANDS, "-h", "--help"):
        argv = ["run", *argv]
    args = build_parser().parse_args(argv)
    settings = Settings()
    setup_logging(settings.log_file, settings.log_level, settings.console_log_level)
    bind_run(args.suite if args.command != "dump-fixture" else f"dump-{args.object}", args.seed)
    try:
        if args.command == "dump-fixture":
            return _dump(args)
        return _run(args, settings)
    except (DimAgtError, ValueError) as exc:
        logger.error("%s", exc)
        print(f"[error] {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
