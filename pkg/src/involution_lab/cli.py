"""involution-lab command line: run a verification suite or list the catalog.

Exit codes: 0 pass, 1 failure, 2 inconclusive, 3 usage error.
"""
from __future__ import annotations

import argparse
import sys

from .groups import GroupError
from .lie import DEFAULT_SERIES_CAP
from .report import emit_report, list_catalog
from .suites import SUITES, ConfigError, SuiteConfig, run_suite
from .units import DEFAULT_ENUM_CAP

EXIT_USAGE = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="involution-lab", description="Exact checks on group algebras with oriented involutions.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    verify = sub.add_parser("verify", help="run one suite on one group algebra")
    verify.add_argument("suite", choices=sorted(SUITES))
    verify.add_argument("--group", required=True, help="catalog name or group spec, e.g. 'product(q8ext, cyclic:3)'")
    verify.add_argument("--kernel", default=None, help="generators of the orientation kernel N (default: catalog)")
    verify.add_argument("--char", type=int, default=None, dest="characteristic",
                        help="0 or an odd prime (default: catalog, else 3)")
    verify.add_argument("--format", choices=["json", "md"], default="json")
    verify.add_argument("--output", "-o", default=None, help="write the report here instead of stdout")
    verify.add_argument("--seed", type=int, default=0)
    verify.add_argument("--cap-order", type=int, default=None,
                        help="largest group order accepted (default 256 or $INVOLUTION_LAB_CAP_ORDER)")
    verify.add_argument("--cap-series", type=int, default=DEFAULT_SERIES_CAP)
    verify.add_argument("--cap-enum", type=int, default=DEFAULT_ENUM_CAP,
                        help="largest number of symmetric elements scanned exhaustively")
    verify.add_argument("--allow-inconclusive", action="store_true",
                        help="exit 0 when the only non-passing cases are inconclusive")
    verify.add_argument("--timings", action="store_true", help="include per-case runtimes (not byte-stable)")

    cat = sub.add_parser("catalog", help="list the built-in groups")
    cat.add_argument("--cap-order", type=int, default=None)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "catalog":
        sys.stdout.write(list_catalog(args.cap_order))
        return 0
    config = SuiteConfig(
        suite=args.suite,
        group=args.group,
        kernel=args.kernel,
        characteristic=args.characteristic,
        cap_order=args.cap_order,
        cap_series=args.cap_series,
        cap_enum=args.cap_enum,
        seed=args.seed,
    )
    try:
        report = run_suite(config, allow_inconclusive=args.allow_inconclusive)
        text = emit_report(report, args.format, args.output, timings=args.timings)
    except (ConfigError, GroupError) as exc:
        print(f"involution-lab: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"involution-lab: cannot write report: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.output is None:
        sys.stdout.write(text)
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
