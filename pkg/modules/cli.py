"""
Command-line surface: argparse subcommands over every verifier, certificate,
oracle and search.

Exit codes: 0 when every verdict held, 1 when a statement was refuted or a
check failed, 2 for usage and internal errors. Reports go to standard output,
diagnostics to standard error.
"""

import argparse
import logging
import sys
from dataclasses import dataclass, field

import config
from modules.congruence import (
    METHODS,
    WITNESS_CASES,
    canonicalize,
    kiming_olsson_scan,
    pl2_mod5_via_multipartition,
    prime_power_witness,
    verify,
)
from modules.errors import PlaneCongError, UsageError
from modules.partitions import (
    ColoredPartMultiset,
    enum_multi,
    enum_plane,
    enum_restricted,
    f_series,
    multipartition_series,
    pl_series,
    restricted_series,
    s_k_multiset,
)
from modules.periodicity import kwong_period
from modules.reports import OracleValue, SeriesListing, render_text, to_json
from modules.run_recorder import RunRecorder
from modules.search import SearchConfig, enumerate_and_verify, zero_scan

logger = logging.getLogger(__name__)

SUBCOMMANDS = ("series", "period", "verify", "witness", "search", "scan", "oracle")
ZERO_TERMS = "0-terms"
LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")
EXTRA_WITNESS_CASES = ("pl2-mod5", "kiming-olsson")

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_ERROR = 2


@dataclass
class Command:
    subcommand: str
    options: dict
    output_format: str = "text"
    record: bool = False
    log_level: str = None
    argv: list = field(default_factory=list)


class _Parser(argparse.ArgumentParser):
    # argparse exits on bad input; the CLI wants an exception it can map to exit 2
    def error(self, message):
        raise UsageError(message)


def _nonneg_int(text):
    try:
        value = int(text, 10)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a decimal integer, got {text!r}")
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {value}")
    return value


def _positive_int(text):
    value = _nonneg_int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def _residues(text):
    """Comma-separated residues; the token 0-terms stands for an empty side."""
    if text == ZERO_TERMS:
        return ()
    if not text:
        raise argparse.ArgumentTypeError(f"empty residue list; use {ZERO_TERMS} for '== 0'")
    return tuple(_nonneg_int(token) for token in text.split(","))


def _parts(text):
    try:
        return ColoredPartMultiset.parse(text)
    except PlaneCongError as e:
        raise argparse.ArgumentTypeError(str(e))


def build_parser():
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text", dest="output_format",
                        help="report format on standard output (default: %(default)s)")
    common.add_argument("--record", action="store_true",
                        help=f"save the command, JSON reports and a PDF summary under {config.RUN_LOG_DIR}/")
    common.add_argument("--log-level", type=str.upper, choices=LOG_LEVELS, default=None,
                        help=f"logging level on standard error (default: {config.LOG_LEVEL})")

    parser = _Parser(prog="planecong", description="Congruences for k-component plane partitions.")
    sub = parser.add_subparsers(dest="subcommand", metavar="subcommand")
    sub.required = True

    p = sub.add_parser("series", parents=[common], help="print leading coefficients of a series")
    p.add_argument("--kind", choices=("pl", "f", "multi", "restricted"), required=True)
    p.add_argument("--k", type=_positive_int)
    p.add_argument("--mod", type=_positive_int, required=True)
    p.add_argument("--order", type=_positive_int, default=20)
    p.add_argument("--parts", type=_parts, help="part[:colors],... for --kind restricted")

    p = sub.add_parser("period", parents=[common], help="closed-form period certificate")
    p.add_argument("--prime", type=_positive_int, required=True)
    p.add_argument("--exp", type=_positive_int, default=1)
    p.add_argument("--k", type=_positive_int, help="use S_k (default: k = prime)")
    p.add_argument("--parts", type=_parts, help="explicit multiset S instead of S_k")

    p = sub.add_parser("verify", parents=[common], help="verify one congruence statement")
    p.add_argument("--k", type=_positive_int, required=True)
    p.add_argument("--mod", type=_positive_int, required=True)
    p.add_argument("--lhs", type=_residues, required=True)
    p.add_argument("--rhs", type=_residues, required=True, help=f"residues, or {ZERO_TERMS}")
    p.add_argument("--stride", type=_positive_int, help="step of the progression (default: --mod)")
    p.add_argument("--method", choices=METHODS)
    p.add_argument("--horizon", type=_positive_int, help="values of n checked by the empirical paths")

    p = sub.add_parser("witness", parents=[common], help="finite computations behind the other congruence families")
    p.add_argument("--case", choices=WITNESS_CASES + EXTRA_WITNESS_CASES, required=True)
    p.add_argument("--horizon", type=_positive_int)
    p.add_argument("--prime", type=_positive_int, default=5, help="prime for kiming-olsson (default: %(default)s)")

    p = sub.add_parser("search", parents=[common], help="find every provable statement for a prime")
    p.add_argument("--prime", type=_positive_int, required=True)
    p.add_argument("--max-terms", type=_positive_int, default=1, dest="max_terms")
    p.add_argument("--workers", type=_positive_int, default=config.DEFAULT_WORKER_COUNT)

    p = sub.add_parser("scan", parents=[common], help="look for nonvanishing values in every residue class")
    p.add_argument("--prime-limit", type=_positive_int, default=config.DEFAULT_SCAN_PRIME_LIMIT, dest="prime_limit")
    p.add_argument("--horizon", type=_positive_int, help=f"values per class (default: {config.SCAN_HORIZON_FACTOR} * ell)")
    p.add_argument("--workers", type=_positive_int, default=config.DEFAULT_WORKER_COUNT)

    p = sub.add_parser("oracle", parents=[common], help="exact count by enumeration")
    which = p.add_mutually_exclusive_group(required=True)
    which.add_argument("--plane", action="store_const", const="plane", dest="counter")
    which.add_argument("--multi", action="store_const", const="multi", dest="counter")
    which.add_argument("--restricted", action="store_const", const="restricted", dest="counter")
    p.add_argument("--n", type=_nonneg_int, required=True)
    p.add_argument("--k", type=_positive_int)
    p.add_argument("--parts", type=_parts)

    return parser


def _validate(subcommand, options):
    if subcommand == "series":
        if options["kind"] == "restricted" and options["parts"] is None:
            raise UsageError("--parts is required for --kind restricted")
        if options["kind"] != "restricted" and options["k"] is None:
            raise UsageError(f"--k is required for --kind {options['kind']}")
    elif subcommand == "oracle":
        if options["counter"] == "restricted" and options["parts"] is None:
            raise UsageError("--parts is required with --restricted")
        if options["counter"] != "restricted" and options["k"] is None:
            raise UsageError(f"--k is required with --{options['counter']}")
    elif subcommand == "period":
        if options["k"] is not None and options["parts"] is not None:
            raise UsageError("--k and --parts are mutually exclusive")


def parse(argv):
    """
    Parse and validate a command line.

    Args:
        argv (list): Arguments after the program name

    Returns:
        Command: Validated command

    Raises:
        UsageError: Unknown subcommand or flag, missing flag, non-numeric value
    """
    namespace = build_parser().parse_args(argv)
    options = vars(namespace).copy()
    subcommand = options.pop("subcommand")
    output_format = options.pop("output_format")
    record = options.pop("record")
    log_level = options.pop("log_level")
    _validate(subcommand, options)
    return Command(subcommand, options, output_format, record, log_level, list(argv))


def _run_series(o):
    kind, k, modulus, order = o["kind"], o["k"], o["mod"], o["order"]
    if kind == "pl":
        return SeriesListing(f"PL_{k} mod {modulus}", modulus, tuple(pl_series(k, modulus, order).tolist()))
    if kind == "f":
        return SeriesListing(f"F_{k} mod {modulus}", modulus, tuple(f_series(k, modulus, order).tolist()))
    if kind == "multi":
        series = multipartition_series(k, modulus, order)
        return SeriesListing(f"p_{k} mod {modulus}", modulus, tuple(series.tolist()))
    series = restricted_series(o["parts"], modulus, order)
    return SeriesListing(f"p(n; {o['parts']}) mod {modulus}", modulus, tuple(series.tolist()))


def _run_period(o):
    multiset = o["parts"] if o["parts"] is not None else s_k_multiset(o["k"] or o["prime"])
    return kwong_period(o["prime"], o["exp"], multiset)


def _run_verify(o):
    st = canonicalize(o["k"], o["mod"], o["lhs"], o["rhs"], stride=o["stride"])
    return verify(st, method=o["method"], horizon=o["horizon"])


def _run_witness(o):
    case = o["case"]
    if case == "pl2-mod5":
        return pl2_mod5_via_multipartition(o["horizon"])
    if case == "kiming-olsson":
        return kiming_olsson_scan(o["prime"], o["horizon"])
    return prime_power_witness(case)


def _run_search(o):
    cfg = SearchConfig(prime=o["prime"], max_terms_per_side=o["max_terms"], worker_count=o["workers"])
    return enumerate_and_verify(cfg)


def _run_scan(o):
    cfg = SearchConfig(scan_prime_limit=o["prime_limit"], scan_horizon=o["horizon"],
                       worker_count=o["workers"])
    return zero_scan(cfg)


def _run_oracle(o):
    counter, n = o["counter"], o["n"]
    if counter == "plane":
        return OracleValue(counter, n, enum_plane(n, o["k"]), k=o["k"])
    if counter == "multi":
        return OracleValue(counter, n, enum_multi(n, o["k"]), k=o["k"])
    return OracleValue(counter, n, enum_restricted(n, o["parts"]), parts=str(o["parts"]))


_HANDLERS = {
    "series": _run_series,
    "period": _run_period,
    "verify": _run_verify,
    "witness": _run_witness,
    "search": _run_search,
    "scan": _run_scan,
    "oracle": _run_oracle,
}


def _record(cmd, report):
    recorder = RunRecorder()
    recorder.create_run_folder()
    recorder.save_command(cmd.argv)
    recorder.save_report(cmd.subcommand, report)
    recorder.generate_summary_pdf()


def execute(cmd, out=None):
    """
    Run a parsed command and print its report.

    Returns:
        int: 0 if every verdict held, 1 on a refutation or failed check, 2 on error
    """
    out = out or sys.stdout
    try:
        report = _HANDLERS[cmd.subcommand](cmd.options)
        if cmd.record:
            _record(cmd, report)
    except (PlaneCongError, OSError) as e:
        print(f"planecong: error: {e}", file=sys.stderr)
        return EXIT_ERROR
    except Exception:
        logger.exception("unexpected failure in %s", cmd.subcommand)
        return EXIT_ERROR

    if cmd.output_format == "json":
        print(to_json(report), file=out)
    else:
        print(render_text(report), file=out)

    return EXIT_OK if report.passed else EXIT_FAILED
