"""
main.py - ``sparse-trace`` command line entry point.

Subcommands: analyze, mixedvol, random, solve, trace-test and experiments.
Results go to stdout (or ``--output``) as JSON or text; logs go to stderr.
Exit codes: 0 pass, 1 fail, 2 abort.
"""

import argparse
import json
import logging
import sys
import time
from pathlib import Path
from typing import Any, Dict, List, Optional

from .. import __version__
from ..config.common.loader import load_settings, resolve_seed
from ..err import SparseTraceError
from .commands import (
    EXIT_ABORT,
    CommandResult,
    cmd_analyze,
    cmd_experiments,
    cmd_mixedvol,
    cmd_random,
    cmd_solve,
    cmd_trace_test,
)
from .manifest import RunManifest
from .render import render, to_json

logger = logging.getLogger(__name__)


def _common_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json", help="output format")
    common.add_argument("--output", type=Path, help="write the result to this file instead of stdout")
    common.add_argument("--manifest", type=Path, help="write a run manifest to this file")
    common.add_argument("--config", type=Path, help="YAML settings file")
    common.add_argument("--seed", type=int, help="random seed (default: $SPARSETRACE_SEED or 0)")
    common.add_argument("--jobs", type=int, help="worker threads for path tracking")
    verbosity = common.add_mutually_exclusive_group()
    verbosity.add_argument("-v", "--verbose", action="count", default=0, help="more log output on stderr")
    verbosity.add_argument("-q", "--quiet", action="store_true", help="only errors on stderr")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_parser()
    parser = argparse.ArgumentParser(
        prog="sparse-trace",
        description="Trace tests for sparse polynomial systems.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common], help="report on a support collection")
    p.add_argument("supports", help="supports or system JSON file, or a registered family name")

    p = sub.add_parser("mixedvol", parents=[common], help="mixed volume of a square collection")
    p.add_argument("supports", help="supports or system JSON file, or a registered family name")

    p = sub.add_parser("random", parents=[common], help="random system on a collection")
    p.add_argument("supports", help="supports or system JSON file, or a registered family name")

    p = sub.add_parser("solve", parents=[common], help="all torus solutions of a square system")
    p.add_argument("system", help="system JSON file")

    p = sub.add_parser("trace-test", parents=[common], help="decide whether a solution file is complete")
    p.add_argument("system", help="system JSON file")
    p.add_argument("solutions", help="solution JSON file")
    p.add_argument("--constant", action="store_true", help="run the constant trace test")
    p.add_argument("--b-set", dest="b_set", help="supports JSON file for B (default: the candidate)")
    p.add_argument("--tol", type=float, help="relative tolerance of the verdict")
    p.add_argument("--assume-tal", action="store_true", help="skip the check that B is inside the candidate")
    p.add_argument("--one-sided", action="store_true", help="allow a non-abundant B; only Pass is conclusive")
    p.add_argument("--genericity", choices=("auto", "solve", "jacobian"), help="how genericity is checked")

    p = sub.add_parser("experiments", parents=[common], help="run a batch experiment")
    p.add_argument("which", choices=("pencil", "gallery", "bkk"))
    p.add_argument("names", nargs="*", help="restrict the gallery examples or corpus families")
    return parser


def configure_logging(verbose: int, quiet: bool) -> None:
    level = logging.ERROR if quiet else (logging.DEBUG if verbose > 1 else logging.INFO if verbose else logging.WARNING)
    logging.basicConfig(
        level=level,
        stream=sys.stderr,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        force=True,
    )


def _overrides(args: argparse.Namespace) -> Dict[str, Any]:
    overrides: Dict[str, Any] = {}
    if args.jobs is not None:
        overrides["tracker"] = {"jobs": args.jobs}
    trace_test: Dict[str, Any] = {}
    if getattr(args, "tol", None) is not None:
        trace_test["rel_tol"] = args.tol
    if getattr(args, "assume_tal", False):
        trace_test["assume_tal"] = True
    if getattr(args, "one_sided", False):
        trace_test["one_sided"] = True
    if getattr(args, "genericity", None):
        trace_test["genericity"] = args.genericity
    if trace_test:
        overrides["trace_test"] = trace_test
    return overrides


def dispatch(args: argparse.Namespace) -> CommandResult:
    overrides = _overrides(args)
    settings = load_settings(args.config, overrides)
    seed = resolve_seed(args.seed)
    if args.command == "analyze":
        return cmd_analyze(args.supports)
    if args.command == "mixedvol":
        return cmd_mixedvol(args.supports, settings)
    if args.command == "random":
        return cmd_random(args.supports, seed)
    if args.command == "solve":
        return cmd_solve(args.system, seed, settings)
    if args.command == "trace-test":
        return cmd_trace_test(args.system, args.solutions, seed, settings, args.constant, args.b_set)
    return cmd_experiments(args.which, seed, settings, args.names or None)


def _emit(text: str, output: Optional[Path]) -> None:
    if output is None:
        sys.stdout.write(text)
        sys.stdout.flush()
    else:
        output.write_text(text, encoding="utf-8")


def main(argv: Optional[List[str]] = None) -> int:
    """
    Run the command line.

    Returns:
        int: 0 for pass, 1 for fail, 2 when the run aborted.
    """
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(argv)
    configure_logging(args.verbose, args.quiet)
    started = time.perf_counter()
    try:
        result = dispatch(args)
    except SparseTraceError as e:
        logger.error(f"{type(e).__name__}: {e.message}")
        sys.stderr.write(json.dumps(e.to_dict(), default=str) + "\n")
        return EXIT_ABORT
    _emit(render(result.payload, args.format, result.template), args.output)

    if args.manifest is not None:
        manifest = RunManifest.build(
            argv,
            result.inputs,
            resolve_seed(args.seed),
            _overrides(args),
            __version__,
            result.exit_code,
            time.perf_counter() - started,
        )
        args.manifest.write_text(to_json(manifest.model_dump()), encoding="utf-8")
    return result.exit_code


def run() -> None:
    sys.exit(main())
