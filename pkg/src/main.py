"""
Optimistic Limit Command Line
-----------------------------
Main command-line module: `optlim compute` runs the pipeline on a bundled knot or
a PD file, `optlim verify` runs a property suite and `optlim fixtures` lists the
bundled knots.
"""
import sys
import json
import logging
import argparse

from . import __version__
from .config import DEFAULT_RNG_SEED, DEFAULT_SEEDS, DEFAULT_THREADS, EPS_SOLVE, LOG_FILE, LOG_LEVEL
from .errors import NoConvergence, OptlimError
from .identities.suites import SUITES, run_suite
from .pipeline import compute, load_diagram, potentials_of, prepare, triangulations_of
from .utils.dump_manager import save_json
from .utils.path_utils import list_fixtures

# Configure logging
logger = logging.getLogger(__name__)


def configure_logging(verbose=False):
    """Send log records to stderr and the log file."""
    level = logging.DEBUG if verbose else getattr(logging, LOG_LEVEL.upper(), logging.INFO)
    logging.basicConfig(
        level=level,
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        handlers=[
            logging.StreamHandler(),
            logging.FileHandler(LOG_FILE)
        ],
        force=True,
    )


def build_parser():
    parser = argparse.ArgumentParser(prog="optlim", description="Optimistic limits of knot invariants from PD codes")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--verbose", action="store_true", help="debug logging")
    commands = parser.add_subparsers(dest="command", required=True)

    compute_parser = commands.add_parser("compute", help="compute vol and cs of a knot")
    source = compute_parser.add_mutually_exclusive_group(required=True)
    source.add_argument("--knot", help="bundled knot name, e.g. 4_1")
    source.add_argument("--pd", help="PD code file")
    compute_parser.add_argument("--open-side", type=int, help="arc to split into the (1,1)-tangle")
    compute_parser.add_argument("--unit-region", type=int, help="region fixed to 1")
    compute_parser.add_argument("--seeds", type=int, default=DEFAULT_SEEDS, help="Newton seeds per system")
    compute_parser.add_argument("--rng-seed", type=int, default=DEFAULT_RNG_SEED)
    compute_parser.add_argument("--tol", type=float, default=EPS_SOLVE, help="solver residual threshold")
    compute_parser.add_argument("--threads", type=int, default=DEFAULT_THREADS)
    compute_parser.add_argument("--report", help="write the JSON report here instead of stdout")
    compute_parser.add_argument("--timings", action="store_true", help="include stage timings in the report")
    compute_parser.add_argument("--dump-potential", help="write V and W as JSON")
    compute_parser.add_argument("--dump-triangulation", help="write both triangulations as JSON")

    verify_parser = commands.add_parser("verify", help="run a property suite")
    verify_parser.add_argument("--suite", choices=SUITES, required=True)
    verify_parser.add_argument("--samples", type=int, help="sample count (suite default if omitted)")
    verify_parser.add_argument("--rng-seed", type=int, default=DEFAULT_RNG_SEED)
    verify_parser.add_argument("--report", help="write the JSON report here instead of stdout")

    commands.add_parser("fixtures", help="list bundled knots")
    return parser


def _emit(data, path):
    if path:
        if not save_json(data, path):
            return False
    else:
        print(json.dumps(data, indent=2, sort_keys=True))
    return True


def cmd_compute(args):
    """Run the pipeline and write the report; returns the exit code."""
    diagram = load_diagram(args.knot, args.pd)
    prepared = prepare(diagram, args.open_side, args.unit_region)
    if args.dump_potential:
        save_json(potentials_of(prepared), args.dump_potential)
    if args.dump_triangulation:
        save_json(triangulations_of(prepared), args.dump_triangulation)
    report = compute(diagram, seeds=args.seeds, rng_seed=args.rng_seed, tol=args.tol,
                     threads=args.threads, prepared=prepared)
    return 0 if _emit(report.to_dict(include_timings=args.timings), args.report) else 1


def cmd_verify(args):
    """Run one suite; returns 1 when any residual exceeds its tolerance."""
    result = run_suite(args.suite, args.samples, args.rng_seed)
    if not _emit(result, args.report):
        return 1
    if not result['passed']:
        logger.error(f"Suite {args.suite} failed: max residual {result['max_residual']:.3e}")
        for failure in result['failures']:
            print(json.dumps(failure, sort_keys=True), file=sys.stderr)
        return 1
    return 0


def cmd_fixtures(args):
    for name in list_fixtures():
        print(name)
    return 0


def main(argv=None):
    """Command-line entry point; returns the process exit code."""
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args.verbose)
    handlers = {'compute': cmd_compute, 'verify': cmd_verify, 'fixtures': cmd_fixtures}
    try:
        return handlers[args.command](args)
    except NoConvergence as e:
        logger.error(f"{str(e)}: {e.diagnostics}")
        return e.exit_code
    except OptlimError as e:
        logger.error(f"{type(e).__name__}: {str(e)}")
        return e.exit_code


if __name__ == "__main__":
    sys.exit(main())
