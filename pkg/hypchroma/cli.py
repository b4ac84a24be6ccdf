"""Command-line entry point: ``hypchroma <command> [options]``.

Exit codes: 0 on success, 1 when a computation or construction fails, 2 on
bad usage (including parameters outside a module's preconditions).
"""

import argparse
import logging
import sys

from hypchroma import __version__, api, verify
from hypchroma.exceptions import HypchromaError, InvalidInputError
from hypchroma.utils import resolve_threads, write_json

logger = logging.getLogger(__name__)

EXIT_OK, EXIT_FAILURE, EXIT_USAGE = 0, 1, 2


def _common(parser):
    parser.add_argument("--out", help="Write the JSON report to this path instead of stdout.")
    parser.add_argument("--threads", type=int, help="Worker cap (default: HYPCHROMA_THREADS or all cores).")
    parser.add_argument("-v", "--verbose", action="store_true", help="Log at DEBUG level.")


def build_parser():
    parser = argparse.ArgumentParser(prog="hypchroma", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bounds", help="Upper and lower bound report.")
    p.add_argument("--d", type=float, help="Forbidden distance.")
    p.add_argument("--genus", type=int, help="Genus of a closed surface.")
    _common(p)

    p = sub.add_parser("construct", help="Build a lower-bound surface and certify its clique.")
    p.add_argument("kind", choices=api.CONSTRUCT_KINDS)
    p.add_argument("--n", type=int, help="Polygon degree N (ideal, truncated).")
    p.add_argument("--d", type=float, help="Target distance (truncated).")
    p.add_argument("--t", type=float, help="Truncation or hole length.")
    p.add_argument("--blueprint", help="Shipped blueprint name (k4, k7, k19) or rotation system file.")
    p.add_argument("--blocks", type=lambda s: s.split(","), help="Chain blocks as label:source,...")
    p.add_argument("--extra-genus", type=int, default=0, help="Genus patch added when closing.")
    p.add_argument("--combinatorial", action="store_true", help="Skip the metric (degree <= 6 blueprints).")
    p.add_argument("--depth", type=int, help="Polygons per certificate path.")
    p.add_argument("--svg", help="Render the developed patch to this SVG file.")
    _common(p)

    p = sub.add_parser("net", help="Net coloring experiment in a hyperbolic disk.")
    p.add_argument("--d", type=float, required=True)
    p.add_argument("--radius", type=float, default=6.0, help="Disk radius R.")
    p.add_argument("--r0", type=float, help="Net separation (default min(2d/5, arcsinh 1)).")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=10_000)
    p.add_argument("--order", choices=("dsatur", "natural", "largest_first"))
    p.add_argument("--timing", action="store_true", help="Add wall_time to the report.")
    p.add_argument("--svg", help="Render the colored net to this SVG file.")
    _common(p)

    p = sub.add_parser("collar", help="Slice a collar into colored sections.")
    p.add_argument("--l-gamma", type=float, required=True, help="Core geodesic length.")
    p.add_argument("--d", type=float, required=True)
    p.add_argument("--eps", type=float, help="Thin-part parameter (default arcsinh(1/sqrt 2)).")
    p.add_argument("--r0", type=float)
    _common(p)

    p = sub.add_parser("search", help="Search a triangular embedding of K_n.")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int)
    p.add_argument("--shards", type=int, default=1)
    p.add_argument("--rotation-out", help="Write the rotation system to this file.")
    _common(p)

    p = sub.add_parser("verify", help="Run oracle cross-checks.")
    p.add_argument("suite", nargs="?", default="all", choices=verify.SUITES)
    p.add_argument("--rotation-file", action="append", default=[], help="Extra K_n file to check.")
    p.add_argument("--depth", type=int)
    p.add_argument("--seeds", type=int, default=3, help="Net instances in the nets suite.")
    _common(p)
    return parser


def _dispatch(args, threads):
    if args.command == "bounds":
        return api.cmd_bounds(d=args.d, genus=args.genus)
    if args.command == "construct":
        return api.cmd_construct(
            args.kind,
            n=args.n,
            d=args.d,
            t=args.t,
            blueprint=args.blueprint,
            blocks=args.blocks,
            extra_genus=args.extra_genus,
            metric=not args.combinatorial,
            depth=args.depth,
            threads=threads,
            svg=args.svg,
        )
    if args.command == "net":
        return api.cmd_net(
            args.d,
            args.radius,
            seed=args.seed,
            trials=args.trials,
            r0=args.r0,
            order=args.order,
            threads=threads,
            timing=args.timing,
            svg=args.svg,
        )
    if args.command == "collar":
        return api.cmd_collar(args.l_gamma, args.d, eps=args.eps, r0=args.r0)
    if args.command == "search":
        return api.cmd_search(
            args.n, args.seed, args.budget, args.shards, threads, out=args.rotation_out
        )
    return api.cmd_verify(
        args.suite, depth=args.depth, paths=args.rotation_file, threads=threads, seeds=args.seeds
    )


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        threads = resolve_threads(args.threads)
        report = _dispatch(args, threads)
    except InvalidInputError as e:
        parser.error(str(e))
    except HypchromaError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_FAILURE
    text = write_json(report, args.out)
    if not args.out:
        print(text)
    if args.command == "verify" and not report["passed"]:
        return EXIT_FAILURE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
