"""Command-line front end. Each subcommand builds the matching service
request model and calls the handler in-process; --server redirects the same
request to a running HTTP instance. Exit codes: 0 success, 2 parse error,
3 indeterminate, 4 budget exceeded, 1 anything else."""

from __future__ import annotations

import argparse
import re
import sys

# lets coefficient lists like "-46,-15,3,1" parse as positionals
_NEGATIVE_LIST = re.compile(r"^-\d+(?:\.\d+)?(?:,-?\d+(?:\.\d+)?)*$")

from . import reporting
from .errors import (
    BudgetExceeded,
    Indeterminate,
    MalformedInput,
    NotMonic,
    ToolkitError,
)
from .service import (
    AnalyzeRequest,
    FamilyRequest,
    PolygonRequest,
    RealizeRequest,
    handle_analyze,
    handle_family,
    handle_polygon,
    handle_realize,
)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_PARSE = 2
EXIT_INDETERMINATE = 3
EXIT_BUDGET = 4


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cache-dir", default=reporting.default_cache_dir(),
                        help="result cache directory (default: "
                             f"${reporting.CACHE_ENV}; omit to disable)")
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", default=True,
                     help="compact canonical JSON output (default)")
    fmt.add_argument("--pretty", action="store_true",
                     help="indented JSON output")
    common.add_argument("--server", default=None,
                        help="base URL of a running service instance")

    parser = argparse.ArgumentParser(
        prog="perronpf",
        description="Bounds and certificates for Perron-Frobenius degrees")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, **kwargs):
        p = sub.add_parser(name, parents=[common], **kwargs)
        p._negative_number_matcher = _NEGATIVE_LIST
        return p

    p = add("analyze", help="classify a Perron candidate")
    p.add_argument("poly", help="ascending integer coefficients, e.g. -1,-1,1")
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--max-power", type=int, default=10)

    p = add("family", help="generate a cubic family member")
    p.add_argument("epsilon", help="rational, e.g. 1/2")
    p.add_argument("--emit-biperron", action="store_true")

    p = add("realize", help="search for a realizing matrix")
    p.add_argument("poly")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--entry-bound", type=int, required=True)
    p.add_argument("--budget", type=int, default=10_000_000)

    p = add("polygon", help="invariant orbit-hull polygon")
    p.add_argument("--t", required=True, help="multiplier 're,im'")
    p.add_argument("--z0", default="1,0", help="seed point 're,im'")
    p.add_argument("--max-terms", type=int, default=20000)

    add("verify", help="run the full verification suite")

    p = add("serve", help="start the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)

    return parser


def _request_for(args):
    if args.command == "analyze":
        return "analyze", AnalyzeRequest(poly=args.poly, tol=args.tol,
                                         max_power=args.max_power)
    if args.command == "family":
        return "family", FamilyRequest(epsilon=args.epsilon,
                                       emit_biperron=args.emit_biperron)
    if args.command == "realize":
        return "realize", RealizeRequest(poly=args.poly, n=args.n,
                                         entry_bound=args.entry_bound,
                                         budget=args.budget)
    if args.command == "polygon":
        return "polygon", PolygonRequest(t=args.t, z0=args.z0,
                                         max_terms=args.max_terms)
    raise AssertionError(args.command)


_HANDLERS = {
    "analyze": handle_analyze,
    "family": handle_family,
    "realize": handle_realize,
    "polygon": handle_polygon,
}


def _run_remote(server, command, req):
    import httpx

    resp = httpx.post(f"{server.rstrip('/')}/{command}",
                      json=req.model_dump(), timeout=600.0)
    resp.raise_for_status()
    return resp.json()


def _run_command(args):
    command, req = _request_for(args)
    cache_dir = args.cache_dir
    key = None
    if cache_dir:
        key = reporting.cache_key(command, req.model_dump())
        hit = reporting.cache_get(cache_dir, key)
        if hit is not None:
            hit["cache_hit"] = True
            return hit
    if args.server:
        report = _run_remote(args.server, command, req)
    else:
        report = _HANDLERS[command](req)
    if cache_dir:
        reporting.cache_put(cache_dir, key, report)
        report["cache_hit"] = False
    return report


def _run_verify(args):
    from .verify import run_all

    results = run_all()
    for name, passed, detail, elapsed in results:
        status = "PASS" if passed else "FAIL"
        print(f"{status} {name} ({elapsed:.2f}s): {detail}")
    return EXIT_OK if all(r[1] for r in results) else EXIT_ERROR


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse uses code 2 for usage errors, matching the parse contract
        return int(exc.code or 0)

    if args.command == "verify":
        return _run_verify(args)
    if args.command == "serve":
        import uvicorn

        from .service import create_app

        uvicorn.run(create_app(), host=args.host, port=args.port)
        return EXIT_OK

    try:
        report = _run_command(args)
    except (MalformedInput, NotMonic) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except Indeterminate as exc:
        print(f"indeterminate: {exc}", file=sys.stderr)
        return EXIT_INDETERMINATE
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except ToolkitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR

    print(reporting.dumps_canonical(report, pretty=args.pretty))
    return EXIT_OK


if __name__ == "__main__":
    raise SystemExit(main())
