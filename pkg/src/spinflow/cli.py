"""Command-line entry point: ``spinflow catalog | verify | rep``."""
from __future__ import annotations

import argparse
import json
import sys

from . import catalog
from .clifford import build_rep
from .errors import SpecError, SpinflowError
from .report import render_report
from .spec_io import load_spec, spec_from_dict
from .verify import DEFAULT_TOL, run_verification

EXIT_OK, EXIT_FAIL, EXIT_SPEC = 0, 1, 2


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="spinflow", description="Spin-geometry verification engine for frame-presented manifolds.")
    sub = p.add_subparsers(dest="command", required=True)

    cat = sub.add_parser("catalog", help="list built-in manifolds or print one as JSON")
    cat.add_argument("--show", metavar="NAME", help="print the JSON spec of a catalog entry")
    cat.add_argument("--tau", type=float, default=1.0, help="nil3 parameter (default 1.0)")

    ver = sub.add_parser("verify", help="run all applicable checks")
    src = ver.add_mutually_exclusive_group(required=True)
    src.add_argument("--manifold", metavar="NAME", help="catalog entry to verify")
    src.add_argument("--file", metavar="PATH", help="JSON manifold spec to verify")
    ver.add_argument("--tau", type=float, default=1.0, help="nil3 parameter (default 1.0)")
    ver.add_argument("--tol", type=float, default=DEFAULT_TOL, help=f"absolute tolerance (default {DEFAULT_TOL:g})")
    ver.add_argument("--format", choices=("text", "json"), default="text")

    rep = sub.add_parser("rep", help="print gamma matrices as [re, im] grids")
    rep.add_argument("--dim", type=int, required=True)
    return p


def _cmd_catalog(args) -> int:
    if args.show:
        try:
            print(catalog.to_json(args.show, args.tau))
        except (KeyError, ValueError) as exc:
            print(f"error: {exc.args[0]}", file=sys.stderr)
            return EXIT_SPEC
        return EXIT_OK
    width = max(len(n) for n in catalog.names())
    for name in catalog.names():
        print(f"{name.ljust(width)}  {catalog.DESCRIPTIONS[name]}")
    return EXIT_OK


def _load(args):
    if args.manifold:
        try:
            return spec_from_dict(catalog.get(args.manifold, args.tau))
        except (KeyError, ValueError) as exc:
            raise SpecError(exc.args[0]) from exc
    try:
        with open(args.file, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise SpecError(f"cannot read {args.file}: {exc.strerror}") from exc
    return load_spec(text)


def _cmd_verify(args) -> int:
    try:
        spec = _load(args)
    except SpecError as exc:
        kind = getattr(exc, "kind", "input")
        print(f"spec error ({kind}): {exc}", file=sys.stderr)
        return EXIT_SPEC
    report = run_verification(spec, args.tol)
    sys.stdout.write(render_report(report, args.format))
    return report.exit_status


def _cmd_rep(args) -> int:
    try:
        rep = build_rep(args.dim)
    except SpinflowError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SPEC
    grids = [[[[float(z.real) + 0.0, float(z.imag) + 0.0] for z in row] for row in g] for g in rep.gamma]
    print(json.dumps({"n": rep.n, "N": rep.N, "gamma": grids}))
    return EXIT_OK


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    handler = {"catalog": _cmd_catalog, "verify": _cmd_verify, "rep": _cmd_rep}[args.command]
    return handler(args)


if __name__ == "__main__":
    sys.exit(main())
