"""Command-line entry point: ``lgdiv <command> ...``."""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from ..errors import LgdivError
from ..local import DEFAULT_PRECISION
from . import commands
from .report import error_report, exit_code, render_pretty, to_json
from .specs import BUNDLED, CurvePair, CurveSpec, bundled_path, load_spec


def resolve_spec(name: str, spec_dir=None) -> CurveSpec | CurvePair:
    """A path to a spec file, or the name of a bundled spec such as 'prop32'."""
    path = Path(name)
    if path.exists():
        return load_spec(path)
    bundled = name if name.endswith(".json") else name + ".json"
    if bundled in BUNDLED or spec_dir is not None:
        return load_spec(bundled_path(bundled, spec_dir))
    raise FileNotFoundError(f"no spec file {name!r} and no bundled spec of that name "
                            f"(bundled: {', '.join(b[:-5] for b in BUNDLED)})")


def _curve_only(spec) -> CurveSpec:
    if isinstance(spec, CurvePair):
        raise LgdivError(f"{spec.label} is a pair file; this command needs a single curve")
    return spec


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="lgdiv",
        description="Local-global divisibility checks for y^2 + xy = x^3 + a x^2 + b over F_q(t).")
    out = argparse.ArgumentParser(add_help=False)
    fmt = out.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="pretty", action="store_false", default=False,
                     help="JSON report (default)")
    fmt.add_argument("--pretty", dest="pretty", action="store_true", help="human-readable report")
    out.add_argument("--timing", action="store_true", help="add elapsed wall-clock time to the report")
    out.add_argument("--spec-dir", help="directory to read bundled spec names from")
    sub = p.add_subparsers(dest="command", required=True, metavar="command")

    s = sub.add_parser("sha1", parents=[out], help="order of Sha^1(k, E[2^n]) with cross-check")
    s.add_argument("spec")
    s.add_argument("--n", type=int, default=3)

    s = sub.add_parser("local-div", parents=[out], help="2^n-divisibility of a point at sampled places")
    s.add_argument("spec")
    s.add_argument("--point", required=True, help='combination of generators, e.g. "4*P"')
    s.add_argument("--m", type=int, required=True, help="a power of 2")
    s.add_argument("--degree-bound", type=int, default=3)
    s.add_argument("--precision", type=int, default=DEFAULT_PRECISION)
    s.add_argument("--jobs", type=int, default=1, help="worker processes for the place sweep")

    s = sub.add_parser("global-div", parents=[out], help="divisibility in the given Mordell-Weil lattice")
    s.add_argument("spec")
    s.add_argument("--point", required=True)
    s.add_argument("--m", type=int, required=True)

    s = sub.add_parser("mw-check", parents=[out], help="sanity checks on Mordell-Weil generators")
    s.add_argument("spec")

    s = sub.add_parser("count", parents=[out], help="point counts over GF(q) for constant curves")
    s.add_argument("spec")

    s = sub.add_parser("cohomology", parents=[out], help="H^1 of subgroups of (Z/2^N)^x")
    s.add_argument("--n", type=int, required=True, help="the exponent N")
    s.add_argument("--subgroup", default="table", help='generators such as "1,3,5,7", or "table"')

    sub.add_parser("verify-paper", parents=[out], help="run the full acceptance suite")
    return p


def _dispatch(args) -> dict:
    c = args.command
    if c == "cohomology":
        return commands.cmd_cohomology(args.n, args.subgroup)
    if c == "verify-paper":
        return commands.cmd_verify_paper(args.spec_dir)
    spec = resolve_spec(args.spec, args.spec_dir)
    if c == "count":
        return commands.cmd_count(spec)
    spec = _curve_only(spec)
    if c == "sha1":
        return commands.cmd_sha1(spec, args.n)
    if c == "local-div":
        return commands.cmd_local_div(spec, args.point, args.m, args.degree_bound, args.precision, args.jobs)
    if c == "global-div":
        return commands.cmd_global_div(spec, args.point, args.m)
    if c == "mw-check":
        return commands.cmd_mw_check(spec)
    raise AssertionError(c)


def _inputs(args) -> dict:
    return {k: v for k, v in sorted(vars(args).items())
            if k not in ("command", "pretty", "timing") and v is not None}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    start = time.perf_counter()
    try:
        report = _dispatch(args)
    except (LgdivError, FileNotFoundError, ValueError) as exc:
        report = error_report(args.command, _inputs(args), str(exc))
    if args.timing:
        report["timing"] = {"seconds": round(time.perf_counter() - start, 6)}
    sys.stdout.write(render_pretty(report) if args.pretty else to_json(report))
    return exit_code(report)


if __name__ == "__main__":
    sys.exit(main())
