"""Command-line entry point.

Exit codes: 0 when the requested checks pass, 1 on FAIL, 2 on usage or
document errors.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from itertools import product as iproduct
from typing import Optional, Sequence

from ..cohomology.cellular import NotLocallyClosedError, hc
from ..exactgeom.sets import DimensionError
from ..sheafobj.objects import PairingKernel
from ..transforms.evaluators import (
    conification_stalk,
    convolution_stalk,
    fourier_sato_stalk,
    nh_fourier_stalk,
    stalk_compose,
)
from ..transforms.matching import StalkSampleSet, match_predicted
from .formats import (
    FormatError,
    dims_to_doc,
    dumps,
    kernel_from_doc,
    load_json,
    object_from_doc,
    pairing_from_doc,
    parse_point,
    rational,
    set_from_doc,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _write(text: str, out: str):
    if out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def parse_grid(text: str, dim: int) -> list[tuple]:
    """"lo:hi:count" for every axis, or one such triple per axis separated by ';'."""
    axes = [a for a in text.split(";") if a.strip()]
    if len(axes) == 1:
        axes = axes * dim
    if len(axes) != dim:
        raise FormatError("--grid", f"expected 1 or {dim} axis specs, got {len(axes)}")
    values = []
    for i, a in enumerate(axes):
        parts = a.split(":")
        if len(parts) != 3:
            raise FormatError(f"--grid[{i}]", f"expected lo:hi:count, got {a!r}")
        lo, hi = rational(parts[0], f"--grid[{i}].lo"), rational(parts[1], f"--grid[{i}].hi")
        try:
            n = int(parts[2])
        except ValueError as exc:
            raise FormatError(f"--grid[{i}].count", f"not an integer: {parts[2]!r}") from exc
        if n < 1 or hi < lo:
            raise FormatError(f"--grid[{i}]", "need count >= 1 and lo <= hi")
        step = (hi - lo) / (n - 1) if n > 1 else Fraction(0)
        values.append([lo + k * step for k in range(n)])
    return list(iproduct(*values))


def cmd_hc(args) -> int:
    s = set_from_doc(load_json(args.set), args.set)
    _write(dumps(dims_to_doc(hc(s))), args.out)
    return EXIT_OK


def _pairing(args):
    return pairing_from_doc(load_json(args.pairing), args.pairing) if args.pairing else None


def cmd_stalk(args) -> int:
    f = object_from_doc(load_json(args.object), args.object)
    point = parse_point(args.point)
    pairing = _pairing(args)
    if args.kernel == "fs":
        kernel = PairingKernel(f.dim, pairing)
    elif args.kernel == "nhfs":
        kernel = PairingKernel(f.dim, pairing, nonhomogeneous=True)
    else:
        kernel = kernel_from_doc(load_json(args.kernel), args.kernel)
    _write(dumps(dims_to_doc(stalk_compose(f, kernel, point))), args.out)
    return EXIT_OK


def cmd_transform(args) -> int:
    f = object_from_doc(load_json(args.object), args.object)
    pred = object_from_doc(load_json(args.predict), args.predict)
    pairing = _pairing(args)
    kind = args.kind
    if kind == "fs":
        def ev(p):
            return fourier_sato_stalk(f, p, pairing)
    elif kind == "nhfs":
        def ev(p):
            return nh_fourier_stalk(f, p, pairing)
    elif kind == "cone":
        def ev(p):
            return conification_stalk(f, p)
    else:
        if not args.object2:
            raise UsageError("--kind conv needs --object2")
        g = object_from_doc(load_json(args.object2), args.object2)

        def ev(p):
            return convolution_stalk(f, g, p)
    samples = StalkSampleSet.build(pred.dim, [t.set for t in pred.terms], 0, args.seed,
                                   user=parse_grid(args.grid, pred.dim))
    report = match_predicted(ev, pred, samples, f"transform-{kind}", args.seed)
    _write(dumps(report.to_dict()), args.out)
    return {"PASS": EXIT_OK, "FAIL": EXIT_FAIL}.get(report.status, EXIT_USAGE)


def cmd_verify(args) -> int:
    from ..verify.scenarios import all_as_expected, registry, reports_json, run_all, run_scenario
    if args.all:
        reports = run_all(args.seed, args.samples, processes=args.processes)
        _write(reports_json(reports, args.timing), args.out)
        return EXIT_OK if all_as_expected(reports) else EXIT_FAIL
    if args.scenario not in registry():
        raise UsageError(f"unknown scenario {args.scenario!r}; known: {', '.join(registry())}")
    report = run_scenario(args.scenario, args.seed, args.samples)
    _write(reports_json([report], args.timing), args.out)
    return EXIT_OK if report.status == "PASS" else EXIT_FAIL


def cmd_pw(args) -> int:
    from ..pwnum.growth import growth_certificate
    from ..pwnum.laplace import TestFunction
    try:
        orders = [float(m) for m in args.orders.split(",") if m.strip()]
    except ValueError as exc:
        raise UsageError(f"--orders: {exc}") from exc
    make = TestFunction.cube if args.shape == "box" else TestFunction.standard_simplex
    phi = make(rational(args.radius, "--radius"), args.dim, args.kind)
    support = None
    if args.support_radius is not None:
        support = make(rational(args.support_radius, "--support-radius"), args.dim).body()
    certs = growth_certificate(phi, args.ymax, args.grid, orders, args.quad, support)
    want = "UNBOUNDED" if args.expect == "unbounded" else "BOUNDED"
    ok = all(c.verdict == want for c in certs)
    doc = {"shape": args.shape, "kind": args.kind, "dim": args.dim, "radius": args.radius,
           "support_radius": args.support_radius, "ymax": args.ymax, "grid": args.grid, "quad": args.quad,
           "expect": want, "status": "PASS" if ok else "FAIL", "certificates": [c.to_dict() for c in certs]}
    _write(dumps(doc), args.out)
    return EXIT_OK if ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="plsheaf", description="Exact stalk computations for semilinear sheaves.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp):
        sp.add_argument("--out", default="-", help="output file, '-' for standard output")
        sp.add_argument("--seed", type=int, default=42)

    sp = sub.add_parser("hc", help="compactly supported cohomology of a set")
    sp.add_argument("--set", required=True)
    common(sp)
    sp.set_defaults(func=cmd_hc)

    sp = sub.add_parser("stalk", help="stalk of a kernel transform at a point")
    sp.add_argument("--object", required=True)
    sp.add_argument("--kernel", required=True, help="fs, nhfs or a kernel file")
    sp.add_argument("--point", required=True)
    sp.add_argument("--pairing")
    common(sp)
    sp.set_defaults(func=cmd_stalk)

    sp = sub.add_parser("transform", help="compare a transform with a predicted object on a grid")
    sp.add_argument("--object", required=True)
    sp.add_argument("--object2", help="second factor for --kind conv")
    sp.add_argument("--kind", required=True, choices=["fs", "nhfs", "cone", "conv"])
    sp.add_argument("--grid", required=True, help="lo:hi:count, or one per axis separated by ';' (write --grid=-2:2:9 for a negative lo)")
    sp.add_argument("--predict", required=True)
    sp.add_argument("--pairing")
    common(sp)
    sp.set_defaults(func=cmd_transform)

    sp = sub.add_parser("verify", help="run registered scenarios")
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--scenario")
    g.add_argument("--all", action="store_true")
    sp.add_argument("--samples", type=int, help="random samples (default: per scenario)")
    sp.add_argument("--processes", type=int, default=None)
    sp.add_argument("--timing", action="store_true", help="include wall times (breaks byte-identity)")
    common(sp)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("pw", help="Paley-Wiener growth certificates")
    sp.add_argument("--shape", required=True, choices=["box", "simplex"])
    sp.add_argument("--kind", default="bump", choices=["bump", "indicator"])
    sp.add_argument("--radius", default="1")
    sp.add_argument("--support-radius", default=None, help="test against a different body (negative control)")
    sp.add_argument("--dim", type=int, default=1)
    sp.add_argument("--grid", type=int, default=41)
    sp.add_argument("--ymax", type=float, default=20.0)
    sp.add_argument("--orders", default="0,1,2,3,4")
    sp.add_argument("--quad", type=int, default=64)
    sp.add_argument("--expect", default="bounded", choices=["bounded", "unbounded"])
    common(sp)
    sp.set_defaults(func=cmd_pw)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
    except FormatError as exc:
        print(f"format error: {exc}", file=sys.stderr)
    except (DimensionError, NotLocallyClosedError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
    except ValueError as exc:
        print(f"input error: {exc}", file=sys.stderr)
    return EXIT_USAGE
