"""Command-line interface: ``floerlink <command> ...``.

Exit codes: 0 success, 1 verification failure, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import render
from .alexander import NormalizedAlexander, delta_prime
from .catalog import default_catalog_path, load_catalog, read_catalog
from .detect import classify
from .errors import FloerLinkError, HypothesisMissing, WrongArity
from .invariants import (
    DInvariantBound,
    a2,
    casson_surgery,
    d_large_surgery_knot,
    d_lens,
    d_one_surgery_bound,
    format_rational,
    hf_inf_rank_zero_surgery,
    mu123_squared,
    sato_levine,
)
from .lattice import box, eval_H, eval_h
from .laurent import format_poly
from .verify import chi_tables, dumps, verify_path

COMPUTE_WHAT = ("H", "h", "hprime", "alexander", "delta_prime")
INVARIANTS = ("a2", "beta", "mu123", "casson", "d-lens", "d-large", "d-one-bound", "rank-zero-surgery")


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="machine-readable output")
    p.add_argument("--catalog", default=argparse.SUPPRESS, help="catalog path (default: $FLOER_CATALOG or bundled)")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="floerlink", description=__doc__.splitlines()[0], parents=[common])
    sub = parser.add_subparsers(dest="command", required=True)

    cat = sub.add_parser("catalog", parents=[common], help="catalog maintenance")
    cat_sub = cat.add_subparsers(dest="action", required=True)
    val = cat_sub.add_parser("validate", parents=[common], help="parse and build every record (fail-fast)")
    val.add_argument("path")
    dump = cat_sub.add_parser("dump", parents=[common], help="print the catalog in canonical form")
    dump.add_argument("path", nargs="?")

    comp = sub.add_parser("compute", parents=[common], help="print H, h, h', Delta or Delta'")
    comp.add_argument("--link", required=True)
    comp.add_argument("what", choices=COMPUTE_WHAT)
    comp.add_argument("--box", type=int, default=None, help="radius of the rendered box")

    inv = sub.add_parser("invariant", parents=[common], help="numerical invariants")
    inv.add_argument("which", choices=INVARIANTS)
    inv.add_argument("--link")
    inv.add_argument("--q", help="comma-separated surgery denominators for casson")
    inv.add_argument("--m", type=int)
    inv.add_argument("--i", type=int)

    det = sub.add_parser("detect", parents=[common], help="run the detection theorems")
    det.add_argument("--link", required=True)

    sub.add_parser("verify", parents=[common], help="verify every record of a catalog")
    return parser


def _emit(args, text: str, payload) -> int:
    if args.json:
        sys.stdout.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    else:
        sys.stdout.write(text)
    return 0


def _bound_text(b: DInvariantBound) -> str:
    return (
        f"{format_rational(b.value)}\n"
        f"  kind: {b.kind.value}\n"
        f"  coefficients: {', '.join(c.value for c in b.coefficients)}\n"
        f"  hypotheses: {', '.join(b.hypotheses)}\n"
        f"  anchor: {b.anchor}\n"
    )


def _value_text(value, hypotheses=(), anchor="") -> str:
    out = f"{value}\n"
    if hypotheses:
        out += f"  hypotheses: {', '.join(hypotheses)}\n"
    if anchor:
        out += f"  anchor: {anchor}\n"
    return out


def cmd_compute(args, cat) -> int:
    rec = cat[args.link]
    if args.what == "alexander":
        text = format_poly(rec.alexander) + "\n"
        return _emit(args, text, {"link": rec.name, "alexander": rec.alexander.to_json()})
    if args.what == "delta_prime":
        q = delta_prime(NormalizedAlexander(rec.alexander))
        return _emit(args, format_poly(q) + "\n", {"link": rec.name, "delta_prime": q.to_json()})
    model = cat.model(rec.name)
    if args.what == "hprime":
        return _emit(args, render.hprime_tables(model), {"link": rec.name, **model.to_json()})
    radius = args.box if args.box is not None else model.radius() + 2
    text = render.lattice_function(model, args.what, radius)
    f = eval_H if args.what == "H" else eval_h
    payload = {"link": rec.name, "function": args.what, "radius": radius,
               "values": [[list(s), f(model, s)] for s in box(model.n, radius)]}
    return _emit(args, text, payload)


def cmd_invariant(args, cat) -> int:
    w = args.which
    if w == "d-lens":
        if args.m is None or args.i is None:
            raise WrongArity("d-lens needs --m and --i")
        v = d_lens(args.m, args.i)
        anchor = "d(L(m,1), i) = ((2i - m)^2 - m) / 4m"
        return _emit(args, _value_text(format_rational(v), (), anchor),
                     {"invariant": "d-lens", "m": args.m, "i": args.i, "value": format_rational(v), "paper_anchor": anchor})
    if not args.link:
        raise WrongArity(f"{w} needs --link")
    rec = cat[args.link]
    model = cat.model(rec.name)
    chi = rec.chi_prime
    if w == "d-large":
        if rec.n != 1:
            raise WrongArity("d-large needs a knot")
        if args.m is None or args.i is None:
            raise WrongArity("d-large needs --m and --i")
        b = d_large_surgery_knot(model.full, args.m, args.i)
        return _emit(args, _bound_text(b), {"link": rec.name, **b.to_json()})
    if w == "d-one-bound":
        b = d_one_surgery_bound(model, rec.flags.lspace)
        return _emit(args, _bound_text(b), {"link": rec.name, **b.to_json()})
    if w == "a2":
        v, hyps, anchor = a2(model, chi), ("algebraically split",), "a2 = sum of h' - chi'"
    elif w == "beta":
        v, hyps, anchor = sato_levine(model, chi), ("2 components", "algebraically split"), "Sato-Levine beta = a2"
    elif w == "mu123":
        flagged = rec.flags.brunnian and rec.flags.lspace
        sq, mu = mu123_squared(model, chi, brunnian_lspace=flagged)
        v = mu if mu is not None else f"sqrt({sq})"
        hyps, anchor = ("3 components", "algebraically split"), "mu_123^2 = a2"
    elif w == "casson":
        q = [int(x) for x in args.q.split(",")] if args.q else [1] * rec.n
        v = casson_surgery(model, q, chi_tables(rec, cat), rec.flags.lspace)
        hyps, anchor = ("algebraically split", f"q = {tuple(q)}"), "Hoste state sum over sublinks"
    else:
        if rec.n != 3:
            raise WrongArity("rank-zero-surgery needs a 3-component link")
        if not (rec.flags.brunnian and rec.flags.lspace):
            raise HypothesisMissing("rank-zero-surgery needs the Brunnian and L-space flags")
        _, mu = mu123_squared(model, chi, brunnian_lspace=True)
        v = hf_inf_rank_zero_surgery(mu)
        hyps, anchor = ("Brunnian", "L-space link"), "rank of HF^infty of 0-surgery depends on mu_123 mod 2"
    return _emit(args, _value_text(v, hyps, anchor),
                 {"link": rec.name, "invariant": w, "value": v, "hypotheses": list(hyps), "paper_anchor": anchor})


def cmd_detect(args, cat) -> int:
    rec = cat[args.link]
    model = cat.model(rec.name) if rec.flags.lspace else None
    verdicts = classify(model, rec.flags)
    text = "".join(render.verdict(v) for v in verdicts[:1])
    if len(verdicts) > 1:
        text += "".join("also: " + render.verdict(v) for v in verdicts[1:])
    return _emit(args, text, {"link": rec.name, "verdicts": [v.to_json() for v in verdicts]})


def cmd_verify(args) -> int:
    path = args.catalog or default_catalog_path()
    report = verify_path(path)
    sys.stdout.write(dumps(report) if args.json else report.render())
    return 0 if report.ok else 1


def cmd_catalog(args) -> int:
    if args.action == "validate":
        cat = load_catalog(args.path)
        return _emit(args, f"ok: {len(cat.records)} records\n", {"ok": True, "records": cat.names()})
    cat = read_catalog(args.path or args.catalog or default_catalog_path())
    sys.stdout.write(cat.dumps())
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    args.json = getattr(args, "json", False)
    args.catalog = getattr(args, "catalog", None)
    try:
        if args.command == "verify":
            return cmd_verify(args)
        if args.command == "catalog":
            return cmd_catalog(args)
        cat = load_catalog(args.catalog)
        handler = {"compute": cmd_compute, "invariant": cmd_invariant, "detect": cmd_detect}[args.command]
        return handler(args, cat)
    except (FloerLinkError, ValueError) as exc:
        msg = {"error": type(exc).__name__, "message": str(exc)}
        if args.json:
            sys.stdout.write(json.dumps(msg, indent=2, sort_keys=True) + "\n")
        else:
            sys.stderr.write(f"error: {type(exc).__name__}: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
