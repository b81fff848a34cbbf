"""disclab command-line interface.

Exit codes: 0 success, 1 domain or input error, 2 reduction budget exceeded.
With ``--out DIR`` each run writes DIR/manifest.json plus its result files.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import __version__
from .constraints import ConstraintSet
from .copositive import SymMatrixParam, copositive_boundary_poly, copositive_check
from .curve import curve_trace
from .degree import (DiscriminantSpec, MultiHomogSpec, disc_degree_in_fk, disc_total_degree,
                     multihomog_disc_degree)
from .errors import BudgetExceeded, DisclabError
from .locus import discriminantal_locus, family_from_job
from .poly import VarSet, parse, to_string
from .resultant import discriminant, macaulay_resultant, sylvester_resultant
from .scan import classify, constrained_min, product_sphere_min, sphere_min


def _names(text: str | None) -> list[str]:
    return [t.strip() for t in text.split(",") if t.strip()] if text else []


def _ints(text: str) -> list[int]:
    return [int(t) for t in _names(text)]


def _assignments(text: str | None) -> dict:
    out = {}
    for item in _names(text):
        if "=" not in item:
            raise DisclabError(f"expected name=value, got {item!r}")
        k, v = item.split("=", 1)
        try:
            out[k.strip()] = Fraction(v.strip())
        except ValueError:
            raise DisclabError(f"not a number: {v!r}") from None
    return out


def _load_json(path: str) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as e:
        raise DisclabError(f"cannot read {path}: {e}") from None


# --- subcommands: each returns (stdout text, result payload, extra files) ---------

def cmd_disc(args):
    vs = VarSet(_names(args.vars) + _names(args.coeff_vars))
    f = parse(args.poly, vs)
    d = discriminant(f, mode=args.mode, vars=_names(args.vars))
    s = to_string(d)
    return s, {"discriminant": s}, {}


def cmd_res(args):
    xs = _names(args.vars)
    vs = VarSet(xs + _names(args.coeff_vars))
    ps = [parse(p, vs) for p in args.poly]
    if len(xs) == 1 and len(ps) == 2:
        r = sylvester_resultant(ps[0], ps[1], xs[0])
    else:
        r = macaulay_resultant(ps, xs)
    s = to_string(r)
    return s, {"resultant": s}, {}


def cmd_degree(args):
    if args.group_dims:
        spec = MultiHomogSpec(_ints(args.group_dims), _ints(args.degrees))
        value = multihomog_disc_degree(spec)
        return str(value), {"degree": value, "group_dims": list(spec.group_dims),
                            "group_degrees": list(spec.group_degrees)}, {}
    if args.num_vars is None:
        raise DisclabError("--num-vars is required unless --group-dims is given")
    spec = DiscriminantSpec(args.num_vars, _ints(args.degrees))
    value = disc_degree_in_fk(spec, args.k) if args.k is not None else disc_total_degree(spec)
    return str(value), {"degree": value, "num_vars": spec.num_vars,
                        "degrees": list(spec.degrees), "k": args.k}, {}


def cmd_eliminate(args):
    family = family_from_job(_load_json(args.job))
    results = discriminantal_locus(family, budget=args.budget, workers=args.workers)
    lines = []
    for r in results:
        flag = " [zero ideal]" if r.zero_ideal else " [unit ideal]" if r.unit_ideal else ""
        lines.append(f"# {r.label}{flag}")
        lines += [to_string(g) for g in r.generators]
    return "\n".join(lines), {"systems": [r.to_json() for r in results]}, {}


def cmd_scan(args):
    xs = _names(args.vars)
    params = _assignments(args.params)
    vs = VarSet(xs + list(params))

    def sub(text):
        return parse(text, vs).subs(params).embed(VarSet(xs))

    f = sub(args.poly)
    K = ConstraintSet([sub(g) for g in args.eq], [sub(p) for p in args.ineq],
                      compact=args.compact, closed_at_infinity=args.closed_at_infinity)
    common = dict(starts=args.starts, seed=args.seed, workers=args.workers)
    if args.mode == "sphere":
        rep = sphere_min(f, **common)
    elif args.mode == "product":
        rep = product_sphere_min(f, _ints(args.groups), **common)
    elif args.mode == "constrained":
        rep = constrained_min(f, K, args.homogenized, **common)
    else:
        m = classify(f, K, args.tol_band, **common)
        return f"{m.verdict} {m.margin:.6g}", m.to_json(), {}
    flag = "" if rep.attained else " (not attained)"
    return f"{rep.value:.12g}{flag}", rep.to_json(), {}


def cmd_copositive(args):
    data = _load_json(args.matrix)
    A = SymMatrixParam.from_json(data, _names(args.params) or None)
    if args.at is not None or not A.varset.names:
        m = copositive_check(A.numeric(_assignments(args.at)), args.tol_band,
                             starts=args.starts, seed=args.seed)
        return f"{m.verdict} {m.margin:.6g}", m.to_json(), {}
    bp = copositive_boundary_poly(A)
    text = to_string(bp.expanded) if bp.expanded is not None else \
        "\n".join(to_string(p) for _, p in bp.factors)
    return text, bp.to_json(), {}


def cmd_curve(args):
    names = _names(args.params)
    phi = parse(args.poly, VarSet(names))
    r = [float(t) for t in _names(args.range)]
    if len(r) != 4:
        raise DisclabError("--range needs a_lo,a_hi,b_lo,b_hi")
    grid = curve_trace(phi, ((r[0], r[1]), (r[2], r[3])), args.resolution)
    summary = {"params": list(grid.names), "resolution": list(grid.resolution),
               "window": [list(w) for w in grid.window], "segments": len(grid.segments),
               "components": grid.components()}
    return (f"{len(grid.segments)} segments, {summary['components']} components", summary,
            {"grid.csv": grid.to_csv(), "curve.svg": grid.to_svg()})


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="disclab", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help):
        sp = sub.add_parser(name, help=help)
        sp.add_argument("--out", help="write manifest.json and results into this directory")
        sp.set_defaults(fn=fn)
        return sp

    sp = add("disc", cmd_disc, "discriminant of a form or affine polynomial")
    sp.add_argument("--poly", required=True)
    sp.add_argument("--vars", required=True)
    sp.add_argument("--coeff-vars", default="")
    sp.add_argument("--mode", choices=["form", "affine"], default="form")

    sp = add("res", cmd_res, "resultant (Sylvester for one variable, Macaulay for forms)")
    sp.add_argument("--poly", action="append", required=True)
    sp.add_argument("--vars", required=True)
    sp.add_argument("--coeff-vars", default="")

    sp = add("degree", cmd_degree, "degree of a discriminant from the closed formulas")
    sp.add_argument("--num-vars", type=int)
    sp.add_argument("--degrees", required=True)
    sp.add_argument("--k", type=int, help="degree in the coefficients of f_k only")
    sp.add_argument("--group-dims", help="multihomogeneous group sizes n1,...,nr")

    sp = add("eliminate", cmd_eliminate, "discriminantal locus from a JSON job")
    sp.add_argument("--job", required=True)
    sp.add_argument("--budget", type=int)
    sp.add_argument("--workers", type=int, default=1)

    sp = add("scan", cmd_scan, "multistart minimum / membership estimate")
    sp.add_argument("--poly", required=True)
    sp.add_argument("--vars", required=True)
    sp.add_argument("--params", help="numeric parameter values, e.g. a=1,b=3")
    sp.add_argument("--mode", choices=["sphere", "product", "constrained", "classify"],
                    default="sphere")
    sp.add_argument("--groups", default="")
    sp.add_argument("--eq", action="append", default=[])
    sp.add_argument("--ineq", action="append", default=[])
    sp.add_argument("--homogenized", action="store_true")
    sp.add_argument("--compact", action="store_true")
    sp.add_argument("--closed-at-infinity", action="store_true")
    sp.add_argument("--tol-band", type=float, default=1e-4)

    sp = add("copositive", cmd_copositive, "boundary polynomial or numeric copositivity check")
    sp.add_argument("--matrix", required=True, help='JSON {"n": k, "entries": {"i,j": "<poly>"}}')
    sp.add_argument("--params", default="")
    sp.add_argument("--at", help="parameter values for a numeric check, e.g. a=-2,b=0")
    sp.add_argument("--tol-band", type=float, default=1e-4)

    sp = add("curve", cmd_curve, "sign grid and zero curve of phi(a, b)")
    sp.add_argument("--poly", required=True)
    sp.add_argument("--params", default="a,b", help="the two axis variables")
    sp.add_argument("--range", default="-2,2,-2,2", help="a_lo,a_hi,b_lo,b_hi")
    sp.add_argument("--resolution", type=int, default=256, help="grid cells per axis")

    for name in ("scan", "copositive"):
        sub.choices[name].add_argument("--starts", type=int, default=64)
        sub.choices[name].add_argument("--seed", type=int, default=0)
    sub.choices["scan"].add_argument("--workers", type=int, default=1)
    return p


def _write_outputs(out: str, argv, args, payload, files, elapsed):
    d = Path(out)
    d.mkdir(parents=True, exist_ok=True)
    (d / "result.json").write_text(json.dumps(payload, indent=2) + "\n")
    for name, text in files.items():
        (d / name).write_text(text)
    manifest = {"invocation": ["disclab", *argv], "command": args.command,
                "seed": getattr(args, "seed", None), "version": __version__,
                "elapsed_seconds": round(elapsed, 6),
                "files": ["result.json", *files]}
    (d / "manifest.json").write_text(json.dumps(manifest, indent=2) + "\n")


def _fail(code: int, kind: str, message: str) -> int:
    print(json.dumps({"error": kind, "message": message}), file=sys.stderr)
    return code


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(argv)
    t0 = time.perf_counter()
    try:
        text, payload, files = args.fn(args)
    except BudgetExceeded as e:
        return _fail(2, "BudgetExceeded", str(e))
    except DisclabError as e:
        return _fail(1, type(e).__name__, str(e))
    elapsed = time.perf_counter() - t0
    print(text)
    if args.out:
        _write_outputs(args.out, argv, args, payload, files, elapsed)
    return 0


if __name__ == "__main__":
    sys.exit(main())
