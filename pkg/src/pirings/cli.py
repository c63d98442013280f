"""Command line interface: cpn, schubert, zonoid and sphere subcommands.

JSON is the primary output format; tables can also be emitted as CSV.
Exact rationals are serialized as strings "p/q".  Exit codes: 0 on
success, 1 on a computation error, 2 on a usage error.
"""

import argparse
import csv
import io
import json
import math
import os
import sys
from fractions import Fraction

from . import __version__, cpn_ring, schubert, sphere_ring, zonoid
from .exact import PiScalar
from .sampling import mc_wedge_length, gaussian_ball


def _default_seed():
    env = os.environ.get("ZONOID_SEED")
    return int(env) if env else 0


def _common_flags(p):
    p.add_argument("--seed", type=int, default=None,
                   help="RNG seed (default: ZONOID_SEED env or 0)")
    p.add_argument("--samples", type=int, default=100000)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--z", type=float, default=3.0,
                   help="confidence multiplier for intervals")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--output", default=None, help="output path (default stdout)")


def _frac(x):
    return str(Fraction(x))


def _ring_to_json(e):
    out = {
        "n": e.n,
        "monomials": {f"s^{j}*t^{d - 2 * j}": _frac(c)
                      for (d, j), c in sorted(e.coeffs.items())},
    }
    if not (e.pi_scale.coeff == 1 and e.pi_scale.pi_exp == 0):
        out["pi_scale"] = e.pi_scale.to_json()
    return out


def _parse_ring_expr(n, text):
    """Parse expressions like '2*s^2*t - 1/3*beta^3 + gamma'."""
    if not text:
        raise ValueError("missing ring expression")
    text = text.replace("-", "+-").replace(" ", "")
    total = cpn_ring.RingElement.zero(n)
    for term in text.split("+"):
        if not term:
            continue
        coeff = Fraction(1)
        elem = cpn_ring.RingElement.one(n)
        if term.startswith("-"):
            coeff = -coeff
            term = term[1:]
        for tok in term.split("*"):
            if not tok:
                continue
            name, _, power = tok.partition("^")
            power = int(power) if power else 1
            if name in ("s", "t", "beta", "gamma"):
                gen = getattr(cpn_ring.RingElement, name)(n, power)
                elem = elem * gen
            else:
                coeff *= Fraction(name) ** power
        total = total + elem.scale(coeff)
    return total


def cmd_cpn(args):
    n = args.n
    if args.action == "basis":
        return {
            "n": n,
            "dimensions": {str(d): cpn_ring.dimension(n, d)
                           for d in range(2 * n + 1)},
            "lengths": {
                f"s^{j}*t^{d - 2 * j}":
                    cpn_ring.monomial_length_st(n, j, d - 2 * j).to_json()
                for d in range(2 * n + 1) for j in cpn_ring.j_set(n, d)
            },
        }
    if args.action == "multiply":
        a = _parse_ring_expr(n, args.a)
        b = _parse_ring_expr(n, args.b)
        return {"n": n, "product": _ring_to_json(a * b)}
    if args.action == "relations":
        f_n, f_n1 = cpn_ring.relations(n)
        def fmt(rel):
            return {
                "st": {f"s^{j}*t^{i}": _frac(c)
                       for (j, i), c in sorted(rel["st"].items())},
                "beta_gamma": {f"gamma^{j}*beta^{i}": c.to_json()
                               for (j, i), c in sorted(rel["beta_gamma"].items())},
            }
        return {"n": n, "F_n": fmt(f_n), "F_n+1": fmt(f_n1)}
    if args.action == "length":
        e = _parse_ring_expr(n, args.expr)
        return {"n": n, "length_by_degree": {
            str(d): v.to_json()
            for d, v in cpn_ring.length_by_degree(e).items()}}
    if args.action == "selfint":
        closed = cpn_ring.self_intersection_codim2(n, Fraction(args.d),
                                                   Fraction(args.delta))
        via_ring = cpn_ring.self_intersection_via_ring(n, Fraction(args.d),
                                                       Fraction(args.delta))
        return {"n": n, "d": args.d, "delta": args.delta,
                "expected_count": _frac(closed),
                "via_ring": _frac(via_ring),
                "agree": closed == via_ring}
    if args.action == "tasaki":
        closed = cpn_ring.tasaki_kernel_d2(n, args.x, args.y)
        out = {"n": n, "x": args.x, "y": args.y,
               "kernel": float(closed)}
        if args.mc:
            est = cpn_ring.mc_tasaki_kernel_d2(
                n, args.x, args.y, args.samples, _seed(args), args.workers)
            out["estimate"] = est.to_json(args.z)
        return out
    raise ValueError(f"unknown cpn action {args.action}")


def _diagram(text):
    text = text.strip()
    if not text:
        return ()
    return tuple(int(x) for x in text.split(","))


def cmd_schubert(args):
    k, m = args.k, args.m
    if args.action == "lr":
        table = schubert.lr_coefficients(_diagram(args.a), _diagram(args.b))
        return {"a": args.a, "b": args.b,
                "coefficients": {str(nu.parts): c for nu, c in
                                 sorted(table.items(), key=lambda x: x[0].parts)}}
    if args.action == "spans":
        report = schubert.verify_span_decomposition(
            k, m, args.d, samples=args.spans_samples, seed=_seed(args))
        return report
    if args.action == "shape":
        lams = [_diagram(t) for t in args.diagrams.split("|")]
        est = schubert.mc_schubert_shape(
            lams, k, m, args.samples, _seed(args), args.workers)
        return {"k": k, "m": m, "diagrams": args.diagrams,
                "estimate": est.to_json(args.z),
                "max_sample": est.max_value}
    if args.action == "edeg22":
        est = schubert.edeg22_calibrated(args.samples, _seed(args),
                                         args.workers, args.z)
        out = {"estimate": est.to_json(args.z)}
        out["components"] = {k2: v.to_json(args.z)
                             for k2, v in est.components.items()}
        return out
    raise ValueError(f"unknown schubert action {args.action}")


def _load_zonoids(path):
    if not path:
        raise ValueError("missing zonoid JSON file")
    with open(path) as fh:
        data = json.load(fh)
    if isinstance(data, dict):
        return [zonoid.from_json(data)]
    return [zonoid.from_json(d) for d in data]


def cmd_zonoid(args):
    if args.action == "mixed-volume":
        zs = _load_zonoids(args.file)
        n = zs[0].ambient_dim
        if len(zs) == 1:
            zs = zs * n
        mv = zonoid.mixed_volume(zs)
        return {"mixed_volume": _num(mv)}
    if args.action == "length":
        zs = _load_zonoids(args.file)
        return {"lengths": [_num(zonoid.length(z)) for z in zs]}
    if args.action == "crofton":
        l_zon = _load_zonoids(args.L)[0]
        k_zon = _load_zonoids(args.K)[0]
        return {"value": _num(zonoid.crofton_evaluate(l_zon, k_zon))}
    raise ValueError(f"unknown zonoid action {args.action}")


def cmd_sphere(args):
    if args.action == "ball-table":
        n = args.N
        rows = []
        for i in range(n + 1):
            rows.append({
                "i": i,
                "kappa_i": sphere_ring.kappa(i).to_json(),
                "ball_wedge_length": sphere_ring.ball_wedge_length(
                    n, 0, i, 1).to_json(),
                "ball_length": (sphere_ring.ball_length(i).to_json()
                                if i >= 1 else None),
            })
        return {"N": n, "rows": rows}
    if args.action == "expected-count":
        codims = [int(x) for x in args.codims.split(",")]
        ratios = [float(x) for x in args.ratios.split(",")]
        val = sphere_ring.sphere_expected_count(args.n, codims, ratios)
        return {"n": args.n, "codims": codims, "ratios": ratios,
                "expected_count": val}
    if args.action == "ball-mc":
        est = mc_wedge_length([gaussian_ball(args.N)] * args.i,
                              args.samples, _seed(args), args.workers)
        exact = sphere_ring.ball_wedge_length(args.N, 0, args.i, 1)
        return {"N": args.N, "i": args.i, "exact": float(exact),
                "estimate": est.to_json(args.z)}
    raise ValueError(f"unknown sphere action {args.action}")


def _num(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, PiScalar):
        return x.to_json()
    return x


def _seed(args):
    return args.seed if args.seed is not None else _default_seed()


def _emit(args, report):
    report = {"provenance": {"version": __version__,
                             "seed": _seed(args),
                             "samples": args.samples}, **report}
    if args.format == "csv":
        text = _to_csv(report)
    else:
        text = json.dumps(report, indent=2, default=str) + "\n"
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _flatten(prefix, obj, rows):
    if isinstance(obj, dict):
        for k, v in obj.items():
            _flatten(f"{prefix}.{k}" if prefix else str(k), v, rows)
    elif isinstance(obj, (list, tuple)):
        for i, v in enumerate(obj):
            _flatten(f"{prefix}[{i}]", v, rows)
    else:
        rows.append((prefix, obj))


def _to_csv(report):
    rows = []
    _flatten("", report, rows)
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["key", "value"])
    writer.writerows(rows)
    return buf.getvalue()


def build_parser():
    parser = argparse.ArgumentParser(
        prog="pirings",
        description="Zonoid calculus and probabilistic intersection rings")
    sub = parser.add_subparsers(dest="command", required=True)

    p_cpn = sub.add_parser("cpn", help="complex projective space ring")
    _common_flags(p_cpn)
    p_cpn.add_argument("--n", type=int, required=True)
    p_cpn.add_argument("action", choices=(
        "basis", "multiply", "relations", "length", "selfint", "tasaki"))
    p_cpn.add_argument("--a", help="first factor (multiply)")
    p_cpn.add_argument("--b", help="second factor (multiply)")
    p_cpn.add_argument("--expr", help="ring expression (length)")
    p_cpn.add_argument("--d", type=Fraction, default=Fraction(1),
                       help="degree d_X (selfint)")
    p_cpn.add_argument("--delta", type=Fraction, default=Fraction(0),
                       help="angle defect Delta_X (selfint)")
    p_cpn.add_argument("--x", type=float, default=1.0)
    p_cpn.add_argument("--y", type=float, default=1.0)
    p_cpn.add_argument("--mc", action="store_true",
                       help="also Monte-Carlo the Tasaki kernel")

    p_sch = sub.add_parser("schubert", help="Schubert calculus")
    _common_flags(p_sch)
    p_sch.add_argument("--k", type=int, default=2)
    p_sch.add_argument("--m", type=int, default=2)
    p_sch.add_argument("action", choices=("lr", "spans", "shape", "edeg22"))
    p_sch.add_argument("--a", default="", help="first diagram, e.g. '2,1'")
    p_sch.add_argument("--b", default="", help="second diagram")
    p_sch.add_argument("--d", type=int, default=1, help="wedge degree (spans)")
    p_sch.add_argument("--spans-samples", type=int, default=200)
    p_sch.add_argument("--diagrams", default="",
                       help="diagrams separated by '|', e.g. '2|1,1'")

    p_zon = sub.add_parser("zonoid", help="discrete zonoid calculus")
    _common_flags(p_zon)
    p_zon.add_argument("action", choices=("mixed-volume", "length", "crofton"))
    p_zon.add_argument("-f", "--file", help="zonoid JSON file")
    p_zon.add_argument("--L", help="valuation zonoid JSON (crofton)")
    p_zon.add_argument("--K", help="body zonoid JSON (crofton)")

    p_sph = sub.add_parser("sphere", help="sphere ring constants")
    _common_flags(p_sph)
    p_sph.add_argument("action", choices=("ball-table", "expected-count",
                                          "ball-mc"))
    p_sph.add_argument("--N", type=int, default=4)
    p_sph.add_argument("--n", type=int, default=2)
    p_sph.add_argument("--i", type=int, default=1)
    p_sph.add_argument("--codims", default="1,1")
    p_sph.add_argument("--ratios", default="0.5,0.5")
    return parser


DISPATCH = {
    "cpn": cmd_cpn,
    "schubert": cmd_schubert,
    "zonoid": cmd_zonoid,
    "sphere": cmd_sphere,
}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report = DISPATCH[args.command](args)
    except (ValueError, OSError, KeyError, ZeroDivisionError,
            ArithmeticError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    _emit(args, report)
    return 0


if __name__ == "__main__":
    sys.exit(main())
