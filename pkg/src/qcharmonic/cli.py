"""
Command-line front end.

    qcharm coeffs --function pk:0.5 --n 3
    qcharm bounds --family convex --k 0.5 --n-max 2
    qcharm verify --family convex-halfplane --k 0.5 --trials 100 --order 32 --seed 7
    qcharm trace --function pk:0.5 --radius 0.999 --out pk05.csv
    qcharm area --k 0.5
    qcharm attain --k 0.5 --n-max 8

Exit status: 0 success, 1 a bound was violated or an equality failed, 2 bad
usage (including malformed catalog ids).
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from pathlib import Path

from . import bounds as bd
from .bounds import BoundFamily
from .catalog import CatalogId, coefficients, parse_catalog_id
from .errors import ParseError
from .geometry import area, slit_check
from .harness import Family, TrialConfig, attainment_report, run_trials

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2
EQUALITY_TOL = 1e-9

# the extremal whose coefficients are reported next to each bound family
_EXTREMAL = {
    BoundFamily.CONJ_B: lambda k: CatalogId("pk", k=k),
    BoundFamily.CONVEX0: lambda k: CatalogId("p", k=k),
    BoundFamily.CONVEX: lambda k: CatalogId.general_q(CatalogId("p", k=bd.k0_of_k(k)), -k),
    BoundFamily.FULL: lambda k: CatalogId("qk", k=k),
}


def _g(x: float) -> str:
    return f"{x:.9g}"


def _unit_k(text: str) -> float:
    try:
        k = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not 0.0 <= k < 1.0:
        raise argparse.ArgumentTypeError(f"k must satisfy 0 <= k < 1 (K = (1+k)/(1-k) finite), got {k}")
    return k


def _positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {v}")
    return v


def _radius(text: str) -> float:
    r = float(text)
    if not 0.0 < r < 1.0:
        raise argparse.ArgumentTypeError(f"radius must lie in (0, 1), got {r}")
    return r


def cmd_coeffs(args) -> int:
    f = coefficients(parse_catalog_id(args.function), args.n)
    rows = [(n, f.a[n].real, f.a[n].imag, f.b[n].real, f.b[n].imag) for n in range(1, args.n + 1)]
    if args.format == "json":
        out = {"function": args.function, "rows": [
            {"n": n, "a": [float(_g(ar)), float(_g(ai))], "b": [float(_g(br)), float(_g(bi))]}
            for n, ar, ai, br, bi in rows]}
        print(json.dumps(out, indent=1))
    else:
        w = csv.writer(sys.stdout, lineterminator="\n")
        w.writerow(["n", "re_a", "im_a", "re_b", "im_b"])
        for n, *vals in rows:
            w.writerow([n] + [_g(v + 0.0) for v in vals])
    return EXIT_OK


def cmd_bounds(args) -> int:
    fam = BoundFamily(args.family)
    f = coefficients(_EXTREMAL[fam](args.k), args.n_max)
    table = bd.bound_table(fam, args.k, args.n_max, lambda n: (abs(f.a[n]), abs(f.b[n])))
    table.to_csv(sys.stdout)
    return EXIT_OK


def cmd_verify(args) -> int:
    cfg = TrialConfig(args.family, args.k, args.order, args.trials, args.seed, args.degree)
    report = run_trials(cfg)
    text = report.to_json()
    if args.out:
        _write(args.out, text + "\n")
    print(text)
    return EXIT_OK if report.ok else EXIT_VIOLATION


def cmd_trace(args) -> int:
    cid = parse_catalog_id(args.function)
    if cid.name != "pk":
        raise ParseError("trace supports pk:<k> only")
    res = slit_check(cid.k, args.samples, args.radius)
    print(res.summary())
    if args.out:
        out = Path(args.out)
        _write(out, res.to_csv())
        svg = out.with_suffix(".svg")
        try:
            res.plot(svg)
        except OSError as exc:
            raise OSError(f"cannot write {svg}: {exc}") from exc
        print(f"wrote {out} and {svg}")
    return EXIT_OK if res.ok else EXIT_VIOLATION


def cmd_area(args) -> int:
    k = args.k
    value = area(coefficients(CatalogId("f0", k=k), 2))
    expected = math.pi * (1 - k * k / 2)
    print(f"{value:.6f}")
    print(f"area={_g(value)} pi*(1-k^2/2)={_g(expected)} diff={_g(value - expected)}")
    return EXIT_OK


def cmd_attain(args) -> int:
    if args.k == 0.0:
        raise ParseError("attain needs 0 < k < 1")
    table = attainment_report(args.n_max, args.k)
    table.to_csv(sys.stdout)
    worst = 0.0
    for fam in table.families():
        m = table.max_abs_margin(fam)
        print(f"# {fam}: max |margin| = {_g(m)}")
        if not fam.endswith("@q"):
            worst = max(worst, m)
    for key, val in table.notes.items():
        print(f"# {key} = {_g(val) if isinstance(val, float) else val}")
    return EXIT_OK if worst < EQUALITY_TOL else EXIT_VIOLATION


def _write(path, text: str) -> None:
    try:
        Path(path).write_text(text)
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc.strerror}") from exc


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qcharm", description="Coefficient bounds for K-quasiconformal harmonic maps.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("coeffs", help="closed-form coefficients of a catalog map")
    c.add_argument("--function", required=True, help="catalog id, e.g. pk:0.5, palpha:0.5:3.14159, koebe-h")
    c.add_argument("--n", type=_positive_int, required=True)
    c.add_argument("--format", choices=("csv", "json"), default="csv")
    c.set_defaults(func=cmd_coeffs)

    b = sub.add_parser("bounds", help="bound table with the matching extremal")
    b.add_argument("--family", choices=[f.value for f in BoundFamily], required=True)
    b.add_argument("--k", type=_unit_k, required=True)
    b.add_argument("--n-max", type=_positive_int, required=True)
    b.set_defaults(func=cmd_bounds)

    v = sub.add_parser("verify", help="seeded random trials against the bounds")
    v.add_argument("--family", choices=[f.value for f in Family], required=True)
    v.add_argument("--k", type=_unit_k, required=True)
    v.add_argument("--trials", type=_positive_int, default=100)
    v.add_argument("--order", type=_positive_int, default=32)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--degree", type=_positive_int, default=2, help="Blaschke zeros in the dilatation")
    v.add_argument("--out", help="also write the JSON report here")
    v.set_defaults(func=cmd_verify)

    t = sub.add_parser("trace", help="trace P_k near the unit circle against its slit")
    t.add_argument("--function", required=True, help="pk:<k>")
    t.add_argument("--radius", type=_radius, default=0.999)
    t.add_argument("--samples", type=_positive_int, default=4096)
    t.add_argument("--out", help="CSV path; an SVG plot is written next to it")
    t.set_defaults(func=cmd_trace)

    a = sub.add_parser("area", help="area of z + (k/2) conj(z)^2 against pi(1 - k^2/2)")
    a.add_argument("--k", type=_unit_k, required=True)
    a.set_defaults(func=cmd_area)

    at = sub.add_parser("attain", help="extremal maps against their bounds")
    at.add_argument("--k", type=_unit_k, required=True)
    at.add_argument("--n-max", type=_positive_int, default=8)
    at.set_defaults(func=cmd_attain)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (ParseError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
