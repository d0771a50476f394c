"""Command line entry point: ``python -m markedtori <command> ...``.

Exit codes: 0 ok, 2 bad input, 3 no closed form for the marking,
4 internal consistency failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from math import gcd
from typing import Optional, Sequence

from . import veech
from .constants import UnsupportedRegime, classify_regime, po_constant_two_marked, \
    sc_constant_two_marked, target_constant
from .counting import Marking, count_po_many, count_sc_many, read_markings
from .exactgeom import TorusPoint

EXIT_OK, EXIT_INPUT, EXIT_UNSUPPORTED, EXIT_INCONSISTENT = 0, 2, 3, 4


class InputError(Exception):
    pass


class Inconsistent(Exception):
    pass


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise InputError(f"not a rational number: {text!r}") from None


def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _emit(command: str, config: dict, columns: list[str], rows: list[dict], fmt: str, out: Optional[str]):
    if fmt == "json":
        payload = {"command": command, "config": config,
                   "rows": [{c: r.get(c) for c in columns} for r in rows]}
        text = json.dumps(payload, indent=2, default=str) + "\n"
    elif fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(columns)
        for r in rows:
            w.writerow([_fmt(r.get(c)) for c in columns])
        text = buf.getvalue()
    else:
        def line(r):
            if len(columns) == 1:
                return _fmt(r.get(columns[0]))
            return " ".join(f"{c}={_fmt(r.get(c))}" for c in columns)
        text = "".join(line(r) + "\n" for r in rows)
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load_marking(args) -> Marking:
    if not args.markings:
        raise InputError("--markings is required")
    try:
        return read_markings(args.markings, args.horizon)
    except OSError as exc:
        raise InputError(f"cannot read {args.markings}: {exc.strerror}") from None
    except ValueError as exc:
        raise InputError(str(exc)) from None


def _radii(args) -> list[Fraction]:
    if args.radii:
        rs = [_fraction(r) for r in args.radii.split(",") if r.strip()]
    elif args.radius is not None:
        rs = [_fraction(args.radius)]
    else:
        raise InputError("give --radius or --radii")
    if not rs or any(r < 0 for r in rs):
        raise InputError("radii must be nonnegative")
    return rs


def cmd_count(args) -> int:
    m = _load_marking(args)
    rs = _radii(args)
    try:
        m.check_horizon(max(rs))
    except ValueError as exc:
        raise InputError(str(exc)) from None
    if args.kind == "sc":
        reports = count_sc_many(m, rs, workers=args.threads)
    else:
        reports = count_po_many(m, rs)
    rows = []
    for r in reports:
        rows.append({
            "radius": r.radius, "count": r.count, "ratio": r.ratio,
            "target": r.target.symbolic() if r.target else None,
            "target_value": r.target.value() if r.target else None,
            "deviation": r.deviation,
        })
    config = {"kind": args.kind, "markings": args.markings, "radii": [str(r) for r in rs],
              "horizon": args.horizon, "threads": args.threads}
    _emit("count", config, ["radius", "count", "ratio", "target", "target_value", "deviation"],
          rows, args.format or "csv", args.out)
    return EXIT_OK


def cmd_constant(args) -> int:
    m = _load_marking(args)
    c = target_constant(m, args.kind)
    regime = classify_regime(m)
    fmt = args.format or "text"
    if fmt == "text":
        _emit("constant", {}, ["text"], [{"text": str(c)}], fmt, args.out)
    else:
        row = {"kind": args.kind, "regime": regime.kind, "coef_inv_pi": c.coef_inv_pi,
               "coef_pi": c.coef_pi, "symbolic": c.symbolic(), "value": c.value()}
        _emit("constant", {"kind": args.kind, "markings": args.markings, "horizon": args.horizon},
              list(row), [row], fmt, args.out)
    return EXIT_OK


def _point(text: str) -> veech.RationalMarking2:
    parts = text.split(",")
    if len(parts) != 2:
        raise InputError(f"point must be 'x,y', got {text!r}")
    try:
        return veech.RationalMarking2.of(_fraction(parts[0]), _fraction(parts[1]))
    except ValueError as exc:
        raise InputError(str(exc)) from None


def _matrix(text: str) -> veech.IntegerMatrix2:
    try:
        a, b, c, d = (int(t) for t in text.split(","))
        return veech.IntegerMatrix2(a, b, c, d)
    except ValueError as exc:
        raise InputError(f"bad matrix {text!r}: {exc}") from None


def cmd_veech(args) -> int:
    fmt = args.format or "text"
    sub = args.sub
    if sub == "membership":
        x, M = _point(args.point), _matrix(args.matrix)
        c, s = veech.membership_congruence(x, M), veech.membership_stabilizer(x, M)
        row = {"point": str(x), "matrix": str(M), "congruence": str(c).lower(),
               "stabilizer": str(s).lower(), "agree": str(c == s).lower()}
        _emit("veech membership", {}, list(row), [row], fmt, args.out)
        if c != s:
            raise Inconsistent(f"congruence ({c}) and stabilizer ({s}) disagree for {x}, {M}")
        return EXIT_OK
    n = args.n
    if n is None:
        raise InputError("--n is required")
    try:
        if sub == "index":
            f, a = veech.veech_index(n), veech.index_via_asymptotics(n)
            row = {"n": n, "orbit_pairs": veech.orbit_index(n), "index_formula": f,
                   "index_asymptotic": a, "gamma1_index": veech.gamma1_index(n)}
            _emit("veech index", {}, list(row), [row], fmt, args.out)
            if f != a:
                raise Inconsistent(f"index routes disagree for n={n}: {f} vs {a}")
        elif sub == "cusps":
            row = {"n": n, "cusps": veech.cusp_count(n)}
            _emit("veech cusps", {}, list(row), [row], fmt, args.out)
        else:
            A = veech.reduce_to_canonical(args.p, args.q, n)
            img = A.apply(Fraction(args.p, n), Fraction(args.q, n))
            row = {"p": args.p, "q": args.q, "n": n, "matrix": str(A),
                   "image": f"({img[0] % 1}, {img[1] % 1})", "target": f"(1/{n}, 0)"}
            _emit("veech reduce", {}, list(row), [row], fmt, args.out)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    return EXIT_OK


def cmd_sweep(args) -> int:
    f = sc_constant_two_marked if args.kind == "sc" else po_constant_two_marked
    rows = []
    for n in range(args.n_min, args.n_max + 1):
        if n < 2:
            continue
        for p1 in range(n):
            for p2 in range(n):
                if gcd(gcd(p1, p2), n) == 1:
                    c = f(TorusPoint.of(Fraction(p1, n), Fraction(p2, n)))
                    rows.append({"n": n, "p1": p1, "p2": p2, "coef_inv_pi": c.coef_inv_pi,
                                 "coef_pi": c.coef_pi, "value": c.value()})
    _emit("sweep", {"kind": args.kind, "n_min": args.n_min, "n_max": args.n_max},
          ["n", "p1", "p2", "coef_inv_pi", "coef_pi", "value"], rows, args.format or "csv", args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="python -m markedtori",
                                description="Saddle connections and cylinders on marked tori.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("csv", "json", "text"))
    common.add_argument("--out")
    sub = p.add_subparsers(dest="command", required=True)

    marked = argparse.ArgumentParser(add_help=False)
    marked.add_argument("--markings")
    marked.add_argument("--kind", choices=("sc", "po"), default="sc")
    marked.add_argument("--horizon", type=int)

    c = sub.add_parser("count", parents=[common, marked], help="count up to given radii")
    c.add_argument("--radius")
    c.add_argument("--radii")
    c.add_argument("--threads", type=int, default=1)
    c.set_defaults(func=cmd_count)

    k = sub.add_parser("constant", parents=[common, marked], help="closed-form growth constant")
    k.set_defaults(func=cmd_constant)

    v = sub.add_parser("veech", parents=[common], help="Veech group quantities")
    v.add_argument("sub", choices=("membership", "index", "cusps", "reduce"))
    v.add_argument("--point")
    v.add_argument("--matrix")
    v.add_argument("--n", type=int)
    v.add_argument("--p", type=int, default=1)
    v.add_argument("--q", type=int, default=0)
    v.set_defaults(func=cmd_veech)

    s = sub.add_parser("sweep", parents=[common], help="constants over a denominator range")
    s.add_argument("--kind", choices=("sc", "po"), default="sc")
    s.add_argument("--n-min", type=int, default=2)
    s.add_argument("--n-max", type=int, default=10)
    s.set_defaults(func=cmd_sweep)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "threads", 1) < 1:
        print("error: --threads must be positive", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except UnsupportedRegime:
        print("error: no closed form implemented for this marking; use the count command",
              file=sys.stderr)
        return EXIT_UNSUPPORTED
    except Inconsistent as exc:
        print(f"inconsistent: {exc}", file=sys.stderr)
        return EXIT_INCONSISTENT


if __name__ == "__main__":
    sys.exit(main())
