"""Command-line front end.

Subcommands::

    gevreykit coeffs {bernoulli,binet,stirling} --n N
    gevreykit borel-sum COEFFS.json --z RE,IM
    gevreykit verify EXPANSION.json --sampler binet|counterexample:DELTA|file:PATH --grid R1:R2:COUNT@ANGLE
    gevreykit uniqueness M_PROFILE.json [--a-profile A.json] --sector ALPHA,BETA --k K
    gevreykit stirling-table --z 5 --z 10

Exit codes: 0 success, 1 verification failure, 2 bad input or domain
error, 3 ray obstructed.  Angles accept ``pi`` expressions such as
``-pi/4`` or ``2*pi/3``.
"""

from __future__ import annotations

import argparse
import ast
import cmath
import csv
import io
import json
import math
import operator
import sys

import mpmath
import numpy as np

from .borel_laplace import borel_sum
from .errors import DomainError, RayObstructedError
from .gevrey_engine import GevreyExpansion, counterexample, remainder_bound, verify_gevrey
from .quadrature import QuadratureConfig
from .sector_geom import (ADeltaProfile, MDeltaProfile, Sector, a_delta_condition,
                          carleman_loglog, criticality, opening)
from .series_core import (CoefficientSequence, bernoulli_numbers, binet_taylor_coeffs,
                          stirling_coeffs)
from .stirling_binet import (BinetConfig, binet_P, optimal_error_stirling, stirling_sum,
                             ERROR_CONSTANT)

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_OBSTRUCTED = 0, 1, 2, 3


class InputError(DomainError):
    """Malformed command-line value or input file."""


# ------------------------------------------------------------------ parsing

_OPS = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul,
        ast.Div: operator.truediv, ast.Pow: operator.pow, ast.USub: operator.neg,
        ast.UAdd: operator.pos}
_FUNCS = {"sin": math.sin, "cos": math.cos, "exp": math.exp, "log": math.log,
          "sqrt": math.sqrt}


def parse_real(text: str) -> float:
    """Arithmetic on numbers, ``pi`` and a few functions (``"-pi/4"``,
    ``"2*pi/3"``, ``"sin(pi/6)"``); nothing else is evaluated."""
    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)):
            return float(node.value)
        if isinstance(node, ast.Name) and node.id == "pi":
            return math.pi
        if isinstance(node, ast.BinOp) and type(node.op) in _OPS:
            return _OPS[type(node.op)](ev(node.left), ev(node.right))
        if isinstance(node, ast.UnaryOp) and type(node.op) in _OPS:
            return _OPS[type(node.op)](ev(node.operand))
        if (isinstance(node, ast.Call) and isinstance(node.func, ast.Name)
                and node.func.id in _FUNCS and len(node.args) == 1 and not node.keywords):
            return _FUNCS[node.func.id](ev(node.args[0]))
        raise InputError(f"cannot parse number {text!r}")

    try:
        return ev(ast.parse(text.strip(), mode="eval"))
    except (SyntaxError, ZeroDivisionError, OverflowError, ValueError) as exc:
        if isinstance(exc, InputError):
            raise
        raise InputError(f"cannot parse number {text!r}") from exc


def parse_complex(text: str) -> complex:
    """``"re,im"`` or ``"re"``."""
    parts = text.split(",")
    if len(parts) == 1:
        return complex(parse_real(parts[0]), 0.0)
    if len(parts) == 2:
        return complex(parse_real(parts[0]), parse_real(parts[1]))
    raise InputError(f"complex numbers are written 're,im', got {text!r}")


def parse_grid(text: str) -> list:
    """``"r1:r2:count@angle"`` (radii evenly spaced on one ray) or ``"r@angle"``."""
    if "@" not in text:
        raise InputError(f"grid spec needs '@angle': {text!r}")
    radial, angle = text.rsplit("@", 1)
    theta = parse_real(angle)
    parts = radial.split(":")
    if len(parts) == 1:
        radii = [parse_real(parts[0])]
    elif len(parts) == 3:
        count = int(parts[2])
        if count < 1:
            raise InputError("grid count must be at least 1")
        radii = np.linspace(parse_real(parts[0]), parse_real(parts[1]), count)
    else:
        raise InputError(f"grid spec is 'r1:r2:count@angle', got {text!r}")
    if min(radii) <= 0:
        raise InputError("grid radii must be positive")
    return [complex(r * cmath.exp(1j * theta)) for r in radii]


def parse_sector(text: str) -> Sector:
    parts = text.split(",")
    if len(parts) != 2:
        raise InputError(f"sector spec is 'alpha,beta', got {text!r}")
    return Sector(parse_real(parts[0]), parse_real(parts[1]))


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _g17(x: float) -> str:
    return format(float(x), ".17g")


def _quad(args) -> QuadratureConfig:
    kw = {"scheme": args.scheme}
    if args.quad_nodes is not None:
        kw["nodes"] = args.quad_nodes
    return QuadratureConfig(**kw)


# ------------------------------------------------------------------ commands

def cmd_coeffs(args) -> int:
    if args.n < 0:
        raise InputError("--n must be nonnegative")
    make = {"bernoulli": bernoulli_numbers, "binet": binet_taylor_coeffs,
            "stirling": stirling_coeffs}[args.kind]
    _emit(make(args.n).to_json(), args.out)
    return EXIT_OK


def _load_coeffs(path: str) -> tuple:
    text = _read(path)
    try:
        seq = CoefficientSequence.from_json(text)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise InputError(f"{path}: {exc}") from exc
    extra = json.loads(text)
    return seq, extra if isinstance(extra, dict) else {}


def cmd_borel_sum(args) -> int:
    seq, _ = _load_coeffs(args.coeffs)
    z = parse_complex(args.z)
    orders = None
    if args.orders:
        try:
            m, n = (int(v) for v in args.orders.split(","))
        except ValueError as exc:
            raise InputError("--orders is 'm,n'") from exc
        orders = (m, n)
    result = borel_sum(seq, z, _quad(args), orders=orders, phi=parse_real(args.phi))
    _emit(result.to_json(), args.out)
    return EXIT_OK


def _file_sampler(path: str):
    """Tabulated ``P`` values: JSON list of ``[re, im, P_re, P_im]`` or CSV
    with those four columns (header optional)."""
    text = _read(path)
    rows = []
    if path.endswith(".json"):
        data = json.loads(text)
        rows = [tuple(map(float, r)) for r in data]
    else:
        for rec in csv.reader(io.StringIO(text)):
            if not rec:
                continue
            try:
                rows.append(tuple(float(v) for v in rec))
            except ValueError:
                continue  # header
    if not rows or any(len(r) != 4 for r in rows):
        raise InputError(f"{path}: expected rows of re, im, P_re, P_im")
    table = {complex(r[0], r[1]): complex(r[2], r[3]) for r in rows}
    keys = np.array(list(table))

    def sampler(z):
        i = int(np.argmin(np.abs(keys - z)))
        if abs(keys[i] - z) > 1e-12 * max(1.0, abs(z)):
            raise InputError(f"no tabulated value at z = {z}")
        return table[complex(keys[i])]

    return sampler, list(table)


def cmd_verify(args) -> int:
    if not args.tol > 0:
        raise InputError("--tol must be positive")
    seq, extra = _load_coeffs(args.expansion)
    stirling = seq.kind == "stirling"
    defaults = {"k": 1.0, "M": 1.0 / 12 if stirling else 1.0,
                "a": 2 * math.pi if stirling else 1.0, "sigma": 0.0, "K_P": 1.0}
    tag = args.sampler
    if tag.startswith("counterexample:"):
        # the family decays like exp(-|z| sin delta) at the sector edges
        defaults["a"] = math.sin(parse_real(tag.split(":", 1)[1]))
    params = {}
    for key in defaults:
        flag = getattr(args, key.lower() if key != "K_P" else "k_p")
        params[key] = flag if flag is not None else float(extra.get(key, defaults[key]))
    e = GevreyExpansion(seq, **params)

    grid = [z for spec in (args.grid or []) for z in parse_grid(spec)]
    dps = args.dps
    if tag == "binet":
        sector = Sector(-0.25 * math.pi, 0.25 * math.pi)
        cfg = BinetConfig(quad=_quad(args).with_(bound=1.0 / 12), dps=dps)

        def sampler(z):
            return binet_P(z, cfg)
    elif tag.startswith("counterexample:"):
        delta = parse_real(tag.split(":", 1)[1])
        cx = counterexample(1.0, delta, e.M)
        sampler, sector = cx.sampler, cx.sector
    elif tag.startswith("file:"):
        sampler, points = _file_sampler(tag.split(":", 1)[1])
        sector = Sector(-math.pi, math.pi)
        if not grid:
            grid = points
    else:
        raise InputError(f"unknown sampler {tag!r}")
    if args.sector:
        sector = parse_sector(args.sector)
    if not grid:
        raise InputError("no grid points given (use --grid)")
    n_max = min(args.n, len(seq))
    if tag == "binet" and dps is None:
        dps = _binet_dps(e, grid, n_max)
        if dps:
            cfg = BinetConfig(quad=cfg.quad, dps=dps)
    report = verify_gevrey(sampler, e, sector, grid, n_max, args.tol, dps=dps)
    report.meta["sampler"] = tag
    _emit(report.to_csv() if args.format == "csv" else report.to_json(), args.out)
    if not report.rows:
        print("warning: every grid point was skipped", file=sys.stderr)
    return EXIT_OK if report.passed else EXIT_FAIL


def _binet_dps(e, grid, n_max):
    # |P(z)| ~ 1/(12|z|); double precision cannot resolve remainders far below that
    rel = min(remainder_bound(e, z, n) * 12 * abs(z) for z in grid for n in range(n_max + 1))
    if rel > 1e-11:
        return None
    return int(-math.log10(max(rel, 1e-300))) + 25


def uniqueness_verdict(sector: Sector, k: float, m: MDeltaProfile,
                       a: ADeltaProfile | None = None) -> dict:
    """Classify a uniqueness problem.

    Wider than ``pi/k``: unique.  Narrower: not unique (the
    ``phi(z) exp(-z)/z`` family).  Exactly ``pi/k``: unique when the
    ``log log M`` integral is finite and, if ``a(delta)`` is given,
    ``a(delta)/delta -> inf``; a failing ``a`` condition means not unique,
    a divergent integral leaves the question open.
    """
    cls = criticality(sector, k)
    out = {"opening": opening(sector), "pi_over_k": math.pi / k, "class": cls}
    ll = carleman_loglog(m)
    out["loglog"] = {"finite": ll.finite, "value": ll.value if math.isfinite(ll.value) else None,
                     "confidence": ll.confidence, "method": ll.method}
    if a is not None:
        v = a_delta_condition(a)
        out["a_condition"] = {"holds": v.holds, "confidence": v.confidence}
    else:
        out["a_condition"] = None
    if cls == "supercritical":
        unique, reason = "yes", "opening exceeds pi/k"
    elif cls == "subcritical":
        unique, reason = "no", "opening below pi/k: counterexample family exists"
    elif a is not None and not out["a_condition"]["holds"]:
        unique, reason = "no", "a(delta)/delta stays bounded: counterexample family exists"
    elif ll.finite:
        unique, reason = "yes", "critical opening with finite loglog integral"
    else:
        unique, reason = "unknown", "critical opening with divergent loglog integral"
    out["unique"] = unique
    out["reason"] = reason
    return out


def cmd_uniqueness(args) -> int:
    try:
        m = MDeltaProfile.from_json(_read(args.m_profile))
        a = ADeltaProfile.from_json(_read(args.a_profile)) if args.a_profile else None
    except (KeyError, TypeError, json.JSONDecodeError) as exc:
        raise InputError(f"bad profile file: {exc}") from exc
    verdict = uniqueness_verdict(parse_sector(args.sector), args.k, m, a)
    _emit(json.dumps(verdict, indent=2), args.out)
    return EXIT_OK


STIRLING_COLUMNS = ("abs_z", "n_opt", "bound", "actual_error", "claim")


def stirling_table(radii, arg: float = 0.0) -> list:
    """Rows ``(|z|, n_opt, bound, actual error, 0.94891 exp(-2 pi |z|))``.

    The actual error uses the high-precision Binet quadrature.
    """
    rows = []
    for r in radii:
        z = r * cmath.exp(1j * arg)
        opt = optimal_error_stirling(z)
        dps = int(2 * math.pi * r / math.log(10)) + 30
        with mpmath.workdps(dps):
            P = binet_P(z, BinetConfig(dps=dps))
            actual = float(abs(P - stirling_sum(z, opt.n_opt, dps=dps)))
        rows.append((float(r), opt.n_opt, opt.bound, actual,
                     ERROR_CONSTANT * math.exp(-2 * math.pi * r)))
    return rows


def cmd_stirling_table(args) -> int:
    radii = [parse_real(v) for spec in args.z for v in spec.split(",")]
    if not radii:
        raise InputError("give at least one --z")
    rows = stirling_table(radii, parse_real(args.arg))
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(STIRLING_COLUMNS)
        for r in rows:
            w.writerow([_g17(r[0]), r[1], _g17(r[2]), _g17(r[3]), _g17(r[4])])
        text = buf.getvalue()
    else:
        text = json.dumps([dict(zip(STIRLING_COLUMNS, r)) for r in rows], indent=2)
    _emit(text, args.out)
    return EXIT_OK


# ------------------------------------------------------------------ driver

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gevreykit",
                                description="Gevrey asymptotics, Borel summation and Stirling bounds")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, fmt=None):
        sp.add_argument("--out", help="write output here instead of stdout")
        if fmt:
            sp.add_argument("--format", choices=("json", "csv"), default=fmt)

    def quad(sp):
        sp.add_argument("--scheme", choices=("tanh-sinh", "gauss-laguerre"), default="tanh-sinh")
        sp.add_argument("--quad-nodes", type=int, help="Gauss-Laguerre node count")

    sp = sub.add_parser("coeffs", help="exact coefficient tables as JSON")
    sp.add_argument("kind", choices=("bernoulli", "binet", "stirling"))
    sp.add_argument("--n", type=int, required=True,
                    help="highest index (bernoulli: B_0 .. B_2n)")
    common(sp)
    sp.set_defaults(func=cmd_coeffs)

    sp = sub.add_parser("borel-sum", help="Borel-Laplace sum of a coefficient file")
    sp.add_argument("coeffs")
    sp.add_argument("--z", required=True, help="evaluation point 're,im'")
    sp.add_argument("--orders", help="Pade orders 'm,n' (default: automatic)")
    sp.add_argument("--phi", default="0", help="Laplace ray angle")
    quad(sp)
    common(sp)
    sp.set_defaults(func=cmd_borel_sum)

    sp = sub.add_parser("verify", help="check Gevrey estimates on a grid")
    sp.add_argument("expansion", help="coefficient JSON, optionally with k, M, a, sigma, K_P keys")
    sp.add_argument("--sampler", required=True,
                    help="binet | counterexample:DELTA | file:PATH")
    sp.add_argument("--grid", action="append", help="r1:r2:count@angle (repeatable)")
    sp.add_argument("--n", type=int, default=20, help="largest truncation order")
    sp.add_argument("--tol", type=float, default=1e-9)
    sp.add_argument("--sector", help="alpha,beta (default depends on sampler)")
    for name in ("k", "M", "a", "sigma"):
        sp.add_argument(f"--{name}", type=parse_real, dest=name.lower())
    sp.add_argument("--K-P", type=parse_real, dest="k_p")
    sp.add_argument("--dps", type=int, help="evaluate in mpmath at this many digits")
    quad(sp)
    common(sp, fmt="csv")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("uniqueness", help="classify a uniqueness problem")
    sp.add_argument("m_profile", help="M(delta) profile JSON")
    sp.add_argument("--a-profile", help="a(delta) profile JSON")
    sp.add_argument("--sector", required=True, help="alpha,beta")
    sp.add_argument("--k", type=parse_real, default=1.0)
    common(sp)
    sp.set_defaults(func=cmd_uniqueness)

    sp = sub.add_parser("stirling-table", help="optimal-truncation errors of the Stirling series")
    sp.add_argument("--z", action="append", required=True, help="|z| values (repeatable or comma list)")
    sp.add_argument("--arg", default="0", help="arg z for every row")
    common(sp, fmt="csv")
    sp.set_defaults(func=cmd_stirling_table)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except RayObstructedError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_OBSTRUCTED
    except (DomainError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
