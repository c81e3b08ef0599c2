"""Command-line front end.

Subcommands:
  residue       -- residue of log(|xi|**2 + q_lower) for a symbol given in JSON
  index-dirac4  -- dimension-4 pure Dirac index density from a curvature tensor
  index-flat    -- flat twisted Dirac index density from a gauge field
  selftest      -- run the built-in invariant suite

Every reported number is exact (a Gaussian rational times a power of pi);
decimal renderings are labeled approximations.  Exit codes: 0 success,
2 input error, 3 assertion or route disagreement, 4 internal invariant
failure.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction

from .clifford import CliffordElem, MatrixW, cl_str, cl_tr
from .geometry import (
    CurvatureTensor,
    GaugeField,
    RouteDisagreement,
    cayley_orthogonal,
    chern_density,
    dgamma_from_R,
    dirac_squared_symbol,
    dirac_symbol,
    index_flat_twisted,
    index_pure_dirac4,
    pontryagin_density,
    random_curvature,
    random_gauge,
    random_laplacian_lower,
    rotate_curvature,
    twisted_flat_symbol,
    viancT_reduced_dim4,
)
from .logexpand import log_symbol, res_log, zeta0
from .residue import residue_density, sphere_moment
from .scalars import PiScalar, Scalar
from .symbols import ClassicalSymbol, HomSymbol, XPoly, star

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_ASSERT = 3
EXIT_INTERNAL = 4

ROUTES = ("ch", "taylor", "seeley")


class InputError(Exception):
    pass


# ---------------------------------------------------------------------------
# JSON (de)serialisation: rationals as "p/q", complex as ["p/q", "r/s"]


def _parse_rational(v) -> Fraction:
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, str):
        try:
            return Fraction(v)
        except (ValueError, ZeroDivisionError) as e:
            raise InputError(f"bad rational {v!r}: {e}") from None
    raise InputError(f"expected a rational ('p/q' string or integer), got {v!r}")


def _parse_scalar(v) -> Scalar:
    if isinstance(v, list):
        if len(v) != 2:
            raise InputError(f"complex entry must be a 2-list, got {v!r}")
        return Scalar(_parse_rational(v[0]), _parse_rational(v[1]))
    return Scalar(_parse_rational(v))


def _parse_matrix(v, dw) -> MatrixW:
    if not (isinstance(v, list) and len(v) == dw and all(
            isinstance(r, list) and len(r) == dw for r in v)):
        raise InputError(f"matrix must be a {dw}x{dw} array")
    return MatrixW([[_parse_scalar(x) for x in row] for row in v])


def _fmt_rational(f: Fraction) -> str:
    return str(f)


def _fmt_scalar(s: Scalar):
    if s.im == 0:
        return _fmt_rational(s.re)
    return [_fmt_rational(s.re), _fmt_rational(s.im)]


def _fmt_matrix(m: MatrixW):
    return [[_fmt_scalar(x) for x in row] for row in m.rows]


def symbol_to_json(s: ClassicalSymbol) -> dict:
    comps = {}
    for d, h in sorted(s.comps.items(), reverse=True):
        terms = []
        for xi_e, xp in sorted(h.num.items(), reverse=True):
            for x_e, elem in sorted(xp.terms.items()):
                for word, mat in sorted(elem.coeffs.items()):
                    terms.append({
                        "xi": list(xi_e),
                        "x": list(x_e),
                        "word": list(word),
                        "matrix": _fmt_matrix(mat),
                    })
        comps[str(d)] = {"den_power": h.M, "terms": terms}
    return {
        "n": s.n,
        "d_W": s.dw,
        "order": s.order,
        "floor": s.floor,
        "components": comps,
    }


def symbol_from_json(data: dict) -> ClassicalSymbol:
    try:
        n = int(data["n"])
        dw = int(data.get("d_W", 1))
    except (KeyError, TypeError, ValueError) as e:
        raise InputError(f"missing or bad 'n'/'d_W': {e}") from None
    comps_in = data.get("components", {})
    floor = int(data.get("floor", -n))
    comps = {}
    for dstr, block in comps_in.items():
        d = int(dstr)
        M = int(block.get("den_power", 0))
        num = {}
        for term in block.get("terms", []):
            xi_e = tuple(int(x) for x in term["xi"])
            x_e = tuple(int(x) for x in term["x"])
            word = tuple(int(i) for i in term.get("word", []))
            if len(xi_e) != n or len(x_e) != n:
                raise InputError("exponent tuples must have length n")
            if any(not 1 <= i <= n for i in word) or list(word) != sorted(set(word)):
                raise InputError(f"bad Clifford word {list(word)!r}")
            mat = _parse_matrix(term["matrix"], dw)
            elem = CliffordElem(n, dw, {word: mat})
            xp = XPoly(n, dw, {x_e: elem})
            cur = num.get(xi_e)
            num[xi_e] = xp if cur is None else cur + xp
        if num:
            h = HomSymbol(n, dw, d, M, num)
            if not h.is_zero():
                comps[d] = h
    order = int(data.get("order", max(comps) if comps else 0))
    return ClassicalSymbol(n, dw, order, floor, comps)


def curvature_from_json(data: dict) -> CurvatureTensor:
    try:
        n = int(data["n"])
        R = data["R"]
    except (KeyError, TypeError, ValueError) as e:
        raise InputError(f"missing or bad 'n'/'R': {e}") from None
    try:
        arr = [
            [
                [[_parse_rational(x) for x in row] for row in mat]
                for mat in blk
            ]
            for blk in R
        ]
        return CurvatureTensor(n, arr)
    except ValueError as e:
        raise InputError(f"invalid curvature tensor: {e}") from None


def gauge_from_json(data: dict) -> GaugeField:
    try:
        n = int(data["n"])
        dw = int(data["d_W"])
    except (KeyError, TypeError, ValueError) as e:
        raise InputError(f"missing or bad 'n'/'d_W': {e}") from None
    if "A_lin" in data:
        A = [[_parse_matrix(m, dw) for m in row] for row in data["A_lin"]]
        try:
            return GaugeField(n, dw, A)
        except ValueError as e:
            raise InputError(str(e)) from None
    if "F" in data:
        F = [[_parse_matrix(m, dw) for m in row] for row in data["F"]]
        try:
            return GaugeField.from_F(n, dw, F)
        except ValueError as e:
            raise InputError(str(e)) from None
    raise InputError("gauge input needs either 'A_lin' or 'F'")


# ---------------------------------------------------------------------------
# rendering


def fmt_pi(v: PiScalar) -> str:
    c = v.coeff
    if c.is_zero():
        return "0"
    if c.im == 0:
        body = str(c.re)
    elif c.re == 0:
        body = f"{c.im}*i"
    else:
        body = f"({c.re} + {c.im}*i)"
    if v.pi_power == 0:
        return body
    return f"{body} * pi^{v.pi_power}"


def _report_value(label, v: PiScalar, lines, payload, key):
    lines.append(f"  {label}: {fmt_pi(v)}   (~ {complex(v):.6g})")
    payload[key] = {"exact": fmt_pi(v), "approx": repr(complex(v))}


def _emit(args, lines, payload):
    if getattr(args, "json", False):
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print("\n".join(lines))


def _load(path) -> dict:
    try:
        with open(path) as f:
            return json.load(f)
    except OSError as e:
        raise InputError(f"cannot read {path}: {e}") from None
    except json.JSONDecodeError as e:
        raise InputError(f"{path} is not valid JSON: {e}") from None


def _methods(args):
    return ROUTES if args.method == "all" else (args.method,)


# ---------------------------------------------------------------------------
# subcommands


def cmd_residue(args) -> int:
    data = _load(args.input)
    q_lower = symbol_from_json(data)
    n = q_lower.n
    if args.floor is not None and args.floor > -n:
        raise InputError(f"floor must be <= -n = {-n}")
    lines = [f"residue of log(|xi|^2 + q_lower), n={n}, d_W={q_lower.dw}, "
             f"trace={args.trace}"]
    payload = {"command": "residue", "n": n, "d_W": q_lower.dw,
               "trace": args.trace, "results": {}}
    values = {}
    for m in _methods(args):
        v = res_log(q_lower, n, m, args.trace)
        values[m] = v
        sub = {}
        _report_value(f"res_log [{m}]", v, lines, sub, "res_log")
        _report_value(f"zeta(0)  [{m}]", zeta0(v), lines, sub, "zeta0")
        payload["results"][m] = sub
    vals = list(values.values())
    if len(vals) > 1 and any(v != vals[0] for v in vals[1:]):
        lines.append("  ROUTE DISAGREEMENT")
        payload["route_agreement"] = False
        _emit(args, lines, payload)
        return EXIT_ASSERT
    if len(vals) > 1:
        lines.append("  routes agree: yes")
        payload["route_agreement"] = True
    _emit(args, lines, payload)
    return EXIT_OK


def _maybe_emit_symbol(args, sym: ClassicalSymbol):
    if args.emit_symbol:
        with open(args.emit_symbol, "w") as f:
            json.dump(symbol_to_json(sym), f, indent=2)


def cmd_index_dirac4(args) -> int:
    data = _load(args.input)
    R = curvature_from_json(data)
    if R.n != 4:
        raise InputError("index-dirac4 requires a 4-dimensional tensor")
    _maybe_emit_symbol(args, dirac_squared_symbol(R))
    comparator = PiScalar(Scalar(pontryagin_density(R) / 96), -2)
    lines = ["pure Dirac index density, n=4"]
    payload = {"command": "index-dirac4", "results": {}}
    code = EXIT_OK
    for m in _methods(args):
        sub = {}
        try:
            sres, ind = index_pure_dirac4(R, m)
        except RouteDisagreement as e:
            lines.append(f"  [{m}] FAIL: {e}")
            payload["results"][m] = {"pass": False, "detail": str(e)}
            code = EXIT_ASSERT
            continue
        _report_value(f"sres_log [{m}]", sres, lines, sub, "sres_log")
        _report_value(f"index density [{m}]", ind, lines, sub, "index_density")
        _report_value("comparator pontryagin/(96 pi^2)", comparator, lines,
                      sub, "comparator")
        ok = sres == comparator
        lines.append(f"  [{m}] exact equality: {'PASS' if ok else 'FAIL'}")
        sub["pass"] = ok
        payload["results"][m] = sub
        if not ok:
            code = EXIT_ASSERT
    _emit(args, lines, payload)
    return code


def cmd_index_flat(args) -> int:
    data = _load(args.input)
    G = gauge_from_json(data)
    if G.n % 2:
        raise InputError("index-flat requires even dimension")
    from math import factorial

    p = G.n // 2
    _maybe_emit_symbol(args, twisted_flat_symbol(G))
    const = (Scalar(0, 1) ** p) * Scalar(Fraction(-2, 2 ** p * factorial(p)))
    comparator = PiScalar(const * chern_density(G.F, p), -p)
    lines = [f"flat twisted index density, n={G.n}, d_W={G.dw}"]
    payload = {"command": "index-flat", "results": {}}
    code = EXIT_OK
    for m in _methods(args):
        sub = {}
        try:
            sres, ind = index_flat_twisted(G, method=m)
        except RouteDisagreement as e:
            lines.append(f"  [{m}] FAIL: {e}")
            payload["results"][m] = {"pass": False, "detail": str(e)}
            code = EXIT_ASSERT
            continue
        _report_value(f"sres_log [{m}]", sres, lines, sub, "sres_log")
        _report_value(f"index density [{m}]", ind, lines, sub, "index_density")
        _report_value("comparator -2 i^p/((2 pi)^p p!) * chern", comparator,
                      lines, sub, "comparator")
        ok = sres == comparator
        lines.append(f"  [{m}] exact equality: {'PASS' if ok else 'FAIL'}")
        sub["pass"] = ok
        payload["results"][m] = sub
        if not ok:
            code = EXIT_ASSERT
    _emit(args, lines, payload)
    return code


# ---------------------------------------------------------------------------
# selftest


def _gaussian_moment(n, alpha):
    """Independent sphere-moment oracle via Gaussian integrals."""
    from math import factorial

    if any(a % 2 for a in alpha):
        return PiScalar(0)
    betas = [a // 2 for a in alpha]
    total = sum(alpha)
    num = Fraction(2)
    half_pi_powers = 0
    for b in betas:
        # Gamma(b + 1/2) = (2b)!/(4^b b!) sqrt(pi)
        num *= Fraction(factorial(2 * b), 4 ** b * factorial(b))
        half_pi_powers += 1
    m = (total + n) // 2  # Gamma(m) with m integer since |alpha|, n even
    num /= factorial(m - 1)
    assert half_pi_powers == n
    return PiScalar(Scalar(num), n // 2)


# module-level so tests can monkeypatch it (negative-control hook)
_moment_reference = _gaussian_moment


def _selftest_checks(seed):
    """Yield (name, ok, detail) tuples for each invariant."""
    rng = random.Random(seed)

    # sphere moments vs Gaussian oracle
    ok, detail = True, ""
    for n in (2, 4):
        for alpha in _even_multi_indices(n, 4):
            a = sphere_moment(n, alpha)
            b = _moment_reference(n, alpha)
            if a != b:
                ok, detail = False, f"moment {alpha} n={n}: {a!r} != {b!r}"
                break
        if not ok:
            break
    yield "sphere moments vs Gaussian oracle", ok, detail

    # Clifford supertrace on the top word
    ok = True
    for n, p in ((2, 1), (4, 2)):
        top = CliffordElem.gamma_word(n, tuple(range(1, n + 1)))
        want = PiScalar(Scalar(0, -2) ** p)
        got = PiScalar(cl_str(top))
        if got != want:
            ok = False
    yield "supertrace of the top Clifford word", ok, ""

    # route agreement on a random symbol (n=2 keeps this fast)
    q = random_laplacian_lower(2, 2, rng)
    logs = {m: log_symbol(q, 2, m).classical for m in ROUTES}
    ok = (logs["ch"].semantically_equal(logs["taylor"])
          and logs["ch"].semantically_equal(logs["seeley"]))
    yield "route agreement (ch/taylor/seeley, n=2)", ok, ""

    # geometry lemmas on a random curvature tensor
    R = random_curvature(4, rng)
    dG = dgamma_from_R(R)
    ok = True
    for a in range(4):
        for i in range(4):
            lhs = CliffordElem.zero(4, 1)
            for j in range(4):
                for k in range(4):
                    if k != j and dG[a][i][j][k]:
                        lhs = lhs + CliffordElem.sigma(4, k + 1, j + 1).scale(
                            dG[a][i][j][k]
                        )
            rhs = CliffordElem.zero(4, 1)
            for j in range(4):
                for k in range(4):
                    if k != j and R[j, k, i, a]:
                        rhs = rhs + CliffordElem.sigma(4, k + 1, j + 1).scale(
                            Fraction(R[j, k, i, a], 2)
                        )
            if not (lhs + rhs.scale(-1)).is_zero():
                ok = False
    yield "Christoffel-jet contraction identity", ok, ""

    # flat Lichnerowicz star-square and flat index comparator (n=2)
    G = random_gauge(2, 2, rng)
    ds = dirac_symbol(G)
    sq = star(ds, ds, 0)
    expect = ClassicalSymbol.xi2(2, 2, floor=0) + twisted_flat_symbol(G).truncate(0)
    yield "flat Dirac star-square identity", sq.semantically_equal(expect), ""
    try:
        index_flat_twisted(G, method="taylor")
        ok, detail = True, ""
    except RouteDisagreement as e:
        ok, detail = False, str(e)
    yield "flat twisted index comparator (n=2)", ok, detail

    # dimension-4 pipelines and rotation invariance
    R2 = random_curvature(4, rng)
    try:
        sres, _ = index_pure_dirac4(R2, "taylor")
        viancT_reduced_dim4(R2)
        O = cayley_orthogonal(4, rng)
        sres_rot, _ = index_pure_dirac4(rotate_curvature(R2, O), "taylor")
        ok, detail = sres == sres_rot, ""
    except RouteDisagreement as e:
        ok, detail = False, str(e)
    yield "dim-4 pipelines and rotation invariance", ok, detail


def _even_multi_indices(n, max_total):
    out = []

    def rec(prefix, remaining):
        if len(prefix) == n:
            out.append(tuple(prefix))
            return
        for v in range(0, remaining + 1, 2):
            rec(prefix + [v], remaining - v)

    for total in range(0, max_total + 1, 2):
        rec([], total)
    return [a for a in out if len(a) == n]


def cmd_selftest(args) -> int:
    seed = args.seed if args.seed is not None else 0
    lines = [f"selftest (seed={seed})"]
    payload = {"command": "selftest", "seed": seed, "checks": []}
    failed = 0
    for name, ok, detail in _selftest_checks(seed):
        status = "PASS" if ok else "FAIL"
        suffix = f"  [{detail}]" if detail and not ok else ""
        lines.append(f"  {status}  {name}{suffix}")
        payload["checks"].append({"name": name, "pass": ok, "detail": detail})
        if not ok:
            failed += 1
    lines.append(f"{len(payload['checks']) - failed}/{len(payload['checks'])} checks passed")
    payload["pass"] = failed == 0
    _emit(args, lines, payload)
    return EXIT_OK if failed == 0 else EXIT_INTERNAL


# ---------------------------------------------------------------------------
# entry point


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="logres",
        description="Exact residue densities of logarithms of generalised Laplacians",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, needs_input=True):
        if needs_input:
            p.add_argument("input", help="input JSON file")
        p.add_argument("--method", choices=("ch", "taylor", "seeley", "all"),
                       default="all")
        p.add_argument("--trace", choices=("tr", "str"), default="tr")
        p.add_argument("--floor", type=int, default=None)
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--emit-symbol", metavar="PATH", default=None)
        p.add_argument("--json", action="store_true",
                       help="machine-readable output")

    common(sub.add_parser("residue", help="residue of a log symbol"))
    common(sub.add_parser("index-dirac4", help="dim-4 pure Dirac index density"))
    common(sub.add_parser("index-flat", help="flat twisted index density"))
    common(sub.add_parser("selftest", help="run the invariant suite"),
           needs_input=False)
    return parser


_COMMANDS = {
    "residue": cmd_residue,
    "index-dirac4": cmd_index_dirac4,
    "index-flat": cmd_index_flat,
    "selftest": cmd_selftest,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except InputError as e:
        print(f"input error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except AssertionError as e:
        print(f"internal invariant failure: {e}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
