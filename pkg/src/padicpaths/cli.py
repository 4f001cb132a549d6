"""Command line entry point.

Exit codes: 0 success, 1 verification failure, 2 parse error, 3 domain error.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import calculus, paths, subdivision, suites
from .calculus import Form
from .characters import Character, CharacterError, Registry, default_registry
from .funcring import FuncError, PolyFunction, evaluate_point, gauss_norm, unit_decompose
from .localfield import FieldConfig, PadicError
from .periods import PeriodError
from .polytope import PolytopeError, parse_shape

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_DOMAIN = 0, 1, 2, 3


class ParseError(ValueError):
    pass


@dataclass
class RunConfig:
    p: int = 5
    precision: int = 40
    registry: str | None = None
    json: bool = False
    a: int | None = None

    def field(self):
        return FieldConfig(self.p, self.precision)

    def make_registry(self):
        cfg = self.field()
        if self.registry:
            try:
                return Registry.load(cfg, self.registry)
            except (OSError, json.JSONDecodeError, KeyError) as e:
                raise ParseError(f"cannot read registry {self.registry}: {e}") from e
        return default_registry(cfg, a=self.a)


# ---------------------------------------------------------------------------
# parsing


_TOKEN = re.compile(r"^\s*([A-Za-z_][A-Za-z_0-9]*)\s*(?:\^\s*\(?\s*([-+]?\d+(?:/\d+)?)\s*\)?)?\s*$")


def parse_coordinate(text):
    """``"eps^1/4·p"`` -> ``{"eps": 1/4, "p": 1}``; ``"1"`` is trivial."""
    text = text.replace("̲", "").strip()
    if text in ("", "1"):
        return {}
    out = {}
    for part in re.split(r"[·*]", text):
        m = _TOKEN.match(part)
        if not m:
            raise ParseError(f"cannot parse character factor {part!r}")
        name, exp = m.group(1), m.group(2)
        out[name] = out.get(name, 0) + Fraction(exp or 1)
    return out


def parse_character(text):
    text = text.replace("̲", "").strip()
    if text.startswith("(") and text.endswith(")"):
        return Character([parse_coordinate(c) for c in text[1:-1].split(",")])
    return Character([parse_coordinate(text)])


def _coeff(v):
    if isinstance(v, (int, float)) and not isinstance(v, bool):
        return Fraction(str(v))
    if isinstance(v, str):
        try:
            return Fraction(v)
        except ValueError as e:
            raise ParseError(f"bad coefficient {v!r}") from e
    raise ParseError(f"bad coefficient {v!r}")


def load_payload(text):
    """JSON from a literal, ``@file`` or ``-`` (stdin)."""
    if text == "-":
        text = sys.stdin.read()
    elif text.startswith("@"):
        try:
            with open(text[1:]) as fh:
                text = fh.read()
        except OSError as e:
            raise ParseError(str(e)) from e
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"malformed JSON: {e}") from e


def parse_function(payload, S, reg):
    """A function on ``S`` from ``{"char": coeff}`` or the full ``terms`` format."""
    if isinstance(payload, str):
        payload = load_payload(payload)
    if isinstance(payload, dict) and "terms" in payload:
        d = dict(payload)
        d.setdefault("polytope", S.to_json())
        try:
            return PolyFunction.from_json(d, reg)
        except (KeyError, TypeError) as e:
            raise ParseError(f"bad function JSON: {e}") from e
    if not isinstance(payload, dict):
        raise ParseError("a function is a JSON object")
    terms = {}
    for k, v in payload.items():
        x = parse_character(k)
        if x.arity != S.n:
            raise ParseError(f"character {k!r} has arity {x.arity} on R^{S.n}")
        c = _coeff(v)
        terms[x] = terms.get(x, 0) + c
    for x in terms:
        reg.validate(x)
    return PolyFunction.from_ambient(S, terms, reg)


def parse_form(payload, S, reg):
    """``{"degree": i, "comps": [{"H": [...], "fn": {...}}]}``; default: top form."""
    if isinstance(payload, str):
        payload = load_payload(payload)
    if "comps" not in payload:
        f = parse_function(payload, S, reg)
        if S.is_thick():
            return Form.top(f)
        return Form.simplex_basis(f, 0)
    deg = payload.get("degree")
    comps = {}
    for c in payload["comps"]:
        H = tuple(c["H"])
        comps[H] = parse_function(c["fn"], S, reg)
        deg = len(H) if deg is None else deg
    return Form(S, deg, comps, reg)


def _shape(text, N):
    """``cube:n``, ``simplex:n``, ``interval`` default to the side ``N``."""
    parts = text.split(":")
    if parts[0] in ("cube", "simplex") and len(parts) == 2:
        text = f"{text}:{N}"
    if parts[0] == "interval" and len(parts) == 1:
        text = f"interval:{N}"
    try:
        return parse_shape(text)
    except (ValueError, IndexError) as e:
        raise ParseError(f"bad polytope {text!r}: {e}") from e


# ---------------------------------------------------------------------------
# output


class Out:
    def __init__(self, as_json):
        self.as_json = as_json

    def emit(self, record, text=None):
        if self.as_json:
            print(json.dumps(record, sort_keys=True, default=str))
        else:
            print(text if text is not None else " ".join(f"{k}={v}" for k, v in record.items()))


# ---------------------------------------------------------------------------
# commands


def cmd_integrate(args, rc, out):
    reg = rc.make_registry()
    N = reg.cfg.N
    if args.interval or not args.domain:
        S = _shape("interval", N)
    else:
        S = _shape(args.domain, N)
    payload = args.form if args.form else args.fn
    if payload is None:
        raise ParseError("integrate needs --fn or --form")
    if S.n == 1 and S == _shape("interval", N):
        val = calculus.integrate_interval(parse_function(payload, S, reg))
    else:
        val = calculus.integrate(parse_form(payload, S, reg))
    out.emit({"integral": repr(val), "period": val.to_json()}, repr(val))
    return EXIT_OK


def cmd_norm(args, rc, out):
    reg = rc.make_registry()
    S = _shape(args.polytope, reg.cfg.N)
    f = parse_function(args.fn, S, reg)
    e = gauss_norm(f)
    out.emit({"exponent": str(e), "norm": f"p^{-e}" if e != float("inf") else "0"}, f"exponent {e}")
    return EXIT_OK


def cmd_decompose(args, rc, out):
    reg = rc.make_registry()
    S = _shape(args.polytope, reg.cfg.N)
    f = parse_function(args.fn, S, reg)
    dec = unit_decompose(f)
    if not dec:
        out.emit({"unit": False, "reason": dec.reason}, f"not a unit: {dec.reason}")
        return EXIT_DOMAIN
    a, x, g = dec
    out.emit({"unit": True, "a": a.to_text(), "x": repr(x), "g": repr(g)}, f"a = {a.to_text()}, x = {x!r}, g = {g!r}")
    return EXIT_OK


def cmd_evaluate(args, rc, out):
    reg = rc.make_registry()
    S = _shape(args.polytope, reg.cfg.N)
    f = parse_function(args.fn, S, reg)
    try:
        t = tuple(Fraction(s) for s in args.at.split(","))
    except ValueError as e:
        raise ParseError(f"bad point {args.at!r}") from e
    v = evaluate_point(f, t, args.mode)
    text = v.to_text() if args.mode == "i_u" else str(v)
    out.emit({"mode": args.mode, "value": text}, text)
    return EXIT_OK


def _report(cases, out, seed=None):
    failed = 0
    if seed is not None:
        out.emit({"seed": seed}, f"seed {seed}")
    for c in cases:
        failed += not c.passed
        d = c.as_dict()
        out.emit(d, f"{'PASS' if c.passed else 'FAIL'} {c.suite} {c.label}: {d['lhs']} | {d['rhs']}")
    out.emit({"cases": len(cases), "failed": failed}, f"{len(cases) - failed}/{len(cases)} passed")
    return EXIT_OK if not failed else EXIT_FAIL


def cmd_verify(args, rc, out):
    reg = rc.make_registry()
    s = args.suite
    if args.n is not None and args.n > 3:
        raise paths.DomainError("suites are limited to n <= 3")
    seed = args.seed
    if s == "residue":
        cases = suites.residue(reg, grid=args.grid, seed=seed)
    elif s in ("cauchy", "goursat"):
        cases = suites.SUITES[s](reg, trials=args.trials or 10, seed=seed)
    elif s == "stokes":
        cases = suites.stokes(reg, domain=args.domain or "cube", n=args.n or 1, trials=args.trials or 10, seed=seed)
    elif s in ("ftc", "fubini", "simplex-welldef", "equivariance"):
        cases = suites.SUITES[s](reg, trials=args.trials or 10, seed=seed)
    elif s == "subdivision":
        cases = suites.subdivision_suite(args.kind, args.n if args.n is not None else 2)
        if args.kind == "cubical":
            out.emit({"generator_maps": subdivision.cubical_count(args.n or 2)}, f"{subdivision.cubical_count(args.n or 2)} generator maps")
    else:
        raise ParseError(f"unknown suite {s!r}")
    return _report(cases, out, seed)


def cmd_subdivision_check(args, rc, out):
    rep = subdivision.homotopy_identity_check(args.kind, args.n, args.signs, args.relation)
    if args.report == "json" or out.as_json:
        print(json.dumps(rep.as_dict(), sort_keys=True))
    else:
        print(f"{rep.kind} n={rep.n}: {rep.generator_maps} maps, residual {rep.residual_terms} terms, {'PASS' if rep.passed else 'FAIL'}")
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_residue(args, rc, out):
    reg = rc.make_registry()
    f = {int(k): _coeff(v) for k, v in load_payload(args.laurent).items()}
    g = suites._eps_cycle(reg, args.a_prime)
    rep = paths.residue_pair(g, f)
    out.emit(rep.as_dict(), f"{'PASS' if rep.passed else 'FAIL'} lhs = {rep.lhs!r}, rot·Res = {rep.rhs!r}")
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_cauchy(args, rc, out):
    reg = rc.make_registry()
    f = {int(k): _coeff(v) for k, v in load_payload(args.series).items()}
    a = _coeff(args.center)
    g = suites._eps_cycle(reg, args.a_prime, center=a)
    rep = paths.residue_pair(g, f, a=a, order=args.order, divided=not args.literal, digits=reg.cfg.M - 6)
    out.emit(rep.as_dict(), f"{'PASS' if rep.passed else 'FAIL'} order {args.order}: lhs = {rep.lhs!r}, rhs = {rep.rhs!r}")
    return EXIT_OK if rep.passed else EXIT_FAIL


def _demo_tate(reg, out):
    ok = True
    for name, val, expected in suites.tate_periods(reg):
        good = val.equals(expected, slack=6)
        ok &= good
        out.emit({"cycle": name, "period": repr(val), "expected": repr(expected), "pass": good}, f"{name}: {val!r}  (expected {expected!r})")
    return ok


def _demo_obstruction(reg, out, ds, a):
    for d in ds:
        cert = paths.tate_obstruction(reg, d, a)
        out.emit({"d": d, "a": a, **cert.as_dict()}, f"d={d} a={a}: {cert.verdict}  {cert.value!r}")
    return True


def cmd_demo(args, rc, out):
    name = args.name
    if name in ("tate-periods", "obstruction"):
        if rc.a is None:
            rc.a = rc.p
        reg = rc.make_registry()
        for g in ("q", "p"):
            if g not in reg:
                raise paths.DomainError(f"registry has no generator {g!r}")
        if name == "tate-periods":
            if "ua" not in reg:
                raise paths.DomainError("registry has no generator 'ua'")
            return EXIT_OK if _demo_tate(reg, out) else EXIT_FAIL
        ds = [args.d] if args.d is not None else list(range(-2, 3))
        _demo_obstruction(reg, out, ds, rc.a)
        return EXIT_OK
    if name == "gm-cycles":
        reg = rc.make_registry()
        for a_prime, r, expected in suites.gm_cycles(reg):
            out.emit({"a'": a_prime, "rot": repr(r), "pass": r.equals(expected)}, f"a'={a_prime}: rot = {r!r}")
        return EXIT_OK
    if name == "cube-vs-simplex":
        _report(suites.cube_vs_simplex(rc.make_registry()), out)
        return EXIT_OK
    raise ParseError(f"unknown demo {name!r}")


def cmd_tate_demo(args, rc, out):
    args.name = "tate-periods"
    return cmd_demo(args, rc, out)


# ---------------------------------------------------------------------------


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", type=int, default=argparse.SUPPRESS)
    common.add_argument("--precision", type=int, default=argparse.SUPPRESS)
    common.add_argument("--registry", default=argparse.SUPPRESS)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
    common.add_argument("--a", type=int, default=argparse.SUPPRESS, help="the unit generator has base 1 + a")

    ap = argparse.ArgumentParser(prog="padicpaths", parents=[common], description="p-adic path integrals over polytopes")
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("integrate", parents=[common], help="integrate a function or top form")
    s.add_argument("--interval", action="store_true")
    s.add_argument("--domain", help="cube:n, simplex:n or interval (side N)")
    s.add_argument("--fn", help="JSON object {character: coefficient}, @file or -")
    s.add_argument("--form", help="form JSON, @file or -")
    s.set_defaults(func=cmd_integrate)

    for name, func in (("norm", cmd_norm), ("decompose", cmd_decompose)):
        s = sub.add_parser(name, parents=[common])
        s.add_argument("--polytope", default="interval")
        s.add_argument("--fn", required=True)
        s.set_defaults(func=func)

    s = sub.add_parser("evaluate", parents=[common])
    s.add_argument("--polytope", default="interval")
    s.add_argument("--fn", required=True)
    s.add_argument("--at", required=True, help="comma-separated point")
    s.add_argument("--mode", choices=["i_u", "i_p"], default="i_u")
    s.set_defaults(func=cmd_evaluate)

    s = sub.add_parser("verify", parents=[common], help="run a verification suite")
    s.add_argument("suite", choices=["residue", "cauchy", "goursat", "stokes", "ftc", "fubini", "simplex-welldef", "subdivision", "equivariance"])
    s.add_argument("--grid", choices=["small", "full"], default="small")
    s.add_argument("--domain", choices=["cube", "simplex"])
    s.add_argument("--n", type=int)
    s.add_argument("--kind", choices=["simplicial", "cubical"], default="cubical")
    s.add_argument("--trials", type=int)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("demo", parents=[common])
    s.add_argument("name", choices=["tate-periods", "gm-cycles", "obstruction", "cube-vs-simplex"])
    s.add_argument("--d", type=int)
    s.set_defaults(func=cmd_demo)

    s = sub.add_parser("tate-demo", parents=[common])
    s.add_argument("--d", type=int)
    s.set_defaults(func=cmd_tate_demo)

    s = sub.add_parser("subdivision-check", parents=[common])
    s.add_argument("--kind", choices=["simplicial", "cubical"], default="cubical")
    s.add_argument("--n", type=int, default=2)
    s.add_argument("--signs", choices=["cone", "tabulated"], default="cone")
    s.add_argument("--relation", choices=["plus", "minus"])
    s.add_argument("--report", choices=["text", "json"], default="text")
    s.set_defaults(func=cmd_subdivision_check)

    s = sub.add_parser("residue", parents=[common], help="residue theorem along eps^(a'/N)(t)")
    s.add_argument("--laurent", required=True, help='JSON {"i": c}')
    s.add_argument("--a-prime", type=int, default=1)
    s.set_defaults(func=cmd_residue)

    s = sub.add_parser("cauchy", parents=[common], help="Cauchy/Goursat along a + eps^(a'/N)(t)")
    s.add_argument("--series", required=True, help='JSON {"i": c}')
    s.add_argument("--center", default="5")
    s.add_argument("--order", type=int, default=0)
    s.add_argument("--a-prime", type=int, default=1)
    s.add_argument("--literal", action="store_true", help="compare without dividing by order!")
    s.set_defaults(func=cmd_cauchy)
    return ap


def main(argv=None):
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return EXIT_PARSE if e.code else EXIT_OK
    rc = RunConfig(
        getattr(args, "p", 5),
        getattr(args, "precision", 40),
        getattr(args, "registry", None),
        getattr(args, "json", False),
        getattr(args, "a", None),
    )
    out = Out(rc.json)
    try:
        if rc.precision < 8:
            raise PadicError("precision must be at least 8")
        rc.field()
        return args.func(args, rc, out)
    except (ParseError, json.JSONDecodeError) as e:
        print(f"parse error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except (PadicError, PolytopeError, CharacterError, FuncError, PeriodError, paths.PathError, calculus.CalculusError, ValueError, KeyError) as e:
        print(f"domain error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
