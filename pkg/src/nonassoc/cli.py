"""``nonassoc`` command line.

Exit status: 0 on success, 1 on a domain error (bad expression, algebra
mismatch, ...), 2 on a usage error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from .assoc_calculus import CompositeOp, composite_commutator
from .cayley_dickson import (ALIASES, AlgebraError, builtin, check_identity,
                             load_algebra, parse_element)
from .kernels import IDENTITY_CODES
from .observability import (StateVector, bracketing_defect, classify, expectation,
                            generated_subalgebra, nucleus)
from .observability import associator as concrete_associator
from .parser import ParseError, parse, parse_term
from .term import Expr, associator_expr, normal_form_expr, reassociate, set_symbol
from .ym_derive import (Decomposition, GaugeContext, GaugeError, lint_equation,
                        substitute_decomposition, ym_equations)


class DomainError(Exception):
    pass


def _style(text: str, stream) -> str:
    if os.environ.get("NONASSOC_COLOR", "1") == "0" or not getattr(stream, "isatty", lambda: False)():
        return text
    return f"\x1b[1m{text}\x1b[0m"


def _algebra(args):
    if getattr(args, "algebra_file", None):
        return load_algebra(args.algebra_file)
    return builtin(args.algebra)


def _elements(alg, text: str):
    return [parse_element(alg, part) for part in text.split(",") if part.strip()]


def _expr(text: str, flag: str) -> Expr:
    try:
        return parse(text)
    except ParseError as exc:
        raise DomainError(f"{flag}: {exc.kind}: {exc.message}\n  {text}\n  "
                          + " " * exc.span.start + "^" * max(1, exc.span.end - exc.span.start))


def _psi(alg, text: str) -> StateVector:
    sites = []
    for chunk in text.split(";"):
        if not chunk.strip():
            continue
        if ":" not in chunk:
            raise DomainError(f"--psi site {chunk!r} must look like 'weight:element'")
        w, v = chunk.split(":", 1)
        sites.append((w.strip(), parse_element(alg, v)))
    return StateVector(sites)


def _emit(args, out, text_lines, payload):
    if args.json:
        out.write(json.dumps(payload, sort_keys=True, indent=1) + "\n")
    else:
        for line in text_lines:
            out.write(line + "\n")


# --- subcommands ------------------------------------------------------------

def cmd_algebra(args, out):
    alg = _algebra(args)
    if args.action == "table":
        out.write(json.dumps(alg.to_json(), sort_keys=True) + "\n")
        return
    results = [check_identity(alg, w) for w in IDENTITY_CODES]
    lines = [_style(f"{alg.name}: dim {alg.dim}", out)]
    if alg.gammas is not None:
        lines.append("gammas: " + " ".join(f"{g:+d}" for g in alg.gammas))
    for r in results:
        tail = "" if r.holds else f" (counterexample basis tuple {list(r.counterexample)})"
        lines.append(f"{r.which}: {'holds' if r.holds else 'fails'}{tail}")
    payload = {"name": alg.name, "dim": alg.dim, "gammas": None if alg.gammas is None else list(alg.gammas),
               "identities": {r.which: {"holds": r.holds,
                                        "counterexample": None if r.holds else list(r.counterexample)}
                              for r in results}}
    _emit(args, out, lines, payload)


def cmd_assoc(args, out):
    if args.triple:
        alg = _algebra(args)
        elems = _elements(alg, args.triple)
        if len(elems) != 3:
            raise DomainError("--triple needs exactly three comma-separated elements")
        v = concrete_associator(*elems, sign=args.sign_char)
        _emit(args, out, [str(v)], {"algebra": alg.name, "value": str(v),
                                    "coeffs": [str(c) for c in v.coeffs]})
        return
    if not (args.a and args.b and args.c):
        raise DomainError("give --triple for a concrete algebra or --a/--b/--c expressions")
    e = associator_expr(args.sign_char, _expr(args.a, "--a"), _expr(args.b, "--b"), _expr(args.c, "--c"))
    _emit(args, out, [str(e)], e.to_json())


def cmd_nucleus(args, out):
    alg = _algebra(args)
    n = nucleus(alg)
    _emit(args, out, [str(n)], {"algebra": alg.name, **n.to_json()})


def cmd_subalgebra(args, out):
    alg = _algebra(args)
    s = generated_subalgebra(_elements(alg, args.gens))
    _emit(args, out, [str(s)], {"algebra": alg.name, **s.to_json()})


def cmd_classify(args, out):
    alg = _algebra(args)
    rep = classify(_elements(alg, args.gens))
    lines = [f"observable: {'yes' if rep.observable else 'no'}", f"closure {rep.closure}"]
    if rep.witness is not None:
        b = rep.closure.basis
        i, j, k = rep.witness
        lines.append(f"witness: ({b[i]}, {b[j]}, {b[k]}) -> {rep.witness_value}")
    if rep.involution_closed is not None:
        lines.append(f"involution-closed: {'yes' if rep.involution_closed else 'no'}")
    _emit(args, out, lines, rep.to_json())


def cmd_expect(args, out):
    alg = _algebra(args)
    psi = _psi(alg, args.psi)
    M = parse_element(alg, args.M)
    v = expectation(psi, M, args.bracketing)
    _emit(args, out, [str(v), f"real: {'yes' if v.is_real() else 'no'}"],
          {"value": str(v), "real": v.is_real(), "bracketing": args.bracketing})


def cmd_defect(args, out):
    alg = _algebra(args)
    psi = _psi(alg, args.psi)
    M = parse_element(alg, args.M)
    left, right = expectation(psi, M, "left"), expectation(psi, M, "right")
    d = bracketing_defect(psi, M)
    lines = [f"left: {left}", f"right: {right}", f"defect: {d}",
             f"real: left {'yes' if left.is_real() else 'no'}, right {'yes' if right.is_real() else 'no'}"]
    _emit(args, out, lines, {"left": str(left), "right": str(right), "defect": str(d),
                             "zero": d.is_zero()})


def cmd_commutator(args, out):
    a, b = _expr(args.a, "--a"), _expr(args.b, "--b")
    A = CompositeOp(parse_term(args.a)) if len(a) == 1 else a
    B = CompositeOp(parse_term(args.b)) if len(b) == 1 else b
    res = composite_commutator(args.sign_char, A, B, target=args.target)
    lines = [f"raw: {res.raw}", f"normal: {res.normal}", "associators:"]
    for sym in res.associators:
        node = sym.as_expr()
        lines.append(f"  {sym.label or '-'}: {node}")
    _emit(args, out, lines, res.to_json())


def cmd_normalform(args, out):
    e = _expr(args.expr, "--expr")
    nf = normal_form_expr(e, args.target)
    rewrites = sum(reassociate(t, args.target).rewrites for t, _ in e.items())
    _emit(args, out, [str(nf)], {"normal": nf.to_json(), "rewrites": rewrites})


def cmd_ym(args, out):
    if args.colors is not None and args.group not in ("abelian", "u1"):
        raise DomainError("--colors only applies to abelian groups")
    ctx = GaugeContext.named(args.group) if args.colors is None else GaugeContext.abelian(args.colors)
    eqs = ym_equations(ctx, covariant=args.covariant)
    d = None
    if args.depth is not None:
        d = Decomposition(args.depth, args.nesting,
                          tuple(x for x in args.inner.split(",") if x))
        eqs = substitute_decomposition(eqs, d, ctx, jobs=args.jobs)
        lines = [f"# {d.render()}"]
    else:
        lines = []
    if args.g_zero:
        for eq in eqs:
            eq.lhs = set_symbol(eq.lhs, ctx.coupling, 0)
    problems = [p for eq in eqs for p in lint_equation(eq, d)]
    if problems:
        raise DomainError("index hygiene: " + "; ".join(problems[:5]))
    for eq in eqs:
        fi = eq.free_indices
        lines.append(f"[a={fi['a']} mu={fi['mu']}] {eq.text}")
    _emit(args, out, lines, [eq.to_json() for eq in eqs])


# --- wiring ---------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON instead of text")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for expansions")

    alg = argparse.ArgumentParser(add_help=False)
    alg.add_argument("--algebra", default="oct", choices=sorted(ALIASES))
    alg.add_argument("--algebra-file", help="JSON algebra table (overrides --algebra)")

    sign = argparse.ArgumentParser(add_help=False)
    sign.add_argument("--sign", default="minus", choices=["minus", "plus"])

    p = argparse.ArgumentParser(prog="nonassoc", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("algebra", parents=[common, alg], help="algebra table or identity report")
    s.add_argument("action", choices=["table", "info"])
    s.set_defaults(fn=cmd_algebra)

    s = sub.add_parser("assoc", parents=[common, alg, sign], help="associator, concrete or symbolic")
    s.add_argument("--triple", help="three comma-separated elements, e.g. e1,e2,e4")
    s.add_argument("--a")
    s.add_argument("--b")
    s.add_argument("--c")
    s.set_defaults(fn=cmd_assoc)

    s = sub.add_parser("nucleus", parents=[common, alg], help="nucleus of an algebra")
    s.set_defaults(fn=cmd_nucleus)

    s = sub.add_parser("subalgebra", parents=[common, alg], help="subalgebra generated by elements")
    s.add_argument("--gens", required=True)
    s.set_defaults(fn=cmd_subalgebra)

    s = sub.add_parser("classify", parents=[common, alg], help="observability of a generator set")
    s.add_argument("--gens", required=True)
    s.set_defaults(fn=cmd_classify)

    for name, fn, help_ in (("expect", cmd_expect, "expectation value of M in psi"),
                            ("defect", cmd_defect, "left minus right bracketing of <M>")):
        s = sub.add_parser(name, parents=[common, alg], help=help_)
        s.add_argument("--psi", required=True, help="sites 'w:elem;w:elem'")
        s.add_argument("--M", required=True)
        if name == "expect":
            s.add_argument("--bracketing", default="left", choices=["left", "right"])
        s.set_defaults(fn=fn)

    s = sub.add_parser("commutator", parents=[common, sign], help="(anti)commutator in normal form")
    s.add_argument("--a", required=True)
    s.add_argument("--b", required=True)
    s.add_argument("--target", default="left", choices=["left", "right"])
    s.set_defaults(fn=cmd_commutator)

    s = sub.add_parser("normalform", parents=[common], help="rewrite to comb plus associators")
    s.add_argument("--expr", required=True)
    s.add_argument("--target", default="left", choices=["left", "right"])
    s.set_defaults(fn=cmd_normalform)

    s = sub.add_parser("ym", parents=[common], help="Yang-Mills equations, optionally decomposed")
    s.add_argument("--group", default="su2", choices=["abelian", "u1", "su2", "su3"])
    s.add_argument("--colors", type=int, help="number of colors for an abelian group")
    s.add_argument("--covariant", action="store_true", help="use D_nu F instead of d_nu F")
    s.add_argument("--depth", type=int, help="substitute A by a product of this many phi factors")
    s.add_argument("--nesting", default="left", choices=["left", "right"])
    s.add_argument("--inner", default="s1,s2", help="comma-separated inner index labels")
    s.add_argument("--g-zero", action="store_true", help="set the coupling to 0")
    s.set_defaults(fn=cmd_ym)
    return p


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.jobs < 1:
        stderr.write("nonassoc: error: --jobs must be >= 1\n")
        return 2
    if hasattr(args, "sign"):
        args.sign_char = "-" if args.sign == "minus" else "+"
    try:
        args.fn(args, stdout)
    except (DomainError, AlgebraError, GaugeError, ParseError, KeyError, ValueError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else str(exc)
        stderr.write(f"nonassoc: {msg}\n")
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
