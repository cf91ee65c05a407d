"""Command-line front end.

Every subcommand prints one canonical JSON report to stdout:
{"command": [...], "inputs_digest": "...", "results": {...}, "version": "..."}.
Identical invocations produce byte-identical reports.  Exit codes: 0 on
success, 1 on a domain error (structured error JSON), 2 on a usage error.
"""

from __future__ import annotations

import argparse
import hashlib
import re
import sys
from fractions import Fraction

from . import __version__, jsonio
from .acceptance import run_all
from .chart_forms import poly_add, poly_const, poly_mul, poly_scale
from .chern_weil import (builtin_rep, constant_gauge, cw_form,
                         gauge_transform, quaternion_matrix, unipotent_gauge)
from .equivariant import WeilModel, builtin_action
from .invariant_polynomials import invariant_basis, invariant_dims
from .liealg import builtin
from .polyfunctor import (FunctorSpec, homogeneous_decompose, is_polynomial,
                          poly_black_box, restriction_injectivity)
from .schur_oracle import verify_bidegree
from .weil_algebra import (WeilElement, basic_subspace, graded_dims,
                           koszul_cohomology_dims, multiply)


# -- polynomial expression grammar -------------------------------------
# exprs := expr (',' expr)* ; expr := term (('+'|'-') term)*
# term := unary (('*'|'/') unary)* ; unary := '-' unary | power
# power := atom (('^'|'**') int)? ; atom := rational | variable | '(' expr ')'

_TOKEN = re.compile(r"\s*(?:(\d+/\d+|\d+)|([a-zA-Z_]\w*)|(\*\*|[-+*/^(),]))")

_VAR_ALIASES = "xyzwuv"


class ExprError(ValueError):
    pass


def _tokenize(text):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            if text[pos:].strip():
                raise ExprError(f"cannot tokenize {text[pos:]!r}")
            break
        num, name, op = m.groups()
        if num:
            out.append(("num", Fraction(num)))
        elif name:
            out.append(("var", name))
        else:
            out.append(("op", op))
        pos = m.end()
    out.append(("end", None))
    return out


class _Parser:
    def __init__(self, tokens, dim):
        self.tokens = tokens
        self.pos = 0
        self.dim = dim

    def peek(self):
        return self.tokens[self.pos]

    def take(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect_op(self, op):
        kind, val = self.take()
        if kind != "op" or val != op:
            raise ExprError(f"expected {op!r}")

    def var_index(self, name):
        m = re.fullmatch(r"x(\d+)", name)
        if m:
            i = int(m.group(1)) - 1
        elif len(name) == 1 and name in _VAR_ALIASES:
            i = _VAR_ALIASES.index(name)
        else:
            raise ExprError(f"unknown variable {name!r}")
        if not 0 <= i < self.dim:
            raise ExprError(f"variable {name!r} out of range for dimension {self.dim}")
        return i

    def parse_exprs(self):
        out = [self.parse_expr()]
        while self.peek() == ("op", ","):
            self.take()
            out.append(self.parse_expr())
        if self.peek()[0] != "end":
            raise ExprError(f"trailing input at token {self.peek()!r}")
        return out

    def parse_expr(self):
        acc = self.parse_term()
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            _, op = self.take()
            rhs = self.parse_term()
            acc = poly_add(acc, rhs if op == "+" else poly_scale(rhs, -1))
        return acc

    def parse_term(self):
        acc = self.parse_unary()
        while self.peek()[0] == "op" and self.peek()[1] in "*/":
            _, op = self.take()
            rhs = self.parse_unary()
            if op == "*":
                acc = poly_mul(acc, rhs)
            else:
                const = _constant_of(rhs)
                if const is None or const == 0:
                    raise ExprError("division is only defined by nonzero constants")
                acc = poly_scale(acc, Fraction(1) / const)
        return acc

    def parse_unary(self):
        if self.peek() == ("op", "-"):
            self.take()
            return poly_scale(self.parse_unary(), -1)
        return self.parse_power()

    def parse_power(self):
        base = self.parse_atom()
        if self.peek()[0] == "op" and self.peek()[1] in ("^", "**"):
            self.take()
            kind, val = self.take()
            neg = False
            if (kind, val) == ("op", "-"):
                neg = True
                kind, val = self.take()
            if kind != "num" or val.denominator != 1 or neg:
                raise ExprError("exponents must be nonnegative integers")
            out = poly_const(self.dim, 1)
            for _ in range(int(val)):
                out = poly_mul(out, base)
            return out
        return base

    def parse_atom(self):
        kind, val = self.take()
        if kind == "num":
            return poly_const(self.dim, val)
        if kind == "var":
            i = self.var_index(val)
            e = [0] * self.dim
            e[i] = 1
            return {tuple(e): Fraction(1)}
        if (kind, val) == ("op", "("):
            inner = self.parse_expr()
            self.expect_op(")")
            return inner
        raise ExprError(f"unexpected token {val!r}")


def _constant_of(p):
    if not p:
        return Fraction(0)
    if len(p) == 1:
        (e, c), = p.items()
        if not any(e):
            return c
    return None


def parse_poly_exprs(text, dim):
    """Comma-separated polynomial expressions -> list of Poly dicts."""
    return _Parser(_tokenize(text), dim).parse_exprs()


# -- report plumbing ----------------------------------------------------


def _emit(args_list, file_payloads, results):
    digest = jsonio.digest({"argv": args_list, "files": file_payloads})
    report = {"command": args_list, "inputs_digest": digest,
              "results": results, "version": __version__}
    sys.stdout.write(jsonio.canonical_json(report))
    return 0


def _read_json(path, payloads):
    import json
    with open(path, "rb") as fh:
        raw = fh.read()
    payloads[path] = hashlib.sha256(raw).hexdigest()
    return json.loads(raw.decode())


def _algebra_arg(name):
    # accept both abelian(2) and the flag-friendly abelian2
    m = re.fullmatch(r"abelian(\d+)", name)
    if m:
        name = f"abelian({m.group(1)})"
    return builtin(name)


def _named_invariant(L, name):
    if name == "casimir":
        n = L.dim
        cas = WeilElement.zero(n)
        for i in range(n):
            cas = cas + multiply(WeilElement.lamt(n, i), WeilElement.lamt(n, i))
        return cas
    m = re.fullmatch(r"basis:(\d+):(\d+)", name)
    if m:
        k, idx = int(m.group(1)), int(m.group(2))
        basis = invariant_basis(L, k)
        if idx >= len(basis):
            raise ValueError(f"invariant basis of degree {k} has only {len(basis)} elements")
        return basis[idx]
    raise ValueError(f"unknown invariant name {name!r} (use 'casimir' or 'basis:<k>:<i>')")


# -- subcommand handlers -------------------------------------------------


def _cmd_basic(args, payloads):
    L = _algebra_arg(args.algebra)
    basis = basic_subspace(L, args.degree)
    return {"algebra": jsonio.algebra_to_json(L), "degree": args.degree,
            "dim": len(basis), "basis": [jsonio.weil_element_to_json(b) for b in basis]}


def _cmd_cohomology(args, payloads):
    return {"dim": args.dim, "max_degree": args.max_degree,
            "graded_dims": graded_dims(args.dim, args.max_degree),
            "cohomology": koszul_cohomology_dims(args.dim, args.max_degree)}


def _cmd_invariants(args, payloads):
    L = _algebra_arg(args.algebra)
    dims = invariant_dims(L, args.max_degree)
    bases = [[jsonio.weil_element_to_json(b) for b in invariant_basis(L, k)]
             for k in range(args.max_degree + 1)]
    return {"algebra": jsonio.algebra_to_json(L), "space": "(Sym g*)^g",
            "dims": dims, "bases": bases}


def _cmd_cw(args, payloads):
    L = _algebra_arg(args.algebra) if args.algebra else None
    conn = jsonio.connection_from_json(_read_json(args.connection, payloads), L)
    if args.invariant_json:
        P = jsonio.weil_element_from_json(conn.algebra.dim,
                                          _read_json(args.invariant_json, payloads))
    else:
        P = _named_invariant(conn.algebra, args.invariant)
    form = cw_form(P, conn)
    return {"invariant": jsonio.weil_element_to_json(P),
            "chern_weil_form": jsonio.chart_form_to_json(form)}


def _parse_gauge(obj, algebra, chart_dim):
    rep = builtin_rep(algebra.name or "")
    kind = obj["kind"]
    if kind == "constant":
        if "quaternion" in obj:
            mat = quaternion_matrix(*[jsonio.parse_rational(x) for x in obj["quaternion"]])
        else:
            mat = [[jsonio.parse_rational(x) for x in row] for row in obj["matrix"]]
        return constant_gauge(rep, mat, chart_dim)
    if kind == "unipotent":
        uppers = {}
        for entry in obj["entries"]:
            i, j = entry["row"] - 1, entry["col"] - 1
            uppers[(i, j)] = jsonio.poly_from_json(entry["poly"], chart_dim)
        return unipotent_gauge(rep, uppers, chart_dim)
    raise ValueError(f"unknown gauge kind {kind!r}")


def _cmd_gauge(args, payloads):
    L = _algebra_arg(args.algebra) if args.algebra else None
    conn = jsonio.connection_from_json(_read_json(args.connection, payloads), L)
    g = _parse_gauge(_read_json(args.gauge, payloads), conn.algebra, conn.chart_dim)
    moved = gauge_transform(conn, g)
    return {"connection": jsonio.connection_to_json(moved)}


def _cmd_equivariant(args, payloads):
    L = _algebra_arg(args.algebra)
    if args.action_json:
        mats = _read_json(args.action_json, payloads)
        mats = [[[jsonio.parse_rational(x) for x in row] for row in mat] for mat in mats]
        m = len(mats[0]) if mats else 0
    else:
        m, mats = builtin_action(args.action, L)
    model = WeilModel(m, L, mats)
    dim = model.basic_dim(args.degree, args.poly_cap)
    return {"algebra": jsonio.algebra_to_json(L), "chart_dim": m,
            "degree": args.degree, "poly_cap": args.poly_cap, "basic_dim": dim}


def _cmd_polyfunc(args, payloads):
    if args.mode == "decompose":
        polys = parse_poly_exprs(args.expr, args.dim)
        f = poly_black_box(polys, args.dim)
        if args.probes:
            probes = [[jsonio.parse_rational(x) for x in p]
                      for p in _read_json(args.probes, payloads)]
        else:
            probes = _default_probes(args.dim)
        dec = homogeneous_decompose(f, args.degree, probes)
        return {"expr": args.expr, "degree": args.degree,
                "probes": [[jsonio.rational_str(x) for x in p] for p in dec.probes],
                "components": [[[jsonio.rational_str(x) for x in val] for val in comp]
                               for comp in dec.components]}
    if args.mode == "check":
        polys = parse_poly_exprs(args.expr, args.dim)
        f = poly_black_box(polys, args.dim)
        trials = _default_trials(args.dim)
        verdict = is_polynomial(f, args.degree, trials)
        out = {"expr": args.expr, "degree": args.degree,
               "consistent": verdict.consistent}
        if verdict.witness:
            ti, mu, expected, got = verdict.witness
            out["witness"] = {"trial": ti, "point": [jsonio.rational_str(x) for x in mu],
                              "value": [jsonio.rational_str(x) for x in expected],
                              "interpolated": [jsonio.rational_str(x) for x in got]}
        return out
    # inject
    m = re.fullmatch(r"(Sym|Lambda|Tensor)(\d+)", args.functor)
    if not m:
        raise ValueError("functor must look like Sym2, Lambda2, or Tensor1")
    kind = {"Sym": "sym", "Lambda": "ext", "Tensor": "ten"}[m.group(1)]
    rep = restriction_injectivity(FunctorSpec(kind, int(m.group(2))), args.copies, args.base_dim)
    return {"functor": args.functor, "copies": rep.copies, "base_dim": rep.base_dim,
            "dim": rep.dim, "rank": rep.rank, "injective": rep.injective}


def _default_probes(dim):
    base = [1, -2, 3, 5, -1, 2]
    probes = []
    for shift in range(3):
        probes.append([Fraction(base[(i + shift) % len(base)]) for i in range(dim)])
    return probes


def _default_trials(dim):
    vs1 = [tuple(Fraction(1 if i == j else 0) for i in range(dim)) for j in range(min(dim, 3))]
    vs2 = [tuple(-x for x in v) for v in vs1[:1]] + vs1[:1]
    return [vs1, vs2]


def _cmd_oracle(args, payloads):
    r = verify_bidegree(args.p, args.q, args.dimV)
    return {"p": r.p, "q": r.q, "dimV": r.dim_v, "dimW": r.dim_w,
            "expected": r.expected, "computed": r.computed, "match": r.match}


def _cmd_verify_all(args, payloads):
    results = run_all(report=lambda line: print(line, file=sys.stderr))
    payload = [{"id": r.ident, "title": r.title, "passed": r.passed, "details": r.details}
               for r in results]
    all_passed = all(r.passed for r in results)
    return {"criteria": payload, "all_passed": all_passed}, (0 if all_passed else 1)


# -- parser wiring -------------------------------------------------------


def build_parser():
    p = argparse.ArgumentParser(prog="weil",
                                description="Exact Weil-algebra and Chern-Weil calculator")
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("basic", help="basis of the basic subspace of the Weil algebra")
    sp.add_argument("--algebra", required=True)
    sp.add_argument("--degree", type=int, required=True)
    sp.set_defaults(handler=_cmd_basic)

    sp = sub.add_parser("cohomology", help="Koszul complex cohomology dimensions")
    sp.add_argument("--dim", type=int, required=True)
    sp.add_argument("--max-degree", type=int, required=True)
    sp.set_defaults(handler=_cmd_cohomology)

    sp = sub.add_parser("invariants", help="dimensions and bases of (Sym g*)^g")
    sp.add_argument("--algebra", required=True)
    sp.add_argument("--max-degree", type=int, required=True)
    sp.set_defaults(handler=_cmd_invariants)

    sp = sub.add_parser("cw", help="Chern-Weil form of an invariant polynomial")
    sp.add_argument("--algebra")
    sp.add_argument("--connection", required=True, metavar="FILE")
    sp.add_argument("--invariant", default="casimir")
    sp.add_argument("--invariant-json", metavar="FILE")
    sp.set_defaults(handler=_cmd_cw)

    sp = sub.add_parser("gauge", help="apply a gauge transformation to a connection")
    sp.add_argument("--algebra")
    sp.add_argument("--connection", required=True, metavar="FILE")
    sp.add_argument("--gauge", required=True, metavar="FILE")
    sp.set_defaults(handler=_cmd_gauge)

    sp = sub.add_parser("equivariant", help="basic dimension in the truncated Weil model")
    sp.add_argument("--algebra", required=True)
    sp.add_argument("--action", default="rot2")
    sp.add_argument("--action-json", metavar="FILE")
    sp.add_argument("--degree", type=int, required=True)
    sp.add_argument("--poly-cap", type=int, required=True)
    sp.set_defaults(handler=_cmd_equivariant)

    sp = sub.add_parser("polyfunc", help="polynomial functor procedures")
    sub2 = sp.add_subparsers(dest="mode", required=True)
    d1 = sub2.add_parser("decompose")
    d1.add_argument("--expr", required=True)
    d1.add_argument("--degree", type=int, required=True)
    d1.add_argument("--dim", type=int, required=True)
    d1.add_argument("--probes", metavar="FILE")
    d1.set_defaults(handler=_cmd_polyfunc, mode="decompose")
    d2 = sub2.add_parser("check")
    d2.add_argument("--expr", required=True)
    d2.add_argument("--degree", type=int, required=True)
    d2.add_argument("--dim", type=int, required=True)
    d2.set_defaults(handler=_cmd_polyfunc, mode="check")
    d3 = sub2.add_parser("inject")
    d3.add_argument("--functor", required=True)
    d3.add_argument("--copies", type=int, required=True)
    d3.add_argument("--base-dim", type=int, required=True)
    d3.set_defaults(handler=_cmd_polyfunc, mode="inject")

    sp = sub.add_parser("oracle", help="compare an equivariant Hom dimension with its predicted value")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--dimV", type=int, required=True)
    sp.set_defaults(handler=_cmd_oracle)

    sp = sub.add_parser("verify-all", help="run the full acceptance suite")
    sp.set_defaults(handler=_cmd_verify_all)

    return p


def main(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    payloads: dict[str, str] = {}
    try:
        out = args.handler(args, payloads)
    except (ValueError, OSError, KeyError) as exc:
        error = {"error": {"type": type(exc).__name__, "message": str(exc)}}
        sys.stdout.write(jsonio.canonical_json(error))
        return 1
    if isinstance(out, tuple):
        results, code = out
        _emit(argv, payloads, results)
        return code
    return _emit(argv, payloads, out)


if __name__ == "__main__":
    sys.exit(main())
