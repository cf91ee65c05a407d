"""Canonical JSON encoding of the domain objects.

Rationals serialize as decimal-free strings "p/q" in lowest terms (bare "p"
for integers, q > 0), indices are 1-based, and term lists are emitted in the
canonical term order, so equal values always produce identical JSON.
"""

from __future__ import annotations

import hashlib
import json
from fractions import Fraction

from .chart_forms import ChartForm
from .chern_weil import LieValuedForm
from .liealg import LieAlgebra, builtin, make_lie_algebra
from .masks import indices_of, mask_of
from .weil_algebra import WeilElement


def rational_str(x) -> str:
    x = Fraction(x)
    return str(x)


def parse_rational(s) -> Fraction:
    if isinstance(s, int):
        return Fraction(s)
    if isinstance(s, str):
        return Fraction(s)
    raise ValueError(f"rationals must be strings or integers, got {type(s).__name__}")


# -- Lie algebras ------------------------------------------------------


def algebra_to_json(L: LieAlgebra) -> dict:
    brackets = []
    for (i, j, k), c in sorted(L.structure.items()):
        if i < j and c:
            brackets.append({"i": i + 1, "j": j + 1, "k": k + 1, "c": rational_str(c)})
    out = {"dim": L.dim, "brackets": brackets}
    if L.name:
        out["name"] = L.name
    return out


def algebra_from_json(obj) -> LieAlgebra:
    if isinstance(obj, str):
        return builtin(obj)
    dim = obj["dim"]
    table = {}
    for entry in obj.get("brackets", []):
        i, j, k = entry["i"] - 1, entry["j"] - 1, entry["k"] - 1
        if not i < j:
            raise ValueError("bracket entries must have i < j (antisymmetry is implied)")
        c = parse_rational(entry["c"])
        table[(i, j, k)] = c
        table[(j, i, k)] = -c
    return make_lie_algebra(dim, table, name=obj.get("name"))


# -- Weil elements -----------------------------------------------------


def weil_element_to_json(a: WeilElement) -> list:
    out = []
    for (e, s), c in a.sorted_terms():
        out.append({"ext": [i + 1 for i in indices_of(e)], "sym": list(s),
                    "c": rational_str(c)})
    return out


def weil_element_from_json(n, obj) -> WeilElement:
    terms = {}
    for entry in obj:
        ext = mask_of(i - 1 for i in entry.get("ext", []))
        sym = tuple(entry.get("sym", [0] * n))
        if len(sym) != n:
            raise ValueError("sym exponent vector has the wrong length")
        terms[(ext, sym)] = terms.get((ext, sym), Fraction(0)) + parse_rational(entry["c"])
    return WeilElement(n, terms)


# -- chart forms and connections ---------------------------------------


def chart_form_to_json(a: ChartForm) -> dict:
    terms = []
    for (mask, e), c in a.sorted_terms():
        terms.append({"dx": [i + 1 for i in indices_of(mask)], "mono": list(e),
                      "c": rational_str(c)})
    return {"dim": a.m, "terms": terms}


def chart_form_from_json(obj) -> ChartForm:
    m = obj["dim"]
    terms = {}
    for entry in obj.get("terms", []):
        mask = mask_of(i - 1 for i in entry.get("dx", []))
        mono = tuple(entry.get("mono", [0] * m))
        if len(mono) != m:
            raise ValueError("monomial exponent vector has the wrong length")
        key = (mask, mono)
        terms[key] = terms.get(key, Fraction(0)) + parse_rational(entry["c"])
    return ChartForm(m, terms)


def poly_to_json(p) -> list:
    out = []
    for e, c in sorted(p.items(), key=lambda kv: (sum(kv[0]), kv[0])):
        out.append({"mono": list(e), "c": rational_str(c)})
    return out


def poly_from_json(obj, m) -> dict:
    p = {}
    for entry in obj:
        e = tuple(entry["mono"])
        if len(e) != m:
            raise ValueError("monomial exponent vector has the wrong length")
        p[e] = p.get(e, Fraction(0)) + parse_rational(entry["c"])
    return {e: c for e, c in p.items() if c}


def connection_to_json(A: LieValuedForm) -> dict:
    return {"algebra": algebra_to_json(A.algebra), "chart_dim": A.chart_dim,
            "components": [chart_form_to_json(c) for c in A.components]}


def connection_from_json(obj, algebra=None) -> LieValuedForm:
    if "algebra" in obj:
        parsed = algebra_from_json(obj["algebra"])
        if algebra is not None and parsed != algebra:
            raise ValueError("connection file algebra disagrees with the requested algebra")
        algebra = parsed
    if algebra is None:
        raise ValueError("no algebra given for the connection")
    m = obj["chart_dim"]
    comps = [chart_form_from_json(c) for c in obj["components"]]
    for c in comps:
        if c.m != m:
            raise ValueError("component chart dimension disagrees with chart_dim")
    return LieValuedForm(algebra, m, comps)


# -- reports -----------------------------------------------------------


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=True) + "\n"


def digest(obj) -> str:
    payload = json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=True)
    return hashlib.sha256(payload.encode()).hexdigest()
