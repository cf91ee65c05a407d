"""Differential forms with polynomial coefficients on affine charts R^m.

A form is a sparse map (dx index set, monomial exponent vector) -> rational.
Coefficients are polynomials, kept as sparse exponent-vector dicts, so the
exterior derivative, wedge and pullback are all exact.
"""

from __future__ import annotations

from fractions import Fraction

from .liealg import frac
from .masks import indices_of, mask_of, merge_sign

Mono = tuple[int, ...]
Poly = dict[Mono, Fraction]  # sparse polynomial


# -- polynomial helpers ------------------------------------------------


def poly_const(m, c=1) -> Poly:
    c = frac(c)
    return {(0,) * m: c} if c else {}


def poly_var(m, i, c=1) -> Poly:
    e = [0] * m
    e[i] = 1
    c = frac(c)
    return {tuple(e): c} if c else {}


def poly_add(p: Poly, q: Poly) -> Poly:
    out = dict(p)
    for e, c in q.items():
        v = out.get(e, Fraction(0)) + c
        if v:
            out[e] = v
        else:
            out.pop(e, None)
    return out


def poly_scale(p: Poly, c) -> Poly:
    c = frac(c)
    if not c:
        return {}
    return {e: v * c for e, v in p.items()}


def poly_mul(p: Poly, q: Poly) -> Poly:
    out: Poly = {}
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            v = out.get(e, Fraction(0)) + c1 * c2
            if v:
                out[e] = v
            else:
                out.pop(e, None)
    return out


def poly_pow(p: Poly, k: int, m: int) -> Poly:
    if k < 0:
        raise ValueError("negative power")
    out = poly_const(m, 1)
    for _ in range(k):
        out = poly_mul(out, p)
    return out


def poly_diff(p: Poly, i: int) -> Poly:
    out: Poly = {}
    for e, c in p.items():
        if e[i]:
            e2 = list(e)
            e2[i] -= 1
            out[tuple(e2)] = c * e[i]
    return out


def poly_eval(p: Poly, point) -> Fraction:
    total = Fraction(0)
    for e, c in p.items():
        v = c
        for x, k in zip(point, e):
            for _ in range(k):
                v *= x
        total += v
    return total


def poly_compose(p: Poly, components, source_dim) -> Poly:
    """Substitute x_i -> components[i] (polynomials in source_dim variables)."""
    out: Poly = {}
    cache: dict[tuple[int, int], Poly] = {}

    def power(i, k):
        if (i, k) not in cache:
            cache[(i, k)] = poly_pow(components[i], k, source_dim)
        return cache[(i, k)]

    for e, c in p.items():
        piece = poly_const(source_dim, c)
        for i, k in enumerate(e):
            if k:
                piece = poly_mul(piece, power(i, k))
        out = poly_add(out, piece)
    return out


# -- chart forms -------------------------------------------------------


class ChartForm:
    """Polynomial-coefficient differential form on R^m."""

    __slots__ = ("m", "terms")

    def __init__(self, m: int, terms=None):
        self.m = m
        self.terms: dict[tuple[int, Mono], Fraction] = {}
        if terms:
            for key, c in terms.items():
                c = frac(c)
                if c:
                    self.terms[key] = c

    @classmethod
    def zero(cls, m):
        return cls(m)

    @classmethod
    def from_poly(cls, m, p: Poly):
        return cls(m, {(0, e): c for e, c in p.items()})

    @classmethod
    def constant(cls, m, c=1):
        return cls(m, {(0, (0,) * m): frac(c)})

    @classmethod
    def dx(cls, m, i, coeff: Poly | None = None):
        if not 0 <= i < m:
            raise IndexError(f"dx index {i} out of range for chart dimension {m}")
        if coeff is None:
            coeff = poly_const(m, 1)
        return cls(m, {(1 << i, e): c for e, c in coeff.items()})

    @classmethod
    def monomial(cls, m, dx_indices, exponents, c=1):
        return cls(m, {(mask_of(dx_indices), tuple(exponents)): frac(c)})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return isinstance(other, ChartForm) and self.m == other.m and self.terms == other.terms

    def __hash__(self):
        return hash((self.m, frozenset(self.terms.items())))

    def __add__(self, other):
        self._compat(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            v = out.get(k, Fraction(0)) + c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return ChartForm(self.m, out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return ChartForm(self.m, {k: -c for k, c in self.terms.items()})

    def scale(self, c):
        c = frac(c)
        return ChartForm(self.m, {k: v * c for k, v in self.terms.items()})

    def __rmul__(self, c):
        return self.scale(c)

    def degrees(self):
        return {bin(mask).count("1") for mask, _ in self.terms}

    def degree(self):
        degs = self.degrees()
        if len(degs) != 1:
            raise ValueError("form is not homogeneous (or is zero)")
        return degs.pop()

    def is_homogeneous(self):
        return len(self.degrees()) <= 1

    def coefficient(self, dx_indices) -> Poly:
        mask = mask_of(dx_indices)
        return {e: c for (mk, e), c in self.terms.items() if mk == mask}

    def sorted_terms(self):
        return sorted(self.terms.items(),
                      key=lambda kv: (bin(kv[0][0]).count("1"), kv[0][0], sum(kv[0][1]), kv[0][1]))

    def _compat(self, other):
        if self.m != other.m:
            raise ValueError("chart dimension mismatch")

    def __repr__(self):
        if not self.terms:
            return "ChartForm(0)"
        bits = []
        for (mask, e), c in self.sorted_terms():
            mono = "*".join(f"x{i + 1}^{k}" if k > 1 else f"x{i + 1}" for i, k in enumerate(e) if k)
            dxs = "^".join(f"dx{i + 1}" for i in indices_of(mask))
            parts = [str(c)] + ([mono] if mono else []) + ([dxs] if dxs else [])
            bits.append("*".join(parts))
        return " + ".join(bits)


def wedge(a: ChartForm, b: ChartForm) -> ChartForm:
    a._compat(b)
    out: dict[tuple[int, Mono], Fraction] = {}
    for (m1, e1), c1 in a.terms.items():
        for (m2, e2), c2 in b.terms.items():
            merged = merge_sign(m1, m2)
            if merged is None:
                continue
            mask, sign = merged
            key = (mask, tuple(x + y for x, y in zip(e1, e2)))
            v = out.get(key, Fraction(0)) + sign * c1 * c2
            if v:
                out[key] = v
            else:
                out.pop(key, None)
    return ChartForm(a.m, out)


def d(a: ChartForm) -> ChartForm:
    """Exterior derivative."""
    m = a.m
    out = ChartForm.zero(m)
    for (mask, e), c in a.terms.items():
        coeff: Poly = {e: c}
        for i in range(m):
            dc = poly_diff(coeff, i)
            if dc:
                out = out + wedge(ChartForm.dx(m, i, dc), ChartForm(m, {(mask, (0,) * m): Fraction(1)}))
    return out


class PolyMap:
    """Polynomial map R^source_dim -> R^target_dim."""

    __slots__ = ("source_dim", "target_dim", "components")

    def __init__(self, source_dim, target_dim, components):
        if len(components) != target_dim:
            raise ValueError("component count must equal target dimension")
        self.source_dim = source_dim
        self.target_dim = target_dim
        self.components = [dict(p) for p in components]

    @classmethod
    def identity(cls, m):
        return cls(m, m, [poly_var(m, i) for i in range(m)])

    def __call__(self, point):
        return tuple(poly_eval(p, point) for p in self.components)

    def differential_row(self, j) -> ChartForm:
        """d(phi_j) as a 1-form on the source chart."""
        out = ChartForm.zero(self.source_dim)
        for t in range(self.source_dim):
            dp = poly_diff(self.components[j], t)
            if dp:
                out = out + ChartForm.dx(self.source_dim, t, dp)
        return out


def compose(phi: PolyMap, psi: PolyMap) -> PolyMap:
    """phi after psi."""
    if psi.target_dim != phi.source_dim:
        raise ValueError("dimension mismatch in composition")
    comps = [poly_compose(p, psi.components, psi.source_dim) for p in phi.components]
    return PolyMap(psi.source_dim, phi.target_dim, comps)


def pullback(phi: PolyMap, a: ChartForm) -> ChartForm:
    """phi^* a; substitutes coordinates and differentials."""
    if a.m != phi.target_dim:
        raise ValueError("form lives on a chart of the wrong dimension")
    src = phi.source_dim
    out = ChartForm.zero(src)
    dcache = {}
    for (mask, e), c in a.terms.items():
        coeff = poly_compose({e: c}, phi.components, src)
        piece = ChartForm.from_poly(src, coeff)
        for j in indices_of(mask):
            if j not in dcache:
                dcache[j] = phi.differential_row(j)
            piece = wedge(piece, dcache[j])
        out = out + piece
    return out
