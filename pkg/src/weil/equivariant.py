"""The Weil model Omega(X; Koss g*) for a linear action on a chart.

Elements are sums of (chart form term) x (Weil algebra term).  The total
differential is d_X + d_K with the usual Koszul sign; the total contraction
pairs the fundamental vector field of the linear action with the algebraic
contraction on the Weil factor.

Everything is computed inside explicit truncations: a total degree d and a
polynomial coefficient degree cap c.  The operators raise the coefficient
degree by at most one, so kernels are computed exactly against codomain
bases with cap c + 1 -- nothing is silently truncated.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from . import linalg
from .chart_forms import ChartForm, d as chart_d, poly_var
from .liealg import LieAlgebra, basis_vector, frac
from .masks import mask_of
from .weil_algebra import (WeilElement, contract as weil_contract, d_K,
                           key_degree, term_sort_key, weil_basis)
from .weil_algebra import sym_exponents

TermKey = tuple[tuple[int, tuple[int, ...]], tuple[int, tuple[int, ...]]]
# ((chart mask, monomial exponents), (weil ext mask, weil sym exponents))


class WeilModel:
    """Context: chart dimension, algebra, and the linear action matrices."""

    def __init__(self, chart_dim: int, algebra: LieAlgebra, action):
        self.m = chart_dim
        self.algebra = algebra
        self.n = algebra.dim
        self.action = [tuple(tuple(frac(x) for x in row) for row in mat) for mat in action]
        if len(self.action) != self.n:
            raise ValueError("need one action matrix per algebra basis vector")
        for mat in self.action:
            if len(mat) != chart_dim or any(len(row) != chart_dim for row in mat):
                raise ValueError("action matrices must be chart_dim x chart_dim")
        self._validate_action()

    def _validate_action(self):
        for i in range(self.n):
            for j in range(self.n):
                comm = _mat_sub(_mat_mul(self.action[i], self.action[j]),
                                _mat_mul(self.action[j], self.action[i]))
                expect = [[Fraction(0)] * self.m for _ in range(self.m)]
                for (a, b, k), c in self.algebra.structure.items():
                    if a == i and b == j:
                        for r in range(self.m):
                            for s in range(self.m):
                                expect[r][s] += c * self.action[k][r][s]
                if [list(r) for r in comm] != expect:
                    raise ValueError(f"action matrices violate bracket compatibility at ({i},{j})")

    # -- elements ------------------------------------------------------

    def zero(self):
        return WeilModelElement(self, {})

    def element(self, terms):
        return WeilModelElement(self, terms)

    def from_pair(self, form: ChartForm, weil: WeilElement):
        if form.m != self.m or weil.n != self.n:
            raise ValueError("factor dimensions do not match the model")
        terms = {}
        for fk, fc in form.terms.items():
            for wk, wc in weil.terms.items():
                terms[(fk, wk)] = fc * wc
        return WeilModelElement(self, terms)

    # -- operators -------------------------------------------------------

    def total_d(self, w: "WeilModelElement") -> "WeilModelElement":
        """D(omega x a) = d_X omega x a + (-1)^{deg omega} omega x d_K a."""
        out: dict[TermKey, Fraction] = {}
        for (fk, wk), c in w.terms.items():
            df = chart_d(ChartForm(self.m, {fk: c}))
            for fk2, c2 in df.terms.items():
                _acc(out, (fk2, wk), c2)
            sign = -1 if bin(fk[0]).count("1") % 2 else 1
            da = d_K(WeilElement(self.n, {wk: c * sign}))
            for wk2, c2 in da.terms.items():
                _acc(out, (fk, wk2), c2)
        return WeilModelElement(self, out)

    def vector_field(self, xi):
        """Components of the fundamental field x -> rho(xi) x as degree-1 polynomials."""
        rho = [[sum(frac(xi[k]) * self.action[k][r][s] for k in range(self.n))
                for s in range(self.m)] for r in range(self.m)]
        comps = []
        for r in range(self.m):
            p = {}
            for s in range(self.m):
                if rho[r][s]:
                    p.update(poly_var(self.m, s, rho[r][s]))
            comps.append(p)
        return comps

    def total_contract(self, xi, w: "WeilModelElement") -> "WeilModelElement":
        """iota(omega x a) = iota_{xi-hat} omega x a + (-1)^{deg omega} omega x iota_xi a."""
        if len(xi) != self.n:
            raise ValueError("vector dimension does not match the algebra")
        vf = self.vector_field(xi)
        out: dict[TermKey, Fraction] = {}
        for (fk, wk), c in w.terms.items():
            mask, mono = fk
            # chart contraction: remove dx_t, multiply coefficient by the field component
            pos = 0
            rest = mask
            t = 0
            while rest:
                if rest & 1:
                    sign = -1 if pos % 2 else 1
                    comp = vf[t]
                    for e, cv in comp.items():
                        mono2 = tuple(a + b for a, b in zip(mono, e))
                        _acc(out, ((mask & ~(1 << t), mono2), wk), c * sign * cv)
                    pos += 1
                rest >>= 1
                t += 1
            sign = -1 if bin(mask).count("1") % 2 else 1
            ia = weil_contract(self.algebra, xi, WeilElement(self.n, {wk: c * sign}))
            for wk2, c2 in ia.terms.items():
                _acc(out, (fk, wk2), c2)
        return WeilModelElement(self, out)

    def total_lie(self, xi, w: "WeilModelElement") -> "WeilModelElement":
        """Cartan formula on the total complex."""
        return self.total_d(self.total_contract(xi, w)) + self.total_contract(xi, self.total_d(w))

    # -- truncated bases and kernels --------------------------------------

    def basis(self, total_degree, poly_cap):
        """Keys of total degree d with coefficient degree <= cap, canonical order."""
        keys = []
        for r in range(min(self.m, total_degree) + 1):
            wdeg = total_degree - r
            for wk in weil_basis(self.n, wdeg):
                for fmask in combinations(range(self.m), r):
                    for deg in range(poly_cap + 1):
                        for mono in sym_exponents(self.m, deg):
                            keys.append(((mask_of(fmask), mono), wk))
        keys.sort(key=_key_sort)
        return keys

    def _operator_rows(self, op, dom_keys, cod_keys):
        cod_index = {k: i for i, k in enumerate(cod_keys)}
        rows: dict[int, dict[int, Fraction]] = {}
        for j, key in enumerate(dom_keys):
            img = op(WeilModelElement(self, {key: Fraction(1)}))
            for k2, c in img.terms.items():
                rows.setdefault(cod_index[k2], {})[j] = c
        return [rows[i] for i in sorted(rows)]

    def basic_constraint_rows(self, total_degree, poly_cap):
        dom = self.basis(total_degree, poly_cap)
        cod_iota = self.basis(total_degree - 1, poly_cap + 1) if total_degree > 0 else []
        cod_lie = self.basis(total_degree, poly_cap + 1)
        rows = []
        for i in range(self.n):
            xi = basis_vector(self.n, i)
            rows += self._operator_rows(lambda w, xi=xi: self.total_contract(xi, w), dom, cod_iota)
            rows += self._operator_rows(lambda w, xi=xi: self.total_lie(xi, w), dom, cod_lie)
        return dom, rows

    def basic_basis(self, total_degree, poly_cap):
        dom, rows = self.basic_constraint_rows(total_degree, poly_cap)
        kernel = linalg.nullspace(rows, len(dom))
        return [WeilModelElement(self, {dom[i]: c for i, c in vec.items()}) for vec in kernel]

    def basic_dim(self, total_degree, poly_cap) -> int:
        dom, rows = self.basic_constraint_rows(total_degree, poly_cap)
        return len(dom) - linalg.rank(rows)


class WeilModelElement:
    """Sparse element of Omega(X) (x) Koss(g*), bound to its model."""

    __slots__ = ("model", "terms")

    def __init__(self, model: WeilModel, terms=None):
        self.model = model
        self.terms: dict[TermKey, Fraction] = {}
        if terms:
            for k, c in terms.items():
                c = frac(c)
                if c:
                    self.terms[k] = c

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return (isinstance(other, WeilModelElement) and self.model is other.model
                and self.terms == other.terms)

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            v = out.get(k, Fraction(0)) + c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return WeilModelElement(self.model, out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        c = frac(c)
        return WeilModelElement(self.model, {k: v * c for k, v in self.terms.items()})

    def __rmul__(self, c):
        return self.scale(c)

    def total_degree(self):
        degs = {bin(fk[0]).count("1") + key_degree(wk) for fk, wk in self.terms}
        if len(degs) != 1:
            raise ValueError("element is not homogeneous (or is zero)")
        return degs.pop()

    def __repr__(self):
        return f"WeilModelElement({len(self.terms)} terms)"


def _acc(store, key, value):
    v = store.get(key, Fraction(0)) + value
    if v:
        store[key] = v
    else:
        store.pop(key, None)


def _key_sort(key: TermKey):
    (fmask, mono), wk = key
    total = bin(fmask).count("1") + key_degree(wk)
    return (total, sum(mono), fmask, mono, term_sort_key(wk))


def _mat_mul(a, b):
    r = len(a)
    return [[sum(a[i][k] * b[k][j] for k in range(r)) for j in range(r)] for i in range(r)]


def _mat_sub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


# -- module-level operations -------------------------------------------


def total_d(w: WeilModelElement) -> WeilModelElement:
    return w.model.total_d(w)


def total_contract(xi, w: WeilModelElement) -> WeilModelElement:
    return w.model.total_contract(xi, w)


def basic_dims(chart_dim, algebra, action, total_degree, poly_cap) -> int:
    """Dimension of the basic subspace within the stated truncation."""
    model = WeilModel(chart_dim, algebra, action)
    return model.basic_dim(total_degree, poly_cap)


ROTATION_2D = ((0, -1), (1, 0))


def builtin_action(name: str, algebra: LieAlgebra):
    """Named actions for the CLI: 'trivial:<m>', 'rot2' (abelian(1) on R^2),
    'adjoint' (the algebra acting on itself)."""
    if name == "rot2":
        if algebra.dim != 1:
            raise ValueError("rot2 is an action of a 1-dimensional algebra")
        return 2, [ROTATION_2D]
    if name.startswith("trivial:"):
        m = int(name.split(":", 1)[1])
        return m, [[[0] * m for _ in range(m)] for _ in range(algebra.dim)]
    if name == "adjoint":
        n = algebra.dim
        mats = []
        for i in range(n):
            mats.append([[algebra.f(i, j, k) for j in range(n)] for k in range(n)])
        return n, mats
    raise ValueError(f"unknown action name: {name!r}")
