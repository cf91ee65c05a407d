"""Connections on charts, curvature, and the Chern-Weil homomorphism.

A connection is a Lie-algebra-valued 1-form with polynomial coefficients.
Curvature is F = dA + 1/2 [A, A]; an invariant symmetric polynomial applied
to F gives the closed Chern-Weil form.  Gauge transformations are restricted
to constant and unipotent-polynomial matrices in a validated matrix
representation, so every inverse is exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations

from . import linalg
from .chart_forms import (ChartForm, Poly, PolyMap, d, poly_add, poly_const,
                          poly_diff, poly_mul, poly_scale, pullback, wedge)
from .liealg import LieAlgebra, builtin, frac
from .weil_algebra import WeilElement
from .invariant_polynomials import is_sym_element


class LieValuedForm:
    """g-valued chart form: one ChartForm per basis coordinate of g."""

    __slots__ = ("algebra", "chart_dim", "components")

    def __init__(self, algebra: LieAlgebra, chart_dim: int, components):
        if len(components) != algebra.dim:
            raise ValueError("component count must equal algebra dimension")
        for c in components:
            if c.m != chart_dim:
                raise ValueError("components live on charts of different dimensions")
        self.algebra = algebra
        self.chart_dim = chart_dim
        self.components = list(components)

    @classmethod
    def zero(cls, algebra, chart_dim):
        return cls(algebra, chart_dim, [ChartForm.zero(chart_dim) for _ in range(algebra.dim)])

    def degree(self):
        degs = set()
        for c in self.components:
            degs |= c.degrees()
        if len(degs) > 1:
            raise ValueError("components are not of a single form degree")
        return degs.pop() if degs else 0

    def __eq__(self, other):
        return (isinstance(other, LieValuedForm) and self.algebra == other.algebra
                and self.chart_dim == other.chart_dim and self.components == other.components)

    def __add__(self, other):
        if self.algebra != other.algebra:
            raise ValueError("algebra mismatch")
        return LieValuedForm(self.algebra, self.chart_dim,
                             [a + b for a, b in zip(self.components, other.components)])

    def __repr__(self):
        return "LieValuedForm(" + ", ".join(repr(c) for c in self.components) + ")"


def curvature(A: LieValuedForm) -> LieValuedForm:
    """F = dA + 1/2 [A, A], with [A,A]^k = sum_{ij} f^k_{ij} A^i wedge A^j."""
    if A.degree() not in (0, 1):
        raise ValueError("curvature needs a 1-form connection")
    L = A.algebra
    comps = []
    for k in range(L.dim):
        Fk = d(A.components[k])
        for (i, j, kk), c in L.structure.items():
            if kk == k and i < j:  # antisymmetry folds the double sum
                Fk = Fk + wedge(A.components[i], A.components[j]).scale(c)
        comps.append(Fk)
    return LieValuedForm(L, A.chart_dim, comps)


def pullback_connection(phi: PolyMap, A: LieValuedForm) -> LieValuedForm:
    return LieValuedForm(A.algebra, phi.source_dim, [pullback(phi, c) for c in A.components])


def weil_to_chart(a: WeilElement, A: LieValuedForm) -> ChartForm:
    """Universal substitution lam_i -> A^i, lamt_i -> (dA)^i."""
    if a.n != A.algebra.dim:
        raise ValueError("element dimension does not match the connection algebra")
    m = A.chart_dim
    dA = [d(c) for c in A.components]
    out = ChartForm.zero(m)
    for (e, s), coeff in a.terms.items():
        piece = ChartForm.constant(m, coeff)
        mask = e
        i = 0
        while mask:
            if mask & 1:
                piece = wedge(piece, A.components[i])
            mask >>= 1
            i += 1
        for i, q in enumerate(s):
            for _ in range(q):
                piece = wedge(piece, dA[i])
        out = out + piece
    return out


def cw_form(P: WeilElement, A: LieValuedForm) -> ChartForm:
    """Evaluate a symmetric polynomial on the curvature.

    P is polarized to a symmetric multilinear map and evaluated at
    (F, ..., F); since curvature components are 2-forms they commute, the
    multinomial normalization cancels and the evaluation is the plain
    substitution lamt_i -> F^i.
    """
    if not is_sym_element(P):
        raise ValueError("cw_form needs a symmetric-factor element")
    if not P.is_homogeneous() or not P:
        raise ValueError("cw_form needs a homogeneous nonzero polynomial")
    if A.degree() not in (0, 1):
        raise ValueError("cw_form needs a 1-form connection")
    F = curvature(A)
    m = A.chart_dim
    out = ChartForm.zero(m)
    powers: dict[tuple[int, int], ChartForm] = {}

    def fpow(i, q):
        if (i, q) not in powers:
            acc = ChartForm.constant(m)
            for _ in range(q):
                acc = wedge(acc, F.components[i])
            powers[(i, q)] = acc
        return powers[(i, q)]

    for (e, s), coeff in P.terms.items():
        piece = ChartForm.constant(m, coeff)
        for i, q in enumerate(s):
            if q:
                piece = wedge(piece, fpow(i, q))
        out = out + piece
    return out


# -- matrix representations -------------------------------------------


@dataclass(frozen=True, eq=False)
class MatrixRep:
    """Faithful matrix images of the basis vectors, exact rational entries."""

    algebra: LieAlgebra
    size: int
    mats: tuple  # n matrices, each tuple of row tuples of Fraction

    def validate(self):
        n = self.algebra.dim
        for i in range(n):
            for j in range(n):
                commutator = _mat_sub(_mat_mul_scalar(self.mats[i], self.mats[j]),
                                      _mat_mul_scalar(self.mats[j], self.mats[i]))
                expected = _mat_zero(self.size)
                for (a, b, k), c in self.algebra.structure.items():
                    if a == i and b == j:
                        expected = _mat_add(expected, _mat_scale(self.mats[k], c))
                if commutator != expected:
                    raise ValueError(f"representation brackets do not match structure constants at ({i},{j})")

    def flat_columns(self):
        """Flattened generator matrices as sparse columns for coordinate extraction."""
        cols = []
        for mat in self.mats:
            col = {}
            for r, row in enumerate(mat):
                for c, v in enumerate(row):
                    if v:
                        col[r * self.size + c] = v
            cols.append(col)
        return cols


def _mat_zero(r):
    return tuple(tuple(Fraction(0) for _ in range(r)) for _ in range(r))


def _mat_add(a, b):
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def _mat_sub(a, b):
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def _mat_scale(a, c):
    return tuple(tuple(x * c for x in ra) for ra in a)


def _mat_mul_scalar(a, b):
    r = len(a)
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(r)) for j in range(r)) for i in range(r))


def make_rep(algebra, mats) -> MatrixRep:
    tidy = tuple(tuple(tuple(frac(x) for x in row) for row in m) for m in mats)
    rep = MatrixRep(algebra=algebra, size=len(tidy[0]), mats=tidy)
    rep.validate()
    return rep


def _realify(complex_mat):
    """(re, im) Fraction pair matrix -> real matrix of doubled size."""
    r = len(complex_mat)
    out = [[Fraction(0)] * (2 * r) for _ in range(2 * r)]
    for i in range(r):
        for j in range(r):
            re, im = complex_mat[i][j]
            out[2 * i][2 * j] = frac(re)
            out[2 * i][2 * j + 1] = -frac(im)
            out[2 * i + 1][2 * j] = frac(im)
            out[2 * i + 1][2 * j + 1] = frac(re)
    return tuple(tuple(row) for row in out)


def builtin_rep(name: str) -> MatrixRep:
    """Default exact matrix representation for a built-in algebra."""
    L = builtin(name)
    if name == "abelian(1)":
        return make_rep(L, [[[0, 1], [0, 0]]])
    if name == "heisenberg3":
        e1 = [[0, 1, 0], [0, 0, 0], [0, 0, 0]]
        e2 = [[0, 0, 0], [0, 0, 1], [0, 0, 0]]
        e3 = [[0, 0, 1], [0, 0, 0], [0, 0, 0]]
        return make_rep(L, [e1, e2, e3])
    if name == "sl2":
        h = [[1, 0], [0, -1]]
        e = [[0, 1], [0, 0]]
        f = [[0, 0], [1, 0]]
        return make_rep(L, [h, e, f])
    if name == "so3":
        mats = []
        for i in range(3):
            m = [[L.f(i, j, k) for j in range(3)] for k in range(3)]
            mats.append(m)
        return make_rep(L, mats)
    if name == "su2":
        # X_k = -(i/2) sigma_k, realified to exact 4x4 rational blocks
        half = Fraction(1, 2)
        z = (Fraction(0), Fraction(0))
        x1 = [[z, (0, -half)], [(0, -half), z]]
        x2 = [[z, (-half, 0)], [(half, 0), z]]
        x3 = [[(0, -half), z], [z, (0, half)]]
        return make_rep(L, [_realify(x) for x in (x1, x2, x3)])
    raise ValueError(f"no built-in representation for {name!r}")


def quaternion_matrix(a, b, c, dd):
    """Realified [[a+bi, c+di], [-c+di, a-bi]]; invertible for any nonzero quaternion."""
    a, b, c, dd = frac(a), frac(b), frac(c), frac(dd)
    if not (a or b or c or dd):
        raise ValueError("zero quaternion")
    return _realify([[(a, b), (c, dd)], [(-c, dd), (a, -b)]])


# -- gauge transformations --------------------------------------------


@dataclass(frozen=True, eq=False)
class GaugeTransform:
    """Group-valued map in a matrix representation; kind constant or unipotent."""

    kind: str
    rep: MatrixRep
    chart_dim: int
    entries: tuple  # r x r polynomials (Poly dicts); constant kind has degree 0

    def matrix_forms(self):
        """Entries as 0-form ChartForms."""
        return [[ChartForm.from_poly(self.chart_dim, dict(p)) for p in row] for row in self.entries]


def constant_gauge(rep: MatrixRep, matrix, chart_dim) -> GaugeTransform:
    r = rep.size
    rows = tuple(tuple(frac(x) for x in row) for row in matrix)
    if len(rows) != r or any(len(row) != r for row in rows):
        raise ValueError("gauge matrix size does not match the representation")
    if not _det(rows):
        raise ValueError("constant gauge matrix is singular")
    entries = tuple(tuple(poly_const(chart_dim, x) for x in row) for row in rows)
    return GaugeTransform("constant", rep, chart_dim, entries)


def unipotent_gauge(rep: MatrixRep, upper_entries, chart_dim) -> GaugeTransform:
    """g = I + N with N strictly upper triangular polynomial entries."""
    r = rep.size
    m = chart_dim
    entries = []
    for i in range(r):
        row = []
        for j in range(r):
            if j > i:
                p = dict(upper_entries.get((i, j), {})) if isinstance(upper_entries, dict) else dict(upper_entries[i][j])
                row.append({e: frac(c) for e, c in p.items() if c})
            elif i == j:
                row.append(poly_const(m, 1))
            else:
                row.append({})
        entries.append(tuple(row))
    return GaugeTransform("unipotent", rep, m, tuple(entries))


def _det(mat):
    out = Fraction(0)
    n = len(mat)
    for perm in permutations(range(n)):
        sign = 1
        seen = list(perm)
        for i in range(n):
            for j in range(i + 1, n):
                if seen[i] > seen[j]:
                    sign = -sign
        term = Fraction(1)
        for i in range(n):
            term *= mat[i][perm[i]]
        out += sign * term
    return out


def _adjugate_inverse(mat):
    n = len(mat)
    det = _det(mat)
    if not det:
        raise ValueError("singular matrix")
    inv = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [[mat[r][c] for c in range(n) if c != j] for r in range(n) if r != i]
            cof = _det(minor) if minor else Fraction(1)
            inv[j][i] = ((-1) ** (i + j)) * cof / det
    return inv


def _gauge_inverse_forms(g: GaugeTransform):
    m, r = g.chart_dim, g.rep.size
    if g.kind == "constant":
        const = tuple(tuple(next(iter(p.values()), Fraction(0)) for p in row) for row in g.entries)
        inv = _adjugate_inverse(const)
        return [[ChartForm.constant(m, x) if x else ChartForm.zero(m) for x in row] for row in inv]
    # unipotent: (I + N)^{-1} = sum (-N)^k, nilpotency order <= r
    N = [[dict(g.entries[i][j]) if j > i else {} for j in range(r)] for i in range(r)]
    acc = [[poly_const(m, 1) if i == j else {} for j in range(r)] for i in range(r)]
    power = [[poly_const(m, 1) if i == j else {} for j in range(r)] for i in range(r)]
    for _ in range(1, r):
        power = [[_poly_dot(power[i], N, j) for j in range(r)] for i in range(r)]
        power = [[poly_scale(p, -1) for p in row] for row in power]
        acc = [[poly_add(a, p) for a, p in zip(ra, rp)] for ra, rp in zip(acc, power)]
    return [[ChartForm.from_poly(m, p) for p in row] for row in acc]


def _poly_dot(row, mat, j):
    out: Poly = {}
    for k, p in enumerate(row):
        q = mat[k][j]
        if p and q:
            out = poly_add(out, poly_mul(p, q))
    return out


def _form_mat_mul(A, B):
    r = len(A)
    out = []
    for i in range(r):
        row = []
        for j in range(r):
            acc = None
            for k in range(r):
                t = wedge(A[i][k], B[k][j])
                acc = t if acc is None else acc + t
            row.append(acc)
        out.append(row)
    return out


def _differential_forms(g: GaugeTransform):
    m = g.chart_dim
    out = []
    for row in g.entries:
        drow = []
        for p in row:
            form = ChartForm.zero(m)
            for i in range(m):
                dp = poly_diff(dict(p), i)
                if dp:
                    form = form + ChartForm.dx(m, i, dp)
            drow.append(form)
        out.append(drow)
    return out


def _lie_valued_to_matrix(B: LieValuedForm, rep: MatrixRep):
    r = rep.size
    m = B.chart_dim
    out = [[ChartForm.zero(m) for _ in range(r)] for _ in range(r)]
    for i, comp in enumerate(B.components):
        mat = rep.mats[i]
        for a in range(r):
            for b in range(r):
                if mat[a][b]:
                    out[a][b] = out[a][b] + comp.scale(mat[a][b])
    return out


def _matrix_to_lie_valued(M, rep: MatrixRep, algebra, chart_dim) -> LieValuedForm:
    r = rep.size
    cols = rep.flat_columns()
    keys = set()
    for row in M:
        for form in row:
            keys |= set(form.terms)
    comps = [ChartForm.zero(chart_dim) for _ in range(algebra.dim)]
    for key in sorted(keys):
        target = {}
        for a in range(r):
            for b in range(r):
                v = M[a][b].terms.get(key)
                if v:
                    target[a * r + b] = v
        coords = linalg.solve(cols, target)
        if coords is None:
            raise ValueError("matrix-valued form does not lie in the representation image")
        for i, c in enumerate(coords):
            if c:
                comps[i] = comps[i] + ChartForm(chart_dim, {key: c})
    return LieValuedForm(algebra, chart_dim, comps)


def conjugate(g: GaugeTransform, B: LieValuedForm) -> LieValuedForm:
    """Ad_{g^{-1}} B = g^{-1} B g, decomposed back into algebra coordinates."""
    _check_gauge(g, B)
    ginv = _gauge_inverse_forms(g)
    gmat = g.matrix_forms()
    M = _form_mat_mul(_form_mat_mul(ginv, _lie_valued_to_matrix(B, g.rep)), gmat)
    return _matrix_to_lie_valued(M, g.rep, B.algebra, B.chart_dim)


def gauge_transform(A: LieValuedForm, g: GaugeTransform) -> LieValuedForm:
    """alpha . g = g^{-1} dg + g^{-1} alpha g, all arithmetic exact."""
    _check_gauge(g, A)
    ginv = _gauge_inverse_forms(g)
    gmat = g.matrix_forms()
    maurer = _form_mat_mul(ginv, _differential_forms(g))
    conj = _form_mat_mul(_form_mat_mul(ginv, _lie_valued_to_matrix(A, g.rep)), gmat)
    total = [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(maurer, conj)]
    return _matrix_to_lie_valued(total, g.rep, A.algebra, A.chart_dim)


def _check_gauge(g: GaugeTransform, B: LieValuedForm):
    if g.rep.algebra != B.algebra:
        raise ValueError("gauge representation is for a different algebra")
    if g.chart_dim != B.chart_dim:
        raise ValueError("gauge and form live on different charts")
