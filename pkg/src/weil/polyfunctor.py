"""Polynomial-functor procedures: homogeneous decomposition of black-box
polynomial maps, a sampling polynomiality detector, and the restriction
injectivity check for Sym^d / Lambda^d / Tensor^d.

The detector is a falsifier, not a decision procedure: a black box can only
be sampled, so "consistent-with-polynomial(d)" means the interpolant built
on a degree-d grid matched the map at the extra off-grid check points.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, combinations_with_replacement, product

from . import linalg
from .liealg import frac


@dataclass(frozen=True)
class BlackBoxMap:
    """Deterministic map Q^source_dim -> Q^target_dim."""

    source_dim: int
    target_dim: int
    evaluator: object  # callable tuple -> tuple

    def __call__(self, v):
        v = tuple(frac(x) for x in v)
        if len(v) != self.source_dim:
            raise ValueError("input has the wrong dimension")
        out = tuple(frac(x) for x in self.evaluator(v))
        if len(out) != self.target_dim:
            raise ValueError("evaluator returned the wrong dimension")
        return out


def _vec_add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _vec_scale(a, c):
    return tuple(c * x for x in a)


def _vandermonde_inverse(d):
    """Inverse of the (d+1)x(d+1) matrix V[r][i] = nodes[r]^i at nodes 1..d+1.

    Returns (nodes, weights) with weights[i][r] = (V^-1)[i][r], so that
    f_i(v) = sum_r weights[i][r] f(nodes[r] v).
    """
    nodes = [Fraction(k) for k in range(1, d + 2)]
    cols = [{r: nodes[r] ** i for r in range(d + 1)} for i in range(d + 1)]
    inv_cols = [linalg.solve(cols, {r: Fraction(1)}) for r in range(d + 1)]
    weights = [[inv_cols[r][i] for r in range(d + 1)] for i in range(d + 1)]
    return nodes, weights


@dataclass
class HomogeneousDecomposition:
    degree_bound: int
    probes: list
    components: list  # components[i][probe_index] = output tuple

    def component_at(self, i, probe_index):
        return self.components[i][probe_index]


def homogeneous_decompose(f: BlackBoxMap, d: int, probes,
                          verify_scalars=(2, 3)) -> HomogeneousDecomposition:
    """Split f into homogeneous components f_0..f_d, tabulated on the probes.

    Evaluates f(lambda v) at lambda = 1..d+1 and solves the Vandermonde
    system per probe.  The reconstruction sum f_i(v) = f(v) is exact by
    construction (lambda = 1 is a node); each verify scalar mu checks the
    ray-degree precondition through f_i(mu v) = mu^i f_i(v) and raises with
    a witness when it fails.
    """
    if d < 0:
        raise ValueError("degree bound must be >= 0")
    nodes, weights = _vandermonde_inverse(d)
    probes = [tuple(frac(x) for x in p) for p in probes]

    def components_at(v):
        values = [f(_vec_scale(v, lam)) for lam in nodes]
        comps = []
        for i in range(d + 1):
            acc = tuple(Fraction(0) for _ in range(f.target_dim))
            for r, w in enumerate(weights[i]):
                if w:
                    acc = _vec_add(acc, _vec_scale(values[r], w))
            comps.append(acc)
        return comps

    table = [components_at(v) for v in probes]
    components = [[table[p][i] for p in range(len(probes))] for i in range(d + 1)]

    for mu in verify_scalars:
        mu = frac(mu)
        for pi, v in enumerate(probes):
            scaled = components_at(_vec_scale(v, mu))
            for i in range(d + 1):
                if scaled[i] != _vec_scale(components[i][pi], mu ** i):
                    raise ValueError(
                        f"map is not polynomial of degree <= {d} along rays: "
                        f"component {i} fails homogeneity at probe {v} with mu={mu}")
    return HomogeneousDecomposition(d, probes, components)


def homogeneous_component(f: BlackBoxMap, i: int, d: int) -> BlackBoxMap:
    """The idempotent e_i applied to f, as a new black box."""
    if not 0 <= i <= d:
        raise ValueError("component index out of range")
    nodes, weights = _vandermonde_inverse(d)
    row = weights[i]

    def ev(v):
        acc = tuple(Fraction(0) for _ in range(f.target_dim))
        for r, w in enumerate(row):
            if w:
                acc = _vec_add(acc, _vec_scale(f(_vec_scale(v, nodes[r])), w))
        return acc

    return BlackBoxMap(f.source_dim, f.target_dim, ev)


# -- polynomiality detector -------------------------------------------


@dataclass(frozen=True)
class PolynomialVerdict:
    consistent: bool
    witness: tuple | None = None  # (trial_index, point, expected, interpolated)


def _lagrange_weight(nodes, j, x):
    w = Fraction(1)
    for k, nk in enumerate(nodes):
        if k != j:
            w *= (x - nk) / (nodes[j] - nk)
    return w


DEFAULT_CHECKPOINT_PATTERNS = (
    (Fraction(1, 2), Fraction(1, 2), Fraction(1, 2)),
    (Fraction(-1, 2), Fraction(1, 2), Fraction(-1, 2)),
    (Fraction(-3, 2), Fraction(5, 3), Fraction(-1, 4)),
    (Fraction(7, 3), Fraction(-5, 3), Fraction(1, 3)),
)


def is_polynomial(f: BlackBoxMap, d: int, trial_sets, checkpoints=None) -> PolynomialVerdict:
    """Sampling test of Definition-style polynomiality of degree d.

    For each trial set {v_1..v_n} the map (l_1..l_n) -> f(sum l_i v_i) is
    interpolated on the grid {0..d}^n and compared with direct evaluation at
    off-grid rational points with mixed signs.  Returns the first witness of
    a mismatch, or consistency.  This can refute polynomiality, never prove
    it.
    """
    nodes = [Fraction(k) for k in range(d + 1)]
    for ti, vs in enumerate(trial_sets):
        vs = [tuple(frac(x) for x in v) for v in vs]
        nvars = len(vs)
        grid = {}
        for lam in product(range(d + 1), repeat=nvars):
            point = tuple(Fraction(0) for _ in range(f.source_dim))
            for li, v in zip(lam, vs):
                point = _vec_add(point, _vec_scale(v, Fraction(li)))
            grid[lam] = f(point)

        def interp(mu):
            acc = tuple(Fraction(0) for _ in range(f.target_dim))
            for lam, val in grid.items():
                w = Fraction(1)
                for x, j in zip(mu, lam):
                    w *= _lagrange_weight(nodes, j, x)
                if w:
                    acc = _vec_add(acc, _vec_scale(val, w))
            return acc

        pts = checkpoints if checkpoints is not None else [
            pat[:nvars] if len(pat) >= nvars else pat + (Fraction(1, 2),) * (nvars - len(pat))
            for pat in DEFAULT_CHECKPOINT_PATTERNS]
        for mu in pts:
            mu = tuple(frac(x) for x in mu)[:nvars]
            point = tuple(Fraction(0) for _ in range(f.source_dim))
            for x, v in zip(mu, vs):
                point = _vec_add(point, _vec_scale(v, x))
            expected = f(point)
            got = interp(mu)
            if expected != got:
                return PolynomialVerdict(False, (ti, mu, expected, got))
    return PolynomialVerdict(True)


# -- concrete polynomial functors --------------------------------------


@dataclass(frozen=True)
class FunctorSpec:
    kind: str  # "sym" | "ext" | "ten"
    degree: int

    def __post_init__(self):
        if self.kind not in ("sym", "ext", "ten"):
            raise ValueError(f"unknown functor kind {self.kind!r}")
        if self.degree < 1:
            raise ValueError("functors here are reduced: degree must be >= 1")


def functor_basis(spec: FunctorSpec, n: int):
    """Monomial basis of F(R^n) as index tuples."""
    if spec.kind == "sym":
        return list(combinations_with_replacement(range(n), spec.degree))
    if spec.kind == "ext":
        return list(combinations(range(n), spec.degree))
    return list(product(range(n), repeat=spec.degree))


def functor_dim(spec: FunctorSpec, n: int) -> int:
    return len(functor_basis(spec, n))


def _canonical(spec: FunctorSpec, idx):
    """Canonical form of an index tuple with sign; None if it collapses."""
    if spec.kind == "ten":
        return idx, 1
    if spec.kind == "sym":
        return tuple(sorted(idx)), 1
    if len(set(idx)) != len(idx):
        return None
    order = sorted(range(len(idx)), key=lambda t: idx[t])
    sign = 1
    seen = list(idx)
    # count inversions
    for a in range(len(idx)):
        for b in range(a + 1, len(idx)):
            if seen[a] > seen[b]:
                sign = -sign
    return tuple(sorted(idx)), sign


def apply_functor_matrix(spec: FunctorSpec, matrix, vector, n_in, n_out):
    """F(A) applied to a coordinate vector over functor_basis(spec, n_in).

    ``matrix`` is n_out x n_in; returns coordinates over functor_basis(spec, n_out).
    """
    basis_in = functor_basis(spec, n_in)
    index_out = {b: i for i, b in enumerate(functor_basis(spec, n_out))}
    out = {}
    for coord, b in zip(vector, basis_in):
        if not coord:
            continue
        # multilinear expansion of (A e_{b_1}) ... (A e_{b_d})
        factor_images = []
        for idx in b:
            img = [(r, matrix[r][idx]) for r in range(n_out) if matrix[r][idx]]
            factor_images.append(img)
        for choice in product(*factor_images):
            idxs = tuple(r for r, _ in choice)
            coeff = coord
            for _, v in choice:
                coeff *= v
            canon = _canonical(spec, idxs)
            if canon is None:
                continue
            key, sign = canon
            i = index_out[key]
            v = out.get(i, Fraction(0)) + sign * coeff
            if v:
                out[i] = v
            else:
                out.pop(i, None)
    return out


@dataclass(frozen=True)
class InjectivityReport:
    injective: bool
    rank: int
    dim: int
    copies: int
    base_dim: int


def restriction_injectivity(spec: FunctorSpec, copies: int, base_dim: int) -> InjectivityReport:
    """Check that the stacked restrictions F(eps_I), |I| = degree, are jointly
    injective on F(V^copies).  Requires copies > degree."""
    d = spec.degree
    if copies <= d:
        raise ValueError("the hypothesis requires copies > degree")
    N = copies * base_dim
    basis = functor_basis(spec, N)
    dim = len(basis)

    def block(i):  # block of coordinate i in {0..copies-1}
        return i // base_dim

    rows_by_key: dict[tuple, dict[int, Fraction]] = {}
    for I in combinations(range(copies), d):
        Iset = set(I)
        # F(eps_I) is diagonal on the monomial basis: keep monomials whose
        # blocks all lie in I
        for j, b in enumerate(basis):
            if all(block(i) in Iset for i in b):
                rows_by_key.setdefault((I, b), {})[j] = Fraction(1)
    rows = list(rows_by_key.values())
    rk = linalg.rank(rows)
    return InjectivityReport(rk == dim, rk, dim, copies, base_dim)


# -- black boxes from explicit polynomials ------------------------------


def poly_black_box(polys, source_dim) -> BlackBoxMap:
    """BlackBoxMap evaluating explicit sparse polynomials (Poly dicts)."""
    polys = [dict(p) for p in polys]

    def ev(v):
        out = []
        for p in polys:
            total = Fraction(0)
            for e, c in p.items():
                val = c
                for x, k in zip(v, e):
                    for _ in range(k):
                        val *= x
                total += val
            out.append(total)
        return tuple(out)

    return BlackBoxMap(source_dim, len(polys), ev)


def sym_square_box(base_dim: int) -> BlackBoxMap:
    """The set-theoretic transformation Sym^2 V -> Sym^4 V, x -> x*x."""
    sym2 = functor_basis(FunctorSpec("sym", 2), base_dim)
    sym4_index = {b: i for i, b in enumerate(functor_basis(FunctorSpec("sym", 4), base_dim))}

    def ev(v):
        out = [Fraction(0)] * len(sym4_index)
        for c1, b1 in zip(v, sym2):
            for c2, b2 in zip(v, sym2):
                if c1 and c2:
                    out[sym4_index[tuple(sorted(b1 + b2))]] += c1 * c2
        return tuple(out)

    return BlackBoxMap(len(sym2), len(sym4_index), ev)
