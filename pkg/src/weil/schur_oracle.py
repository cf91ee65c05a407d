"""Brute-force dimensions of GL(W)-equivariant linear map spaces.

A problem is Hom(D, Lambda^r W*) where D is a tensor product of Sym/Lambda/
Tensor factors built on W*, W* (x) V, Lambda^2 W*, or Lambda^2 W* (x) V.
GL(W)-equivariance is realized as gl(W)-equivariance (covering the identity
component) plus equivariance under one orientation-reversing reflection
(covering the other component).

Everything is enumerated over monomial bases.  Monomials are weight vectors
for the diagonal gl(W) generators, so the diagonal constraints prune the
unknowns to weight-matched pairs; the reflection acts diagonally with signs
determined by the same weights, so it is checked per unknown; the
off-diagonal generators contribute sparse linear constraints whose kernel is
computed exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, combinations_with_replacement, product
from math import comb

from . import linalg


class ResourceCapError(ValueError):
    """Raised when a problem is too large to enumerate."""


BASES = ("W", "WV", "L2W", "L2WV")


@dataclass(frozen=True)
class Factor:
    op: str      # "sym" | "ext" | "ten"
    degree: int  # >= 0; degree 0 is the scalar factor
    base: str    # one of BASES

    def __post_init__(self):
        if self.op not in ("sym", "ext", "ten"):
            raise ValueError(f"unknown factor op {self.op!r}")
        if self.degree < 0:
            raise ValueError("factor degree must be >= 0")
        if self.base not in BASES:
            raise ValueError(f"unknown base space {self.base!r}")

    @property
    def w_weight(self):
        return 2 if self.base.startswith("L2") else 1


@dataclass(frozen=True)
class EquivHomProblem:
    dim_w: int
    dim_v: int
    domain: tuple  # tuple[Factor, ...]
    codomain_degree: int  # r in Lambda^r W*

    def total_w_weight(self):
        return sum(f.degree * f.w_weight for f in self.domain)


# -- base spaces -------------------------------------------------------


def base_elements(base, dim_w, dim_v):
    """Monomial basis, every element encoded as a tuple (uniformly orderable)."""
    if base == "W":
        return [(i,) for i in range(dim_w)]
    if base == "WV":
        return [(i, a) for i in range(dim_w) for a in range(dim_v)]
    if base == "L2W":
        return [(i, j) for i, j in combinations(range(dim_w), 2)]
    return [(i, j, a) for i, j in combinations(range(dim_w), 2) for a in range(dim_v)]


def base_weight(base, elem, dim_w):
    w = [0] * dim_w
    if base in ("W", "WV"):
        w[elem[0]] += 1
    else:
        w[elem[0]] += 1
        w[elem[1]] += 1
    return tuple(w)


def base_action(base, a, b, elem):
    """E_ab acting on a base monomial (w*_a -> -w*_b); list of (elem, coeff)."""
    out = []
    if base == "W":
        if elem[0] == a:
            out.append(((b,), Fraction(-1)))
    elif base == "WV":
        if elem[0] == a:
            out.append(((b, elem[1]), Fraction(-1)))
    else:
        i, j = elem[0], elem[1]
        tail = elem[2:]
        if i == a:
            c = _wedge2(b, j)
            if c:
                out.append((c[0] + tail, -c[1]))
        if j == a:
            c = _wedge2(i, b)
            if c:
                out.append((c[0] + tail, -c[1]))
    return out


def _wedge2(x, y):
    if x == y:
        return None
    return ((x, y), Fraction(1)) if x < y else ((y, x), Fraction(-1))


def base_reflection_sign(base, elem):
    """Sign of diag(-1, 1, ..., 1) acting on the monomial."""
    if base in ("W", "WV"):
        return -1 if elem[0] == 0 else 1
    s = 1
    if elem[0] == 0:
        s = -s
    if elem[1] == 0:
        s = -s
    return s


# -- factor and domain bases -------------------------------------------


def factor_elements(factor: Factor, dim_w, dim_v):
    elems = base_elements(factor.base, dim_w, dim_v)
    if factor.op == "sym":
        return list(combinations_with_replacement(elems, factor.degree))
    if factor.op == "ext":
        return list(combinations(elems, factor.degree))
    return list(product(elems, repeat=factor.degree))


def _canonical_factor(factor: Factor, slots):
    if factor.op == "ten":
        return tuple(slots), 1
    if factor.op == "sym":
        return tuple(sorted(slots)), 1
    if len(set(slots)) != len(slots):
        return None
    sign = 1
    lst = list(slots)
    for i in range(len(lst)):
        for j in range(i + 1, len(lst)):
            if lst[i] > lst[j]:
                sign = -sign
    return tuple(sorted(lst)), sign


def factor_action(factor: Factor, a, b, elem, dim_w, dim_v):
    """Derivation action of E_ab across the slots of one factor monomial."""
    out = {}
    for t, slot in enumerate(elem):
        for img, coeff in base_action(factor.base, a, b, slot):
            slots = list(elem)
            slots[t] = img
            canon = _canonical_factor(factor, slots)
            if canon is None:
                continue
            key, sign = canon
            v = out.get(key, Fraction(0)) + sign * coeff
            if v:
                out[key] = v
            else:
                out.pop(key, None)
    return list(out.items())


def domain_basis(problem: EquivHomProblem):
    per_factor = [factor_elements(f, problem.dim_w, problem.dim_v) for f in problem.domain]
    return [tuple(ch) for ch in product(*per_factor)]


def domain_weight(problem: EquivHomProblem, elem):
    w = [0] * problem.dim_w
    for f, part in zip(problem.domain, elem):
        for slot in part:
            for idx, cnt in enumerate(base_weight(f.base, slot, problem.dim_w)):
                w[idx] += cnt
    return tuple(w)


def domain_action(problem: EquivHomProblem, a, b, elem):
    out = {}
    for t, (f, part) in enumerate(zip(problem.domain, elem)):
        for img, coeff in factor_action(f, a, b, part, problem.dim_w, problem.dim_v):
            new = list(elem)
            new[t] = img
            key = tuple(new)
            v = out.get(key, Fraction(0)) + coeff
            if v:
                out[key] = v
            else:
                out.pop(key, None)
    return list(out.items())


def domain_reflection_sign(problem: EquivHomProblem, elem):
    s = 1
    for f, part in zip(problem.domain, elem):
        for slot in part:
            s *= base_reflection_sign(f.base, slot)
    return s


def codomain_basis(problem: EquivHomProblem):
    return list(combinations(range(problem.dim_w), problem.codomain_degree))


def codomain_weight(problem: EquivHomProblem, elem):
    w = [0] * problem.dim_w
    for i in elem:
        w[i] += 1
    return tuple(w)


def codomain_action(a, b, elem):
    out = {}
    for t, i in enumerate(elem):
        if i != a:
            continue
        slots = list(elem)
        slots[t] = b
        if len(set(slots)) != len(slots):
            continue
        sign = Fraction(-1)  # from w*_a -> -w*_b
        lst = list(slots)
        for x in range(len(lst)):
            for y in range(x + 1, len(lst)):
                if lst[x] > lst[y]:
                    sign = -sign
        key = tuple(sorted(slots))
        v = out.get(key, Fraction(0)) + sign
        if v:
            out[key] = v
        else:
            out.pop(key, None)
    return list(out.items())


def codomain_reflection_sign(elem):
    return -1 if 0 in elem else 1


# -- the solver --------------------------------------------------------


DEFAULT_CAP = 20000


def equivariant_hom_dim(problem: EquivHomProblem, cap=DEFAULT_CAP) -> int:
    """Exact dimension of the GL(W)-equivariant maps D -> Lambda^r W*."""
    dom = domain_basis(problem)
    cod = codomain_basis(problem)
    if len(dom) * max(len(cod), 1) > cap:
        raise ResourceCapError(
            f"problem needs {len(dom)} x {len(cod)} unknowns, over the cap {cap}")
    dom_index = {v: i for i, v in enumerate(dom)}
    cod_index = {c: i for i, c in enumerate(cod)}

    # diagonal gl(W) generators force weight matching (monomials are weight
    # vectors); the reflection also acts diagonally, and a sign mismatch
    # forces the entry to zero (with exact weight matching it never does)
    cod_by_weight: dict[tuple, list[int]] = {}
    for ci, c in enumerate(cod):
        cod_by_weight.setdefault(codomain_weight(problem, c), []).append(ci)

    unknowns: dict[tuple[int, int], int] = {}
    cands: dict[int, list[int]] = {}  # vi -> matching codomain indices
    vis_by_ci: dict[int, list[int]] = {}
    for vi, v in enumerate(dom):
        matched = []
        sv = domain_reflection_sign(problem, v)
        for ci in cod_by_weight.get(domain_weight(problem, v), ()):
            if sv != codomain_reflection_sign(cod[ci]):
                continue
            unknowns[(vi, ci)] = len(unknowns)
            matched.append(ci)
            vis_by_ci.setdefault(ci, []).append(vi)
        if matched:
            cands[vi] = matched
    if not unknowns:
        return 0

    rows_by_key: dict[tuple, dict[int, Fraction]] = {}

    def add(a, b, vi, ci, k, coeff):
        row = rows_by_key.setdefault((a, b, vi, ci), {})
        v = row.get(k, Fraction(0)) + coeff
        if v:
            row[k] = v
        else:
            row.pop(k, None)

    for a in range(problem.dim_w):
        for b in range(problem.dim_w):
            if a == b:
                continue
            # row (vi, ci): [T(E_ab v)]_ci - [E_ab T(v)]_ci = 0
            for vi, v in enumerate(dom):
                for img, coeff in domain_action(problem, a, b, v):
                    v2 = dom_index[img]
                    for ci in cands.get(v2, ()):
                        add(a, b, vi, ci, unknowns[(v2, ci)], coeff)
            for ci, c in enumerate(cod):
                vis = vis_by_ci.get(ci)
                if not vis:
                    continue
                for img, coeff in codomain_action(a, b, c):
                    c2 = cod_index[img]
                    for vi in vis:
                        add(a, b, vi, c2, unknowns[(vi, ci)], -coeff)

    rows = [r for r in rows_by_key.values() if r]
    return len(unknowns) - linalg.rank(rows)


@dataclass(frozen=True)
class BidegreeReport:
    p: int
    q: int
    dim_v: int
    dim_w: int
    expected: int
    computed: int
    match: bool


def bidegree_problem(p, q, dim_v) -> EquivHomProblem:
    """A^{p,q}(W) with the proof's choice dim W = p + 2q."""
    dim_w = p + 2 * q
    domain = (Factor("sym", p, "WV"), Factor("sym", q, "L2WV"))
    return EquivHomProblem(dim_w=dim_w, dim_v=dim_v, domain=domain,
                           codomain_degree=p + 2 * q)


def verify_bidegree(p, q, dim_v, cap=DEFAULT_CAP) -> BidegreeReport:
    """Compare dim A^{p,q}(W) with dim Lambda^p V* (x) Sym^q V*."""
    if p < 0 or q < 0:
        raise ValueError("bidegrees must be nonnegative")
    problem = bidegree_problem(p, q, dim_v)
    computed = equivariant_hom_dim(problem, cap=cap)
    expected = comb(dim_v, p) * comb(dim_v + q - 1, q)
    return BidegreeReport(p, q, dim_v, problem.dim_w, expected, computed,
                          expected == computed)


def antisymmetrization_problem(N, q, dim_w) -> EquivHomProblem:
    """Hom_GL(W)(Tensor^N W*, Lambda^q W*); nonzero only for N = q, where the
    antisymmetrization map spans it."""
    return EquivHomProblem(dim_w=dim_w, dim_v=0,
                           domain=(Factor("ten", N, "W"),), codomain_degree=q)
