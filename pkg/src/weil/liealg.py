"""Finite-dimensional real Lie algebras given by structure constants.

The structure table stores f^k_{ij} with [e_i, e_j] = sum_k f^k_{ij} e_k
(all indices 0-based internally; the JSON interface is 1-based).  The
coadjoint convention is fixed once and for all as

    (ad*_xi l)(eta) = -l([xi, eta]),

which makes xi -> ad*_xi a Lie algebra homomorphism.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple


def frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True, eq=False)
class LieAlgebra:
    dim: int
    structure: dict = field(repr=False)  # (i, j, k) -> Fraction, sparse
    name: str | None = None

    def f(self, i, j, k) -> Fraction:
        return self.structure.get((i, j, k), Fraction(0))

    def bracket_basis(self, i, j) -> dict[int, Fraction]:
        """[e_i, e_j] as a sparse coordinate dict."""
        out = {}
        for (a, b, k), c in self.structure.items():
            if a == i and b == j:
                out[k] = c
        return out

    def bracket(self, xi, eta):
        """[xi, eta] for coordinate vectors."""
        if len(xi) != self.dim or len(eta) != self.dim:
            raise ValueError("vector dimension does not match algebra")
        out = [Fraction(0)] * self.dim
        for (i, j, k), c in self.structure.items():
            if xi[i] and eta[j]:
                out[k] += c * xi[i] * eta[j]
        return out

    def __eq__(self, other):
        if not isinstance(other, LieAlgebra):
            return NotImplemented
        return self.dim == other.dim and _clean(self.structure) == _clean(other.structure)


def _clean(table):
    return {key: frac(c) for key, c in table.items() if c}


def make_lie_algebra(dim, entries, name=None) -> LieAlgebra:
    """Build an algebra from entries {(i, j, k): c}; antisymmetry is NOT implied."""
    return LieAlgebra(dim=dim, structure=_clean({k: frac(c) for k, c in entries.items()}), name=name)


def from_brackets(dim, brackets, name=None) -> LieAlgebra:
    """Build from {(i, j): {k: c}} given only for i < j; fills f^k_{ji} = -f^k_{ij}."""
    table = {}
    for (i, j), img in brackets.items():
        if not i < j:
            raise ValueError("from_brackets expects i < j keys")
        for k, c in img.items():
            table[(i, j, k)] = frac(c)
            table[(j, i, k)] = -frac(c)
    return make_lie_algebra(dim, table, name)


class Violation(NamedTuple):
    kind: str  # "antisymmetry" | "jacobi"
    indices: tuple


def validate(L: LieAlgebra):
    """None if antisymmetry and Jacobi hold exactly, else the first Violation."""
    n = L.dim
    for i in range(n):
        for j in range(n):
            for k in range(n):
                if L.f(i, j, k) != -L.f(j, i, k):
                    return Violation("antisymmetry", (i, j, k))
    for i in range(n):
        for j in range(n):
            for k in range(n):
                for l in range(n):
                    s = Fraction(0)
                    for m in range(n):
                        s += (L.f(i, j, m) * L.f(m, k, l)
                              + L.f(j, k, m) * L.f(m, i, l)
                              + L.f(k, i, m) * L.f(m, j, l))
                    if s:
                        return Violation("jacobi", (i, j, k, l))
    return None


def coadjoint(L: LieAlgebra, xi):
    """Matrix M of ad*_xi on g* in the dual basis: (M c)_j = coords of ad*_xi(sum c_a l^a).

    M[j][a] = -sum_i xi^i f^a_{ij}, from (ad*_xi l^a)(e_j) = -l^a([xi, e_j]).
    """
    n = L.dim
    if len(xi) != n:
        raise ValueError("vector dimension does not match algebra")
    M = [[Fraction(0)] * n for _ in range(n)]
    for (i, j, a), c in L.structure.items():
        if xi[i]:
            M[j][a] -= frac(xi[i]) * c
    return M


def coadjoint_dual_basis(L: LieAlgebra, xi, a) -> dict[int, Fraction]:
    """ad*_xi l^a as a sparse coordinate dict over the dual basis."""
    n = L.dim
    if len(xi) != n:
        raise ValueError("vector dimension does not match algebra")
    out = {}
    for (i, j, aa), c in L.structure.items():
        if aa == a and xi[i]:
            v = out.get(j, Fraction(0)) - frac(xi[i]) * c
            if v:
                out[j] = v
            else:
                out.pop(j, None)
    return out


_EPS = {(0, 1, 2): 1, (1, 2, 0): 1, (2, 0, 1): 1,
        (0, 2, 1): -1, (2, 1, 0): -1, (1, 0, 2): -1}

_ABELIAN_RE = re.compile(r"^abelian\((\d+)\)$")


def builtin(name: str) -> LieAlgebra:
    """Built-in algebras: abelian(n), su2, so3, sl2, heisenberg3."""
    m = _ABELIAN_RE.match(name)
    if m:
        n = int(m.group(1))
        if n < 1:
            raise ValueError("abelian(n) needs n >= 1")
        return make_lie_algebra(n, {}, name=name)
    if name in ("su2", "so3"):
        table = {k: Fraction(v) for k, v in _EPS.items()}
        return make_lie_algebra(3, table, name=name)
    if name == "sl2":
        # basis (h, e, f): [h,e] = 2e, [h,f] = -2f, [e,f] = h
        return from_brackets(3, {(0, 1): {1: 2}, (0, 2): {2: -2}, (1, 2): {0: 1}}, name=name)
    if name == "heisenberg3":
        return from_brackets(3, {(0, 1): {2: 1}}, name=name)
    raise ValueError(f"unknown algebra name: {name!r}")


BUILTIN_NAMES = ("abelian(1)", "abelian(2)", "abelian(3)", "su2", "so3", "sl2", "heisenberg3")


def basis_vector(n, i):
    v = [Fraction(0)] * n
    v[i] = Fraction(1)
    return v
