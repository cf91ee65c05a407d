import random
from fractions import Fraction

import pytest

from weil.polyfunctor import (BlackBoxMap, FunctorSpec, apply_functor_matrix,
                              functor_basis, functor_dim,
                              homogeneous_component, homogeneous_decompose,
                              is_polynomial, poly_black_box,
                              restriction_injectivity, sym_square_box)


def F(a, b=1):
    return Fraction(a, b)


def test_decompose_x_plus_xy():
    f = poly_black_box([{(1, 0): F(1), (1, 1): F(1)}], 2)
    probes = [(F(1), F(2)), (F(-3), F(5)), (F(2), F(-7))]
    dec = homogeneous_decompose(f, 2, probes)
    for pi, (x, y) in enumerate(probes):
        assert dec.components[0][pi] == (F(0),)
        assert dec.components[1][pi] == (x,)
        assert dec.components[2][pi] == (x * y,)


def test_decompose_already_homogeneous():
    # f(M) = M*M on 2x2 matrices, coordinates (a,b,c,d) row-major
    def ev(v):
        a, b, c, d = v
        return (a * a + b * c, a * b + b * d, c * a + d * c, c * b + d * d)

    f = BlackBoxMap(4, 4, ev)
    probes = [(F(1), F(2), F(3), F(4)), (F(0), F(1), F(-1), F(2))]
    dec = homogeneous_decompose(f, 2, probes)
    for pi, p in enumerate(probes):
        assert dec.components[0][pi] == (F(0),) * 4
        assert dec.components[1][pi] == (F(0),) * 4
        assert dec.components[2][pi] == f(p)


def test_decompose_zero_map():
    f = poly_black_box([{}], 3)
    dec = homogeneous_decompose(f, 3, [(F(1), F(2), F(3))])
    assert all(comp[0] == (F(0),) for comp in dec.components)


def test_decompose_reconstruction_is_exact():
    rng = random.Random(83)
    for _ in range(10):
        src, dst = rng.randint(1, 3), rng.randint(1, 2)
        polys = []
        for _ in range(dst):
            p = {}
            for _ in range(3):
                e = tuple(rng.randint(0, 2) for _ in range(src))
                if sum(e) <= 3:
                    p[e] = p.get(e, F(0)) + F(rng.randint(-3, 3), rng.choice((1, 2)))
            polys.append({k: v for k, v in p.items() if v})
        f = poly_black_box(polys, src)
        probes = [tuple(F(rng.randint(-4, 4)) for _ in range(src)) for _ in range(3)]
        dec = homogeneous_decompose(f, 3, probes)
        for pi, v in enumerate(probes):
            total = tuple(sum(comp[pi][t] for comp in dec.components)
                          for t in range(dst))
            assert total == f(v)


def test_decompose_flags_ray_degree_overflow():
    # x^4 against degree bound 2: the aliased components fail the mu-scaling
    # verification.  (|x| is NOT catchable here: the probe scalings are all
    # positive, which is exactly why is_polynomial uses mixed-sign trials.)
    f = poly_black_box([{(4,): F(1)}], 1)
    with pytest.raises(ValueError):
        homogeneous_decompose(f, 2, [(F(1),)])


def test_idempotent_concentration():
    rng = random.Random(89)
    f = poly_black_box([{(1, 0): F(2), (0, 2): F(3), (2, 1): F(-1)}], 2)
    for i in range(4):
        ei = homogeneous_component(f, i, 3)
        probes = [tuple(F(rng.randint(-3, 3)) for _ in range(2)) for _ in range(3)]
        dec = homogeneous_decompose(ei, 3, probes)
        for j in range(4):
            for pi in range(len(probes)):
                if j != i:
                    assert dec.components[j][pi] == (F(0),)
                else:
                    assert dec.components[j][pi] == ei(probes[pi])


def test_is_polynomial_examples():
    assert is_polynomial(poly_black_box([{(3,): F(1)}], 1), 3,
                         [[(F(1),)], [(F(-2),)]]).consistent
    fabs = BlackBoxMap(1, 1, lambda v: (abs(v[0]),))
    verdict = is_polynomial(fabs, 2, [[(F(1),), (F(-1),)]])
    assert not verdict.consistent
    ti, point, expected, got = verdict.witness
    assert expected != got
    assert is_polynomial(poly_black_box([{(2, 1): F(1)}], 2), 3,
                         [[(F(1), F(0)), (F(0), F(1))]]).consistent


def test_is_polynomial_underestimated_degree_is_flagged():
    f = poly_black_box([{(4,): F(1)}], 1)
    assert not is_polynomial(f, 3, [[(F(1),)]]).consistent


def test_restriction_injectivity_examples():
    r = restriction_injectivity(FunctorSpec("sym", 2), 3, 1)
    assert r.injective and r.dim == 6 and r.rank == 6
    r = restriction_injectivity(FunctorSpec("ext", 2), 3, 1)
    assert r.injective and r.dim == 3
    r = restriction_injectivity(FunctorSpec("ten", 1), 2, 2)
    assert r.injective and r.dim == 4


def test_restriction_injectivity_precondition():
    with pytest.raises(ValueError):
        restriction_injectivity(FunctorSpec("sym", 2), 2, 1)


def test_functor_spec_validation():
    with pytest.raises(ValueError):
        FunctorSpec("sym", 0)
    with pytest.raises(ValueError):
        FunctorSpec("weird", 2)


def test_functor_dims():
    assert functor_dim(FunctorSpec("sym", 2), 3) == 6
    assert functor_dim(FunctorSpec("ext", 2), 4) == 6
    assert functor_dim(FunctorSpec("ten", 3), 2) == 8


def test_functoriality_of_matrix_action():
    rng = random.Random(97)
    spec = FunctorSpec("ext", 2)
    n = 3
    dim = functor_dim(spec, n)
    for _ in range(5):
        A = [[F(rng.randint(-2, 2)) for _ in range(n)] for _ in range(n)]
        B = [[F(rng.randint(-2, 2)) for _ in range(n)] for _ in range(n)]
        AB = [[sum(A[i][k] * B[k][j] for k in range(n)) for j in range(n)]
              for i in range(n)]
        vec = [F(rng.randint(-2, 2)) for _ in range(dim)]
        via_b = apply_functor_matrix(spec, B, vec, n, n)
        vb = [via_b.get(i, F(0)) for i in range(dim)]
        lhs = apply_functor_matrix(spec, A, vb, n, n)
        rhs = apply_functor_matrix(spec, AB, vec, n, n)
        assert lhs == rhs


def test_sym_square_transformation_is_polynomial_of_degree_2():
    for base_dim in (1, 2):
        box = sym_square_box(base_dim)
        trials = []
        basis = functor_basis(FunctorSpec("sym", 2), base_dim)
        units = [tuple(F(1 if i == j else 0) for i in range(len(basis)))
                 for j in range(min(len(basis), 2))]
        trials.append(units)
        trials.append([tuple(F(-x) for x in units[0]), units[0]])
        assert is_polynomial(box, 2, trials).consistent
