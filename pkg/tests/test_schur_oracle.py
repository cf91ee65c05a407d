import pytest

from weil.schur_oracle import (EquivHomProblem, Factor, ResourceCapError,
                               antisymmetrization_problem,
                               equivariant_hom_dim,
                               verify_bidegree)


def test_antisymmetrization_is_the_only_map():
    # Hom(Tensor^N W*, Lambda^q W*) at dim W = 3: one-dimensional iff N = q
    for N in range(4):
        for q in range(4):
            dim = equivariant_hom_dim(antisymmetrization_problem(N, q, 3))
            assert dim == (1 if N == q else 0), (N, q)


def test_bidegree_1_1_dimV_2():
    r = verify_bidegree(1, 1, 2)
    assert r.dim_w == 3 and r.expected == 4 and r.computed == 4 and r.match


def test_bidegree_examples():
    assert verify_bidegree(1, 0, 1).computed == 1
    assert verify_bidegree(0, 1, 1).computed == 1
    assert verify_bidegree(2, 0, 2).computed == 1


def test_all_desk_scale_bidegrees():
    for dim_v in (1, 2):
        for p in range(5):
            for q in range(3):
                if p + 2 * q <= 4:
                    assert verify_bidegree(p, q, dim_v).match, (p, q, dim_v)


def test_scaling_selection_rule():
    # W*-weight of the domain different from r forces dimension zero
    mismatched = (
        EquivHomProblem(3, 0, (Factor("ten", 1, "W"),), 2),
        EquivHomProblem(3, 2, (Factor("sym", 2, "WV"),), 3),
        EquivHomProblem(3, 0, (Factor("ten", 3, "W"),), 1),
    )
    for prob in mismatched:
        assert prob.total_w_weight() != prob.codomain_degree
        assert equivariant_hom_dim(prob) == 0


def test_stability_in_dim_w():
    # the antisymmetrization dimensions are unchanged as dim W grows from q to q + 2
    for q in range(1, 4):
        for N in range(4):
            dims = {w: equivariant_hom_dim(antisymmetrization_problem(N, q, w))
                    for w in (q, q + 1, q + 2)}
            assert len(set(dims.values())) == 1, (N, q, dims)


def test_trivial_problem_dim_w_zero():
    assert verify_bidegree(0, 0, 2).computed == 1


def test_resource_cap():
    big = EquivHomProblem(5, 0, (Factor("ten", 7, "W"),), 5)
    with pytest.raises(ResourceCapError):
        equivariant_hom_dim(big)


def test_factor_validation():
    with pytest.raises(ValueError):
        Factor("bad", 1, "W")
    with pytest.raises(ValueError):
        Factor("sym", -1, "W")
    with pytest.raises(ValueError):
        Factor("sym", 1, "X")


def test_mixed_factor_problem():
    # Hom(W* (x) W*, Lambda^2 W*) via two tensor factors matches the antisymmetrization table
    prob = EquivHomProblem(3, 0, (Factor("ten", 1, "W"), Factor("ten", 1, "W")), 2)
    assert equivariant_hom_dim(prob) == 1
    # and with a Lambda^2 W* domain factor the identity map shows up
    prob2 = EquivHomProblem(3, 0, (Factor("ten", 1, "L2W"),), 2)
    assert equivariant_hom_dim(prob2) == 1
