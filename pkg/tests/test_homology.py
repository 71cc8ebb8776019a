import random

import pytest

from rookery import (IntegerMatrix, ParameterError, build_complex,
                     chessboard_complex, connectivity_bound,
                     connectivity_probe, homology, join, reduced_homology,
                     simplex_skeleton, smith_normal_form, boundary_matrix)

from oracles import det_bareiss


def test_snf_diagonal_matrix():
    result = smith_normal_form(IntegerMatrix(2, 2, [[2, 0], [0, 3]]))
    assert result.diagonal == (1, 6)
    assert result.rank == 2


def test_snf_zero_matrix():
    result = smith_normal_form(IntegerMatrix.zero(3, 2))
    assert result.diagonal == ()
    assert result.rank == 0


def test_snf_triangle_boundary():
    K = build_complex([[0, 1], [1, 2], [0, 2]])
    result = smith_normal_form(boundary_matrix(K, 1))
    assert result.diagonal == (1, 1)
    assert result.rank == 2


def test_snf_divisibility_chain():
    M = IntegerMatrix(3, 3, [[2, 4, 4], [-6, 6, 12], [10, 4, 16]])
    result = smith_normal_form(M)
    for a, b in zip(result.diagonal, result.diagonal[1:]):
        assert b % a == 0


def test_snf_transforms_are_unimodular():
    rng = random.Random(5)
    for _ in range(25):
        rows = rng.randint(1, 5)
        cols = rng.randint(1, 5)
        M = IntegerMatrix(rows, cols,
                          [[rng.randint(-9, 9) for _ in range(cols)]
                           for _ in range(rows)])
        result = smith_normal_form(M, transforms=True)
        # U M V = D is verified inside; re-check unimodularity independently
        assert abs(det_bareiss(result.U.entries)) == 1
        assert abs(det_bareiss(result.V.entries)) == 1
        product = result.U.matmul(M).matmul(result.V)
        for i in range(rows):
            for j in range(cols):
                expected = result.diagonal[i] if i == j and i < len(result.diagonal) else 0
                assert product.entries[i][j] == expected


def test_snf_agrees_with_sympy_on_random_matrices():
    sympy = pytest.importorskip("sympy")
    from sympy.matrices.normalforms import smith_normal_form as sympy_snf
    rng = random.Random(11)
    for _ in range(20):
        rows = rng.randint(1, 5)
        cols = rng.randint(1, 5)
        entries = [[rng.randint(-20, 20) for _ in range(cols)] for _ in range(rows)]
        mine = smith_normal_form(IntegerMatrix(rows, cols, entries)).diagonal
        theirs = sympy_snf(sympy.Matrix(entries))
        diag = tuple(abs(int(theirs[i, i])) for i in range(min(rows, cols))
                     if theirs[i, i] != 0)
        assert mine == diag


def test_homology_of_circle():
    profile = reduced_homology(chessboard_complex(3, 2))
    assert profile.betti == (0, 1)
    assert profile.torsion == ((), ())


def test_homology_of_rook_torus():
    profile = reduced_homology(chessboard_complex(4, 3))
    assert profile.betti == (0, 2, 1)
    assert all(not t for t in profile.torsion)


@pytest.mark.parametrize("r", [2, 3, 4, 5])
def test_homology_of_boundary_sphere(r):
    profile = reduced_homology(simplex_skeleton(r, r - 1))
    expected = tuple(1 if q == r - 2 else 0 for q in range(r - 1))
    assert profile.betti == expected


def test_homology_detects_torsion():
    # minimal 6-vertex triangulation of the real projective plane
    facets = [[0, 1, 2], [0, 1, 3], [0, 2, 4], [0, 3, 5], [0, 4, 5],
              [1, 2, 5], [1, 3, 4], [1, 4, 5], [2, 3, 4], [2, 3, 5]]
    K = build_complex(facets)
    profile = reduced_homology(K)
    assert profile.betti == (0, 0, 0)
    assert profile.torsion[0] == ()
    assert profile.torsion[1] == (2,)


def test_unreduced_homology_shifts_betti_zero():
    K = build_complex([[0], [1], [2]])
    assert reduced_homology(K).betti[0] == 2
    assert homology(K, reduced=False).betti[0] == 3


def test_euler_poincare_identity():
    for K in (chessboard_complex(4, 3), chessboard_complex(3, 4),
              simplex_skeleton(5, 4),
              join(simplex_skeleton(3, 2), simplex_skeleton(3, 2))):
        profile = homology(K, reduced=False)
        lhs = sum((-1) ** q * f for q, f in enumerate(K.f_vector()))
        rhs = sum((-1) ** q * b for q, b in enumerate(profile.betti))
        assert lhs == rhs


@pytest.mark.parametrize("s,t", [(2, 2), (2, 3), (3, 3), (3, 4), (3, 5),
                                 (4, 4), (2, 5), (4, 5)])
def test_rook_homology_vanishes_below_connectivity_bound(s, t):
    K = chessboard_complex(s, t)
    nu = connectivity_bound(s, t)
    profile = reduced_homology(K)
    for q in range(min(nu, K.dim + 1)):
        assert profile.group_trivial(q), (s, t, q, profile)


def test_connectivity_probe_values():
    assert connectivity_probe(chessboard_complex(3, 5), 2) >= 1
    assert connectivity_probe(chessboard_complex(2, 3), 1) == 0
    # two points are already disconnected
    assert connectivity_probe(build_complex([[0], [1]]), 0) == -1


def test_connectivity_probe_of_cone():
    cone = join(chessboard_complex(3, 2), build_complex([[0]]))
    assert connectivity_probe(cone, cone.dim) == cone.dim


def test_connectivity_probe_rejects_large_dimension():
    with pytest.raises(ParameterError):
        connectivity_probe(chessboard_complex(3, 2), 5)
