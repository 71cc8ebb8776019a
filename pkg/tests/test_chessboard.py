import math

import pytest

from rookery import (ParameterError, canonical_projection, chessboard_complex,
                     connectivity_bound, cyclic_row_action, cyclic_shift_action,
                     is_equivariant, is_free_action, join_actions, join_maps,
                     representation_sphere, row_permutation_action,
                     simplex_skeleton)
from rookery.chessboard import PermutationAction, SimplicialMap, compose_vertex_maps

from oracles import convolve_f_vectors


def test_hexagon_structure():
    K = chessboard_complex(3, 2)
    assert K.f_vector() == (6, 6)
    degree = {v: 0 for v in range(6)}
    for e in K.facets:
        for v in e:
            degree[v] += 1
    assert set(degree.values()) == {2}


def test_two_rooks_one_column():
    K = chessboard_complex(2, 1)
    assert K.dim == 0
    assert K.labels == ((1, 1), (2, 1))


@pytest.mark.parametrize("r", [2, 3, 4, 5])
def test_facet_count_is_factorial(r):
    K = chessboard_complex(r, r - 1)
    assert len(K.facets) == math.factorial(r)


def test_simplices_have_distinct_rows_and_columns():
    K = chessboard_complex(3, 3)
    for s in K.all_simplices():
        cells = [K.vertex_label(v) for v in s]
        rows = [i for i, _ in cells]
        cols = [j for _, j in cells]
        assert len(set(rows)) == len(rows)
        assert len(set(cols)) == len(cols)


def test_cyclic_row_action_rotates_hexagon_by_two_edges():
    K = chessboard_complex(3, 2)
    action = cyclic_row_action(3, 2)
    # cyclic order of the 6-cycle from the edge adjacency
    adjacency = {v: [] for v in range(6)}
    for a, b in K.facets:
        adjacency[a].append(b)
        adjacency[b].append(a)
    order = [0, adjacency[0][0]]
    while len(order) < 6:
        nxt = next(w for w in adjacency[order[-1]] if w != order[-2])
        order.append(nxt)
    position = {v: i for i, v in enumerate(order)}
    for v in range(6):
        shift = (position[action.generator[v]] - position[v]) % 6
        assert shift in (2, 4)  # rotation by two edges in one of the two senses
    assert len({(position[action.generator[v]] - position[v]) % 6
                for v in range(6)}) == 1


def test_cyclic_row_action_has_exact_order():
    action = cyclic_row_action(5, 4)
    assert action.order == 5
    assert action.power(5) == tuple(range(20))
    assert action.power(0) == tuple(range(20))


def test_cyclic_row_action_preserves_facets():
    K = chessboard_complex(4, 3)
    action = cyclic_row_action(4, 3)
    for f in K.facets:
        image = tuple(sorted(action.generator[v] for v in f))
        assert K.is_facet(image)


def test_action_constructor_rejects_wrong_order():
    K = chessboard_complex(3, 2)
    gen = cyclic_row_action(3, 2).generator
    with pytest.raises(ParameterError):
        PermutationAction(K, gen, 6)


def test_action_constructor_rejects_non_automorphism():
    K = chessboard_complex(2, 2)
    # swapping one pair of vertices inside a row breaks rook facets
    gen = list(range(4))
    gen[0], gen[1] = gen[1], gen[0]
    with pytest.raises(ParameterError):
        PermutationAction(K, tuple(gen), 2)


@pytest.mark.parametrize("r", [2, 3, 5])
def test_cyclic_action_is_free_on_square_minus_column(r):
    K = chessboard_complex(r, r - 1)
    assert is_free_action(K, cyclic_row_action(r, r - 1)).free


def test_identity_action_is_vacuously_free():
    K = chessboard_complex(3, 2)
    ident = PermutationAction(K, tuple(range(6)), 1)
    assert is_free_action(K, ident).free


def test_fixed_vertex_action_is_not_free():
    # rotating a triangle boundary while keeping one vertex is impossible;
    # instead use the full symmetric swap on a 4-cycle which fixes an edge setwise
    from rookery import build_complex
    K = build_complex([[0, 1], [1, 2], [2, 3], [0, 3]])
    gen = (2, 3, 0, 1)  # antipodal swap: fixes no vertex, no edge
    assert is_free_action(K, PermutationAction(K, gen, 2)).free
    gen = (1, 0, 3, 2)  # reflection: edges {0,1} and {2,3} are setwise fixed
    report = is_free_action(K, PermutationAction(K, gen, 2))
    assert not report.free
    assert report.witness[0] in ((0, 1), (2, 3))


def test_free_action_witness_names_power_and_simplex():
    from rookery import build_complex
    K = build_complex([[0], [1], [2]])
    gen = (1, 0, 2)  # vertex 2 is fixed
    report = is_free_action(K, PermutationAction(K, gen, 2))
    assert report.witness == ((2,), 1)


def test_projection_hexagon_onto_triangle_boundary():
    xi = canonical_projection(3, 2)
    preimages = {f: 0 for f in xi.codomain.facets}
    for e in xi.domain.facets:
        preimages[xi.image_simplex(e)] += 1
    assert set(preimages.values()) == {2}


def test_projection_two_points_is_bijection():
    xi = canonical_projection(2, 1)
    assert sorted(xi.vertex_map) == [0, 1]


def test_projection_is_equivariant():
    xi = canonical_projection(5, 4)
    dom = cyclic_row_action(5, 4)
    cod = cyclic_shift_action(xi.codomain)
    assert is_equivariant(xi, dom, cod)
    lhs = compose_vertex_maps(xi.vertex_map, dom.generator)
    rhs = compose_vertex_maps(cod.generator, xi.vertex_map)
    assert lhs == rhs


@pytest.mark.parametrize("m,k", [(3, 2), (4, 2), (4, 3), (5, 1)])
def test_projection_preimage_counts(m, k):
    # each (p-1)-face of the target has k(k-1)...(k-p+1) rook preimages
    xi = canonical_projection(m, k)
    for p in range(1, min(m, k) + 1):
        for target in xi.codomain.simplices(p - 1):
            count = sum(1 for s in xi.domain.simplices(p - 1)
                        if xi.image_simplex(s) == target)
            expected = math.perm(k, p)
            assert count == expected


def test_join_maps_f_vector_and_restriction():
    xi = canonical_projection(3, 2)
    jj = join_maps(xi, xi)
    assert list(jj.domain.f_vector()) == convolve_f_vectors(
        xi.domain.f_vector(), xi.domain.f_vector())
    # restriction to each factor equals the factor map
    n = xi.domain.vertex_count
    assert jj.vertex_map[:n] == xi.vertex_map
    shift = xi.codomain.vertex_count
    assert tuple(w - shift for w in jj.vertex_map[n:]) == xi.vertex_map


def test_join_of_identities_is_identity():
    K = simplex_skeleton(3, 2)
    ident = SimplicialMap(K, K, tuple(range(3)))
    jj = join_maps(ident, ident)
    assert jj.vertex_map == tuple(range(6))


def test_join_actions_order():
    a = cyclic_row_action(3, 2)
    b = cyclic_shift_action(simplex_skeleton(3, 2))
    joined = join_actions(a, b)
    assert joined.order == 3
    with pytest.raises(ParameterError):
        join_actions(a, cyclic_shift_action(simplex_skeleton(2, 1)))


def test_row_permutation_action_orders():
    swap = row_permutation_action(4, 3, [2, 1, 3, 4])
    assert swap.order == 2
    cycle = row_permutation_action(4, 3, [2, 3, 4, 1])
    assert cycle.order == 4


@pytest.mark.parametrize("s,t,expected", [
    (3, 2, 1), (1, 1, 0),
    (2, 3, 1), (3, 5, 2), (5, 9, 4),  # (r, 2r-1) gives r-1
])
def test_connectivity_bound(s, t, expected):
    assert connectivity_bound(s, t) == expected


@pytest.mark.parametrize("r", [2, 3, 4, 5])
def test_connectivity_bound_for_tall_boards(r):
    assert connectivity_bound(r, 2 * r - 1) == r - 1


def test_representation_sphere_model():
    model = representation_sphere(3, 2)
    assert model.complex.dim == 2 * 2 - 1
    assert model.action.order == 3
    assert is_free_action(model.complex, model.action).free


@pytest.mark.parametrize("r,d", [(2, 1), (2, 3), (3, 1), (3, 2)])
def test_representation_sphere_has_sphere_homology(r, d):
    from rookery import reduced_homology
    model = representation_sphere(r, d)
    profile = reduced_homology(model.complex)
    top = d * (r - 1) - 1
    assert profile.betti == tuple(1 if q == top else 0 for q in range(top + 1))
    assert all(not t for t in profile.torsion)


def test_representation_sphere_rejects_trivial_parameters():
    with pytest.raises(ParameterError):
        representation_sphere(1, 1)
    with pytest.raises(ParameterError):
        representation_sphere(3, 0)
