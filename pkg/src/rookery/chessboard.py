"""Rook-placement complexes, their cyclic symmetries, and the row projection.

The complex on an m x n board has one vertex per cell (i, j) (1-based labels,
row-major ids) and a simplex for every set of cells with pairwise distinct
rows and columns, i.e. every placement of non-attacking rooks.  Facets have
min(m, n) cells.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .errors import ParameterError
from .simplicial import SimplicialComplex, Simplex, join, simplex_skeleton

__all__ = [
    "chessboard_complex", "cell_id", "PermutationAction", "SimplicialMap",
    "cyclic_row_action", "row_permutation_action", "row_permutation_map",
    "cyclic_shift_action", "is_free_action", "FreenessReport",
    "canonical_projection", "join_maps", "join_actions",
    "connectivity_bound", "RepresentationSphereModel", "representation_sphere",
    "compose_vertex_maps",
]


def cell_id(i: int, j: int, n: int) -> int:
    """Vertex id of cell (i, j), 1-based, on a board with n columns."""
    return (i - 1) * n + (j - 1)


def chessboard_complex(m: int, n: int) -> SimplicialComplex:
    """Complex of non-attacking rook placements on an m x n board."""
    if m < 1 or n < 1:
        raise ParameterError(f"board sides must be positive, got {m}x{n}")
    k = min(m, n)
    labels = [(i, j) for i in range(1, m + 1) for j in range(1, n + 1)]
    facets = []
    for rows in itertools.combinations(range(1, m + 1), k):
        for cols in itertools.permutations(range(1, n + 1), k):
            facets.append(tuple(sorted(cell_id(i, j, n) for i, j in zip(rows, cols))))
    return SimplicialComplex(facets, m * n, labels=labels, name=f"rooks({m},{n})")


# -- group actions -----------------------------------------------------------


@dataclass(frozen=True)
class PermutationAction:
    """Cyclic group of simplicial automorphisms, given by one generator.

    ``order`` must be the exact order of the generator; the constructor
    verifies both the automorphism property (facets map to facets) and the
    order.
    """

    complex: SimplicialComplex
    generator: tuple[int, ...]
    order: int

    def __post_init__(self):
        K = self.complex
        gen = self.generator
        if len(gen) != K.vertex_count or sorted(gen) != list(range(K.vertex_count)):
            raise ParameterError("generator is not a permutation of the vertex set")
        for f in K.facets:
            if not K.is_facet(tuple(sorted(gen[v] for v in f))):
                raise ParameterError(f"generator does not preserve facet {f}")
        powers = [tuple(range(K.vertex_count))]
        current = gen
        while current != powers[0]:
            powers.append(current)
            current = tuple(gen[v] for v in current)
            if len(powers) > K.vertex_count + 1:
                raise ParameterError("generator order exceeds vertex count")
        if len(powers) != self.order:
            raise ParameterError(
                f"declared order {self.order} but exact order is {len(powers)}")
        object.__setattr__(self, "_powers", tuple(powers))

    def power(self, t: int) -> tuple[int, ...]:
        """Vertex map of generator^t."""
        return self._powers[t % self.order]

    def vertex_orbits(self) -> list[tuple[int, ...]]:
        """Orbits of the vertex set, each listed from its smallest member."""
        seen = set()
        orbits = []
        for v in range(self.complex.vertex_count):
            if v in seen:
                continue
            orbit = []
            w = v
            while w not in seen:
                seen.add(w)
                orbit.append(w)
                w = self.generator[w]
            orbits.append(tuple(orbit))
        return orbits


def row_permutation_map(m: int, n: int, row_images) -> tuple[int, ...]:
    """Vertex map of the board symmetry (i, j) -> (row_images[i-1], j).

    ``row_images`` lists 1-based image rows; columns are untouched.
    """
    if sorted(row_images) != list(range(1, m + 1)):
        raise ParameterError("row_images is not a permutation of 1..m")
    vm = [0] * (m * n)
    for i in range(1, m + 1):
        for j in range(1, n + 1):
            vm[cell_id(i, j, n)] = cell_id(row_images[i - 1], j, n)
    return tuple(vm)


def _perm_order(images) -> int:
    order = 1
    current = list(images)
    ident = list(range(len(current)))
    while current != ident:
        current = [images[v] for v in current]
        order += 1
    return order


def row_permutation_action(m: int, n: int, row_images) -> PermutationAction:
    K = chessboard_complex(m, n)
    vm = row_permutation_map(m, n, row_images)
    return PermutationAction(K, vm, _perm_order(vm))


def cyclic_row_action(m: int, n: int) -> PermutationAction:
    """Order-m action (i, j) -> (i+1 mod m, j) on the m x n rook complex."""
    return row_permutation_action(m, n, [i % m + 1 for i in range(1, m + 1)])


def cyclic_shift_action(K: SimplicialComplex) -> PermutationAction:
    """Action shifting every vertex id by one (mod V).

    Valid on complexes that are invariant under the shift, e.g. skeleta of a
    simplex; the constructor rejects anything else.
    """
    V = K.vertex_count
    gen = tuple((v + 1) % V for v in range(V))
    return PermutationAction(K, gen, V)


@dataclass(frozen=True)
class FreenessReport:
    free: bool
    witness: tuple[Simplex, int] | None = None  # (fixed simplex, power)


def is_free_action(K: SimplicialComplex, action: PermutationAction) -> FreenessReport:
    """Check that no nonidentity power fixes a simplex setwise.

    The check runs over every simplex of every dimension; on failure the
    witness names the fixed simplex and the offending power.
    """
    if not action.complex.same_structure(K):
        raise ParameterError("action is attached to a different complex")
    simplices = list(K.all_simplices())
    for t in range(1, action.order):
        vm = action.power(t)
        for s in simplices:
            if tuple(sorted(vm[v] for v in s)) == s:
                return FreenessReport(False, (s, t))
    return FreenessReport(True)


# -- simplicial maps ---------------------------------------------------------


@dataclass(frozen=True)
class SimplicialMap:
    """Vertex map whose simplex images (after dropping repeats) are simplices."""

    domain: SimplicialComplex
    codomain: SimplicialComplex
    vertex_map: tuple[int, ...]

    def __post_init__(self):
        if len(self.vertex_map) != self.domain.vertex_count:
            raise ParameterError("vertex map does not cover the domain")
        if any(not (0 <= w < self.codomain.vertex_count) for w in self.vertex_map):
            raise ParameterError("vertex map leaves the codomain vertex range")
        for f in self.domain.facets:
            image = tuple(sorted({self.vertex_map[v] for v in f}))
            if not self.codomain.has_simplex(image):
                raise ParameterError(
                    f"image {image} of facet {f} is not a simplex of the codomain")

    def image_simplex(self, s) -> Simplex:
        return tuple(sorted({self.vertex_map[v] for v in s}))


def compose_vertex_maps(outer, inner) -> tuple[int, ...]:
    return tuple(outer[v] for v in inner)


def is_equivariant(f: SimplicialMap, a_dom: PermutationAction,
                   a_cod: PermutationAction) -> bool:
    """Does f intertwine the two generators (f o g = g' o f on vertices)?"""
    lhs = compose_vertex_maps(f.vertex_map, a_dom.generator)
    rhs = compose_vertex_maps(a_cod.generator, f.vertex_map)
    return lhs == rhs


def canonical_projection(m: int, k: int) -> SimplicialMap:
    """Row projection from the m x k rook complex onto the (k-1)-skeleton of
    the (m-1)-simplex: cell (i, j) -> i.

    A rook placement has distinct rows, so images are genuine simplices; the
    map intertwines the cyclic row shift with the cyclic vertex shift.
    """
    if not 1 <= k <= m:
        raise ParameterError(f"need 1 <= k <= m, got m={m} k={k}")
    dom = chessboard_complex(m, k)
    cod = simplex_skeleton(m, k)
    vm = tuple(v // k for v in range(m * k))
    return SimplicialMap(dom, cod, vm)


def join_maps(f: SimplicialMap, g: SimplicialMap) -> SimplicialMap:
    """Join of two simplicial maps, acting factor-wise on the join complexes."""
    dom = join(f.domain, g.domain)
    cod = join(f.codomain, g.codomain)
    shift = f.codomain.vertex_count
    vm = tuple(f.vertex_map) + tuple(w + shift for w in g.vertex_map)
    return SimplicialMap(dom, cod, vm)


def join_actions(a: PermutationAction, b: PermutationAction) -> PermutationAction:
    """Diagonal action on the join of the two underlying complexes."""
    if a.order != b.order:
        raise ParameterError(f"action orders differ: {a.order} vs {b.order}")
    J = join(a.complex, b.complex)
    shift = a.complex.vertex_count
    gen = tuple(a.generator) + tuple(w + shift for w in b.generator)
    return PermutationAction(J, gen, a.order)


# -- connectivity and the sphere model ---------------------------------------


def connectivity_bound(s: int, t: int) -> int:
    """The bound nu with the s x t rook complex (nu-1)-connected:
    nu = min(s, t, floor((s+t+1)/3)) - 1."""
    if s < 1 or t < 1:
        raise ParameterError("board sides must be positive")
    return min(s, t, (s + t + 1) // 3) - 1


@dataclass(frozen=True)
class RepresentationSphereModel:
    """Simplicial model of the unit sphere of d copies of the standard
    (r-1)-dimensional cyclic permutation representation.

    The complex is the d-fold join of the boundary-sphere skeleton on r
    vertices; the cyclic group acts diagonally by shifting each factor.
    """

    base_r: int
    copies: int
    complex: SimplicialComplex
    action: PermutationAction

    def __post_init__(self):
        expected = self.copies * (self.base_r - 1) - 1
        if self.complex.dim != expected:
            raise ParameterError(
                f"sphere model has dimension {self.complex.dim}, expected {expected}")


def representation_sphere(r: int, d: int) -> RepresentationSphereModel:
    if r < 2 or d < 1:
        raise ParameterError(f"need r >= 2 and d >= 1, got r={r} d={d}")
    sphere = simplex_skeleton(r, r - 1)
    action = cyclic_shift_action(sphere)
    for _ in range(d - 1):
        action = join_actions(action, cyclic_shift_action(simplex_skeleton(r, r - 1)))
    return RepresentationSphereModel(r, d, action.complex, action)


def rook_count(m: int, n: int, k: int) -> int:
    """Closed-form number of k-rook placements: C(m,k) C(n,k) k!."""
    return math.comb(m, k) * math.comb(n, k) * math.factorial(k)
