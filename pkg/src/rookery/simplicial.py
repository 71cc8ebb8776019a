"""Finite abstract simplicial complexes with exact integer chain machinery.

A complex is stored by its maximal simplices (facets); lower-dimensional
simplices are enumerated on demand and cached.  Vertex ids are dense integers
0..V-1, each carrying an opaque label (a board cell, a join tag, an element of
a ground set).  All matrix and chain arithmetic uses Python integers, so every
result is exact.

Simplices are plain tuples of strictly increasing vertex ids; the empty tuple
is the unique (-1)-simplex of the reduced chain complex.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field

from .errors import MalformedInputError, ParameterError

Simplex = tuple[int, ...]


def as_simplex(vertices) -> Simplex:
    """Sort a vertex collection into a simplex, rejecting duplicates."""
    vs = tuple(sorted(vertices))
    for a, b in zip(vs, vs[1:]):
        if a == b:
            raise MalformedInputError(f"duplicate vertex {a} inside one simplex")
    return vs


def sort_with_sign(vertices) -> tuple[Simplex | None, int]:
    """Sort a vertex sequence, returning (simplex, permutation sign).

    Returns ``(None, 0)`` when the sequence has a repeated vertex, i.e. the
    corresponding chain term is degenerate.
    """
    seq = list(vertices)
    if len(set(seq)) != len(seq):
        return None, 0
    # O(k^2) inversion count; simplices here have at most a handful of vertices
    inv = 0
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                inv += 1
    return tuple(sorted(seq)), (-1) ** inv


class SimplicialComplex:
    """An abstract simplicial complex given by its facets.

    Instances are immutable after construction and safe to share read-only.
    The constructor trusts the caller to pass facets that are already sorted
    tuples, pairwise non-contained, and within vertex range; use
    :func:`build_complex` for unnormalized input.
    """

    def __init__(self, facets, vertex_count, labels=None, name=""):
        self.vertex_count = int(vertex_count)
        self.facets: tuple[Simplex, ...] = tuple(sorted(facets))
        self.name = name
        if labels is None:
            labels = tuple(range(self.vertex_count))
        self.labels = tuple(labels)
        if len(self.labels) != self.vertex_count:
            raise MalformedInputError(
                f"{len(self.labels)} labels for {self.vertex_count} vertices")
        if len(set(self.labels)) != len(self.labels):
            raise MalformedInputError("vertex labels are not unique")
        for f in self.facets:
            if not f:
                raise MalformedInputError("empty facet")
            if any(f[i] >= f[i + 1] for i in range(len(f) - 1)):
                raise MalformedInputError(f"facet {f} is not strictly increasing")
            if f[0] < 0 or f[-1] >= self.vertex_count:
                raise MalformedInputError(f"facet {f} out of vertex range")
        self._facet_set = frozenset(self.facets)
        self._label_index = {lab: i for i, lab in enumerate(self.labels)}
        self._skeleton: dict[int, tuple[Simplex, ...]] | None = None
        self._simplex_set: frozenset[Simplex] | None = None

    # -- basic queries -------------------------------------------------

    @property
    def dim(self) -> int:
        return max((len(f) for f in self.facets), default=0) - 1

    def is_facet(self, s: Simplex) -> bool:
        return tuple(s) in self._facet_set

    def same_structure(self, other: "SimplicialComplex") -> bool:
        """Combinatorially identical: same vertex count and facet set
        (labels and name may differ)."""
        return (self.vertex_count == other.vertex_count
                and self._facet_set == other._facet_set)

    def _ensure_skeleton(self):
        if self._skeleton is None:
            per_dim: dict[int, set[Simplex]] = {}
            for f in self.facets:
                for k in range(1, len(f) + 1):
                    per_dim.setdefault(k - 1, set()).update(
                        itertools.combinations(f, k))
            self._skeleton = {q: tuple(sorted(ss)) for q, ss in per_dim.items()}
            self._simplex_set = frozenset().union(*per_dim.values()) if per_dim else frozenset()
        return self._skeleton

    def simplices(self, q: int) -> tuple[Simplex, ...]:
        """All q-dimensional simplices, lexicographically sorted."""
        return self._ensure_skeleton().get(q, ())

    def all_simplices(self):
        """Iterate every simplex of the complex, dimension by dimension."""
        skel = self._ensure_skeleton()
        for q in sorted(skel):
            yield from skel[q]

    def has_simplex(self, s) -> bool:
        s = tuple(s)
        if s in self._facet_set:
            return True
        self._ensure_skeleton()
        return s in self._simplex_set

    def f_vector(self) -> tuple[int, ...]:
        """Simplex counts per dimension 0..dim."""
        skel = self._ensure_skeleton()
        return tuple(len(skel.get(q, ())) for q in range(self.dim + 1))

    def euler_characteristic(self) -> int:
        return sum((-1) ** q * n for q, n in enumerate(self.f_vector()))

    def vertex_label(self, v: int):
        return self.labels[v]

    def index_of_label(self, label) -> int:
        return self._label_index[label]

    def __repr__(self):
        return (f"SimplicialComplex({self.name or 'unnamed'}: "
                f"{self.vertex_count} vertices, {len(self.facets)} facets, dim {self.dim})")

    # -- serialization ---------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "vertex_count": self.vertex_count,
            "labels": [_label_to_json(lab) for lab in self.labels],
            "facets": [list(f) for f in self.facets],
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "SimplicialComplex":
        try:
            labels = [_label_from_json(lab) for lab in doc["labels"]]
            return build_complex(doc["facets"], vertex_labels=labels,
                                 name=doc.get("name", ""))
        except (KeyError, TypeError) as exc:
            raise MalformedInputError(f"bad complex document: {exc}") from exc

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def _label_to_json(lab):
    if isinstance(lab, tuple):
        return [_label_to_json(x) for x in lab]
    return lab


def _label_from_json(lab):
    if isinstance(lab, list):
        return tuple(_label_from_json(x) for x in lab)
    return lab


def build_complex(facet_list, vertex_labels=None, name="", vertex_count=None) -> SimplicialComplex:
    """Build a complex from raw facet input.

    Facets are sorted, deduplicated, and non-maximal ones absorbed.  Vertex
    ids must be dense 0..V-1 unless ``vertex_labels`` or ``vertex_count``
    explicitly declares a larger vertex set (then isolated vertices are
    allowed).
    """
    if not facet_list:
        raise MalformedInputError("a complex needs at least one facet")
    cleaned = []
    for f in facet_list:
        if not f:
            raise MalformedInputError("empty facet")
        s = as_simplex(f)
        if s[0] < 0:
            raise MalformedInputError(f"negative vertex id in facet {s}")
        cleaned.append(s)
    # absorb faces of larger facets
    cleaned = sorted(set(cleaned), key=lambda s: (-len(s), s))
    maximal: list[Simplex] = []
    for s in cleaned:
        sset = set(s)
        if not any(sset <= set(t) for t in maximal):
            maximal.append(s)

    used = set(itertools.chain.from_iterable(maximal))
    if vertex_labels is not None:
        count = len(vertex_labels)
    elif vertex_count is not None:
        count = vertex_count
    else:
        count = max(used) + 1
        if used != set(range(count)):
            missing = sorted(set(range(count)) - used)
            raise MalformedInputError(
                f"vertex ids are not dense (missing {missing}); pass labels or "
                f"vertex_count to declare isolated vertices")
    if used and max(used) >= count:
        raise MalformedInputError(
            f"facet vertex {max(used)} out of range for {count} vertices")
    return SimplicialComplex(maximal, count, labels=vertex_labels, name=name)


def simplex_skeleton(m: int, k: int) -> SimplicialComplex:
    """The complex of all subsets of an m-element set with at most k elements.

    For k = m-1 this is the boundary sphere of the (m-1)-simplex; for k = m it
    is the full simplex.  Vertices are labeled 1..m.
    """
    if m < 1 or k < 1 or k > m:
        raise ParameterError(f"need 1 <= k <= m, got m={m} k={k}")
    facets = list(itertools.combinations(range(m), k))
    return SimplicialComplex(facets, m, labels=range(1, m + 1),
                             name=f"skeleton({m},{k})")


def join(K: SimplicialComplex, L: SimplicialComplex) -> SimplicialComplex:
    """Simplicial join: simplices are disjoint unions of a K- and an L-simplex.

    Vertices of K keep their ids; vertices of L are shifted by K.vertex_count.
    Labels are tagged with the factor index so they stay unique.
    """
    shift = K.vertex_count
    facets = [fk + tuple(v + shift for v in fl)
              for fk in K.facets for fl in L.facets]
    labels = [(0, lab) for lab in K.labels] + [(1, lab) for lab in L.labels]
    return SimplicialComplex(facets, K.vertex_count + L.vertex_count,
                             labels=labels, name=f"({K.name})*({L.name})")


# -- integer matrices -------------------------------------------------------


@dataclass
class IntegerMatrix:
    """Dense integer matrix (row-major, arbitrary precision)."""

    rows: int
    cols: int
    entries: list[list[int]]

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise MalformedInputError("entry grid does not match declared shape")

    @classmethod
    def zero(cls, rows: int, cols: int) -> "IntegerMatrix":
        return cls(rows, cols, [[0] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, n: int) -> "IntegerMatrix":
        e = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        return cls(n, n, e)

    def is_zero(self) -> bool:
        return all(v == 0 for row in self.entries for v in row)

    def matmul(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.cols != other.rows:
            raise ParameterError(f"shape mismatch {self.rows}x{self.cols} @ "
                                 f"{other.rows}x{other.cols}")
        out = [[sum(self.entries[i][k] * other.entries[k][j]
                    for k in range(self.cols))
                for j in range(other.cols)]
               for i in range(self.rows)]
        return IntegerMatrix(self.rows, other.cols, out)

    def to_dict(self) -> dict:
        return {"rows": self.rows, "cols": self.cols,
                "entries": [[str(v) for v in row] for row in self.entries]}

    @classmethod
    def from_dict(cls, doc: dict) -> "IntegerMatrix":
        try:
            entries = [[int(v) for v in row] for row in doc["entries"]]
            return cls(doc["rows"], doc["cols"], entries)
        except (KeyError, TypeError, ValueError) as exc:
            raise MalformedInputError(f"bad matrix document: {exc}") from exc


def boundary_matrix(K: SimplicialComplex, q: int, reduced: bool = False) -> IntegerMatrix:
    """Matrix of the boundary operator from q-chains to (q-1)-chains.

    Rows and columns follow the lexicographic simplex order, so the matrix is
    reproducible bit-for-bit.  With ``reduced`` the q = 0 matrix is the 1 x V
    augmentation row; otherwise it has no rows.
    """
    if q < 0 or q > K.dim:
        raise ParameterError(f"dimension {q} out of range 0..{K.dim}")
    cols = K.simplices(q)
    if q == 0:
        if reduced:
            return IntegerMatrix(1, len(cols), [[1] * len(cols)])
        return IntegerMatrix(0, len(cols), [])
    rows = K.simplices(q - 1)
    row_index = {s: i for i, s in enumerate(rows)}
    mat = IntegerMatrix.zero(len(rows), len(cols))
    for j, s in enumerate(cols):
        for p in range(len(s)):
            face = s[:p] + s[p + 1:]
            mat.entries[row_index[face]][j] = (-1) ** p
    return mat


# -- integer chains ----------------------------------------------------------


@dataclass
class IntegerChain:
    """Formal integer combination of same-dimensional simplices.

    Zero coefficients are never stored; the empty simplex may appear only in
    dimension -1 (the reduced augmentation degree).
    """

    dimension: int
    coefficients: dict[Simplex, int] = field(default_factory=dict)

    def __post_init__(self):
        self.coefficients = {s: c for s, c in self.coefficients.items() if c != 0}
        for s in self.coefficients:
            if len(s) != self.dimension + 1:
                raise MalformedInputError(
                    f"simplex {s} has dimension {len(s) - 1}, chain has {self.dimension}")

    def is_zero(self) -> bool:
        return not self.coefficients

    def scaled(self, k: int) -> "IntegerChain":
        return IntegerChain(self.dimension, {s: k * c for s, c in self.coefficients.items()})


def chain_boundary(chain: IntegerChain) -> IntegerChain:
    """Boundary of a chain in the reduced convention (vertices bound the
    empty simplex, which carries the augmentation)."""
    acc: dict[Simplex, int] = {}
    for s, c in chain.coefficients.items():
        for p in range(len(s)):
            face = s[:p] + s[p + 1:]
            acc[face] = acc.get(face, 0) + (-1) ** p * c
    return IntegerChain(chain.dimension - 1, acc)


def map_chain(vertex_map, chain: IntegerChain) -> IntegerChain:
    """Pushforward of a chain along a vertex map.

    Simplices whose image has a repeated vertex are degenerate and contribute
    zero; otherwise the image simplex is sorted and picks up the sign of the
    sorting permutation.
    """
    acc: dict[Simplex, int] = {}
    for s, c in chain.coefficients.items():
        image, sign = sort_with_sign(vertex_map[v] for v in s)
        if sign:
            acc[image] = acc.get(image, 0) + sign * c
    return IntegerChain(chain.dimension, acc)
