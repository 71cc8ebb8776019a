"""Independent oracles used by the test suite.

Everything here recomputes expected values by routes disjoint from the
package code: permutation-indexed orientation chains, brute-force partition
enumeration, basic-solution (rational vertex) feasibility checks, and
fraction-free determinants.  Keeping these separate is what makes the
dual-route assertions in the tests meaningful.
"""

from __future__ import annotations

import itertools
from fractions import Fraction


def perm_sign(perm) -> int:
    """Sign of a permutation given as a sequence of distinct comparables."""
    perm = list(perm)
    inversions = sum(1 for i in range(len(perm)) for j in range(i + 1, len(perm))
                     if perm[i] > perm[j])
    return (-1) ** inversions


def signed_injection_chain(r: int) -> dict[tuple[int, ...], int]:
    """Orientation chain of the (r x r-1) rook complex indexed by permutations.

    Every facet places one rook in each column j = 1..r-1; listing rooks by
    column gives the ordered facet ((p_1, 1), ..., (p_{r-1}, r-1)) for a
    permutation p of 1..r, and the facet carries sign(p) relative to that
    ordering.  Converting to the sorted vertex order multiplies by the sign
    of the sorting permutation.  Cell (i, j) has id (i-1)(r-1) + (j-1).
    """
    chain: dict[tuple[int, ...], int] = {}
    for p in itertools.permutations(range(1, r + 1)):
        ordered = [(p[j] - 1) * (r - 1) + j for j in range(r - 1)]
        simplex = tuple(sorted(ordered))
        chain[simplex] = perm_sign(p) * perm_sign(ordered)
    return chain


def alternating_boundary_chain(r: int) -> dict[tuple[int, ...], int]:
    """Orientation chain of the boundary sphere on vertices 0..r-1:
    the facet omitting vertex i carries sign (-1)^i."""
    chain = {}
    for i in range(r):
        facet = tuple(v for v in range(r) if v != i)
        chain[facet] = (-1) ** i
    return chain


def convolve_f_vectors(f_left, f_right) -> list[int]:
    """f-vector of a join from the factor f-vectors (with f_{-1} = 1)."""
    left = [1] + list(f_left)
    right = [1] + list(f_right)
    out = []
    for q in range(len(left) + len(right) - 2):
        total = 0
        for i in range(len(left)):
            j = q + 1 - i
            if 0 <= j < len(right):
                total += left[i] * right[j]
        out.append(total)
    return out


def det_bareiss(entries) -> int:
    """Exact integer determinant by fraction-free elimination."""
    n = len(entries)
    if n == 0:
        return 1
    M = [row[:] for row in entries]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if M[i][k] != 0), None)
            if swap is None:
                return 0
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
            M[i][k] = 0
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def brute_force_partitions(config, r: int, require_full: bool = False):
    """All canonical rainbow partitions by filtering every labeled assignment.

    Each point independently gets a block label 0..r-1 or stays unused; the
    filter keeps assignments with all blocks nonempty and rainbow, and the
    canonical form sorts blocks by smallest member.  Exponential, for small
    configs only.
    """
    n = len(config)
    out = set()
    for labels in itertools.product(range(r + 1), repeat=n):
        blocks = [[] for _ in range(r)]
        unused = 0
        for idx, lab in enumerate(labels):
            if lab == r:
                unused += 1
            else:
                blocks[lab].append(idx)
        if require_full and unused:
            continue
        if not all(blocks):
            continue
        if any(len({config.color_of(i) for i in b}) != len(b) for b in blocks):
            continue
        canonical = tuple(sorted((tuple(b) for b in blocks), key=lambda b: b[0]))
        out.add(canonical)
    return out


def _solve_columns_exact(A, b, subset):
    """Solve the full-height system A[:, subset] y = b by Gaussian
    elimination over Fractions.

    Returns the unique solution, or None when the columns are dependent
    (some smaller subset covers that case) or the system is inconsistent.
    """
    m = len(A)
    k = len(subset)
    M = [[Fraction(A[i][j]) for j in subset] + [Fraction(b[i])] for i in range(m)]
    rank = 0
    pivots = []
    for col in range(k):
        pivot = next((row for row in range(rank, m) if M[row][col] != 0), None)
        if pivot is None:
            return None  # dependent columns
        M[rank], M[pivot] = M[pivot], M[rank]
        pv = M[rank][col]
        M[rank] = [v / pv for v in M[rank]]
        for row in range(m):
            if row != rank and M[row][col] != 0:
                f = M[row][col]
                M[row] = [v - f * w for v, w in zip(M[row], M[rank])]
        pivots.append(col)
        rank += 1
    for row in range(rank, m):
        if M[row][-1] != 0:
            return None  # inconsistent
    return [M[r][-1] for r in range(k)]


def feasible_by_vertex_enumeration(config, blocks) -> bool:
    """Decide hull intersection by checking every candidate basic solution.

    The system asks for nonnegative convex weights with equal block
    barycenters.  A nonempty polyhedron of the form {x >= 0, Ax = b}
    contains a vertex, i.e. a basic feasible solution supported on linearly
    independent columns; enumerating all column subsets of each size up to
    the row count and solving exactly is a complete (if slow) decision
    procedure, fully independent of the simplex code.
    """
    d = config.dim
    cols = []
    for bi, block in enumerate(blocks):
        for idx in block:
            cols.append((bi, idx))
    m = len(blocks) + d * (len(blocks) - 1)
    A = []
    b = []
    for bi in range(len(blocks)):
        A.append([Fraction(1) if c[0] == bi else Fraction(0) for c in cols])
        b.append(Fraction(1))
    for bi in range(1, len(blocks)):
        for axis in range(d):
            row = []
            for cbi, idx in cols:
                if cbi == bi:
                    row.append(config.points[idx].coords[axis])
                elif cbi == 0:
                    row.append(-config.points[idx].coords[axis])
                else:
                    row.append(Fraction(0))
            A.append(row)
            b.append(Fraction(0))
    n = len(cols)
    for size in range(0, min(m, n) + 1):
        for subset in itertools.combinations(range(n), size):
            y = _solve_columns_exact(A, b, subset)
            if y is not None and all(v >= 0 for v in y):
                return True
    return False
