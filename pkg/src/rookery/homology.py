"""Exact integral homology via Smith normal form.

Everything here is arbitrary-precision integer arithmetic; Betti numbers and
torsion coefficients are exact, never floating point.  Connectivity is probed
homologically: a complex counts as c-connected here when its reduced homology
vanishes through dimension c.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import IntegrityError, ParameterError
from .simplicial import IntegerMatrix, SimplicialComplex, boundary_matrix


@dataclass
class SmithNormalFormResult:
    """Nonzero diagonal d_1 | d_2 | ... of the Smith form, with optional
    unimodular transforms U, V satisfying U M V = diag(d_i)."""

    diagonal: tuple[int, ...]
    rank: int
    U: IntegerMatrix | None = None
    V: IntegerMatrix | None = None


def smith_normal_form(M: IntegerMatrix, transforms: bool = False) -> SmithNormalFormResult:
    """Exact Smith normal form over the integers.

    Pivots are chosen with smallest absolute value to keep intermediate
    entries small; with ``transforms`` the factorization U M V = D is
    verified before returning.
    """
    A = [row[:] for row in M.entries]
    m, n = M.rows, M.cols
    U = [[1 if i == j else 0 for j in range(m)] for i in range(m)] if transforms else None
    V = [[1 if i == j else 0 for j in range(n)] for i in range(n)] if transforms else None

    def swap_rows(a, b):
        A[a], A[b] = A[b], A[a]
        if U is not None:
            U[a], U[b] = U[b], U[a]

    def swap_cols(a, b):
        for row in A:
            row[a], row[b] = row[b], row[a]
        if V is not None:
            for row in V:
                row[a], row[b] = row[b], row[a]

    def add_row(src, dst, q):
        # row[dst] += q * row[src]
        Asrc, Adst = A[src], A[dst]
        for j in range(n):
            Adst[j] += q * Asrc[j]
        if U is not None:
            Us, Ud = U[src], U[dst]
            for j in range(m):
                Ud[j] += q * Us[j]

    def add_col(src, dst, q):
        for row in A:
            row[dst] += q * row[src]
        if V is not None:
            for row in V:
                row[dst] += q * row[src]

    def negate_row(i):
        A[i] = [-v for v in A[i]]
        if U is not None:
            U[i] = [-v for v in U[i]]

    t = 0
    limit = min(m, n)
    while t < limit:
        # smallest-magnitude nonzero pivot in the trailing submatrix
        pivot = None
        for i in range(t, m):
            for j in range(t, n):
                v = A[i][j]
                if v != 0 and (pivot is None or abs(v) < abs(A[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        swap_rows(t, pivot[0])
        swap_cols(t, pivot[1])

        dirty = False
        for i in range(t + 1, m):
            if A[i][t] != 0:
                q = A[i][t] // A[t][t]
                add_row(t, i, -q)
                if A[i][t] != 0:
                    dirty = True
        for j in range(t + 1, n):
            if A[t][j] != 0:
                q = A[t][j] // A[t][t]
                add_col(t, j, -q)
                if A[t][j] != 0:
                    dirty = True
        if dirty:
            continue  # a remainder smaller than the pivot appeared; re-pivot
        # enforce the divisibility chain before moving on
        d = A[t][t]
        culprit = None
        for i in range(t + 1, m):
            for j in range(t + 1, n):
                if A[i][j] % d != 0:
                    culprit = i
                    break
            if culprit is not None:
                break
        if culprit is not None:
            add_row(culprit, t, 1)
            continue
        if d < 0:
            negate_row(t)
        t += 1

    diagonal = tuple(A[i][i] for i in range(limit) if A[i][i] != 0)
    result = SmithNormalFormResult(diagonal, len(diagonal))
    if transforms:
        result.U = IntegerMatrix(m, m, U)
        result.V = IntegerMatrix(n, n, V)
        product = result.U.matmul(M).matmul(result.V)
        for i in range(m):
            for j in range(n):
                expected = diagonal[i] if i == j and i < len(diagonal) else 0
                if product.entries[i][j] != expected:
                    raise IntegrityError("transform verification U M V != D failed")
    return result


@dataclass
class HomologyProfile:
    """Betti numbers and torsion coefficients per dimension.

    ``torsion[q]`` lists the invariant factors > 1 of the torsion subgroup in
    dimension q; ``reduced`` records which convention betti[0] uses.
    """

    betti: tuple[int, ...]
    torsion: tuple[tuple[int, ...], ...]
    reduced: bool

    def group_trivial(self, q: int) -> bool:
        return self.betti[q] == 0 and not self.torsion[q]


def homology(K: SimplicialComplex, reduced: bool = True,
             max_dim: int | None = None) -> HomologyProfile:
    """Integral homology of K in dimensions 0..max_dim (default: all).

    betti_q = nullity(d_q) - rank(d_{q+1}); torsion comes from the Smith
    diagonal of d_{q+1}.  The reduced convention augments d_0.
    """
    top = K.dim if max_dim is None else min(max_dim, K.dim)
    # snf[q] for the boundary map leaving dimension q
    snf = {0: smith_normal_form(boundary_matrix(K, 0, reduced=reduced))}
    for q in range(1, top + 2):
        if q <= K.dim:
            snf[q] = smith_normal_form(boundary_matrix(K, q))
    betti = []
    torsion = []
    for q in range(top + 1):
        nullity = len(K.simplices(q)) - snf[q].rank
        above = snf.get(q + 1)
        rank_above = above.rank if above else 0
        betti.append(nullity - rank_above)
        torsion.append(tuple(d for d in (above.diagonal if above else ()) if d > 1))
    return HomologyProfile(tuple(betti), tuple(torsion), reduced)


def reduced_homology(K: SimplicialComplex, max_dim: int | None = None) -> HomologyProfile:
    return homology(K, reduced=True, max_dim=max_dim)


def connectivity_probe(K: SimplicialComplex, q_max: int) -> int:
    """Largest c <= q_max with reduced homology trivial in all dimensions <= c.

    Returns -1 when the complex is already disconnected (nontrivial reduced
    0-homology).  This is a homological stand-in for connectivity; homotopy
    groups are never computed.
    """
    if q_max > K.dim:
        raise ParameterError(f"q_max {q_max} exceeds dimension {K.dim}")
    profile = reduced_homology(K, max_dim=q_max)
    c = -1
    for q in range(q_max + 1):
        if not profile.group_trivial(q):
            break
        c = q
    return c
