"""Exact rational linear feasibility via a phase-1 simplex method.

Solves "find x >= 0 with A x = b" over the rationals, with Bland's smallest
index pivot rule so the method terminates without cycling safeguards or
tolerances.  The tableau uses integer pivoting: every entry is an integer
equal to the fractional tableau entry times the (positive) determinant of the
current basis, and each pivot divides exactly by the previous determinant.
This avoids per-operation gcd reductions and keeps all arithmetic exact.

The phase-1 optimum (total artificial mass) doubles as an exact
infeasibility measure: it is zero precisely on feasible systems, and is used
as the descent objective by the stochastic partition search.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

ZERO = Fraction(0)


def solve_equality_feasibility(A, b):
    """Phase-1 simplex on A x = b, x >= 0.

    Returns ``(optimum, x)`` where optimum is the minimal total artificial
    mass (a nonnegative Fraction, zero iff feasible) and x is a feasible
    point as a list of Fractions when optimum is zero, else None.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    if m == 0:
        return ZERO, []

    # scale each row to integers; flip signs so every rhs is nonnegative
    T = []
    for i in range(m):
        row = [Fraction(v) for v in A[i]]
        rhs = Fraction(b[i])
        scale = 1
        for v in row + [rhs]:
            scale = scale * v.denominator // gcd(scale, v.denominator)
        ints = [int(v * scale) for v in row]
        r = int(rhs * scale)
        if r < 0:
            ints = [-v for v in ints]
            r = -r
        ints.extend(1 if j == i else 0 for j in range(m))
        ints.append(r)
        T.append(ints)

    width = n + m + 1
    basis = [n + i for i in range(m)]
    # reduced cost row for min(sum of artificials): start as -(sum of rows),
    # then zero out the basic artificial columns
    cost = [0] * width
    for row in T:
        for j in range(width):
            if row[j]:
                cost[j] -= row[j]
    for i in range(m):
        cost[n + i] = 0
    det = 1  # current basis determinant; all entries are true values times det

    while True:
        entering = None
        for j in range(n + m):
            if cost[j] < 0:
                entering = j
                break
        if entering is None:
            break
        leaving = None
        best_num = best_den = None
        for i in range(m):
            coeff = T[i][entering]
            if coeff > 0:
                num, den = T[i][-1], coeff
                if leaving is None or num * best_den < best_num * den or (
                        num * best_den == best_num * den and basis[i] < basis[leaving]):
                    best_num, best_den = num, den
                    leaving = i
        if leaving is None:
            # cannot happen: the phase-1 objective is bounded below by zero
            raise ArithmeticError("phase-1 objective unbounded")
        pivot = T[leaving][entering]
        pivot_row = T[leaving]
        for i in range(m):
            if i != leaving:
                row = T[i]
                factor = row[entering]
                if factor:
                    T[i] = [(v * pivot - factor * p) // det
                            for v, p in zip(row, pivot_row)]
                elif pivot != det:
                    T[i] = [v * pivot // det for v in row]
        factor = cost[entering]
        if factor:
            cost = [(v * pivot - factor * p) // det
                    for v, p in zip(cost, pivot_row)]
        elif pivot != det:
            cost = [v * pivot // det for v in cost]
        det = pivot
        basis[leaving] = entering

    optimum = Fraction(-cost[-1], det)
    if optimum != 0:
        return optimum, None
    x = [ZERO] * n
    for i, var in enumerate(basis):
        if var < n:
            x[var] = Fraction(T[i][-1], det)
    return ZERO, x
