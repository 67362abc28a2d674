"""Exact rational linear algebra and a small phase-I simplex.

Everything runs over ``fractions.Fraction``; no floating point anywhere.
The simplex uses Bland's rule, so it terminates and is deterministic.
Problem sizes in this package are tiny (tens of rows and columns), which
keeps the dense tableau entirely adequate.
"""

from __future__ import annotations

from fractions import Fraction


def rref(matrix):
    """Reduced row-echelon form; returns (rows, pivot_columns)."""
    rows = [[Fraction(v) for v in row] for row in matrix]
    if not rows:
        return rows, []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = Fraction(1) / rows[r][c]
        rows[r] = [v * inv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def matrix_rank(matrix) -> int:
    return len(rref(matrix)[1])


def nullspace(matrix):
    """Basis of the right null space (list of Fraction vectors)."""
    if not matrix:
        return []
    ncols = len(matrix[0])
    rows, pivots = rref(matrix)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            vec[pc] = -rows[r][fc]
        basis.append(vec)
    return basis


def solve_linear(A, b):
    """One exact solution of ``A x = b`` or None if inconsistent."""
    if not A:
        return [] if all(v == 0 for v in b) else None
    ncols = len(A[0])
    aug = [list(row) + [bv] for row, bv in zip(A, b)]
    rows, pivots = rref(aug)
    for row in rows:
        if all(v == 0 for v in row[:-1]) and row[-1] != 0:
            return None
    x = [Fraction(0)] * ncols
    for r, pc in enumerate(pivots):
        if pc == ncols:
            return None
        x[pc] = rows[r][-1]
    return x


def feasible_nonneg(A, b):
    """A point of ``{x >= 0 : A x = b}``, or None if the set is empty."""
    m = len(A)
    n = len(A[0]) if m else 0
    rows = [[Fraction(v) for v in row] for row in A]
    rhs = [Fraction(v) for v in b]
    for i in range(m):
        if rhs[i] < 0:
            rows[i] = [-v for v in rows[i]]
            rhs[i] = -rhs[i]
    # tableau: original columns, artificial identity, rhs
    tab = [
        rows[i] + [Fraction(1) if j == i else Fraction(0) for j in range(m)] + [rhs[i]]
        for i in range(m)
    ]
    basis = [n + i for i in range(m)]
    # reduced-cost row for "minimize sum of artificials" (sign-flipped)
    cost = [sum(tab[i][j] for i in range(m)) for j in range(n + m + 1)]
    while True:
        enter = next((j for j in range(n) if cost[j] > 0), None)
        if enter is None:
            break
        leave, best = None, None
        for i in range(m):
            if tab[i][enter] > 0:
                ratio = tab[i][-1] / tab[i][enter]
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:
            break
        piv = tab[leave][enter]
        tab[leave] = [v / piv for v in tab[leave]]
        for i in range(m):
            if i != leave and tab[i][enter] != 0:
                f = tab[i][enter]
                tab[i] = [a - f * b_ for a, b_ in zip(tab[i], tab[leave])]
        f = cost[enter]
        cost = [a - f * b_ for a, b_ in zip(cost, tab[leave])]
        basis[leave] = enter
    if cost[-1] != 0:
        return None
    x = [Fraction(0)] * n
    for i in range(m):
        if basis[i] < n:
            x[basis[i]] = tab[i][-1]
    return x


def in_convex_hull(point, generators) -> bool:
    """Exact test whether ``point`` is a convex combination of ``generators``."""
    if not generators:
        return False
    n = len(point)
    A = [[Fraction(g[i]) for g in generators] for i in range(n)]
    A.append([Fraction(1)] * len(generators))
    b = [Fraction(v) for v in point] + [Fraction(1)]
    return feasible_nonneg(A, b) is not None


def in_cone(point, generators) -> bool:
    """Exact test whether ``point`` is a nonnegative combination of ``generators``."""
    if all(v == 0 for v in point):
        return True
    if not generators:
        return False
    n = len(point)
    A = [[Fraction(g[i]) for g in generators] for i in range(n)]
    b = [Fraction(v) for v in point]
    return feasible_nonneg(A, b) is not None


def strictly_positive_form(points):
    """Integer vector ``a`` with ``a . p >= 1`` for every point, or None.

    Used to find graded forms that are strictly positive on a finite set
    of lattice vectors.
    """
    pts = [tuple(p) for p in points]
    if not pts:
        return None
    n = len(pts[0])
    m = len(pts)
    # a = u - w with u, w >= 0; slack per constraint: a.p - s = 1
    A = []
    for idx, p in enumerate(pts):
        row = [Fraction(v) for v in p] + [Fraction(-v) for v in p]
        row += [Fraction(-1) if j == idx else Fraction(0) for j in range(m)]
        A.append(row)
    b = [Fraction(1)] * m
    sol = feasible_nonneg(A, b)
    if sol is None:
        return None
    alpha = [sol[i] - sol[n + i] for i in range(n)]
    from math import gcd, lcm

    den = 1
    for v in alpha:
        den = lcm(den, v.denominator)
    ints = [int(v * den) for v in alpha]
    g = 0
    for v in ints:
        g = gcd(g, v)
    if g > 1:
        ints = [v // g for v in ints]
    return ints
