"""Exact linear algebra over the rationals for small matrices.

Everything in the combinatorial layer is integer or rational and must stay
exact, so matrices are lists of lists of Fractions (or ints, coerced on
entry).  Sizes here never exceed a dozen rows; no attempt at performance.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd


def frac_matrix(rows):
    """Copy ``rows`` into a list-of-lists of Fractions."""
    return [[Fraction(x) for x in row] for row in rows]


def identity(n):
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def mat_mul(a, b):
    n, k, m = len(a), len(b), len(b[0])
    assert len(a[0]) == k
    return [[sum((a[i][t] * b[t][j] for t in range(k)), Fraction(0)) for j in range(m)]
            for i in range(n)]


def mat_vec(a, v):
    return [sum((a[i][j] * Fraction(v[j]) for j in range(len(v))), Fraction(0))
            for i in range(len(a))]


def transpose(a):
    return [list(col) for col in zip(*a)]


def rref(a):
    """Reduced row echelon form. Returns (matrix, pivot column list)."""
    m = frac_matrix(a)
    rows = len(m)
    cols = len(m[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = Fraction(1) / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m, pivots


def rank(a):
    if not a or not a[0]:
        return 0
    return len(rref(a)[1])


def nullspace(a):
    """Basis of the right kernel, one vector per free column."""
    if not a:
        return []
    cols = len(a[0])
    red, pivots = rref(a)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * cols
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -red[r][fc]
        basis.append(v)
    return basis


def solve(a, b):
    """Solve a x = b exactly; returns the solution or None if inconsistent.

    When the system is underdetermined, free variables are set to 0.
    """
    rows = len(a)
    if rows == 0:
        return []
    cols = len(a[0])
    aug = [[Fraction(x) for x in row] + [Fraction(b[i])] for i, row in enumerate(a)]
    red, pivots = rref(aug)
    if cols in pivots:
        return None
    x = [Fraction(0)] * cols
    for r, pc in enumerate(pivots):
        x[pc] = red[r][cols]
    return x


def inverse(a):
    n = len(a)
    aug = [[Fraction(x) for x in row] + identity(n)[i] for i, row in enumerate(a)]
    red, pivots = rref(aug)
    if pivots != list(range(n)):
        raise ValueError("matrix is singular")
    return [row[n:] for row in red]


def primitive_integer_vector(v):
    """Scale a rational vector to a primitive integer vector (sign kept)."""
    fr = [Fraction(x) for x in v]
    if all(x == 0 for x in fr):
        return [0] * len(fr)
    lcm = 1
    for x in fr:
        lcm = lcm * x.denominator // gcd(lcm, x.denominator)
    ints = [int(x * lcm) for x in fr]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    return [x // g for x in ints]


def symmetric_inertia(s):
    """Signature of a rational symmetric matrix, by completing squares.

    Returns (n_pos, n_neg, n_zero).  Lagrange's method: peel off one square
    per step, using the hyperbolic-pair trick when the diagonal vanishes.
    """
    m = frac_matrix(s)
    n = len(m)
    pos = neg = 0
    idx = list(range(n))
    while idx:
        k = next((i for i in idx if m[i][i] != 0), None)
        if k is None:
            pair = next(((i, j) for i in idx for j in idx if i != j and m[i][j] != 0),
                        None)
            if pair is None:
                break  # remaining block is zero
            i, j = pair
            # congruence by (row_i += row_j, col_i += col_j): diagonal becomes 2*m[i][j]
            for t in idx:
                m[i][t] += m[j][t]
            for t in idx:
                m[t][i] += m[t][j]
            k = i
        d = m[k][k]
        if d > 0:
            pos += 1
        else:
            neg += 1
        idx = [i for i in idx if i != k]
        # row ops alone keep the active block symmetric (f_i m[k][t] = f_t m[k][i])
        fs = {i: m[i][k] / d for i in idx}
        for i in idx:
            if fs[i] != 0:
                for j in idx:
                    m[i][j] -= fs[i] * m[k][j]
    zero = n - pos - neg
    return pos, neg, zero
