"""Exact rational polyhedral cones: generators, facets, membership.

Cones here are spanned by a handful of integer vectors in dimension <= 9.
The H-representation (span equations + facet inequalities) is computed once
by Fourier-Motzkin elimination of the generator coefficients; membership by
inequalities is cross-checked against an independent Caratheodory-style
nonnegative solve in the test suite.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from . import exactla
from .errors import InvariantViolation


class RationalCone:
    """cone(generators) with exact facet data.

    facet_inequalities: integer functionals f with f(x) >= 0 on the cone,
    each supporting a facet.  span_equations: integer functionals vanishing
    on the cone's linear span.
    """

    def __init__(self, ambient_dim, generators):
        self.dim = ambient_dim
        gens = [tuple(int(x) for x in g) for g in generators]
        for g in gens:
            if len(g) != ambient_dim:
                raise ValueError("generator length mismatch")
        self.generators = tuple(sorted(set(g for g in gens if any(g))))
        self.span_equations, self.facet_inequalities = _h_representation(
            ambient_dim, self.generators)
        self.rank = ambient_dim - len(self.span_equations)

    def contains(self, x):
        if len(x) != self.dim:
            raise ValueError("vector length mismatch")
        x = [Fraction(v) for v in x]
        return (all(_dot(eq, x) == 0 for eq in self.span_equations)
                and all(_dot(f, x) >= 0 for f in self.facet_inequalities))

    def contains_by_solve(self, x):
        """Independent membership test: exact nonnegative combination via
        Caratheodory (some linearly independent generator subset suffices)."""
        if len(x) != self.dim:
            raise ValueError("vector length mismatch")
        x = [Fraction(v) for v in x]
        if all(v == 0 for v in x):
            return True
        gens = self.generators
        for k in range(1, self.rank + 1):
            for subset in combinations(gens, k):
                a = [[Fraction(subset[j][i]) for j in range(k)] for i in range(self.dim)]
                if exactla.rank(a) != k:
                    continue
                t = exactla.solve(a, x)
                if t is not None and all(v >= 0 for v in t):
                    return True
        return False

    def to_json(self):
        return {
            "generators": [list(g) for g in self.generators],
            "facet_inequalities": [list(f) for f in self.facet_inequalities],
            "span_equations": [list(e) for e in self.span_equations],
        }

    def __repr__(self):
        return f"RationalCone(dim={self.dim}, generators={list(self.generators)})"


def _dot(f, x):
    return sum(Fraction(a) * b for a, b in zip(f, x))


def _h_representation(n, gens):
    """Equations and facet inequalities of cone(gens) in Q^n.

    Eliminate the combination coefficients t from {x = G t, t >= 0}: the
    equalities x - Gt = 0 substitute away rank(G) of the t's; the remaining
    t's go by Fourier-Motzkin on the inequality system t >= 0.
    """
    m = len(gens)
    if m == 0:
        eqs = [tuple(int(i == j) for j in range(n)) for i in range(n)]
        return tuple(eqs), ()

    # rows: inequalities a.x + b.t >= 0 stored as (a (len n), b (len m))
    ineqs = [([Fraction(0)] * n, [Fraction(int(i == j)) for j in range(m)])
             for i in range(m)]
    # equalities x_i - sum_j t_j g_j[i] = 0
    eqs = []
    for i in range(n):
        a = [Fraction(int(i == k)) for k in range(n)]
        b = [-Fraction(gens[j][i]) for j in range(m)]
        eqs.append((a, b))

    # use each equality to eliminate one t variable when possible; every
    # pivot is applied to all not-yet-processed rows immediately
    remaining_ts = list(range(m))
    for idx in range(len(eqs)):
        a, b = eqs[idx]
        piv = next((j for j in remaining_ts if b[j] != 0), None)
        if piv is None:
            continue
        inv = Fraction(1) / b[piv]
        a = [x * inv for x in a]
        b = [x * inv for x in b]
        eqs[idx] = (a, b)
        for rows in (ineqs, eqs):
            for k, (ra, rb) in enumerate(rows):
                if rows is eqs and k == idx:
                    continue
                c = rb[piv]
                if c != 0:
                    rows[k] = ([x - c * y for x, y in zip(ra, a)],
                               [x - c * y for x, y in zip(rb, b)])
        remaining_ts.remove(piv)

    # Fourier-Motzkin on the remaining t variables
    for j in remaining_ts:
        pos = [r for r in ineqs if r[1][j] > 0]
        neg = [r for r in ineqs if r[1][j] < 0]
        zero = [r for r in ineqs if r[1][j] == 0]
        new_rows = list(zero)
        for pa, pb in pos:
            for na, nb in neg:
                cp, cn = pb[j], -nb[j]
                a = [cn * x + cp * y for x, y in zip(pa, na)]
                b = [cn * x + cp * y for x, y in zip(pb, nb)]
                new_rows.append((a, b))
        ineqs = _dedupe(new_rows)

    span_eqs = _span_equations(n, gens)
    facets = []
    for a, b in ineqs:
        assert all(x == 0 for x in b)
        f = exactla.primitive_integer_vector(a)
        if not any(f):
            continue
        facets.append(tuple(f))
    facets = sorted(set(facets))
    facets = [f for f in facets if _is_facet(n, gens, span_eqs, f)]
    return tuple(span_eqs), tuple(sorted(facets))


def _dedupe(rows):
    seen = {}
    for a, b in rows:
        key = tuple(exactla.primitive_integer_vector(list(a) + list(b)))
        if not any(key):
            continue
        seen.setdefault(key, (a, b))
    return list(seen.values())


def _span_equations(n, gens):
    # functionals f with f.g = 0 for every generator: right kernel of the
    # generators-as-rows matrix
    mat = [[Fraction(g[i]) for i in range(n)] for g in gens]
    basis = exactla.nullspace(mat)
    return tuple(sorted(tuple(exactla.primitive_integer_vector(v)) for v in basis))


def _is_facet(n, gens, span_eqs, f):
    """Keep only inequalities supporting a face of codimension 1 within the
    span (and not identically zero on the cone)."""
    vals = [_dot(f, [Fraction(x) for x in g]) for g in gens]
    if any(v < 0 for v in vals):
        return False
    if all(v == 0 for v in vals):
        return False
    cone_rank = n - len(span_eqs)
    on_face = [g for g, v in zip(gens, vals) if v == 0]
    if not on_face:
        return cone_rank == 1  # a ray's two half-space bounds
    mat = [[Fraction(g[i]) for i in range(n)] for g in on_face]
    return exactla.rank(mat) == cone_rank - 1
