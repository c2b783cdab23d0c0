"""Canonical decompositions and presentations, cp-fan queries.

A dimension vector decomposes uniquely into pairwise ext-orthogonal Schur
roots; an arbitrary integer vector additionally picks up negatives of
projective roots.  Cliques of compatible rays are the cones of a simplicial
fan, so exactly one clique can carry a given vector in its relative
interior; that uniqueness is asserted, never assumed.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import exactla
from .errors import InvariantViolation, UnsupportedClassError
from .homext import enumerate_real_schur_roots, ext_schur_pair
from .quiver import DYNKIN, EUCLIDEAN

REAL_SCHUR = "REAL_SCHUR"
ISOTROPIC_DELTA = "ISOTROPIC_DELTA"
NEG_PROJECTIVE = "NEG_PROJECTIVE"


@dataclass(frozen=True)
class Summand:
    root: tuple
    mult: int
    kind: str

    def to_json(self):
        return {"root": list(self.root), "mult": self.mult, "kind": self.kind}


@dataclass(frozen=True)
class CanonicalPresentation:
    summands: tuple          # of Summand, sorted lexicographically by root
    d_plus: tuple
    d_minus: tuple

    @property
    def ray_roots(self):
        return frozenset(s.root for s in self.summands)

    @property
    def delta_multiplicity(self):
        for s in self.summands:
            if s.kind == ISOTROPIC_DELTA:
                return s.mult
        return 0

    @property
    def real_summands(self):
        return tuple(s for s in self.summands if s.kind == REAL_SCHUR)

    @property
    def negative_summands(self):
        return tuple(s for s in self.summands if s.kind == NEG_PROJECTIVE)

    @property
    def d_hat(self):
        """Sum (with multiplicity) of the real Schur root summands."""
        n = len(self.d_plus)
        out = [0] * n
        for s in self.real_summands:
            for i in range(n):
                out[i] += s.mult * s.root[i]
        return tuple(out)

    def to_json(self):
        return {
            "summands": [s.to_json() for s in self.summands],
            "d_plus": list(self.d_plus),
            "d_minus": list(self.d_minus),
        }


def _compatible(ctx, r1, r2):
    """Ray compatibility: ext vanishing both ways for Schur roots; a Schur
    root is compatible with -p_i iff it is not supported at i; negative
    projective rays are mutually compatible.  r given as ('+', root) or
    ('-', vertex_index)."""
    key = (r1, r2) if r1 <= r2 else (r2, r1)
    memo = ctx._compat_memo
    val = memo.get(key)
    if val is None:
        k1, v1 = key[0]
        k2, v2 = key[1]
        if k1 == "-" and k2 == "-":
            val = True
        elif k1 == "-":
            val = v2[v1] == 0
        elif k2 == "-":
            val = v1[v2] == 0
        else:
            val = (ext_schur_pair(ctx, v1, v2) == 0
                   and ext_schur_pair(ctx, v2, v1) == 0)
        memo[key] = val
    return val


def _positive_cliques_containing(ctx, d, candidates):
    """All cliques of pairwise-compatible candidate roots whose relative
    interior contains d, as (clique, coefficients) pairs.

    Candidates are nonnegative roots; every clique member enters with a
    coefficient >= 1, so partial sums are pruned against d componentwise.
    """
    d = tuple(int(x) for x in d)
    n = ctx.n
    cands = [c for c in candidates if all(x <= y for x, y in zip(c, d))]
    m = len(cands)
    compat = [0] * m
    for i in range(m):
        for j in range(i + 1, m):
            if _compatible(ctx, ("+", cands[i]), ("+", cands[j])):
                compat[i] |= 1 << j
                compat[j] |= 1 << i

    results = []

    def solve_clique(clique):
        cols = [cands[i] for i in clique]
        a = [[Fraction(cols[j][i]) for j in range(len(cols))] for i in range(n)]
        if exactla.rank(a) != len(cols):
            raise InvariantViolation(
                f"compatible clique {cols} is linearly dependent")
        t = exactla.solve(a, d)
        if t is not None and all(x > 0 for x in t):
            results.append(([cands[i] for i in clique], t))

    def dfs(start, clique, mask, remaining):
        if clique:
            solve_clique(clique)
        for j in range(start, m):
            if clique and not (mask >> j) & 1:
                continue
            nxt = tuple(x - y for x, y in zip(remaining, cands[j]))
            if any(x < 0 for x in nxt):
                continue
            dfs(j + 1, clique + [j], mask & compat[j] if clique else compat[j], nxt)

    if not any(d):
        return [([], [])]
    dfs(0, [], 0, d)
    return results


def canonical_decomposition(ctx, d):
    """Unique decomposition of a dimension vector into compatible Schur roots."""
    if ctx.klass not in (DYNKIN, EUCLIDEAN):
        raise UnsupportedClassError("canonical decomposition requires Dynkin or Euclidean type")
    d = tuple(int(x) for x in d)
    if any(x < 0 for x in d):
        raise ValueError(f"canonical_decomposition needs d >= 0, got {d}")
    summands = _decompose_positive(ctx, d)
    return CanonicalPresentation(summands=summands, d_plus=d, d_minus=(0,) * ctx.n)


def _decompose_positive(ctx, d):
    if not any(d):
        return ()
    candidates = enumerate_real_schur_roots(ctx, d)
    hits = _positive_cliques_containing(ctx, d, candidates)
    if len(hits) != 1:
        raise InvariantViolation(
            f"fan property violated: {len(hits)} compatible cliques contain {d} "
            "in their relative interior")
    clique, coeffs = hits[0]
    summands = []
    for root, t in zip(clique, coeffs):
        if t.denominator != 1:
            raise InvariantViolation(f"non-integral multiplicity {t} for root {root}")
        kind = ISOTROPIC_DELTA if ctx.klass == EUCLIDEAN and root == ctx.delta else REAL_SCHUR
        summands.append(Summand(root=root, mult=int(t), kind=kind))
    return tuple(sorted(summands, key=lambda s: s.root))


def split_plus_minus(ctx, d):
    """The unique split d = d_plus + d_minus with -d_minus projective and
    its top support disjoint from supp(d_plus).

    Processing vertices in topological order forces each projective
    multiplicity: once earlier contributions are added, a negative running
    coordinate must be cancelled exactly (that vertex carries a top), and a
    nonnegative one admits no top at all.
    """
    d = tuple(int(x) for x in d)
    ps = ctx.projective_roots
    mult = [0] * ctx.n
    acc = list(d)
    for v in ctx.quiver.topological:
        i = v - 1
        if acc[i] < 0:
            mult[i] = -acc[i]
            p = ps[i]
            for j in range(ctx.n):
                acc[j] += mult[i] * p[j]
    d_plus = tuple(acc)
    if any(x < 0 for x in d_plus):
        raise InvariantViolation(f"peeling split failed for {d}: d_plus = {d_plus}")
    d_minus = tuple(x - y for x, y in zip(d, d_plus))
    return d_plus, d_minus, tuple(mult)


def canonical_presentation(ctx, d):
    """Canonical presentation of any integer vector: the canonical
    decomposition of d_plus together with the forced negative projectives."""
    if ctx.klass not in (DYNKIN, EUCLIDEAN):
        raise UnsupportedClassError("canonical presentation requires Dynkin or Euclidean type")
    d = tuple(int(x) for x in d)
    d_plus, d_minus, mult = split_plus_minus(ctx, d)
    pos = _decompose_positive(ctx, d_plus)
    # spec assertion: positive part must be the canonical decomposition of d_plus
    assert pos == canonical_decomposition(ctx, d_plus).summands
    ps = ctx.projective_roots
    neg = []
    for i, m in enumerate(mult):
        if m:
            root = tuple(-x for x in ps[i])
            for s in pos:
                if s.root[i] != 0:
                    raise InvariantViolation(
                        f"summand {s.root} is supported at the top vertex {i + 1}")
            neg.append(Summand(root=root, mult=m, kind=NEG_PROJECTIVE))
    summands = tuple(sorted(pos + tuple(neg), key=lambda s: s.root))
    return CanonicalPresentation(summands=summands, d_plus=d_plus, d_minus=d_minus)


def cp_equivalent(ctx, d1, d2):
    """True iff the canonical presentations use the same set of rays."""
    p1 = canonical_presentation(ctx, d1)
    p2 = canonical_presentation(ctx, d2)
    return p1.ray_roots == p2.ray_roots


def verify_fan_point(ctx, d):
    """Check that exactly one compatible clique's relative interior contains
    d, enumerating over all admissible negative-ray supports; returns a
    report with the clique and its coefficients."""
    if ctx.klass not in (DYNKIN, EUCLIDEAN):
        raise UnsupportedClassError("fan verification requires Dynkin or Euclidean type")
    d = tuple(int(x) for x in d)
    ps = ctx.projective_roots
    hits = []
    for tmask in range(1 << ctx.n):
        tops = [i for i in range(ctx.n) if (tmask >> i) & 1]
        mult = _forced_projective_multiplicities(ctx, d, tops)
        if mult is None:
            continue
        d_plus = tuple(d[j] + sum(mult[i] * ps[i][j] for i in tops) for j in range(ctx.n))
        if any(x < 0 for x in d_plus) or any(d_plus[i] != 0 for i in tops):
            continue
        if not any(d_plus):
            hits.append(([("-", i) for i in tops], [mult[i] for i in tops]))
            continue
        candidates = [c for c in enumerate_real_schur_roots(ctx, d_plus)
                      if all(c[i] == 0 for i in tops)]
        for clique, coeffs in _positive_cliques_containing(ctx, d_plus, candidates):
            hits.append((
                [("+", r) for r in clique] + [("-", i) for i in tops],
                list(coeffs) + [mult[i] for i in tops],
            ))
    if len(hits) != 1:
        raise InvariantViolation(
            f"fan property violated at {d}: {len(hits)} cones contain it in relint")
    clique, coeffs = hits[0]
    rays = [list(r[1]) if r[0] == "+" else [-x for x in ps[r[1]]] for r in clique]
    return {"point": list(d), "rays": rays,
            "coefficients": [int(c) for c in coeffs], "cones_found": 1}


def _forced_projective_multiplicities(ctx, d, tops):
    """Solve for the projective multiplicities on a prescribed top set:
    d_plus must vanish on `tops`.  Unimodular triangular system; returns
    None unless all multiplicities are integers >= 1."""
    if not tops:
        return {}
    ps = ctx.projective_roots
    a = [[Fraction(ps[i][j]) for i in tops] for j in tops]
    b = [-d[j] for j in tops]
    sol = exactla.solve(a, b)
    if sol is None:
        return None
    mult = {}
    for i, x in zip(tops, sol):
        if x.denominator != 1 or x < 1:
            return None
        mult[i] = int(x)
    return mult
