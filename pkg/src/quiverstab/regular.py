"""Euclidean regular combinatorics: tubes, arcs, the regular cone.

Non-homogeneous tubes are recovered as Coxeter orbits of the regular
exceptional roots; arcs live in a rank-r stable tube modelled by nilpotent
representations of the cyclic quiver with r vertices (grades Z/r, one map
per grade).  All tube Hom spaces come from exact linear algebra on that
model; Ext uses the Auslander-Reiten formula ext(X,Y) = hom(Y, tau X) with
tau shifting the quasi-socle by +1.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from . import exactla
from .cones import RationalCone
from .errors import InvalidQuiverError, InvariantViolation, UnsupportedClassError
from .quiver import EUCLIDEAN


@dataclass(frozen=True)
class TubeModel:
    index: int
    rank: int
    quasi_simples: tuple  # beta_0..beta_{r-1} with coxeter(beta_j) = beta_{j+1 mod r}

    def to_json(self):
        return {"index": self.index, "rank": self.rank,
                "quasi_simples": [list(b) for b in self.quasi_simples]}


@dataclass(frozen=True)
class Arc:
    tube: int
    socle: int
    length: int

    def to_json(self):
        return [self.socle, self.length]


@dataclass(frozen=True)
class TubeThick:
    """A thick subcategory of one tube in canonical (J, F) form: E_J is the
    right perpendicular (inside the tube) of the quasi-simples not in J, and
    F collects the exceptional arcs outside E_J."""
    tube: int
    J: frozenset
    F: frozenset  # of Arc

    def sort_key(self):
        return (self.tube, tuple(sorted(self.J)),
                tuple(sorted((a.socle, a.length) for a in self.F)))

    def to_json(self):
        return {"tube": self.tube, "J": sorted(self.J),
                "F": sorted([a.socle, a.length] for a in self.F)}


def arc_in_EJ(ctx, tube, J, arc):
    """arc lies in E_J: Hom and Ext from every quasi-simple not in J vanish."""
    for b in range(tube.rank):
        if b in J:
            continue
        qs = Arc(tube=tube.index, socle=b, length=1)
        if tube_hom(ctx, qs, arc) or tube_ext(ctx, qs, arc):
            return False
    return True


def perp_tube_part(ctx, tube, warcs):
    """(J, F) of W-perp intersected with this tube, for W the direct sum of
    the given arcs of the tube (right perpendicular)."""
    r = tube.rank
    def perp(x):
        return all(tube_hom(ctx, w, x) == 0 and tube_ext(ctx, w, x) == 0
                   for w in warcs)
    J = frozenset(a for a in range(r)
                  if perp(Arc(tube=tube.index, socle=a, length=r)))
    F = frozenset(arc for a in range(r) for l in range(1, r)
                  for arc in [Arc(tube=tube.index, socle=a, length=l)]
                  if perp(arc) and not arc_in_EJ(ctx, tube, J, arc))
    return TubeThick(tube=tube.index, J=J, F=F)


def full_tube_part(tube):
    return TubeThick(tube=tube.index, J=frozenset(range(tube.rank)), F=frozenset())


def _require_euclidean(ctx, what):
    if ctx.klass != EUCLIDEAN:
        raise UnsupportedClassError(f"{what} requires a Euclidean quiver")
    ctx.require_connected(what)


def compute_tubes(ctx):
    """All non-homogeneous tubes, sorted by lexicographically smallest
    quasi-simple; each tube's list starts at that root and follows the
    Coxeter orbit."""
    _require_euclidean(ctx, "tube computation")
    cached = ctx._cache.get("tubes")
    if cached is not None:
        return cached
    delta = ctx.delta
    n = ctx.n
    # regular exceptional roots: 0 <= d <= delta, d not in {0, delta}, q=1, defect=0
    roots = set()
    for d in product(*(range(x + 1) for x in delta)):
        if any(d) and d != delta and ctx.q(d) == 1 and ctx.defect(d) == 0:
            roots.add(d)
    tubes = []
    seen = set()
    for d in sorted(roots):
        if d in seen:
            continue
        orbit = [d]
        cur = ctx.coxeter(d)
        while cur != d:
            if cur not in roots:
                raise InvariantViolation(
                    f"Coxeter orbit of {d} left the regular exceptional roots at {cur}")
            orbit.append(cur)
            cur = ctx.coxeter(cur)
        seen.update(orbit)
        total = tuple(sum(b[i] for b in orbit) for i in range(n))
        if total == delta:
            tubes.append(orbit)
    tubes.sort(key=lambda orb: min(orb))
    models = []
    for i, orb in enumerate(tubes):
        start = orb.index(min(orb))
        ordered = tuple(orb[(start + j) % len(orb)] for j in range(len(orb)))
        models.append(TubeModel(index=i, rank=len(orb), quasi_simples=ordered))
    models = tuple(models)
    count = sum(t.rank - 1 for t in models)
    if count != n - 2:
        raise InvariantViolation(
            f"tube rank identity failed: sum(r_i - 1) = {count} != n - 2 = {n - 2}")
    if sum(t.rank for t in models) != n - 2 + len(models):
        raise InvariantViolation("quasi-simple count identity failed")
    ctx._cache["tubes"] = models
    return models


def arc_dim(ctx, arc):
    """Dimension vector of an arc: quasi-composition factors from the
    quasi-socle upward are C^{-m} beta_socle, i.e. beta_{socle - m}."""
    tube = compute_tubes(ctx)[arc.tube]
    r = tube.rank
    n = ctx.n
    out = [0] * n
    for m in range(arc.length):
        b = tube.quasi_simples[(arc.socle - m) % r]
        for i in range(n):
            out[i] += b[i]
    return tuple(out)


def root_to_arc(ctx, d):
    """The unique (tube, socle, length <= r-1) whose factor sum is d."""
    d = tuple(int(x) for x in d)
    for tube in compute_tubes(ctx):
        r = tube.rank
        for a in range(r):
            for l in range(1, r):
                arc = Arc(tube=tube.index, socle=a, length=l)
                if arc_dim(ctx, arc) == d:
                    return arc
    raise ValueError(f"{d} is not a regular exceptional root")


def orbit_OT(ctx, tube):
    """The quasi-length-(r-1) tau-orbit, directly below the singular-isotropics."""
    return tuple(Arc(tube=tube.index, socle=a, length=tube.rank - 1)
                 for a in range(tube.rank))


# --- the nilpotent cyclic-quiver model --------------------------------------

class TubeRep:
    """Nilpotent representation of the rank-r cyclic quiver: spaces are
    graded by Z/r, and maps[g] sends grade g to grade g+1."""

    def __init__(self, r, dims, maps):
        self.r = r
        self.dims = list(dims)
        self.maps = [[list(row) for row in m] for m in maps]  # maps[g]: dims[g+1] x dims[g]

    @property
    def total_dim(self):
        return sum(self.dims)


def arc_rep(r, socle, length):
    """Explicit matrices for the arc with given quasi-socle and length."""
    dims = [0] * r
    grade_of = []
    for m in range(length):
        g = (socle - m) % r
        grade_of.append(g)
        dims[g] += 1
    pos = []
    counters = [0] * r
    for m in range(length):
        g = grade_of[m]
        pos.append(counters[g])
        counters[g] += 1
    maps = [[[0] * dims[g] for _ in range(dims[(g + 1) % r])] for g in range(r)]
    for m in range(1, length):
        g = grade_of[m]          # x v_m = v_{m-1}, grade g -> g+1
        maps[g][pos[m - 1]][pos[m]] = 1
    return TubeRep(r, dims, maps)


def _hom_system(x, y):
    """Matrix of f -> (f_{g+1} x_g - y_g f_g); kernel = Hom(x, y)."""
    r = x.r
    var_offset = []
    total = 0
    for g in range(r):
        var_offset.append(total)
        total += y.dims[g] * x.dims[g]
    rows = []
    for g in range(r):
        g1 = (g + 1) % r
        for i in range(y.dims[g1]):
            for j in range(x.dims[g]):
                row = [Fraction(0)] * total
                # (f_{g+1} x_g)[i][j] = sum_k f_{g+1}[i][k] x_g[k][j]
                for k in range(x.dims[g1]):
                    row[var_offset[g1] + i * x.dims[g1] + k] += x.maps[g][k][j]
                # (y_g f_g)[i][j] = sum_k y_g[i][k] f_g[k][j]
                for k in range(y.dims[g]):
                    row[var_offset[g] + k * x.dims[g] + j] -= y.maps[g][i][k]
                rows.append(row)
    return rows, var_offset, total


def tube_rep_hom(x, y):
    """(dimension, basis) of Hom(x, y); basis maps given per grade."""
    if x.total_dim == 0 or y.total_dim == 0:
        return 0, []
    rows, var_offset, total = _hom_system(x, y)
    kernel = exactla.nullspace(rows) if rows else [
        [Fraction(int(i == j)) for j in range(total)] for i in range(total)]
    basis = []
    for vec in kernel:
        f = []
        for g in range(x.r):
            mat = [[vec[var_offset[g] + i * x.dims[g] + j] for j in range(x.dims[g])]
                   for i in range(y.dims[g])]
            f.append(mat)
        basis.append(f)
    return len(kernel), basis


def decompose_arcs(rep):
    """Multiset of (socle, length) arcs of a nilpotent cyclic-quiver rep.

    Counting via death indices: f(g,k) = rank of the k-step composite out of
    grade g; the number of arcs with socle a and length >= k+1 equals
    f(a-k, k) - f(a-k, k+1).
    """
    r = rep.r
    total = rep.total_dim
    if total == 0:
        return {}
    f = {}
    for g in range(r):
        comp = exactla.identity(rep.dims[g])
        f[(g, 0)] = rep.dims[g]
        k = 0
        while True:
            k += 1
            m = exactla.frac_matrix(rep.maps[(g + k - 1) % r])
            comp = exactla.mat_mul(m, comp) if comp and m else []
            rk = exactla.rank(comp) if comp else 0
            f[(g, k)] = rk
            if rk == 0 or k > total:
                break
        kmax = k
        for kk in range(k + 1, total + 3):
            f[(g, kk)] = 0
    out = {}
    for a in range(r):
        for l in range(1, total + 1):
            atleast_l = f[((a - (l - 1)) % r, l - 1)] - f[((a - (l - 1)) % r, l)]
            atleast_l1 = f[((a - l) % r, l)] - f[((a - l) % r, l + 1)]
            mult = atleast_l - atleast_l1
            if mult < 0:
                raise InvariantViolation("arc multiplicity came out negative")
            if mult:
                out[(a, l)] = mult
    if sum((a_l[1]) * m for a_l, m in out.items()) != total:
        raise InvariantViolation("arc decomposition does not add up")
    return out


# --- tube Hom/Ext on arcs ---------------------------------------------------

_tube_pair_cache = {}


def _tube_hom_dim(r, a1, l1, a2, l2):
    key = (r, a1 % r, l1, a2 % r, l2)
    val = _tube_pair_cache.get(key)
    if val is None:
        val, _ = tube_rep_hom(arc_rep(r, key[1], l1), arc_rep(r, key[3], l2))
        _tube_pair_cache[key] = val
    return val


def _check_same_ctx_arcs(ctx, arc1, arc2):
    tubes = compute_tubes(ctx)
    if not (0 <= arc1.tube < len(tubes)) or not (0 <= arc2.tube < len(tubes)):
        raise ValueError("arc refers to a tube outside this context")
    if min(arc1.length, arc2.length, 1) < 1:
        raise ValueError("arc length must be >= 1")


def tube_hom(ctx, arc1, arc2):
    _check_same_ctx_arcs(ctx, arc1, arc2)
    if arc1.tube != arc2.tube:
        return 0
    r = compute_tubes(ctx)[arc1.tube].rank
    return _tube_hom_dim(r, arc1.socle, arc1.length, arc2.socle, arc2.length)


def tube_ext(ctx, arc1, arc2):
    """ext(X, Y) = hom(Y, tau X); tau shifts the socle index by +1."""
    _check_same_ctx_arcs(ctx, arc1, arc2)
    if arc1.tube != arc2.tube:
        return 0
    r = compute_tubes(ctx)[arc1.tube].rank
    return _tube_hom_dim(r, arc2.socle, arc2.length, (arc1.socle + 1) % r, arc1.length)


# --- regular cone, facets, dependency space ---------------------------------

def facets_and_cones(ctx):
    """R (one dropped quasi-simple index per tube), the facet cones F_I, the
    cones C_I = cone(F_I + delta) and H_delta_ss = cone(all quasi-simples +
    delta).  For the Kronecker quiver R = {()} with F = 0 and C = [delta]."""
    _require_euclidean(ctx, "regular cone computation")
    cached = ctx._cache.get("facets")
    if cached is not None:
        return cached
    tubes = compute_tubes(ctx)
    n = ctx.n
    delta = ctx.delta
    all_qs = [b for t in tubes for b in t.quasi_simples]
    h_ss = RationalCone(n, all_qs + [delta])
    index_sets = [()]
    for t in tubes:
        index_sets = [idx + (a,) for idx in index_sets for a in range(t.rank)]
    facets = {}
    cones = {}
    for idx in index_sets:
        gens = []
        for t, drop in zip(tubes, idx):
            gens.extend(b for j, b in enumerate(t.quasi_simples) if j != drop)
        facets[idx] = RationalCone(n, gens)
        cones[idx] = RationalCone(n, gens + [delta])
    result = {"R": tuple(index_sets), "F": facets, "C": cones, "H_delta_ss": h_ss}
    _verify_regular_cone(ctx, tubes, result)
    ctx._cache["facets"] = result
    return result


def _verify_regular_cone(ctx, tubes, data):
    h = data["H_delta_ss"]
    for t in tubes:
        r = t.rank
        for a in range(r):
            for l in range(1, r):
                d = arc_dim(ctx, Arc(tube=t.index, socle=a, length=l))
                if not h.contains(d):
                    raise InvariantViolation(f"regular root {d} outside H_delta_ss")
                on_boundary = any(
                    sum(Fraction(fi) * di for fi, di in zip(f, d)) == 0
                    for f in h.facet_inequalities)
                if not on_boundary:
                    raise InvariantViolation(
                        f"regular real Schur root {d} not on the boundary of H_delta_ss")
    if tubes:
        # boundary face structure: each facet cone F_I drops one vertex per tube;
        # generators-in-facet incidence must match the simplicial join
        for idx in data["R"]:
            expect = sum(t.rank - 1 for t in tubes)
            if len(data["F"][idx].generators) != expect:
                raise InvariantViolation("facet F_I has wrong generator count")


def quasi_simple_dependencies(ctx):
    """Primitive basis of the linear dependency space among all quasi-simple
    roots; its dimension must be N-1."""
    _require_euclidean(ctx, "dependency computation")
    tubes = compute_tubes(ctx)
    all_qs = [b for t in tubes for b in t.quasi_simples]
    if not all_qs:
        return ()
    mat = [[Fraction(b[i]) for b in all_qs] for i in range(ctx.n)]
    basis = exactla.nullspace(mat)
    if len(basis) != len(tubes) - 1:
        raise InvariantViolation(
            f"dependency space has dimension {len(basis)}, expected N-1 = {len(tubes) - 1}")
    return tuple(tuple(exactla.primitive_integer_vector(v)) for v in basis)
