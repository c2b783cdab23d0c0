"""Thick-subcategory calculus in tubes and intersections of semi-stable
subcategories.

Inside one tube every thick subcategory has a unique (J, F) form; the
intersection calculus works on that form.  Intersections of two semi-stable
subcategories are computed case-wise: both regular-type descriptors meet
tube by tube, generator-type descriptors meet through the thick closure of
the combined generators, and the mixed case lands in a representation-
finite part of the regulars.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import exactla, oracle as oracle_mod
from .candecomp import canonical_presentation
from .errors import InvariantViolation, UnsupportedClassError
from .homext import ext_generic, hom_generic
from .quiver import DYNKIN, EUCLIDEAN
from .regular import (Arc, TubeRep, TubeThick, arc_dim, arc_in_EJ, arc_rep,
                      compute_tubes, decompose_arcs, facets_and_cones,
                      full_tube_part, orbit_OT, perp_tube_part, root_to_arc,
                      tube_ext, tube_hom, tube_rep_hom)
from .stability import FINGEN, REGULAR, SSDescriptor, in_C_I, ss_descriptor

__all__ = [
    "TubeThick", "RegularPart", "IntersectionResult", "tube_intersect",
    "intersect_ss", "enumerate_nonss", "tube_thick_member", "is_valid_tube_thick",
]


@dataclass(frozen=True)
class RegularPart:
    """A thick subcategory of the regulars that is not a semi-stable
    Regular descriptor: empty J parts allowed and the homogeneous tubes may
    be excluded wholesale."""
    tube_parts: tuple
    homogeneous_full: bool

    def to_json(self):
        return {"variant": "RegularPart",
                "tubes": [t.to_json() for t in sorted(self.tube_parts,
                                                      key=lambda t: t.tube)],
                "homogeneous": "full" if self.homogeneous_full else "none"}


@dataclass(frozen=True)
class IntersectionResult:
    descriptor: object            # SSDescriptor or RegularPart
    is_semistable: bool
    witnesses: tuple = ()         # two semi-stable descriptors when not ss

    def to_json(self):
        out = {"descriptor": self.descriptor.to_json(),
               "is_semistable": self.is_semistable}
        if self.witnesses:
            out["witnesses"] = [w.to_json() for w in self.witnesses]
        return out


def tube_thick_member(ctx, tube, part, arc):
    """arc lies in S_{J,F}: either in E_J or one of the finitely many F arcs."""
    return arc in part.F or arc_in_EJ(ctx, tube, part.J, arc)


def tube_intersect(ctx, t1, t2):
    """Intersection of two thick tube subcategories, in canonical form."""
    if t1.tube != t2.tube:
        raise ValueError("tube_intersect needs parts of the same tube")
    tube = compute_tubes(ctx)[t1.tube]
    r = tube.rank
    K = frozenset(t1.J) & frozenset(t2.J)
    G = set()
    for a in range(r):
        for l in range(1, r):
            arc = Arc(tube=tube.index, socle=a, length=l)
            if (tube_thick_member(ctx, tube, t1, arc)
                    and tube_thick_member(ctx, tube, t2, arc)
                    and not arc_in_EJ(ctx, tube, K, arc)):
                G.add(arc)
    if t1.J and t2.J:
        if G & set(orbit_OT(ctx, tube)):
            raise InvariantViolation(
                "intersection of nonempty-J tube parts touched the O_T orbit")
    return TubeThick(tube=tube.index, J=K, F=frozenset(G))


# -- per-input classification --------------------------------------------------

def _classify(ctx, d):
    """(kind, pres): kind is 'reg' (null root present), 'wing' (all summands
    regular, no null root: d on the boundary of the regular cone), or 'fin'
    (some non-regular summand or projective part)."""
    pres = canonical_presentation(ctx, d)
    if pres.delta_multiplicity > 0:
        return "reg", pres
    if ctx.klass != EUCLIDEAN:
        return "fin", pres
    if pres.negative_summands:
        return "fin", pres
    for s in pres.real_summands:
        if ctx.defect(s.root) != 0:
            return "fin", pres
    return "wing", pres


def _tube_parts_of(ctx, pres):
    """(J, F) per tube of W-perp within the regulars, W from the canonical
    presentation (all summands must be regular)."""
    tubes = compute_tubes(ctx)
    arcs_by_tube = {t.index: [] for t in tubes}
    for s in pres.real_summands:
        arc = root_to_arc(ctx, s.root)
        arcs_by_tube[arc.tube].append(arc)
    return tuple(perp_tube_part(ctx, t, arcs_by_tube[t.index]) for t in tubes)


def _common_C_I(ctx, d1, d2):
    data = facets_and_cones(ctx)
    return any(in_C_I(ctx, d1, i) and in_C_I(ctx, d2, i) for i in data["R"])


def _closure_fingen(ctx, gens, seed, prime):
    rs = oracle_mod.relative_simples(ctx, sorted(set(gens)), seed=seed, prime=prime)
    return SSDescriptor(variant=FINGEN, relative_simples=frozenset(rs.roots),
                        generators=tuple(sorted(set(gens))),
                        certificates_clean=rs.certificates_clean)


def _gens_of(ctx, pres):
    gens = [s.root for s in pres.real_summands]
    for s in pres.negative_summands:
        gens.append(tuple(-x for x in s.root))
    return gens


def intersect_ss(ctx, d1, d2, seed=0, prime=oracle_mod.DEFAULT_PRIME):
    """rep(Q)_{d1} \\cap rep(Q)_{d2}, with a semi-stability verdict."""
    if ctx.klass not in (DYNKIN, EUCLIDEAN):
        raise UnsupportedClassError("intersections require Dynkin or Euclidean type")
    ctx.require_connected("intersections")
    d1 = tuple(int(x) for x in d1)
    d2 = tuple(int(x) for x in d2)
    k1, p1 = _classify(ctx, d1)
    k2, p2 = _classify(ctx, d2)

    if ctx.klass == DYNKIN:
        desc = _closure_fingen(ctx, _gens_of(ctx, p1) + _gens_of(ctx, p2), seed, prime)
        return IntersectionResult(descriptor=desc, is_semistable=True)

    if k1 != "fin" and k2 != "fin":
        # both categories contain every homogeneous tube
        if k1 == "wing" and k2 == "wing" and _common_C_I(ctx, d1, d2):
            # both boundary weights in one wing cone: the intersection is the
            # plain perp of the combined rigid generator, not inside Reg
            desc = _closure_fingen(ctx, _gens_of(ctx, p1) + _gens_of(ctx, p2),
                                   seed, prime)
            return IntersectionResult(descriptor=desc, is_semistable=True)
        parts1 = _tube_parts_of(ctx, p1)
        parts2 = _tube_parts_of(ctx, p2)
        merged = tuple(tube_intersect(ctx, a, b) for a, b in zip(parts1, parts2))
        if all(part.J for part in merged):
            desc = SSDescriptor(variant=REGULAR, tube_parts=merged)
            return IntersectionResult(descriptor=desc, is_semistable=True)
        D1 = ss_descriptor(ctx, d1, seed=seed, prime=prime)
        D2 = ss_descriptor(ctx, d2, seed=seed, prime=prime)
        return IntersectionResult(
            descriptor=RegularPart(tube_parts=merged, homogeneous_full=True),
            is_semistable=False, witnesses=(D1, D2))

    if k1 == "fin" and k2 == "fin" or {k1, k2} == {"fin", "wing"}:
        # combined thick closure leaves the regulars, hence is generated by
        # an exceptional sequence and the intersection is its perp
        desc = _closure_fingen(ctx, _gens_of(ctx, p1) + _gens_of(ctx, p2), seed, prime)
        return IntersectionResult(descriptor=desc, is_semistable=True)

    # mixed: one side is regular-type, the other has a non-regular generator;
    # the result is representation-finite and lives inside the regulars with
    # the homogeneous tubes cut away
    (kf, pf), (kr_, pr) = ((k1, p1), (k2, p2)) if k1 == "fin" else ((k2, p2), (k1, p1))
    fin_gens = _gens_of(ctx, pf)
    reg_parts = _tube_parts_of(ctx, pr)
    tubes = compute_tubes(ctx)
    merged = []
    for tube, reg_part in zip(tubes, reg_parts):
        F = set()
        for a in range(tube.rank):
            for l in range(1, tube.rank):
                arc = Arc(tube=tube.index, socle=a, length=l)
                if not tube_thick_member(ctx, tube, reg_part, arc):
                    continue
                dim = arc_dim(ctx, arc)
                if all(hom_generic(ctx, w, dim) == 0 and ext_generic(ctx, w, dim) == 0
                       for w in fin_gens):
                    F.add(arc)
        merged.append(TubeThick(tube=tube.index, J=frozenset(), F=frozenset(F)))
    return IntersectionResult(
        descriptor=RegularPart(tube_parts=tuple(merged), homogeneous_full=False),
        is_semistable=True)


# -- enumeration of the non-semi-stable intersections ---------------------------

def ej_relative_quasi_simples(ctx, tube, J):
    """The |J| minimal arcs of E_J: from each j in J down to just above the
    next element of J in the filtration (downward) order."""
    out = []
    r = tube.rank
    for j in sorted(J):
        k = 1
        while (j - k) % r not in J:
            k += 1
        out.append(Arc(tube=tube.index, socle=j, length=k))
    return out


def _extension_middle_arcs(r, x, y):
    """Indecomposable summands of the middle of a nontrivial extension of
    arc x by arc y (same tube, ext dimension must be 1)."""
    X = arc_rep(r, x.socle, x.length)
    Y = arc_rep(r, y.socle, y.length)
    # cocycles phi_g: X_g -> Y_{g+1}; coboundaries are y_g f_g - f_{g+1} x_g
    offs = []
    total = 0
    for g in range(r):
        offs.append(total)
        total += Y.dims[(g + 1) % r] * X.dims[g]
    cob_cols = []
    _, hom_like_basis = _all_graded_maps(X, Y)
    for f in hom_like_basis:
        col = [Fraction(0)] * total
        for g in range(r):
            g1 = (g + 1) % r
            # (y_g f_g - f_{g+1} x_g): X_g -> Y_{g+1}
            for i in range(Y.dims[g1]):
                for j in range(X.dims[g]):
                    val = sum(Y.maps[g][i][k] * f[g][k][j]
                              for k in range(Y.dims[g]))
                    val -= sum(f[g1][i][k] * X.maps[g][k][j]
                               for k in range(X.dims[g1]))
                    col[offs[g] + i * X.dims[g] + j] = Fraction(val)
        cob_cols.append(col)
    cb_rank = exactla.rank([[cob_cols[c][rix] for c in range(len(cob_cols))]
                            for rix in range(total)]) if cob_cols else 0
    ext_dim = total - cb_rank
    if ext_dim != 1:
        raise InvariantViolation(
            f"expected a 1-dimensional extension space, got {ext_dim}")
    # pick a unit cocycle outside the coboundary span
    phi_flat = None
    for k in range(total):
        probe = [[cob_cols[c][rix] for c in range(len(cob_cols))] + [Fraction(int(rix == k))]
                 for rix in range(total)]
        if exactla.rank(probe) == cb_rank + 1:
            phi_flat = k
            break
    if phi_flat is None:
        raise InvariantViolation("no nontrivial extension cocycle found")
    dims = [Y.dims[g] + X.dims[g] for g in range(r)]
    maps = []
    for g in range(r):
        g1 = (g + 1) % r
        m = [[0] * dims[g] for _ in range(dims[g1])]
        for i in range(Y.dims[g1]):
            for j in range(Y.dims[g]):
                m[i][j] = Y.maps[g][i][j]
        for i in range(X.dims[g1]):
            for j in range(X.dims[g]):
                m[Y.dims[g1] + i][Y.dims[g] + j] = X.maps[g][i][j]
        for i in range(Y.dims[g1]):
            for j in range(X.dims[g]):
                if offs[g] + i * X.dims[g] + j == phi_flat:
                    m[i][Y.dims[g] + j] = 1
        maps.append(m)
    middle = TubeRep(r, dims, maps)
    return decompose_arcs(middle)


def _all_graded_maps(X, Y):
    """Standard basis of degree-0 graded maps (f_g: X_g -> Y_g)."""
    basis = []
    for g in range(X.r):
        for i in range(Y.dims[g]):
            for j in range(X.dims[g]):
                f = [[[0] * X.dims[h] for _ in range(Y.dims[h])] for h in range(X.r)]
                f[g][i][j] = 1
                basis.append(f)
    return len(basis), basis


def _arcs_of_map_pieces(ctx, tube, x, y):
    """(kernel, image, cokernel) arc multisets of the nonzero map x -> y,
    when Hom is 1-dimensional; None when Hom vanishes."""
    r = tube.rank
    X = arc_rep(r, x.socle, x.length)
    Y = arc_rep(r, y.socle, y.length)
    hdim, basis = tube_rep_hom(X, Y)
    if hdim == 0:
        return None
    if hdim != 1:
        raise InvariantViolation("exceptional arcs with a Hom space of dim > 1")
    f = basis[0]
    ker_bases = []
    for g in range(r):
        if X.dims[g] == 0:
            ker_bases.append([])
        elif Y.dims[g] == 0:
            ker_bases.append([[Fraction(int(i == j)) for j in range(X.dims[g])]
                              for i in range(X.dims[g])])
        else:
            mat = [[Fraction(f[g][i][j]) for j in range(X.dims[g])]
                   for i in range(Y.dims[g])]
            ker_bases.append(exactla.nullspace(mat))
    ker = _restrict_tube_rep(X, ker_bases)
    img_bases = []
    for g in range(r):
        cols = [[Fraction(f[g][i][j]) for i in range(Y.dims[g])]
                for j in range(X.dims[g])]  # columns of f_g as rows
        red, piv = exactla.rref(cols) if cols else ([], [])
        img_bases.append([red[k] for k in range(len(piv))])
    image = _restrict_tube_rep_rows(Y, img_bases)
    coker = _quotient_tube_rep(Y, img_bases)
    return decompose_arcs(ker), decompose_arcs(image), decompose_arcs(coker)


def _restrict_tube_rep(X, bases):
    """Restrict X to per-grade column-span subspaces (x-stable)."""
    r = X.r
    dims = [len(b) for b in bases]
    mats = []
    for g in range(r):
        g1 = (g + 1) % r
        cols = []
        for vec in bases[g]:
            img = [sum(Fraction(X.maps[g][i][j]) * vec[j] for j in range(X.dims[g]))
                   for i in range(X.dims[g1])]
            sol = _express_in_basis(img, bases[g1])
            cols.append(sol)
        mats.append([[cols[j][i] for j in range(dims[g])] for i in range(dims[g1])])
    return TubeRep(r, dims, mats)


def _restrict_tube_rep_rows(Y, row_bases):
    bases = [[list(v) for v in b] for b in row_bases]
    return _restrict_tube_rep(Y, bases)


def _express_in_basis(vec, basis):
    if not basis:
        if any(x != 0 for x in vec):
            raise InvariantViolation("vector outside the stated subspace")
        return []
    mat = [[Fraction(basis[j][i]) for j in range(len(basis))] for i in range(len(vec))]
    sol = exactla.solve(mat, vec)
    if sol is None:
        raise InvariantViolation("vector outside the stated subspace")
    return sol


def _quotient_tube_rep(Y, row_bases):
    r = Y.r
    projs, secs, dims = [], [], []
    for g in range(r):
        d = Y.dims[g]
        rows = [list(v) for v in row_bases[g]]
        if not rows:
            projs.append(exactla.identity(d))
            secs.append(exactla.identity(d))
            dims.append(d)
            continue
        red, pivots = exactla.rref(rows)
        sub = red[:len(pivots)]
        free = [c for c in range(d) if c not in pivots]
        pr = [[Fraction(0)] * d for _ in free]
        sec = [[Fraction(0)] * len(free) for _ in range(d)]
        for rr, fc in enumerate(free):
            pr[rr][fc] = Fraction(1)
            sec[fc][rr] = Fraction(1)
            for k, pc in enumerate(pivots):
                pr[rr][pc] = -sub[k][fc]
        projs.append(pr)
        secs.append(sec)
        dims.append(len(free))
    mats = []
    for g in range(r):
        g1 = (g + 1) % r
        m = exactla.mat_mul(exactla.mat_mul(projs[g1], exactla.frac_matrix(Y.maps[g])),
                            secs[g]) if dims[g1] and dims[g] else \
            [[Fraction(0)] * dims[g] for _ in range(dims[g1])]
        mats.append(m)
    return TubeRep(r, dims, mats)


def is_valid_tube_thick(ctx, tube, part):
    """(E_J, F) is a regular orthogonal pair: every F arc is exceptional,
    two-sided perpendicular to E_J, outside E_J, and F is thick in the tube."""
    r = tube.rank
    qs = ej_relative_quasi_simples(ctx, tube, part.J)
    for arc in part.F:
        if not (1 <= arc.length <= r - 1):
            return False
        if arc_in_EJ(ctx, tube, part.J, arc):
            return False
        for q in qs:
            if (tube_hom(ctx, arc, q) or tube_ext(ctx, arc, q)
                    or tube_hom(ctx, q, arc) or tube_ext(ctx, q, arc)):
                return False
    # thickness of F via the arc calculus
    members = set(part.F)
    for x in part.F:
        for y in part.F:
            pieces = _arcs_of_map_pieces(ctx, tube, x, y)
            if pieces is not None:
                for multiset in pieces:
                    for (a, l) in multiset:
                        if l > r - 1 or Arc(tube=tube.index, socle=a, length=l) not in members:
                            return False
            if tube_ext(ctx, x, y):
                mids = _extension_middle_arcs(r, x, y)
                for (a, l) in mids:
                    if l > r - 1 or Arc(tube=tube.index, socle=a, length=l) not in members:
                        return False
    return True


def _tube_options(ctx, tube, exclude_OT):
    """All valid (J, F) pairs for one tube; with exclude_OT the F pool skips
    the quasi-length-(r-1) orbit (intersection condition (c))."""
    r = tube.rank
    options = []
    ot = {(a.socle, a.length) for a in orbit_OT(ctx, tube)}
    for jmask in range(1 << r):
        J = frozenset(a for a in range(r) if (jmask >> a) & 1)
        qs = ej_relative_quasi_simples(ctx, tube, J)
        pool = []
        for a in range(r):
            for l in range(1, r):
                if exclude_OT and (a, l) in ot:
                    continue
                arc = Arc(tube=tube.index, socle=a, length=l)
                if arc_in_EJ(ctx, tube, J, arc):
                    continue
                if all(not (tube_hom(ctx, arc, q) or tube_ext(ctx, arc, q)
                            or tube_hom(ctx, q, arc) or tube_ext(ctx, q, arc))
                       for q in qs):
                    pool.append(arc)
        for fmask in range(1 << len(pool)):
            F = frozenset(pool[i] for i in range(len(pool)) if (fmask >> i) & 1)
            part = TubeThick(tube=tube.index, J=J, F=F)
            if is_valid_tube_thick(ctx, tube, part):
                options.append(part)
    options.sort(key=lambda p: p.sort_key())
    return options


def enumerate_nonss(ctx, seed=0):
    """All intersections of semi-stable subcategories that are not
    themselves semi-stable: per-tube valid (J, F) with the F parts avoiding
    O_T, at least one J empty, homogeneous tubes included; each item
    carries two semi-stable witnesses intersecting back to it."""
    if ctx.klass != EUCLIDEAN:
        raise UnsupportedClassError("enumerate_nonss requires a Euclidean quiver")
    ctx.require_connected("enumerate_nonss")
    tubes = compute_tubes(ctx)
    per_tube = [_tube_options(ctx, t, exclude_OT=True) for t in tubes]
    total = 1
    total_nonempty = 1
    for opts in per_tube:
        total *= len(opts)
        total_nonempty *= sum(1 for p in opts if p.J)
    combos = [()]
    for opts in per_tube:
        combos = [c + (p,) for c in combos for p in opts]
    items = []
    for combo in combos:
        if all(p.J for p in combo):
            continue
        witnesses = _witness_pair(ctx, tubes, combo)
        items.append(IntersectionResult(
            descriptor=RegularPart(tube_parts=combo, homogeneous_full=True),
            is_semistable=False, witnesses=witnesses))
    if len(items) != total - total_nonempty:
        raise InvariantViolation("non-semi-stable enumeration count mismatch")
    items.sort(key=lambda it: tuple(p.sort_key() for p in it.descriptor.tube_parts))
    return items


def _witness_pair(ctx, tubes, combo):
    """Two semi-stable Regular descriptors intersecting to the given tuple:
    an empty-J tube splits as S_{J,G} \\cap S_{J^c,0} around a
    singular-isotropic whose two-sided perp contains G."""
    parts1, parts2 = [], []
    for tube, part in zip(tubes, combo):
        r = tube.rank
        if part.J:
            parts1.append(part)
            parts2.append(part)
            continue
        chosen = None
        for a in range(r):
            z = Arc(tube=tube.index, socle=a, length=r)
            if all(not (tube_hom(ctx, f, z) or tube_ext(ctx, f, z)
                        or tube_hom(ctx, z, f) or tube_ext(ctx, z, f))
                   for f in part.F):
                chosen = a
                break
        if chosen is None:
            raise InvariantViolation("no singular-isotropic avoids the F part")
        parts1.append(TubeThick(tube=tube.index, J=frozenset({chosen}), F=part.F))
        parts2.append(TubeThick(tube=tube.index,
                                J=frozenset(range(r)) - {chosen}, F=frozenset()))
    w1 = SSDescriptor(variant=REGULAR, tube_parts=tuple(parts1))
    w2 = SSDescriptor(variant=REGULAR, tube_parts=tuple(parts2))
    return (w1, w2)
