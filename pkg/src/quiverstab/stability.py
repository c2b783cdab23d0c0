"""King semi-stability, semi-stable subcategory descriptors, ss-equivalence.

A weight vector d cuts out the subcategory of <d,->-semi-stable
representations.  Its finite descriptor is either the relative-simple set
of C(W) for the generator W read off the canonical presentation (FinGen),
or, when the null root enters the decomposition, per-tube (J, F) data
inside the regulars (Regular: homogeneous tubes always fully included).
"""
from __future__ import annotations

from dataclasses import dataclass

from .candecomp import (ISOTROPIC_DELTA, NEG_PROJECTIVE, REAL_SCHUR,
                        canonical_presentation, cp_equivalent)
from .errors import InvariantViolation, UnsupportedClassError
from .homext import enumerate_real_schur_roots, generic_subs, is_schur_root
from .quiver import DYNKIN, EUCLIDEAN
from .regular import compute_tubes, facets_and_cones, perp_tube_part, root_to_arc
from . import oracle as oracle_mod

FINGEN = "FinGen"
REGULAR = "Regular"


@dataclass(frozen=True)
class SSDescriptor:
    variant: str
    relative_simples: frozenset = frozenset()   # FinGen
    tube_parts: tuple = ()                      # Regular: TubeThick per tube
    generators: tuple = ()                      # W summand roots (internal)
    certificates_clean: bool = True

    def same_subcategory(self, other):
        if self.variant != other.variant:
            return False
        if self.variant == FINGEN:
            return self.relative_simples == other.relative_simples
        return {t.tube: (t.J, t.F) for t in self.tube_parts} == \
               {t.tube: (t.J, t.F) for t in other.tube_parts}

    def to_json(self):
        if self.variant == FINGEN:
            return {"variant": FINGEN,
                    "relative_simples": sorted(list(r) for r in self.relative_simples)}
        return {"variant": REGULAR,
                "tubes": [t.to_json() for t in sorted(self.tube_parts,
                                                      key=lambda t: t.tube)],
                "homogeneous": "full"}


def _check_class(ctx):
    if ctx.klass not in (DYNKIN, EUCLIDEAN):
        raise UnsupportedClassError("stability analysis requires Dynkin or Euclidean type")
    ctx.require_connected("stability analysis")


def hss_contains(ctx, alpha, d):
    """d in H_alpha^ss, i.e. M(alpha) is <d,->-semi-stable (King's test on
    the generic subrepresentation dimensions of alpha)."""
    _check_class(ctx)
    alpha = tuple(int(x) for x in alpha)
    if not is_schur_root(ctx, alpha) or (ctx.klass == EUCLIDEAN and alpha == ctx.delta):
        raise ValueError(f"{alpha} is not a real Schur root")
    d = tuple(int(x) for x in d)
    if ctx.euler(d, alpha) != 0:
        return False
    return all(ctx.euler(d, sub) <= 0 for sub in generic_subs(ctx, alpha))


def in_C_I(ctx, d, index):
    """Exact membership of d in the cone C_I = cone(F_I + delta)."""
    data = facets_and_cones(ctx)
    index = tuple(index)
    if index not in data["C"]:
        raise ValueError(f"unknown facet index {index}")
    return data["C"][index].contains(tuple(int(x) for x in d))


def _descriptor_generators(ctx, pres):
    """W summand roots: real Schur roots of d_plus and the projective roots
    carried by d_minus."""
    gens = [s.root for s in pres.real_summands]
    ps = ctx.projective_roots
    for s in pres.negative_summands:
        gens.append(tuple(-x for x in s.root))
        assert tuple(-x for x in s.root) in ps
    return tuple(sorted(set(gens)))


def ss_descriptor(ctx, d, seed=0, prime=oracle_mod.DEFAULT_PRIME):
    """Finite descriptor of rep(Q)_d, per the canonical presentation of d."""
    _check_class(ctx)
    d = tuple(int(x) for x in d)
    key = ("ssdesc", d, seed, prime)
    cached = ctx._cache.get(key)
    if cached is not None:
        return cached
    pres = canonical_presentation(ctx, d)
    s = pres.delta_multiplicity
    gens = _descriptor_generators(ctx, pres)
    if s > 0:
        if pres.negative_summands:
            raise InvariantViolation(
                "delta cannot be compatible with a negative projective ray")
        tubes = compute_tubes(ctx)
        arcs_by_tube = {t.index: [] for t in tubes}
        for root in gens:
            arc = root_to_arc(ctx, root)  # Lemma onlyreg: summands are regular
            arcs_by_tube[arc.tube].append(arc)
        parts = tuple(perp_tube_part(ctx, t, arcs_by_tube[t.index]) for t in tubes)
        if any(not p.J for p in parts):
            raise InvariantViolation(
                "semi-stable Regular descriptor with an empty J part")
        desc = SSDescriptor(variant=REGULAR, tube_parts=parts, generators=gens)
    else:
        rs = oracle_mod.relative_simples(ctx, gens, seed=seed, prime=prime)
        desc = SSDescriptor(variant=FINGEN, relative_simples=frozenset(rs.roots),
                            generators=gens,
                            certificates_clean=rs.certificates_clean)
    ctx._cache[key] = desc
    return desc


@dataclass(frozen=True)
class EquivVerdict:
    kind: str            # equal | different | equal_modulo_certificates
    witness: object = None

    def to_json(self):
        out = {"verdict": self.kind}
        if self.witness is not None:
            out["witness"] = self.witness
        return out


def default_scan_bound(ctx):
    if ctx.klass == EUCLIDEAN:
        b = 4 * sum(ctx.delta)
    else:
        b = 16
    return (b,) * ctx.n


def _find_witness(ctx, d1, d2, bound=None):
    """A separating element of hyp: a C_I membership mismatch or a real
    Schur root alpha with exactly one of d1, d2 in H_alpha^ss.  Roots are
    scanned smallest first, so a typical witness is found immediately."""
    if ctx.klass == EUCLIDEAN:
        data = facets_and_cones(ctx)
        for index in data["R"]:
            if in_C_I(ctx, d1, index) != in_C_I(ctx, d2, index):
                return {"type": "C_I", "index": list(index)}
    bound = bound or default_scan_bound(ctx)
    roots = sorted(enumerate_real_schur_roots(ctx, bound),
                   key=lambda r: (sum(r), r))
    for alpha in roots:
        if ctx.klass == EUCLIDEAN and alpha == ctx.delta:
            continue
        try:
            if hss_contains(ctx, alpha, d1) != hss_contains(ctx, alpha, d2):
                return {"type": "H_alpha_ss", "alpha": list(alpha)}
        except ValueError:
            break  # scan bound outgrew the subrepresentation enumeration
    return None


def ss_equivalent(ctx, d1, d2, seed=0, prime=oracle_mod.DEFAULT_PRIME, bound=None):
    """Do d1 and d2 induce the same semi-stable subcategory?

    Ladder: cp-equivalence implies equality; otherwise descriptors are
    compared (variant tag, then tube parts or relative-simple sets); a
    negative verdict carries a hyp witness when one is found in the scan
    bound.
    """
    _check_class(ctx)
    d1 = tuple(int(x) for x in d1)
    d2 = tuple(int(x) for x in d2)
    if cp_equivalent(ctx, d1, d2):
        return EquivVerdict("equal")
    D1 = ss_descriptor(ctx, d1, seed=seed, prime=prime)
    D2 = ss_descriptor(ctx, d2, seed=seed, prime=prime)
    if D1.same_subcategory(D2):
        if D1.variant == FINGEN and not (D1.certificates_clean and D2.certificates_clean):
            return EquivVerdict("equal_modulo_certificates")
        return EquivVerdict("equal")
    return EquivVerdict("different", witness=_find_witness(ctx, d1, d2, bound=bound))


def hyp_profile(ctx, d, bound):
    """Truncated hyp membership listing: all C_I hits (exact) and the
    H_alpha^ss hits for real Schur alpha below the bound."""
    _check_class(ctx)
    d = tuple(int(x) for x in d)
    out = {"C": [], "H": []}
    if ctx.klass == EUCLIDEAN:
        data = facets_and_cones(ctx)
        out["C"] = [list(i) for i in data["R"] if in_C_I(ctx, d, i)]
    for alpha in enumerate_real_schur_roots(ctx, bound):
        if ctx.klass == EUCLIDEAN and alpha == ctx.delta:
            continue
        if hss_contains(ctx, alpha, d):
            out["H"].append(list(alpha))
    return out
