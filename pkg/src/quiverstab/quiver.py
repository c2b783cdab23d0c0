"""Quivers, the Euler form, Coxeter transformation and type classification."""
from __future__ import annotations

import json
from fractions import Fraction

from . import exactla
from .errors import InvalidQuiverError, InvariantViolation, UnsupportedClassError

DYNKIN = "Dynkin"
EUCLIDEAN = "Euclidean"
WILD = "Wild"


class Quiver:
    """A finite acyclic quiver on vertices 1..n, parallel arrows allowed."""

    def __init__(self, n, arrows):
        if not isinstance(n, int) or n <= 0:
            raise InvalidQuiverError("vertex count must be a positive integer")
        arrows = [(int(s), int(t)) for s, t in arrows]
        for s, t in arrows:
            if not (1 <= s <= n and 1 <= t <= n):
                raise InvalidQuiverError(f"arrow ({s},{t}) out of vertex range 1..{n}")
            if s == t:
                raise InvalidQuiverError(f"loop at vertex {s} is not allowed")
        self.n = n
        self.arrows = sorted(arrows)
        self._topological_order()  # raises on cycles

    def _topological_order(self):
        indeg = [0] * (self.n + 1)
        out = [[] for _ in range(self.n + 1)]
        for s, t in self.arrows:
            indeg[t] += 1
            out[s].append(t)
        order = [v for v in range(1, self.n + 1) if indeg[v] == 0]
        seen = 0
        while seen < len(order):
            v = order[seen]
            seen += 1
            for w in out[v]:
                indeg[w] -= 1
                if indeg[w] == 0:
                    order.append(w)
        if len(order) != self.n:
            raise InvalidQuiverError("quiver has an oriented cycle")
        return order

    @property
    def topological(self):
        return self._topological_order()

    def is_connected(self):
        if self.n == 1:
            return True
        adj = [set() for _ in range(self.n + 1)]
        for s, t in self.arrows:
            adj[s].add(t)
            adj[t].add(s)
        seen = {1}
        stack = [1]
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.n

    def to_json(self):
        return json.dumps({"vertices": self.n, "arrows": [list(a) for a in self.arrows]},
                          separators=(",", ":"))

    @classmethod
    def from_json(cls, text):
        try:
            data = json.loads(text)
            return cls(data["vertices"], data["arrows"])
        except (KeyError, TypeError, ValueError) as e:
            if isinstance(e, InvalidQuiverError):
                raise
            raise InvalidQuiverError(f"malformed quiver JSON: {e}") from e

    def __repr__(self):
        return f"Quiver(n={self.n}, arrows={self.arrows})"

    def __eq__(self, other):
        return isinstance(other, Quiver) and (self.n, self.arrows) == (other.n, other.arrows)

    def __hash__(self):
        return hash((self.n, tuple(self.arrows)))


class EulerContext:
    """Immutable bundle: quiver, Euler matrix, Coxeter matrix, type, null root.

    The per-context memo tables (generic ext, compatibility, tubes, cones)
    live here as idempotent caches; concurrent duplicate computation is
    harmless.
    """

    def __init__(self, quiver, E, C, klass, delta):
        self.quiver = quiver
        self.n = quiver.n
        self.E = E            # tuple of tuples, int
        self.C = C            # tuple of tuples, int
        self.klass = klass
        self.delta = delta    # tuple of ints or None
        self._ext_memo = {}
        self._subs_memo = {}
        self._compat_memo = {}
        self._cache = {}      # lazily computed derived structures

    # -- basic pairings ----------------------------------------------------
    def euler(self, d, e):
        if len(d) != self.n or len(e) != self.n:
            raise ValueError("vector length mismatch")
        total = sum(int(d[i]) * int(e[i]) for i in range(self.n))
        for s, t in self.quiver.arrows:
            total -= int(d[s - 1]) * int(e[t - 1])
        return total

    def q(self, d):
        return self.euler(d, d)

    def coxeter(self, d):
        if len(d) != self.n:
            raise ValueError("vector length mismatch")
        return tuple(sum(self.C[i][j] * int(d[j]) for j in range(self.n))
                     for i in range(self.n))

    def coxeter_inv(self, d):
        Cinv = self._cache.get("Cinv")
        if Cinv is None:
            inv = exactla.inverse(exactla.frac_matrix(self.C))
            Cinv = tuple(tuple(_as_int(x) for x in row) for row in inv)
            self._cache["Cinv"] = Cinv
        return tuple(sum(Cinv[i][j] * int(d[j]) for j in range(self.n))
                     for i in range(self.n))

    def defect(self, d):
        if self.klass != EUCLIDEAN:
            raise UnsupportedClassError("defect is defined only for Euclidean quivers")
        return self.euler(self.delta, d)

    # -- projectives ---------------------------------------------------------
    @property
    def projective_roots(self):
        """Dimension vectors p_1..p_n of the indecomposable projectives."""
        ps = self._cache.get("projectives")
        if ps is None:
            # <p_i, x> = x_i = dim Hom(P_i, X)  <=>  p_i^T E = e_i^T, so p_i is row i of E^{-1}
            Einv = exactla.inverse(exactla.frac_matrix(self.E))
            ps = tuple(tuple(_as_int(Einv[i][j]) for j in range(self.n))
                       for i in range(self.n))
            for i, p in enumerate(ps):
                if any(x < 0 for x in p):
                    raise InvariantViolation(f"projective root p_{i + 1} = {p} not nonnegative")
            self._cache["projectives"] = ps
        return ps

    @property
    def injective_roots(self):
        """Dimension vectors q_1..q_n of the indecomposable injectives."""
        qs = self._cache.get("injectives")
        if qs is None:
            # <x, q_i> = x_i = dim Hom(X, I_i)  <=>  E q_i = e_i
            Einv = exactla.inverse(exactla.frac_matrix(self.E))
            qs = tuple(tuple(_as_int(Einv[j][i]) for j in range(self.n))
                       for i in range(self.n))
            self._cache["injectives"] = qs
        return qs

    def require_connected(self, what):
        if not self.quiver.is_connected():
            raise UnsupportedClassError(f"{what} requires a connected quiver")

    def __repr__(self):
        return f"EulerContext(n={self.n}, klass={self.klass}, delta={self.delta})"


def _as_int(x):
    f = Fraction(x)
    if f.denominator != 1:
        raise InvariantViolation(f"expected integer, got {f}")
    return int(f)


def build_context(q):
    """Classify ``q`` and assemble its EulerContext.

    The Coxeter matrix C is the unique integer matrix with <x,y> = -<y,Cx>;
    in matrix terms C = -E^{-1} E^T, and the defining identity is re-checked
    on the standard basis before the context is returned.
    """
    n = q.n
    E = [[int(i == j) for j in range(n)] for i in range(n)]
    for s, t in q.arrows:
        E[s - 1][t - 1] -= 1
    Einv = exactla.inverse(exactla.frac_matrix(E))
    Et = exactla.transpose(exactla.frac_matrix(E))
    C = exactla.mat_mul(Einv, Et)
    C = [[-_as_int(x) for x in row] for row in C]

    # positive (semi)definiteness of q via the symmetrized matrix
    S = [[E[i][j] + E[j][i] for j in range(n)] for i in range(n)]
    pos, neg, zero = exactla.symmetric_inertia(S)
    if neg > 0:
        klass, delta = WILD, None
    elif zero == 0:
        klass, delta = DYNKIN, None
    elif zero == 1:
        klass = EUCLIDEAN
        kernel = exactla.nullspace(S)
        if len(kernel) != 1:
            raise InvariantViolation("semidefinite form with inconsistent radical rank")
        delta = exactla.primitive_integer_vector(kernel[0])
        if all(x <= 0 for x in delta):
            delta = [-x for x in delta]
        if any(x < 0 for x in delta):
            klass, delta = WILD, None  # mixed-sign radical: not an affine root system
        else:
            delta = tuple(delta)
    else:
        klass, delta = WILD, None

    ctx = EulerContext(q, tuple(tuple(row) for row in E),
                       tuple(tuple(row) for row in C), klass, delta)

    # build-time verification of the Coxeter identity on the standard basis
    basis = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    for x in basis:
        cx = ctx.coxeter(x)
        for y in basis:
            if ctx.euler(x, y) != -ctx.euler(y, cx):
                raise InvariantViolation("Coxeter identity <x,y> = -<y,Cx> failed")
    if klass == EUCLIDEAN:
        if ctx.q(delta) != 0:
            raise InvariantViolation("q(delta) != 0")
        if ctx.coxeter(delta) != delta:
            raise InvariantViolation("Coxeter does not fix the null root")
    return ctx


# -- stock quivers used throughout tests and docs ---------------------------

def linear_quiver(n):
    """A_n with arrows i -> i+1."""
    return Quiver(n, [(i, i + 1) for i in range(1, n)])


def kronecker_quiver():
    return Quiver(2, [(1, 2), (1, 2)])


def square_quiver():
    """The 4-vertex quiver 1->2->4, 1->3->4 (an A~3 orientation)."""
    return Quiver(4, [(1, 2), (2, 4), (1, 3), (3, 4)])


def dtilde4_quiver():
    """D~4: central vertex 5, arrows leaf -> center."""
    return Quiver(5, [(1, 5), (2, 5), (3, 5), (4, 5)])


def atilde_quiver(p, q):
    """A~_{p+q-1} as an oriented cycle split: a path of p arrows one way
    and q arrows the other way between vertex 1 and vertex p+1."""
    n = p + q
    arrows = [(i, i + 1) for i in range(1, p + 1)]
    prev = 1
    for k in range(q - 1):
        v = p + 1 + k + 1
        arrows.append((prev, v))
        prev = v
    arrows.append((prev, p + 1))
    if q == 1:
        arrows[-1] = (1, p + 1)
    return Quiver(n, arrows)
