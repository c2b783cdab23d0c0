import itertools
import random

import pytest

from quiverstab import (DYNKIN, EUCLIDEAN, WILD, InvalidQuiverError, Quiver,
                        build_context, kronecker_quiver, linear_quiver,
                        square_quiver)
from quiverstab.errors import UnsupportedClassError


def test_euler_matrix_examples(a2, kron):
    assert a2.E == ((1, -1), (0, 1))
    assert a2.klass == DYNKIN and a2.delta is None
    assert kron.E == ((1, -2), (0, 1))
    assert kron.klass == EUCLIDEAN and kron.delta == (1, 1)


def test_square_quiver_classification(sq):
    assert sq.klass == EUCLIDEAN
    assert sq.delta == (1, 1, 1, 1)


def test_rejects_loops_and_cycles():
    with pytest.raises(InvalidQuiverError):
        Quiver(2, [(1, 1)])
    with pytest.raises(InvalidQuiverError):
        Quiver(3, [(1, 2), (2, 3), (3, 1)])
    with pytest.raises(InvalidQuiverError):
        Quiver(2, [(1, 3)])


def test_euler_form_values(a2, kron):
    assert a2.euler((1, 1), (0, 1)) == 0
    assert kron.euler((1, 1), (3, 1)) == 2
    assert a2.euler((0, 0), (5, -7)) == 0


def test_euler_form_length_mismatch(a2):
    with pytest.raises(ValueError):
        a2.euler((1,), (1, 0))


def test_quadratic_form(kron, sq):
    assert kron.q((2, 1)) == 1
    assert kron.q(kron.delta) == 0
    assert sq.q((1, 0, 0, 1)) == 2


def test_coxeter_identity_random(a2, kron, sq):
    rng = random.Random(7)
    for ctx in (a2, kron, sq):
        for _ in range(50):
            x = tuple(rng.randint(-5, 5) for _ in range(ctx.n))
            y = tuple(rng.randint(-5, 5) for _ in range(ctx.n))
            assert ctx.euler(x, y) == -ctx.euler(y, ctx.coxeter(x))


def test_coxeter_examples(a2, sq):
    assert sq.coxeter((0, 1, 0, 0)) == (1, 0, 1, 1)
    assert sq.coxeter(sq.delta) == sq.delta
    # Coxeter number of A2 is 3
    v = (1, 0)
    for _ in range(3):
        v = a2.coxeter(v)
    assert v == (1, 0)


def test_defect(sq, kron, a2):
    assert sq.defect((0, 0, 0, 1)) == -1
    assert sq.defect((1, 0, 0, 0)) == 1
    assert sq.defect(sq.delta) == 0
    # defect(d) = d1 - d4 on the square quiver
    rng = random.Random(3)
    for _ in range(40):
        d = tuple(rng.randint(-4, 4) for _ in range(4))
        assert sq.defect(d) == d[0] - d[3]
    with pytest.raises(UnsupportedClassError):
        a2.defect((1, 0))


def test_euclidean_form_nonnegative(kron, sq, d4):
    rng = random.Random(11)
    for ctx in (kron, sq, d4):
        for _ in range(300):
            x = tuple(rng.randint(-8, 8) for _ in range(ctx.n))
            q = ctx.q(x)
            assert q >= 0
            if q == 0:
                # radical vector: a rational multiple of delta
                k = next((x[i] / ctx.delta[i] for i in range(ctx.n) if x[i]), 0)
                assert tuple(k * v for v in ctx.delta) == x


def test_wild_classification():
    triple = Quiver(2, [(1, 2), (1, 2), (1, 2)])
    assert build_context(triple).klass == WILD
    k4 = Quiver(4, [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)])
    assert build_context(k4).klass == WILD


def _is_ade_graph(n, edges):
    """Independent ADE recognition on the underlying multigraph."""
    if len(edges) != n - 1 or len(set(edges)) != len(edges):
        return False  # a tree has n-1 distinct edges; multi-edges excluded
    adj = {v: set() for v in range(1, n + 1)}
    for a, b in edges:
        if a == b or b in adj[a]:
            return False
        adj[a].add(b)
        adj[b].add(a)
    seen = {1}
    stack = [1]
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    if len(seen) != n:
        return False
    degs = sorted(len(adj[v]) for v in adj)
    if degs[-1] <= 2:
        return True  # path: type A
    if degs[-1] > 3 or degs.count(3) > 1:
        return False
    center = next(v for v in adj if len(adj[v]) == 3)
    arms = []
    for w in adj[center]:
        length, prev, cur = 1, center, w
        while True:
            nxt = [u for u in adj[cur] if u != prev]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            length += 1
        arms.append(length)
    arms.sort()
    return arms[0] == 1 and (arms[1] == 1 or (arms[1] == 2 and arms[2] <= 4))


@pytest.mark.parametrize("quiver,expect_dynkin", [
    (linear_quiver(2), True),
    (linear_quiver(5), True),
    (Quiver(4, [(1, 2), (3, 2), (4, 2)]), True),            # D4
    (Quiver(6, [(1, 2), (2, 3), (4, 3), (5, 4), (6, 3)]), True),   # E6
    (kronecker_quiver(), False),
    (square_quiver(), False),
    (Quiver(5, [(1, 5), (2, 5), (3, 5), (4, 5)]), False),   # D4~
])
def test_dynkin_matches_ade_graph_check(quiver, expect_dynkin):
    ctx = build_context(quiver)
    assert (ctx.klass == DYNKIN) == expect_dynkin
    assert _is_ade_graph(quiver.n, [tuple(a) for a in quiver.arrows]) == expect_dynkin


def test_delta_primitive_and_positive(kron, sq, d4, a3t, a2t):
    from math import gcd
    for ctx in (kron, sq, d4, a3t, a2t):
        g = 0
        for v in ctx.delta:
            assert v > 0
            g = gcd(g, v)
        assert g == 1
        assert ctx.q(ctx.delta) == 0


def test_quiver_json_roundtrip():
    q = square_quiver()
    text = q.to_json()
    assert Quiver.from_json(text) == q
    # deterministic serialization sorts arrows lexicographically
    q2 = Quiver(4, [(3, 4), (1, 3), (1, 2), (2, 4)])
    assert q2.to_json() == text
    with pytest.raises(InvalidQuiverError):
        Quiver.from_json('{"vertices": "x"}')


def test_orientation_invariance_of_symmetrized_form(sq):
    # <x,y> + <y,x> depends only on the underlying graph
    flipped = build_context(Quiver(4, [(2, 1), (2, 4), (1, 3), (3, 4)]))
    rng = random.Random(5)
    for _ in range(40):
        x = tuple(rng.randint(-4, 4) for _ in range(4))
        y = tuple(rng.randint(-4, 4) for _ in range(4))
        assert (sq.euler(x, y) + sq.euler(y, x)
                == flipped.euler(x, y) + flipped.euler(y, x))


def test_projective_and_injective_roots(a2, sq):
    assert a2.projective_roots == ((1, 1), (0, 1))
    assert a2.injective_roots == ((1, 0), (1, 1))
    assert sq.projective_roots == ((1, 1, 1, 2), (0, 1, 0, 1), (0, 0, 1, 1),
                                   (0, 0, 0, 1))
    for i, p in enumerate(sq.projective_roots):
        for x in itertools.product(range(3), repeat=4):
            assert sq.euler(p, x) == x[i]
