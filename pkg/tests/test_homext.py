import itertools

import pytest

from quiverstab import (enumerate_real_schur_roots, ext_generic, generic_subs,
                        hom_generic, is_real_root, is_schur_root, oracle_ext)
from quiverstab.errors import UnsupportedClassError
from quiverstab.homext import ext_schur_pair


def grid(ctx, per_coord):
    return list(itertools.product(range(per_coord + 1), repeat=ctx.n))


def test_ext_examples(a2):
    assert ext_generic(a2, (1, 0), (0, 1)) == 1
    assert ext_generic(a2, (0, 1), (1, 1)) == 0
    assert ext_generic(a2, (2, 1), (0, 0)) == 0
    assert ext_generic(a2, (0, 0), (2, 1)) == 0


def test_ext_rejects_negative(a2):
    with pytest.raises(ValueError):
        ext_generic(a2, (-1, 0), (0, 1))


def test_hom_examples(a2, kron):
    assert hom_generic(a2, (0, 1), (1, 1)) == 1
    assert hom_generic(a2, (1, 1), (0, 1)) == 0
    assert hom_generic(kron, kron.delta, kron.delta) == 0


def test_hom_ext_euler_identity(a2, a3, kron, sq):
    for ctx, b in ((a2, 3), (a3, 2), (kron, 3), (sq, 1)):
        for x in grid(ctx, b):
            for y in grid(ctx, b):
                assert hom_generic(ctx, x, y) - ext_generic(ctx, x, y) == ctx.euler(x, y)


def test_generic_subs(a2, kron):
    assert generic_subs(a2, (1, 1)) == {(0, 0), (0, 1), (1, 1)}
    assert generic_subs(kron, (1, 1)) == {(0, 0), (0, 1), (1, 1)}
    assert generic_subs(a2, (0, 0)) == {(0, 0)}


def test_generic_subs_selfconsistency(kron, sq):
    for ctx, b in ((kron, 3), (sq, 1)):
        for a in grid(ctx, b):
            for sub in generic_subs(ctx, a):
                quot = tuple(x - y for x, y in zip(a, sub))
                assert ext_generic(ctx, sub, quot) == 0


def test_schur_roots(kron, sq):
    assert is_schur_root(kron, (2, 1))
    assert not is_schur_root(kron, (2, 2))
    assert is_schur_root(sq, (0, 1, 0, 0))
    assert is_schur_root(sq, sq.delta)
    assert not is_schur_root(sq, (2, 2, 2, 2))
    assert not is_schur_root(sq, (1, 0, 0, 1))  # q = 2


def test_real_roots(a2, kron):
    assert is_real_root(a2, (1, 1))
    assert not is_real_root(a2, (0, 0))
    assert is_real_root(kron, (3, 2))
    assert not is_real_root(kron, (1, 1))


def test_enumeration(a2, kron):
    assert enumerate_real_schur_roots(a2, (2, 2)) == [(0, 1), (1, 0), (1, 1)]
    assert enumerate_real_schur_roots(kron, (2, 2)) == [
        (0, 1), (1, 0), (1, 1), (1, 2), (2, 1)]
    assert enumerate_real_schur_roots(kron, (0, 0)) == []


def test_enumeration_rejects_wild():
    from quiverstab import Quiver, build_context
    wild = build_context(Quiver(2, [(1, 2)] * 3))
    with pytest.raises(UnsupportedClassError):
        enumerate_real_schur_roots(wild, (2, 2))


def _reflection_orbit_roots(ctx, bound):
    """Independent positive-real-root oracle: close the simple roots under
    the simple reflections of the symmetrized graph form."""
    n = ctx.n
    m = [[0] * n for _ in range(n)]
    for s, t in ctx.quiver.arrows:
        m[s - 1][t - 1] += 1
        m[t - 1][s - 1] += 1

    def reflect(d, i):
        out = list(d)
        out[i] = -d[i] + sum(m[i][j] * d[j] for j in range(n) if j != i)
        return tuple(out)

    inside = lambda d: all(0 <= x <= b for x, b in zip(d, bound))
    seen = set()
    frontier = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    # explore slightly beyond the bound so orbits can re-enter it
    cap = tuple(2 * b + 2 for b in bound)
    visited = set(frontier)
    while frontier:
        d = frontier.pop()
        if inside(d) and all(x >= 0 for x in d) and any(d):
            seen.add(d)
        for i in range(n):
            r = reflect(d, i)
            if r not in visited and all(abs(x) <= c for x, c in zip(r, cap)):
                visited.add(r)
                frontier.append(r)
    return seen


@pytest.mark.parametrize("fixture,bound", [
    ("a2", (3, 3)), ("a3", (2, 2, 2)), ("kron", (4, 4)), ("sq", (2, 2, 2, 2)),
])
def test_real_roots_match_reflection_oracle(request, fixture, bound):
    ctx = request.getfixturevalue(fixture)
    expected = _reflection_orbit_roots(ctx, bound)
    got = {d for d in itertools.product(*(range(b + 1) for b in bound))
           if any(d) and ctx.q(d) == 1}
    assert got == expected


def test_schur_pair_fast_path_matches_dp(a2, a3, kron, sq, d4, a3t):
    for ctx, b in ((a2, 3), (a3, 2), (kron, 3), (sq, 2), (d4, 1), (a3t, 2)):
        roots = enumerate_real_schur_roots(ctx, (b,) * ctx.n)
        for x in roots:
            for y in roots:
                assert ext_schur_pair(ctx, x, y) == ext_generic(ctx, x, y), (x, y)


def test_schur_pair_fast_path_matches_oracle_on_large_roots(kron, sq):
    pairs = [((3, 2), (5, 4)), ((4, 5), (2, 1)), ((5, 6), (6, 5)), ((4, 3), (3, 4))]
    for a, b in pairs:
        assert ext_schur_pair(kron, a, b) == oracle_ext(kron, a, b)
    sq_roots = [(1, 1, 1, 2), (1, 1, 2, 2), (0, 1, 0, 1), (2, 2, 1, 1), (2, 2, 2, 3)]
    for a in sq_roots:
        assert is_schur_root(sq, a)
        for b in sq_roots:
            assert ext_schur_pair(sq, a, b) == oracle_ext(sq, a, b), (a, b)
