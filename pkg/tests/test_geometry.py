import itertools
import math
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from spernerlab import geometry as geo
from spernerlab.geometry import Kind, Location, Polytope

S = [(1, 1, -1), (1, -1, 1), (-1, 1, 1), (1, 1, 1)]

rat = st.fractions(min_value=-3, max_value=3, max_denominator=4)


def test_point_location_examples():
    assert geo.point_location(Polytope(Kind.CROSS, 2), (F(1, 2), 0)) is Location.INTERIOR
    assert geo.point_location(Polytope(Kind.CUBE, 3), (1, F(1, 2), -1)) is Location.BOUNDARY
    assert geo.point_location(Polytope(Kind.CROSS, 2), (1, 1)) is Location.OUTSIDE


def test_point_location_simplex_and_scale():
    P = Polytope(Kind.SIMPLEX, 2)
    assert geo.point_location(P, (F(1, 3), F(1, 3), F(1, 3))) is Location.INTERIOR
    assert geo.point_location(P, (F(1, 2), F(1, 2), 0)) is Location.BOUNDARY
    assert geo.point_location(P, (1, 1, 0)) is Location.OUTSIDE
    assert geo.point_location(Polytope(Kind.CROSS, 2, 2), (1, 1)) is Location.BOUNDARY


def test_point_location_dimension_mismatch():
    with pytest.raises(ValueError):
        geo.point_location(Polytope(Kind.CROSS, 2), (0, 0, 0))


def test_active_constraints_examples():
    got = geo.active_constraints(Polytope(Kind.CROSS, 3), (1, 0, 0))
    assert got == {v for v in itertools.product((1, -1), repeat=3) if v[0] == 1}
    assert geo.active_constraints(Polytope(Kind.CUBE, 2), (1, 0)) == {(1, 1)}
    assert geo.active_constraints(Polytope(Kind.SIMPLEX, 2), (F(1, 2), F(1, 2), 0)) == {3}


def test_active_constraints_interior_and_outside():
    assert geo.active_constraints(Polytope(Kind.CUBE, 2), (0, 0)) == frozenset()
    with pytest.raises(ValueError):
        geo.active_constraints(Polytope(Kind.CUBE, 2), (2, 0))


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_vertices_and_volume(n):
    cross, cube, simplex = (Polytope(k, n) for k in (Kind.CROSS, Kind.CUBE, Kind.SIMPLEX))
    assert len(cross.vertices()) == 2 * n
    assert len(cube.vertices()) == 2 ** n
    assert len(simplex.vertices()) == n + 1
    assert cube.volume() == 2 ** n
    assert cross.volume() == F(2 ** n, math.factorial(n))
    assert simplex.volume() == F(1, math.factorial(n))
    assert Polytope(Kind.CUBE, n, 2).volume() == 4 ** n


def test_hull_meets_interior_examples():
    for n in (1, 2, 3):
        assert geo.hull_meets_interior([geo.unit(n, 1), geo.neg(geo.unit(n, 1))],
                                       Polytope(Kind.CROSS, n))
    assert not geo.hull_meets_interior([(1, 0), (0, 1)], Polytope(Kind.CROSS, 2))
    assert geo.hull_meets_interior(S, Polytope(Kind.CUBE, 3))


def test_hull_meets_interior_empty():
    with pytest.raises(ValueError):
        geo.hull_meets_interior([], Polytope(Kind.CUBE, 2))


@pytest.mark.parametrize("kind", [Kind.CROSS, Kind.CUBE, Kind.SIMPLEX])
def test_single_ext_point_is_not_interior(kind):
    for n in (1, 2, 3):
        P = Polytope(kind, n)
        for v in P.vertices():
            assert not geo.hull_meets_interior([v], P)


@settings(max_examples=200, deadline=None)
@given(st.lists(rat, min_size=1, max_size=4), st.sampled_from([Kind.CROSS, Kind.CUBE]))
def test_hull_meets_interior_one_dimensional_oracle(xs, kind):
    # in one dimension both polytopes are [-1, 1]; the hull is [min, max]
    expected = min(xs) < 1 and max(xs) > -1
    assert geo.hull_meets_interior([(x,) for x in xs], Polytope(kind, 1)) == expected


points2 = st.lists(st.tuples(rat, rat), min_size=1, max_size=4)


@settings(max_examples=150, deadline=None)
@given(points2, st.sampled_from([Kind.CROSS, Kind.CUBE]), st.randoms(use_true_random=False))
def test_hull_meets_interior_permutation_and_duplication(pts, kind, rnd):
    P = Polytope(kind, 2)
    base = geo.hull_meets_interior(pts, P)
    shuffled = list(pts) + [rnd.choice(pts)]
    rnd.shuffle(shuffled)
    assert geo.hull_meets_interior(shuffled, P) == base


@settings(max_examples=150, deadline=None)
@given(points2, st.sampled_from([Kind.CROSS, Kind.CUBE]))
def test_hull_meets_interior_one_sided_certificates(pts, kind):
    P = Polytope(kind, 2)
    got = geo.hull_meets_interior(pts, P)
    centroid = tuple(sum(c) / len(pts) for c in zip(*pts))
    if any(geo.point_location(P, p) is Location.INTERIOR for p in pts + [centroid]):
        assert got
    # every point beyond or on one facet: the hull misses the open polytope
    for _, a, b in P.inequalities():
        if all(geo.dot(a, p) >= b for p in pts):
            assert not got


def test_in_hull():
    assert not geo.in_hull(S, (0, 0, 0))
    assert geo.in_hull(S, (F(1, 2), F(1, 2), F(1, 2)))
    assert geo.in_hull([(1, 0), (-1, 0)], (0, 0))
    assert not geo.in_hull([(1, 0), (-1, 0)], (0, F(1, 100)))


def _leibniz(m):
    n = len(m)
    total = F(0)
    for perm in itertools.permutations(range(n)):
        inv = sum(1 for i, j in itertools.combinations(range(n), 2) if perm[i] > perm[j])
        total += (-1) ** inv * math.prod(F(m[i][perm[i]]) for i in range(n))
    return total


square = st.integers(1, 4).flatmap(
    lambda n: st.lists(st.lists(st.integers(-4, 4), min_size=n, max_size=n), min_size=n, max_size=n))


@settings(max_examples=150, deadline=None)
@given(square)
def test_det_matches_leibniz(m):
    assert geo.det(m) == _leibniz(m)


@settings(max_examples=100, deadline=None)
@given(square)
def test_inverse_and_solve(m):
    n = len(m)
    if _leibniz(m) == 0:
        assert geo.solve(m, [1] * n) is None
        return
    inv = geo.inverse(m)
    for i in range(n):
        for j in range(n):
            assert sum(F(m[i][k]) * inv[k][j] for k in range(n)) == (1 if i == j else 0)
    x = geo.solve(m, list(range(n)))
    assert [sum(F(a) * b for a, b in zip(row, x)) for row in m] == list(range(n))


def test_rank_and_affine_independence():
    assert geo.rank([(1, 0), (2, 0)]) == 1
    assert geo.affinely_independent([(0, 0), (1, 0), (0, 1)])
    assert not geo.affinely_independent([(0, 0), (1, 1), (2, 2)])
    assert geo.affine_rank([(1, 1, 1)]) == 0


def test_simplex_volume():
    assert geo.simplex_volume([(0, 0), (1, 0), (0, 1)]) == F(1, 2)
    assert geo.simplex_volume([(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)]) == F(1, 6)
    assert geo.simplex_volume([(0, 0), (1, 1), (2, 2)]) == 0


def test_simplex_pair_ok_examples():
    o, e1, e2 = (0, 0), (1, 0), (0, 1)
    assert geo.simplex_pair_ok([o, e1], [o, e2])
    assert not geo.simplex_pair_ok([o, e1], [(F(-1, 2), 0), (F(1, 2), 0)])
    assert geo.simplex_pair_ok([o, e1, e2], [o, e1, e2])


def test_simplex_pair_ok_rejects_dependent_input():
    with pytest.raises(ValueError):
        geo.simplex_pair_ok([(0, 0), (1, 1), (2, 2)], [(0, 0), (1, 0)])


@settings(max_examples=300, deadline=None)
@given(rat, rat, rat, rat)
def test_simplex_pair_ok_one_dimensional_oracle(a, b, c, d):
    if a == b or c == d:
        return
    (a, b), (c, d) = sorted((a, b)), sorted((c, d))
    lo, hi = max(a, c), min(b, d)
    if lo > hi:
        expected = True
    elif lo == hi:
        expected = lo in (a, b) and lo in (c, d)
    else:
        expected = (a, b) == (c, d)
    assert geo.simplex_pair_ok([(a,), (b,)], [(c,), (d,)]) == expected


@settings(max_examples=100, deadline=None)
@given(st.tuples(rat, rat), st.tuples(rat, rat))
def test_simplex_pair_ok_symmetric_and_translation_invariant(u, t):
    s1 = [(0, 0), (1, 0), (0, 1)]
    s2 = [(p[0] + u[0], p[1] + u[1]) for p in [(1, 1), (1, 0), (0, 1)]]
    if not geo.affinely_independent(s2):
        return
    ok = geo.simplex_pair_ok(s1, s2)
    assert geo.simplex_pair_ok(s2[::-1], s1) == ok
    shift = lambda s: [(p[0] + t[0], p[1] + t[1]) for p in s]
    assert geo.simplex_pair_ok(shift(s1), shift(s2)) == ok


def test_format_rational():
    assert geo.format_rational(F(1, 2)) == "1/2"
    assert geo.format_rational(F(-3)) == "-3/1"
    assert geo.frac("-3/1") == -3
