"""Exact rational geometry on the simplex, cross-polytope and cube."""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from . import lp

Point = tuple  # tuple of Fraction


class Kind(str, enum.Enum):
    SIMPLEX = "SIMPLEX"
    CROSS = "CROSS"
    CUBE = "CUBE"


class Location(str, enum.Enum):
    INTERIOR = "INTERIOR"
    BOUNDARY = "BOUNDARY"
    OUTSIDE = "OUTSIDE"


def frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def point(coords: Iterable) -> Point:
    return tuple(frac(c) for c in coords)


def unit(n: int, i: int, scale=1) -> Point:
    """``scale * e_i`` in R^n, with ``i`` 1-based."""
    return tuple(Fraction(scale) if j == i - 1 else Fraction(0) for j in range(n))


def neg(p: Point) -> Point:
    return tuple(-c for c in p)


def format_rational(x) -> str:
    x = frac(x)
    return f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class Polytope:
    """``scale`` times the standard simplex, cross-polytope or cube.

    A SIMPLEX of dimension n lives in R^(n+1) on the hyperplane where the
    coordinates sum to ``scale``; the other two kinds live in R^n.
    """

    kind: Kind
    dim: int
    scale: Fraction = Fraction(1)

    def __post_init__(self):
        object.__setattr__(self, "kind", Kind(self.kind))
        object.__setattr__(self, "scale", frac(self.scale))
        if self.scale <= 0:
            raise ValueError("scale must be positive")
        if self.dim < 1:
            raise ValueError("dimension must be at least 1")

    @property
    def ambient_dim(self) -> int:
        return self.dim + 1 if self.kind is Kind.SIMPLEX else self.dim

    @property
    def origin_symmetric(self) -> bool:
        return self.kind is not Kind.SIMPLEX

    def inequalities(self) -> list[tuple[object, Point, Fraction]]:
        """Facet inequalities ``a.x <= b`` tagged with their constraint id.

        CROSS ids are sign vectors v (``v.x <= scale``), CUBE ids are
        ``(i, sign)`` and SIMPLEX ids are the coordinate index i (``x_i >= 0``),
        all indices 1-based.
        """
        n, s = self.dim, self.scale
        out = []
        if self.kind is Kind.CROSS:
            for v in itertools.product((1, -1), repeat=n):
                out.append((v, tuple(Fraction(c) for c in v), s))
        elif self.kind is Kind.CUBE:
            for i in range(1, n + 1):
                for sign in (1, -1):
                    out.append(((i, sign), unit(n, i, sign), s))
        else:
            for i in range(1, n + 2):
                out.append((i, unit(n + 1, i, -1), Fraction(0)))
        return out

    def equalities(self) -> list[tuple[Point, Fraction]]:
        if self.kind is Kind.SIMPLEX:
            return [(tuple(Fraction(1) for _ in range(self.dim + 1)), self.scale)]
        return []

    def vertices(self) -> list[Point]:
        n, s = self.dim, self.scale
        if self.kind is Kind.CROSS:
            return [unit(n, i, sign * s) for i in range(1, n + 1) for sign in (1, -1)]
        if self.kind is Kind.CUBE:
            return [tuple(Fraction(c) * s for c in v)
                    for v in itertools.product((1, -1), repeat=n)]
        return [unit(n + 1, i, s) for i in range(1, n + 2)]

    def volume(self) -> Fraction:
        """n-volume; for SIMPLEX, measured after dropping the last coordinate."""
        n, s = self.dim, self.scale
        if self.kind is Kind.CROSS:
            return (2 * s) ** n / math.factorial(n)
        if self.kind is Kind.CUBE:
            return (2 * s) ** n
        return s ** n / math.factorial(n)

    def project(self, x: Point) -> Point:
        """Coordinates in which the polytope is full-dimensional."""
        return tuple(x[:-1]) if self.kind is Kind.SIMPLEX else tuple(x)


def dot(a: Sequence, b: Sequence):
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def _check_dim(P: Polytope, x: Sequence):
    if len(x) != P.ambient_dim:
        raise ValueError(f"point has dimension {len(x)}, polytope expects {P.ambient_dim}")


def point_location(P: Polytope, x: Sequence) -> Location:
    _check_dim(P, x)
    for a, b in P.equalities():
        if dot(a, x) != b:
            return Location.OUTSIDE
    tight = False
    for _, a, b in P.inequalities():
        v = dot(a, x)
        if v > b:
            return Location.OUTSIDE
        if v == b:
            tight = True
    return Location.BOUNDARY if tight else Location.INTERIOR


def active_constraints(P: Polytope, x: Sequence) -> frozenset:
    if point_location(P, x) is Location.OUTSIDE:
        raise ValueError(f"point {x} lies outside {P}")
    return frozenset(cid for cid, a, b in P.inequalities() if dot(a, x) == b)


def hull_meets_interior(points: Iterable[Sequence], P: Polytope) -> bool:
    """Does conv(points) meet the (relative) interior of ``P``?

    Maximizes a common slack ``eps`` over convex combinations; the answer is
    true iff the optimum is strictly positive.
    """
    pts = [tuple(frac(c) for c in p) for p in points]
    if not pts:
        raise ValueError("empty point list")
    for p in pts:
        _check_dim(P, p)
    k = len(pts)
    # variables: weights w_1..w_k >= 0, then eps (free)
    c = [0] * k + [1]
    A_ub, b_ub = [], []
    for _, a, b in P.inequalities():
        A_ub.append([dot(a, p) for p in pts] + [1])
        b_ub.append(b)
    A_eq = [[1] * k + [0]]
    b_eq = [1]
    for a, b in P.equalities():
        A_eq.append([dot(a, p) for p in pts] + [0])
        b_eq.append(b)
    res = lp.maximize(c, A_ub, b_ub, A_eq, b_eq, free=[k])
    if res.status == lp.INFEASIBLE:
        return False
    if res.status == lp.UNBOUNDED:  # pragma: no cover - P is bounded
        return True
    return res.value > 0


def in_hull(points: Iterable[Sequence], x: Sequence) -> bool:
    """Is x a convex combination of the points?"""
    pts = [tuple(frac(c) for c in p) for p in points]
    if not pts:
        raise ValueError("empty point list")
    if any(len(p) != len(x) for p in pts):
        raise ValueError("dimension mismatch")
    A_eq = [[1] * len(pts)] + [[p[j] for p in pts] for j in range(len(x))]
    b_eq = [1] + [frac(c) for c in x]
    return lp.maximize([0] * len(pts), A_eq=A_eq, b_eq=b_eq).status == lp.OPTIMAL


def rank(vectors: Sequence[Sequence]) -> int:
    rows = [[frac(v) for v in row] for row in vectors]
    r = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][col] != 0:
                f = rows[i][col] / rows[r][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        r += 1
    return r


def affine_rank(points: Sequence[Sequence]) -> int:
    """Dimension of the affine hull (``-1`` for no points)."""
    if not points:
        return -1
    p0 = points[0]
    return rank([[a - b for a, b in zip(p, p0)] for p in points[1:]]) if len(points) > 1 else 0


def affinely_independent(points: Sequence[Sequence]) -> bool:
    return affine_rank(points) == len(points) - 1


def det(matrix: Sequence[Sequence]) -> Fraction:
    m = [[frac(v) for v in row] for row in matrix]
    n = len(m)
    result = Fraction(1)
    for col in range(n):
        piv = next((i for i in range(col, n) if m[i][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            result = -result
        result *= m[col][col]
        for i in range(col + 1, n):
            if m[i][col] != 0:
                f = m[i][col] / m[col][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[col])]
    return result


def inverse(matrix: Sequence[Sequence]) -> list[list[Fraction]]:
    n = len(matrix)
    m = [[frac(v) for v in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(matrix)]
    for col in range(n):
        piv = next((i for i in range(col, n) if m[i][col] != 0), None)
        if piv is None:
            raise ValueError("singular matrix")
        m[col], m[piv] = m[piv], m[col]
        p = m[col][col]
        m[col] = [v / p for v in m[col]]
        for i in range(n):
            if i != col and m[i][col] != 0:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[col])]
    return [row[n:] for row in m]


def solve(matrix: Sequence[Sequence], rhs: Sequence) -> list[Fraction] | None:
    """Unique solution of a square system, or None when singular."""
    try:
        inv = inverse(matrix)
    except ValueError:
        return None
    return [dot(row, rhs) for row in inv]


def simplex_volume(points: Sequence[Sequence]) -> Fraction:
    """Volume of a full-dimensional simplex given by d+1 points of R^d."""
    p0 = points[0]
    d = len(points) - 1
    if d == 0:
        return Fraction(1)
    return abs(det([[a - b for a, b in zip(p, p0)] for p in points[1:]])) / math.factorial(d)


def simplex_pair_ok(s1: Sequence[Sequence], s2: Sequence[Sequence]) -> bool:
    """True iff conv(s1) and conv(s2) meet exactly in the hull of their common
    vertices.

    Solved as one LP: over all pairs of barycentric weights describing a
    common point, maximize the weight placed on non-shared vertices.
    """
    s1 = [tuple(frac(c) for c in p) for p in s1]
    s2 = [tuple(frac(c) for c in p) for p in s2]
    for s in (s1, s2):
        if not s or not affinely_independent(s):
            raise ValueError("simplex vertices must be affinely independent")
    if len(s1[0]) != len(s2[0]):
        raise ValueError("simplices live in different dimensions")
    shared = set(s1) & set(s2)
    k1, k2 = len(s1), len(s2)
    c = [0 if p in shared else 1 for p in s1] + [0 if q in shared else 1 for q in s2]
    A_eq = [[1] * k1 + [0] * k2, [0] * k1 + [1] * k2]
    b_eq = [1, 1]
    for j in range(len(s1[0])):
        A_eq.append([p[j] for p in s1] + [-q[j] for q in s2])
        b_eq.append(0)
    res = lp.maximize(c, A_eq=A_eq, b_eq=b_eq)
    if res.status == lp.INFEASIBLE:
        return not shared
    return res.value == 0
