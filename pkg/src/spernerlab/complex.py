"""Geometric simplicial complexes: storage, validation, boundary, symmetry."""

from __future__ import annotations

import itertools
import math
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from . import geometry as geo
from .geometry import Kind, Location, Point, Polytope

Simplex = tuple  # strictly increasing tuple of vertex ids

FACE_CLOSURE = "FACE_CLOSURE"
MISSING_VERTEX = "MISSING_VERTEX"
DUPLICATE_VERTEX = "DUPLICATE_VERTEX"
DEGENERATE = "DEGENERATE"
INTERSECTION = "INTERSECTION"
NOT_PURE = "NOT_PURE"
OUTSIDE_DOMAIN = "OUTSIDE_DOMAIN"
COVERAGE = "COVERAGE"
ASYMMETRIC = "ASYMMETRIC"
UNSUPPORTED = "UNSUPPORTED"


@dataclass(frozen=True)
class Violation:
    kind: str
    items: tuple = ()
    detail: str = ""

    def to_json(self) -> dict:
        return {"kind": self.kind, "items": [list(i) if isinstance(i, tuple) else i
                                             for i in self.items],
                "detail": self.detail}


@dataclass
class ValidationReport:
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, kind: str, *items, detail: str = "") -> None:
        self.violations.append(Violation(kind, tuple(items), detail))

    def extend(self, other: "ValidationReport") -> None:
        self.violations.extend(other.violations)

    def kinds(self) -> set:
        return {v.kind for v in self.violations}

    def __bool__(self) -> bool:
        return self.ok

    def to_json(self) -> dict:
        return {"ok": self.ok, "violations": [v.to_json() for v in self.violations]}


def faces(simplex: Sequence[int], dim: int | None = None):
    """Nonempty faces of ``simplex`` (all of them, or those of one dimension)."""
    simplex = tuple(simplex)
    sizes = range(1, len(simplex) + 1) if dim is None else [dim + 1]
    for k in sizes:
        yield from itertools.combinations(simplex, k)


def closure(simplices: Iterable[Sequence[int]]) -> frozenset:
    out = set()
    for s in simplices:
        s = tuple(sorted(s))
        if s not in out:
            out.update(faces(s))
    return frozenset(out)


def pure_boundary(simplices: Iterable[Simplex], dim: int) -> frozenset:
    """Faces of codimension one lying in exactly one ``dim``-simplex, closed."""
    counts = Counter()
    for s in simplices:
        if len(s) == dim + 1:
            counts.update(itertools.combinations(s, dim))
    return closure(f for f, c in counts.items() if c == 1)


class Triangulation:
    """A face-closed set of simplices over a table of rational vertices.

    Instances are treated as immutable once built.
    """

    def __init__(self, coords: Mapping[int, Sequence] | Sequence[Sequence],
                 simplices: Iterable[Sequence[int]], domain: Polytope | None = None):
        if not isinstance(coords, Mapping):
            coords = dict(enumerate(coords))
        self.coords: dict[int, Point] = {int(k): geo.point(v) for k, v in coords.items()}
        self.simplices: frozenset = frozenset(tuple(sorted(s)) for s in simplices)
        self.domain = domain

    @classmethod
    def from_maximal(cls, coords, maximal: Iterable[Sequence[int]],
                     domain: Polytope | None = None) -> "Triangulation":
        return cls(coords, closure(maximal), domain)

    def __repr__(self) -> str:
        return (f"Triangulation(vertices={len(self.vertices)}, "
                f"maximal={len(self.maximal)}, domain={self.domain})")

    @cached_property
    def dimension(self) -> int:
        return max((len(s) - 1 for s in self.simplices), default=-1)

    @cached_property
    def maximal(self) -> tuple:
        cofaces = set()
        for s in self.simplices:
            if len(s) > 1:
                cofaces.update(itertools.combinations(s, len(s) - 1))
        return tuple(sorted(s for s in self.simplices if s not in cofaces))

    @cached_property
    def _by_dim(self) -> dict:
        out = defaultdict(list)
        for s in self.simplices:
            out[len(s) - 1].append(s)
        return {d: tuple(sorted(v)) for d, v in out.items()}

    def simplices_of_dim(self, d: int) -> tuple:
        return self._by_dim.get(d, ())

    @property
    def vertices(self) -> tuple:
        return tuple(s[0] for s in self.simplices_of_dim(0))

    @property
    def edges(self) -> tuple:
        return self.simplices_of_dim(1)

    @cached_property
    def sorted_simplices(self) -> tuple:
        """All simplices ordered by dimension, then by vertex ids."""
        return tuple(sorted(self.simplices, key=lambda s: (len(s), s)))

    @cached_property
    def index(self) -> dict:
        """Exact coordinate -> vertex id."""
        return {p: v for v, p in self.coords.items()}

    def points(self, simplex: Sequence[int]) -> list:
        return [self.coords[v] for v in simplex]

    def negate_vertex(self, v: int) -> int | None:
        return self.index.get(geo.neg(self.coords[v]))

    def negate_simplex(self, simplex: Sequence[int]) -> Simplex | None:
        out = []
        for v in simplex:
            w = self.negate_vertex(v)
            if w is None:
                return None
            out.append(w)
        return tuple(sorted(out))

    def restrict(self, simplices: Iterable[Simplex]) -> "Triangulation":
        """Subcomplex on the given (face-closed) simplices, same vertex ids."""
        simplices = frozenset(simplices)
        used = {v for s in simplices for v in s}
        return Triangulation({v: self.coords[v] for v in sorted(used)}, simplices, self.domain)

    def working_coords(self, v: int) -> Point:
        p = self.coords[v]
        return self.domain.project(p) if self.domain is not None else p


class TriangulationBuilder:
    """Assigns ids to points, deduplicating on exact coordinates."""

    def __init__(self, domain: Polytope | None = None):
        self.domain = domain
        self.coords: list[Point] = []
        self.ids: dict[Point, int] = {}
        self.maximal: set = set()

    def vertex(self, p: Sequence) -> int:
        p = geo.point(p)
        v = self.ids.get(p)
        if v is None:
            v = self.ids[p] = len(self.coords)
            self.coords.append(p)
        return v

    def add(self, points: Iterable[Sequence]) -> Simplex:
        s = tuple(sorted(self.vertex(p) for p in points))
        self.maximal.add(s)
        return s

    def build(self) -> Triangulation:
        return Triangulation.from_maximal(self.coords, self.maximal, self.domain)


# -- validation ------------------------------------------------------------

def _int_det(m: list) -> int:
    """Bareiss fraction-free determinant of an integer matrix."""
    m = [list(r) for r in m]
    n = len(m)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def _facet_planes(pts: list) -> list:
    """For a full-dimensional integer simplex, per vertex i the integer
    (normal, offset) of the opposite facet, oriented positive at vertex i."""
    d = len(pts) - 1
    planes = []
    for i in range(d + 1):
        facet = [p for j, p in enumerate(pts) if j != i]
        rows = [[a - b for a, b in zip(q, facet[0])] for q in facet[1:]]
        normal = []
        for k in range(d):
            minor = [r[:k] + r[k + 1:] for r in rows]
            normal.append((-1) ** k * _int_det(minor))
        offset = sum(a * b for a, b in zip(normal, facet[0]))
        if sum(a * b for a, b in zip(normal, pts[i])) < offset:
            normal, offset = [-a for a in normal], -offset
        planes.append((normal, offset))
    return planes


def _separated(planes: list, tau: Simplex, tau_pts, shared) -> bool:
    """Some facet hyperplane of sigma has tau on its closed outer side, touching
    it only in shared vertices."""
    for normal, offset in planes:
        ok = True
        for v, q in zip(tau, tau_pts):
            side = sum(a * b for a, b in zip(normal, q)) - offset
            if side > 0 or (side == 0 and v not in shared):
                ok = False
                break
        if ok:
            return True
    return False


def _candidate_pairs(boxes: list) -> Iterable[tuple[int, int]]:
    """Index pairs whose closed bounding boxes overlap (grid-hashed)."""
    if not boxes:
        return
    dim = len(boxes[0][0])
    size = max(max(max(hi[k] - lo[k] for lo, hi in boxes) for k in range(dim)), 1)
    grid = defaultdict(list)
    for idx, (lo, hi) in enumerate(boxes):
        ranges = [range(lo[k] // size, hi[k] // size + 1) for k in range(dim)]
        for cell in itertools.product(*ranges):
            grid[cell].append(idx)
    seen = set()
    for members in grid.values():
        for a, b in itertools.combinations(members, 2):
            if (a, b) in seen:
                continue
            seen.add((a, b))
            la, ha = boxes[a]
            lb, hb = boxes[b]
            if all(la[k] <= hb[k] and lb[k] <= ha[k] for k in range(dim)):
                yield a, b


def check_intersections(T: Triangulation, report: ValidationReport) -> None:
    """Pairwise proper-intersection test over maximal simplices.

    Coordinates are scaled to integers; a pair is cleared cheaply when a
    facet hyperplane of one simplex separates it from the other, and
    otherwise decided by :func:`geometry.simplex_pair_ok`.
    """
    maximal = T.maximal
    if not maximal:
        return
    work = {v: T.working_coords(v) for v in T.coords}
    scale = math.lcm(*(c.denominator for p in work.values() for c in p))
    ipts = {v: tuple(int(c * scale) for c in p) for v, p in work.items()}
    pts = [[ipts[v] for v in s] for s in maximal]
    dim = len(pts[0][0])
    boxes = [(tuple(min(p[k] for p in P) for k in range(dim)),
              tuple(max(p[k] for p in P) for k in range(dim))) for P in pts]
    planes = {}
    for i, P in enumerate(pts):
        if len(P) == dim + 1 and geo.affinely_independent(P):
            planes[i] = _facet_planes(P)
    for a, b in _candidate_pairs(boxes):
        sa, sb = maximal[a], maximal[b]
        shared = set(sa) & set(sb)
        if a in planes and _separated(planes[a], sb, pts[b], shared):
            continue
        if b in planes and _separated(planes[b], sa, pts[a], shared):
            continue
        if not geo.simplex_pair_ok(pts[a], pts[b]):
            report.add(INTERSECTION, sa, sb)


def validate_triangulation(T: Triangulation, check_pairs: bool = True) -> ValidationReport:
    """Face closure, proper pairwise intersection and (with a domain) exact
    volume coverage."""
    report = ValidationReport()
    for s in T.simplices:
        for v in s:
            if v not in T.coords:
                report.add(MISSING_VERTEX, s, detail=f"vertex {v}")
        if len(s) > 1:
            for f in itertools.combinations(s, len(s) - 1):
                if f not in T.simplices:
                    report.add(FACE_CLOSURE, s, f)
    if not report.ok:
        return report

    seen = {}
    for v in T.vertices:
        p = T.coords[v]
        if p in seen:
            report.add(DUPLICATE_VERTEX, seen[p], v)
        seen[p] = v

    for s in T.maximal:
        if not geo.affinely_independent(T.points(s)):
            report.add(DEGENERATE, s)
    if not report.ok:
        return report

    if check_pairs:
        check_intersections(T, report)

    P = T.domain
    if P is not None and T.dimension == P.dim:
        for v in T.vertices:
            if len(T.coords[v]) != P.ambient_dim or \
                    geo.point_location(P, T.coords[v]) is Location.OUTSIDE:
                report.add(OUTSIDE_DOMAIN, (v,))
        lower = [s for s in T.maximal if len(s) - 1 != P.dim]
        for s in lower:
            report.add(NOT_PURE, s)
        if not lower and OUTSIDE_DOMAIN not in report.kinds():
            total = sum((geo.simplex_volume([T.working_coords(v) for v in s])
                         for s in T.maximal), Fraction(0))
            if total != P.volume():
                report.add(COVERAGE, detail=f"simplex volume {total} != domain volume {P.volume()}")
    return report


# -- boundary and symmetry -------------------------------------------------

def boundary_complex(T: Triangulation) -> Triangulation:
    """Simplices lying entirely in the boundary of ``T.domain``."""
    if T.domain is None:
        raise ValueError("triangulation has no domain")
    active = {}
    for v in T.vertices:
        loc = geo.point_location(T.domain, T.coords[v])
        active[v] = geo.active_constraints(T.domain, T.coords[v]) \
            if loc is Location.BOUNDARY else frozenset()
    keep = []
    for s in T.simplices:
        common = active[s[0]]
        for v in s[1:]:
            if not common:
                break
            common = common & active[v]
        if common:
            keep.append(s)
    return T.restrict(keep)


def check_antipodal_symmetry(Tb: Triangulation) -> ValidationReport:
    """Every simplex of ``Tb`` has its reflection through the origin in ``Tb``."""
    report = ValidationReport()
    if Tb.domain is not None and Tb.domain.kind is Kind.SIMPLEX:
        report.add(UNSUPPORTED, detail="simplex domains are not origin-symmetric")
        return report
    for s in sorted(Tb.simplices):
        r = Tb.negate_simplex(s)
        if r is None or r not in Tb.simplices:
            report.add(ASYMMETRIC, s)
    return report


# -- JSON ------------------------------------------------------------------

def domain_to_json(P: Polytope) -> dict:
    return {"kind": P.kind.value, "dim": P.dim, "scale": geo.format_rational(P.scale)}


def domain_from_json(d: dict, dim: int | None = None) -> Polytope:
    return Polytope(Kind(d["kind"]), int(d.get("dim", dim)), Fraction(d.get("scale", "1/1")))


def triangulation_to_json(T: Triangulation) -> dict:
    out = {"dim": T.domain.dim if T.domain is not None else T.dimension}
    if T.domain is not None:
        out["domain"] = domain_to_json(T.domain)
    out["vertices"] = [{"id": v, "coords": [geo.format_rational(c) for c in T.coords[v]]}
                       for v in sorted(T.coords)]
    out["maximal_simplices"] = [list(s) for s in T.maximal]
    return out


def triangulation_from_json(d: dict) -> Triangulation:
    domain = domain_from_json(d["domain"], d.get("dim")) if d.get("domain") else None
    coords = {int(v["id"]): tuple(Fraction(c) for c in v["coords"]) for v in d["vertices"]}
    return Triangulation.from_maximal(coords, d["maximal_simplices"], domain)
