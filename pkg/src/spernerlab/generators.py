"""Deterministic triangulation generators and hemisphere chains."""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction

from . import geometry as geo
from .complex import (ASYMMETRIC, ValidationReport, Triangulation, TriangulationBuilder,
                      boundary_complex, pure_boundary)
from .geometry import Kind, Polytope

CROSS_STANDARD = "CROSS_STANDARD"
FREUDENTHAL_CUBE = "FREUDENTHAL_CUBE"
GRID_SIMPLEX = "GRID_SIMPLEX"
BARYCENTRIC = "BARYCENTRIC"


@dataclass(frozen=True)
class GeneratorSpec:
    kind: str
    n: int = 1
    k: int = 1
    inner: "GeneratorSpec | None" = None
    rounds: int = 0

    def __post_init__(self):
        if self.kind == BARYCENTRIC:
            if self.inner is None or self.rounds < 0:
                raise ValueError("barycentric spec needs an inner spec and rounds >= 0")
        elif self.kind in (CROSS_STANDARD, FREUDENTHAL_CUBE, GRID_SIMPLEX):
            if self.n < 1 or self.k < 1:
                raise ValueError("need n >= 1 and k >= 1")
        else:
            raise ValueError(f"unknown generator kind {self.kind!r}")

    def __str__(self) -> str:
        if self.kind == CROSS_STANDARD:
            return f"cross:{self.n}"
        if self.kind == FREUDENTHAL_CUBE:
            return f"cube:{self.n}:k={self.k}"
        if self.kind == GRID_SIMPLEX:
            return f"simplex:{self.n}:k={self.k}"
        return f"bary({self.inner},rounds={self.rounds})"


_BARY = re.compile(r"^bary\((?P<inner>.+),\s*rounds=(?P<rounds>\d+)\)$")
_BASIC = re.compile(r"^(?P<kind>cross|cube|simplex):(?P<n>\d+)(?::k=(?P<k>\d+))?$")


def parse_spec(text: str) -> GeneratorSpec:
    """Parse strings such as ``cross:3``, ``cube:2:k=2`` or
    ``bary(cross:2,rounds=1)``."""
    text = text.strip()
    m = _BARY.match(text)
    if m:
        return GeneratorSpec(BARYCENTRIC, inner=parse_spec(m["inner"]), rounds=int(m["rounds"]))
    m = _BASIC.match(text)
    if not m:
        raise ValueError(f"cannot parse generator spec {text!r}")
    kind = {"cross": CROSS_STANDARD, "cube": FREUDENTHAL_CUBE, "simplex": GRID_SIMPLEX}[m["kind"]]
    if kind == CROSS_STANDARD and m["k"] is not None:
        raise ValueError("cross:n takes no k parameter")
    return GeneratorSpec(kind, n=int(m["n"]), k=int(m["k"] or 1))


def cross_standard(n: int) -> Triangulation:
    """The origin coned over the boundary of the cross-polytope: 2^n simplices."""
    b = TriangulationBuilder(Polytope(Kind.CROSS, n))
    origin = (0,) * n
    for signs in itertools.product((1, -1), repeat=n):
        b.add([origin] + [geo.unit(n, i + 1, s) for i, s in enumerate(signs)])
    return b.build()


def _kuhn_simplices(n: int, k: int):
    """Vertex lists (integer grid coords in [0, k]^n) of the Freudenthal
    triangulation, n! per cell."""
    for base in itertools.product(range(k), repeat=n):
        for perm in itertools.permutations(range(n)):
            y = list(base)
            verts = [tuple(y)]
            for axis in perm:
                y[axis] += 1
                verts.append(tuple(y))
            yield verts


def freudenthal_cube(n: int, k: int = 1) -> Triangulation:
    """Kuhn triangulation of [-1, 1]^n with k cells per axis."""
    b = TriangulationBuilder(Polytope(Kind.CUBE, n))
    for verts in _kuhn_simplices(n, k):
        b.add([[Fraction(2 * c, k) - 1 for c in v] for v in verts])
    return b.build()


def grid_simplex(n: int, k: int = 1) -> Triangulation:
    """Edgewise subdivision of the standard n-simplex into k^n simplices.

    Works in partial-sum coordinates y_j = a_1 + ... + a_j, where the
    simplex becomes the orthoscheme 0 <= y_1 <= ... <= y_n <= k and is cut
    out of the Freudenthal triangulation of [0, k]^n.
    """
    b = TriangulationBuilder(Polytope(Kind.SIMPLEX, n))
    for verts in _kuhn_simplices(n, k):
        if not all(all(v[j] <= v[j + 1] for j in range(n - 1)) for v in verts):
            continue
        pts = []
        for y in verts:
            a = [y[0]] + [y[j] - y[j - 1] for j in range(1, n)] + [k - y[-1]]
            pts.append([Fraction(c, k) for c in a])
        b.add(pts)
    return b.build()


def barycentric_subdivide(T: Triangulation) -> Triangulation:
    """Replace each maximal d-simplex by the (d+1)! simplices spanned by
    barycenters of flags of its faces."""
    b = TriangulationBuilder(T.domain)
    for s in T.maximal:
        pts = T.points(s)
        for perm in itertools.permutations(range(len(s))):
            chain = []
            for t in range(1, len(s) + 1):
                face = [pts[i] for i in perm[:t]]
                chain.append([sum(c, Fraction(0)) / t for c in zip(*face)])
            b.add(chain)
    return b.build()


def generate(spec: GeneratorSpec | str) -> Triangulation:
    if isinstance(spec, str):
        spec = parse_spec(spec)
    if spec.kind == CROSS_STANDARD:
        return cross_standard(spec.n)
    if spec.kind == FREUDENTHAL_CUBE:
        return freudenthal_cube(spec.n, spec.k)
    if spec.kind == GRID_SIMPLEX:
        return grid_simplex(spec.n, spec.k)
    T = generate(spec.inner)
    for _ in range(spec.rounds):
        T = barycentric_subdivide(T)
    return T


# -- hemisphere chains -----------------------------------------------------

class ChainError(ValueError):
    def __init__(self, message: str, report: ValidationReport):
        super().__init__(message)
        self.report = report


@dataclass(frozen=True)
class HemisphereChain:
    """Levels T^n = T, T^(n-1), ..., T^0 as face-closed simplex sets over the
    vertex table of ``triangulation``; ``levels[i]`` is T^i."""

    triangulation: Triangulation
    levels: tuple

    @property
    def n(self) -> int:
        return len(self.levels) - 1

    def level(self, i: int) -> frozenset:
        return self.levels[i]

    def simplices(self, i: int) -> tuple:
        """The i-simplices of T^i, sorted."""
        return tuple(sorted(s for s in self.levels[i] if len(s) == i + 1))


def _negated(T: Triangulation, simplices) -> frozenset | None:
    out = set()
    for s in simplices:
        r = T.negate_simplex(s)
        if r is None:
            return None
        out.add(r)
    return frozenset(out)


def hemisphere_chain(T: Triangulation) -> HemisphereChain:
    """Split boundaries into upper hemispheres (x_i >= 0) level by level and
    verify both chain equalities exactly."""
    if T.domain is None or T.domain.kind is not Kind.CROSS:
        raise ValueError("hemisphere chains are supported for cross-polytope domains only")
    n = T.domain.dim
    levels = {n: T.simplices}
    bnd = boundary_complex(T).simplices
    for i in range(n, 0, -1):
        report = ValidationReport()
        upper = frozenset(s for s in bnd if all(T.coords[v][i - 1] >= 0 for v in s))
        lower = _negated(T, upper)
        if lower is None:
            report.add(ASYMMETRIC, detail=f"level {i - 1}: reflection leaves the vertex set")
            raise ChainError("chain verification failed", report)
        upper_bnd = pure_boundary(upper, i - 1) if i > 1 else frozenset()
        if upper | lower != bnd:
            report.add("CHAIN_UNION", detail=f"T^{i - 1} u -T^{i - 1} != boundary of T^{i}")
        if upper & lower != upper_bnd:
            report.add("CHAIN_INTERSECTION",
                       detail=f"T^{i - 1} n -T^{i - 1} != boundary of T^{i - 1}")
        if not report.ok:
            raise ChainError("chain verification failed", report)
        levels[i - 1] = upper
        bnd = upper_bnd
    return HemisphereChain(T, tuple(levels[i] for i in range(n + 1)))


def verify_chain(chain: HemisphereChain) -> ValidationReport:
    """Re-check the two chain equalities on an existing chain."""
    T = chain.triangulation
    report = ValidationReport()
    n = chain.n
    for i in range(n, 0, -1):
        if i == n:
            bnd = boundary_complex(T).simplices
        else:
            bnd = pure_boundary(chain.level(i), i)
        upper = chain.level(i - 1)
        lower = _negated(T, upper)
        upper_bnd = pure_boundary(upper, i - 1) if i > 1 else frozenset()
        if lower is None or upper | lower != bnd:
            report.add("CHAIN_UNION", detail=f"level {i - 1}")
        elif upper & lower != upper_bnd:
            report.add("CHAIN_INTERSECTION", detail=f"level {i - 1}")
    return report


def random_labelling(theorem_id, T: Triangulation, m: int | None = None, seed: int = 0):
    """Seeded uniform sample among label functions meeting the theorem's
    hypotheses on T (see :class:`theorems.LabelSpace`)."""
    from .theorems import random_labelling as sample
    return sample(theorem_id, T, m, seed)
