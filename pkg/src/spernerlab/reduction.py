"""Embedding reductions: extend a labelled triangulation of an inner polytope
Z to an origin-symmetric outer polytope X so that Tucker's hypotheses hold
on X and the shell X minus int(Z) adds no complementary edge.

The shell is cut into convex cells, one per facet G of Z: the cone over G
intersected with X and with the far side of G's hyperplane.  For a
cross-polytope Z these cones are exactly the orthants.  Each cell is
triangulated by recursive pulling, reusing the boundary triangulation of T
on G, so no Steiner vertices are needed.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable

from . import geometry as geo
from .complex import (ValidationReport, Triangulation, boundary_complex,
                      check_antipodal_symmetry, validate_triangulation)
from .geometry import Kind, Location, Polytope
from .labels import LabelFunction, LabelKind, LabelSet
from .theorems import (TheoremId, Witness, find_witness, random_labelling,
                       validate_label_conditions)

INNER = "INNER"
SHELL = "SHELL"

NOT_EXTENSION = "NOT_EXTENSION"
BOUNDARY_ASYMMETRIC = "BOUNDARY_ASYMMETRIC"
BOUNDARY_LABELS = "BOUNDARY_LABELS"
NON_EXTREME_BOUNDARY_VERTEX = "NON_EXTREME_BOUNDARY_VERTEX"
SHELL_COMPLEMENTARY = "SHELL_COMPLEMENTARY"
ORTHANT_CROSSING = "ORTHANT_CROSSING"
TRIANGULATION = "TRIANGULATION"


def max_coordinate_label(w) -> tuple:
    """sign(w_j) e_j for the smallest j attaining max |w_j|."""
    top = max(abs(c) for c in w)
    if top == 0:
        raise ValueError("the origin has no shell label")
    j = next(i for i, c in enumerate(w) if abs(c) == top)
    return tuple((1 if w[j] > 0 else -1) if i == j else 0 for i in range(len(w)))


@dataclass(frozen=True)
class ShellConfig:
    name: str
    inner: Polytope
    outer: Polytope
    inner_theorem: TheoremId
    label_rule: Callable = max_coordinate_label
    ext_only_boundary: bool = False

    @property
    def n(self) -> int:
        return self.inner.dim


CONFIG_NAMES = ("oct-in-2oct", "cube-in-oct", "oct-in-2cube")
_ALIASES = {"cube-in-2oct": "cube-in-oct"}


def shell_config(name: str, n: int) -> ShellConfig:
    """Presets: octahedron in twice the octahedron, cube in (n+1) times the
    octahedron (alias ``cube-in-2oct``) and octahedron in twice the cube."""
    key = _ALIASES.get(name, name)
    if key == "oct-in-2oct":
        return ShellConfig(key, Polytope(Kind.CROSS, n), Polytope(Kind.CROSS, n, 2),
                           TheoremId.OCT_OCT, ext_only_boundary=True)
    if key == "cube-in-oct":
        # the cube's corners have l1 norm n, so the outer scale must exceed n
        return ShellConfig(key, Polytope(Kind.CUBE, n), Polytope(Kind.CROSS, n, n + 1),
                           TheoremId.CUB_OCT)
    if key == "oct-in-2cube":
        return ShellConfig(key, Polytope(Kind.CROSS, n), Polytope(Kind.CUBE, n, 2),
                           TheoremId.OCT_OCT)
    raise ValueError(f"unknown shell config {name!r}; expected one of {CONFIG_NAMES}")


# -- cells -----------------------------------------------------------------

@dataclass(frozen=True)
class Cell:
    """cone(G) n X n {a_G.x >= b_G} as an H- and V-polytope."""

    facet: object                 # constraint id of G in the inner polytope
    constraints: tuple            # (a, b) pairs meaning a.x <= b
    inner_index: int              # position of -a_G.x <= -b_G in constraints
    vertices: tuple               # exact points, sorted
    tight: dict = field(compare=False, hash=False, repr=False)

    @property
    def inner_vertices(self) -> tuple:
        return tuple(v for v in self.vertices if self.inner_index in self.tight[v])


def _cone_constraints(inner: Polytope, fid) -> list:
    n = inner.dim
    if inner.kind is Kind.CROSS:
        return [(geo.unit(n, i + 1, -s), Fraction(0)) for i, s in enumerate(fid)]
    if inner.kind is Kind.CUBE:
        i, s = fid
        out = []
        for j in range(1, n + 1):
            if j != i:
                for t in (1, -1):
                    a = [Fraction(0)] * n
                    a[j - 1] += t
                    a[i - 1] -= s
                    out.append((tuple(a), Fraction(0)))
        return out
    raise ValueError("inner polytope must be a cross-polytope or a cube")


def _vertices(constraints, n: int) -> dict:
    """Vertex -> indices of tight constraints, by brute force over n-subsets."""
    found = {}
    for combo in itertools.combinations(range(len(constraints)), n):
        x = geo.solve([constraints[k][0] for k in combo], [constraints[k][1] for k in combo])
        if x is None:
            continue
        x = tuple(x)
        if x in found:
            continue
        if all(geo.dot(a, x) <= b for a, b in constraints):
            found[x] = frozenset(k for k, (a, b) in enumerate(constraints) if geo.dot(a, x) == b)
    return found


def slice_shell_by_orthants(cfg: ShellConfig) -> list[Cell]:
    """One convex cell per facet of the inner polytope (per orthant when the
    inner polytope is a cross-polytope)."""
    if cfg.inner.kind not in (Kind.CROSS, Kind.CUBE) or cfg.outer.kind not in (Kind.CROSS, Kind.CUBE):
        raise ValueError("unsupported shell config")
    for p in cfg.inner.vertices():
        if geo.point_location(cfg.outer, p) is not Location.INTERIOR:
            raise ValueError(f"inner vertex {p} is not strictly inside the outer polytope")
    n = cfg.n
    cells = []
    for fid, a, b in cfg.inner.inequalities():
        cons = _cone_constraints(cfg.inner, fid)
        cons += [(oa, ob) for _, oa, ob in cfg.outer.inequalities()]
        cons.append((geo.neg(a), -b))
        tight = _vertices(cons, n)
        cells.append(Cell(fid, tuple(cons), len(cons) - 1, tuple(sorted(tight)), tight))
    return cells


# -- pulling ---------------------------------------------------------------

class _Puller:
    """Recursive pulling over faces of the cells, memoized by vertex set so
    faces shared by neighbouring cells are triangulated identically."""

    def __init__(self, cfg: ShellConfig, boundary_simplices, inner_active):
        self.cfg = cfg
        self.ext = set(cfg.outer.vertices())
        self.boundary_simplices = boundary_simplices   # tuples of points, dim n-1 and lower
        self.inner_active = inner_active                 # point -> active inner constraint ids
        self.memo: dict = {}

    def key(self, p):
        rank = 0 if p in self.ext else (2 if p in self.inner_active else 1)
        return rank, tuple(-abs(c) for c in p), tuple(-c for c in p)

    def triangulate(self, cell: Cell, face: frozenset) -> frozenset:
        if face in self.memo:
            return self.memo[face]
        pts = sorted(face, key=self.key)
        d = geo.affine_rank(pts)
        if d == 0:
            out = frozenset({(pts[0],)})
        elif all(p in self.inner_active for p in pts):
            common = frozenset.intersection(*(self.inner_active[p] for p in pts))
            out = frozenset(s for s in self.boundary_simplices
                            if len(s) == d + 1 and all(common <= self.inner_active[q] for q in s))
            if not out:
                raise ValueError(f"no boundary simplices of T in the face {pts}")
        else:
            apex = pts[0]
            out = set()
            for facet in self.facets(cell, face, d):
                if apex not in facet:
                    for s in self.triangulate(cell, facet):
                        out.add((apex,) + s)
            out = frozenset(out)
        self.memo[face] = out
        return out

    @staticmethod
    def facets(cell: Cell, face: frozenset, d: int) -> list:
        seen = set()
        for k in range(len(cell.constraints)):
            sub = frozenset(p for p in face if k in cell.tight[p])
            if sub and sub != face and sub not in seen and geo.affine_rank(list(sub)) == d - 1:
                seen.add(sub)
        return sorted(seen, key=sorted)


def pull_triangulate_cell(cell: Cell, inner_facet_simplices, cfg: ShellConfig | None = None,
                          _puller: _Puller | None = None) -> set:
    """Maximal simplices (as point tuples) of a pulling triangulation of the
    cell that restricts to ``inner_facet_simplices`` on the inner facet."""
    if _puller is None:
        inner_facet_simplices = [tuple(geo.point(p) for p in s) for s in inner_facet_simplices]
        if cfg is None:
            raise ValueError("a ShellConfig is needed to order the pulls")
        inner_active = {}
        for s in inner_facet_simplices:
            for p in s:
                inner_active[p] = geo.active_constraints(cfg.inner, p)
        faces = set()
        for s in inner_facet_simplices:
            for k in range(1, len(s) + 1):
                faces.update(itertools.combinations(s, k))
        _puller = _Puller(cfg, frozenset(faces), inner_active)
    tri = _puller.triangulate(cell, frozenset(cell.vertices))
    return {tuple(sorted(s)) for s in tri}


# -- extension ---------------------------------------------------------------

@dataclass
class ExtensionResult:
    T_star: Triangulation
    lam_star: LabelFunction
    provenance: dict
    cfg: ShellConfig

    def shell_simplices(self) -> list:
        return sorted(s for s, p in self.provenance.items() if p == SHELL)

    def to_json(self) -> dict:
        from .complex import triangulation_to_json
        out = triangulation_to_json(self.T_star)
        out["labels"] = self.lam_star.to_json()
        out["config"] = self.cfg.name
        out["provenance"] = [{"simplex": list(s), "origin": self.provenance[s]}
                             for s in self.T_star.maximal]
        return out


@lru_cache(maxsize=16)
def extend_geometry(T: Triangulation, cfg: ShellConfig) -> tuple:
    """(T*, ids of new vertices) for T inside cfg's shell; independent of labels."""
    if T.domain != cfg.inner:
        raise ValueError(f"T triangulates {T.domain}, config expects {cfg.inner}")
    Tb = boundary_complex(T)
    inner_active = {T.coords[v]: geo.active_constraints(cfg.inner, T.coords[v])
                    for v in Tb.vertices}
    bsimp = frozenset(tuple(sorted(T.coords[v] for v in s)) for s in Tb.simplices)
    puller = _Puller(cfg, bsimp, inner_active)
    shell = set()
    for cell in slice_shell_by_orthants(cfg):
        shell |= pull_triangulate_cell(cell, (), cfg, _puller=puller)
    coords = dict(T.coords)
    index = {p: v for v, p in coords.items()}
    new_points = sorted({p for s in shell for p in s if p not in index}, key=puller.key)
    next_id = max(coords, default=-1) + 1
    new_ids = []
    for p in new_points:
        coords[next_id] = p
        index[p] = next_id
        new_ids.append(next_id)
        next_id += 1
    maximal = list(T.maximal) + [tuple(sorted(index[p] for p in s)) for s in shell]
    T_star = Triangulation.from_maximal(coords, maximal, cfg.outer)
    return T_star, tuple(new_ids)


def extend(T: Triangulation, lam: LabelFunction, cfg: ShellConfig,
           check: bool = True) -> ExtensionResult:
    if check:
        report = validate_label_conditions(cfg.inner_theorem, T, lam)
        if not report.ok:
            raise ValueError(f"labelling violates {cfg.inner_theorem.value}: "
                             f"{report.violations[:3]}")
    if lam.codomain != LabelSet(LabelKind.CROSS_EXT, cfg.n):
        raise ValueError("reductions need cross-polytope labels of the domain dimension")
    T_star, new_ids = extend_geometry(T, cfg)
    labels = dict(lam.assignment)
    for v in new_ids:
        labels[v] = cfg.label_rule(T_star.coords[v])
    provenance = {s: (INNER if s in T.simplices else SHELL) for s in T_star.simplices}
    return ExtensionResult(T_star, LabelFunction(labels, lam.codomain), provenance, cfg)


@lru_cache(maxsize=16)
def _triangulation_report(T_star: Triangulation) -> ValidationReport:
    return validate_triangulation(T_star)


def _share_closed_orthant(p, q) -> bool:
    return all(not (a > 0 > b or a < 0 < b) for a, b in zip(p, q))


def verify_extension(res: ExtensionResult, original_T: Triangulation,
                     original_lam: LabelFunction) -> ValidationReport:
    """T* must extend (T, lambda), have an antipodal boundary carrying
    opposite labels, and contain no complementary edge outside T.  Also
    checked: T* triangulates the outer polytope and no shell edge crosses
    between orthants."""
    T, lam = res.T_star, res.lam_star
    report = ValidationReport()

    for v, p in original_T.coords.items():
        if T.coords.get(v) != p:
            report.add(NOT_EXTENSION, (v,), detail="vertex moved or missing")
        elif v not in lam or lam[v] != original_lam[v]:
            report.add(NOT_EXTENSION, (v,), detail="label changed")
    for s in original_T.simplices - T.simplices:
        report.add(NOT_EXTENSION, s, detail="simplex of T missing from T*")

    Tb = boundary_complex(T)
    for viol in check_antipodal_symmetry(Tb).violations:
        report.add(BOUNDARY_ASYMMETRIC, *viol.items)
    ext = set(res.cfg.outer.vertices())
    for v in Tb.vertices:
        w = T.negate_vertex(v)
        if w is None or tuple(-c for c in lam[v]) != lam[w]:
            report.add(BOUNDARY_LABELS, (v,) if w is None else (v, w))
        if res.cfg.ext_only_boundary and T.coords[v] not in ext:
            report.add(NON_EXTREME_BOUNDARY_VERTEX, (v,))

    for s in T.edges:
        if s in original_T.simplices:
            continue
        a, b = s
        if lam[a] == tuple(-c for c in lam[b]):
            report.add(SHELL_COMPLEMENTARY, s)
        if not _share_closed_orthant(T.coords[a], T.coords[b]):
            report.add(ORTHANT_CROSSING, s)

    for viol in _triangulation_report(T).violations:
        report.add(TRIANGULATION, *viol.items, detail=f"{viol.kind} {viol.detail}".strip())
    return report


class ReductionError(RuntimeError):
    pass


def reduce_and_find(T: Triangulation, lam: LabelFunction, cfg: ShellConfig) -> Witness:
    """Extend, verify, find a Tucker witness on T*, and check it lies in T."""
    res = extend(T, lam, cfg)
    report = verify_extension(res, T, lam)
    if not report.ok:
        raise ReductionError(f"extension failed verification: {report.violations[:3]}")
    w = find_witness(TheoremId.TUCKER, res.T_star, res.lam_star)
    if w is None:
        raise ReductionError("no complementary edge in T*; Tucker's lemma refuted")
    if res.provenance[w.simplex] != INNER:
        raise ReductionError(f"witness {w.simplex} lies in the shell")
    return w


def sample_instance(T: Triangulation, cfg: ShellConfig, seed: int) -> LabelFunction:
    return random_labelling(cfg.inner_theorem, T, cfg.n, seed)
