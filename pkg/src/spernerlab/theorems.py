"""Hypothesis validators and witness finders for the seven labelling theorems.

Two independent routes describe the hypotheses.  ``validate_label_conditions``
reads each condition literally off the vertex coordinates, while
``LabelSpace`` derives the admissible labels per vertex from the exact set of
tight facet constraints.  Sampling and enumeration use the latter, and the
test suite checks the two against each other.
"""

from __future__ import annotations

import enum
import itertools
import math
import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

from . import geometry as geo
from .complex import (ValidationReport, Triangulation, boundary_complex,
                      check_antipodal_symmetry)
from .geometry import Kind, Location, Polytope
from .labels import (LabelFunction, LabelKind, LabelSet, has_complementary_pair,
                     is_neutral, is_panchromatic)

LABEL_CONDITION = "LABEL_CONDITION"
ANTIPODAL_LABELS = "ANTIPODAL_LABELS"
UNLABELLED = "UNLABELLED"
PROPOSITION_MISMATCH = "PROPOSITION_MISMATCH"

PANCHROMATIC = "PANCHROMATIC"
COMPLEMENTARY_EDGE = "COMPLEMENTARY_EDGE"
NEUTRAL = "NEUTRAL"


class TheoremId(str, enum.Enum):
    SPERNER = "SPERNER"
    OCT_OCT = "OCT_OCT"
    CUB_CUB = "CUB_CUB"
    CUB_OCT = "CUB_OCT"
    OCT_CUB = "OCT_CUB"
    TUCKER = "TUCKER"
    TUCKER_CUB = "TUCKER_CUB"

    @property
    def domains(self) -> tuple:
        return _INFO[self][0]

    @property
    def codomain(self) -> LabelKind:
        return _INFO[self][1]

    @property
    def witness_kind(self) -> str:
        return _INFO[self][2]

    @property
    def antipodal(self) -> bool:
        return self in (TheoremId.TUCKER, TheoremId.TUCKER_CUB)


_INFO = {
    TheoremId.SPERNER: ((Kind.SIMPLEX,), LabelKind.SIMPLEX_EXT, PANCHROMATIC),
    TheoremId.OCT_OCT: ((Kind.CROSS,), LabelKind.CROSS_EXT, COMPLEMENTARY_EDGE),
    TheoremId.CUB_CUB: ((Kind.CUBE,), LabelKind.CUBE_EXT, NEUTRAL),
    TheoremId.CUB_OCT: ((Kind.CUBE,), LabelKind.CROSS_EXT, COMPLEMENTARY_EDGE),
    TheoremId.OCT_CUB: ((Kind.CROSS,), LabelKind.CUBE_EXT, NEUTRAL),
    TheoremId.TUCKER: ((Kind.CROSS, Kind.CUBE), LabelKind.CROSS_EXT, COMPLEMENTARY_EDGE),
    TheoremId.TUCKER_CUB: ((Kind.CROSS, Kind.CUBE), LabelKind.CUBE_EXT, NEUTRAL),
}


def parse_theorem(text: str) -> TheoremId:
    try:
        return TheoremId(text.strip().upper())
    except ValueError as exc:
        raise ValueError(f"unknown theorem {text!r}") from exc


@dataclass(frozen=True)
class Witness:
    simplex: tuple
    kind: str

    def to_json(self) -> dict:
        return {"kind": self.kind, "simplex": list(self.simplex)}


def codomain_for(theorem: TheoremId, T: Triangulation) -> LabelSet:
    """The label set the theorem prescribes on T's domain."""
    check_domain(theorem, T)
    return LabelSet(theorem.codomain, T.domain.dim)


def check_domain(theorem: TheoremId, T: Triangulation) -> None:
    theorem = TheoremId(theorem)
    if T.domain is None or T.domain.kind not in theorem.domains:
        raise ValueError(f"{theorem.value} needs a domain of kind "
                         f"{'/'.join(k.value for k in theorem.domains)}, got {T.domain}")


def _check_codomain(theorem: TheoremId, T: Triangulation, lam: LabelFunction) -> None:
    check_domain(theorem, T)
    if lam.codomain != LabelSet(theorem.codomain, T.domain.dim):
        raise ValueError(f"{theorem.value} on a {T.domain.dim}-dimensional domain needs "
                         f"labels in {LabelSet(theorem.codomain, T.domain.dim)}, "
                         f"got {lam.codomain}")


@lru_cache(maxsize=64)
def _boundary_facts(T: Triangulation):
    """(boundary vertex set, antipodal-symmetry report of the boundary complex)."""
    Tb = boundary_complex(T)
    return frozenset(Tb.vertices), check_antipodal_symmetry(Tb)


@lru_cache(maxsize=1 << 16)
def _literal_ok(theorem: TheoremId, P: Polytope, x, lab) -> str | None:
    """Reason the label is inadmissible at x, read from the theorem statement."""
    n, s = P.dim, P.scale
    if theorem is TheoremId.SPERNER:
        for i in range(n + 1):
            if x[i] == 0 and lab[i] == 1:
                return f"x_{i + 1} = 0 but label is e_{i + 1}"
    elif theorem is TheoremId.OCT_OCT:
        if geo.point_location(P, x) is not Location.BOUNDARY:
            return None
        for i in range(n):
            if x[i] >= 0 and lab[i] == -1:
                return f"x_{i + 1} >= 0 but label is -e_{i + 1}"
            if x[i] <= 0 and lab[i] == 1:
                return f"x_{i + 1} <= 0 but label is e_{i + 1}"
    elif theorem is TheoremId.CUB_CUB:
        for i in range(n):
            if abs(x[i]) == s and lab[i] != (1 if x[i] > 0 else -1):
                return f"x_{i + 1} = {x[i]} but label coordinate is {lab[i]}"
    elif theorem is TheoremId.CUB_OCT:
        for i in range(n):
            if abs(x[i]) == s:
                sign = 1 if x[i] > 0 else -1
                if lab[i] == -sign:
                    return f"x_{i + 1} = {x[i]} but label is {-sign:+d}e_{i + 1}"
    elif theorem is TheoremId.OCT_CUB:
        for v in itertools.product((1, -1), repeat=n):
            if geo.dot(v, x) == s and tuple(-c for c in v) == tuple(lab):
                return f"v.x = {s} for v = {v} but label is -v"
    return None


def validate_label_conditions(theorem: TheoremId, T: Triangulation,
                              lam: LabelFunction) -> ValidationReport:
    theorem = TheoremId(theorem)
    _check_codomain(theorem, T, lam)
    report = ValidationReport()
    missing = lam.missing(T.vertices)
    for v in missing:
        report.add(UNLABELLED, (v,))
    if missing:
        return report
    if theorem.antipodal:
        bverts, sym = _boundary_facts(T)
        report.extend(sym)
        for v in sorted(bverts):
            w = T.negate_vertex(v)
            if w is None or w not in lam:
                report.add(ANTIPODAL_LABELS, (v,), detail="no antipodal vertex")
            elif lam[w] != tuple(-c for c in lam[v]):
                report.add(ANTIPODAL_LABELS, (v, w),
                           detail=f"labels {lam[v]} and {lam[w]} are not opposite")
        return report
    for v in T.vertices:
        reason = _literal_ok(theorem, T.domain, T.coords[v], lam[v])
        if reason:
            report.add(LABEL_CONDITION, (v,), detail=reason)
    return report


def witness_predicate(kind: str, m: int):
    if kind == PANCHROMATIC:
        return lambda ell: is_panchromatic(ell, m)
    if kind == COMPLEMENTARY_EDGE:
        return has_complementary_pair
    if kind == NEUTRAL:
        return is_neutral
    raise ValueError(f"unknown witness kind {kind!r}")


def find_witness(theorem: TheoremId, T: Triangulation, lam: LabelFunction,
                 check: bool = True) -> Witness | None:
    """First witness in sorted order; None would refute the theorem.

    Panchromatic simplices are sought among maximal simplices, complementary
    edges among 1-simplices and neutral simplices among all simplices, lowest
    dimension first.
    """
    theorem = TheoremId(theorem)
    if check:
        report = validate_label_conditions(theorem, T, lam)
        if not report.ok:
            raise ValueError(f"labelling violates the {theorem.value} hypotheses: "
                             f"{report.violations[:3]}")
    kind = theorem.witness_kind
    if kind == PANCHROMATIC:
        m = T.domain.dim
        candidates = (s for s in T.maximal if is_panchromatic(lam.labelling(s), m))
    elif kind == COMPLEMENTARY_EDGE:
        candidates = (s for s in T.edges if lam[s[0]] == tuple(-c for c in lam[s[1]]))
    else:
        candidates = (s for s in T.sorted_simplices if is_neutral(lam.labelling(s)))
    s = next(candidates, None)
    return Witness(s, kind) if s is not None else None


def crosscheck_propositions(T: Triangulation, lam: LabelFunction) -> ValidationReport:
    """Per simplex, the combinatorial predicate agrees with whether the hull
    of its labels meets the interior of the codomain polytope."""
    kind = lam.codomain.kind
    if kind is LabelKind.CROSS_EXT:
        predicate, P = has_complementary_pair, Polytope(Kind.CROSS, lam.codomain.dim)
    elif kind is LabelKind.CUBE_EXT:
        predicate, P = is_neutral, Polytope(Kind.CUBE, lam.codomain.dim)
    else:
        raise ValueError("cross-checks need cross or cube labels")
    report = ValidationReport()
    for s in T.sorted_simplices:
        hull = _hull_meets_interior(tuple(sorted(set(lam.labelling(s)))), P)
        combinatorial = predicate(lam.labelling(s))
        if combinatorial != hull:
            report.add(PROPOSITION_MISMATCH, s, detail=f"predicate {combinatorial}, hull {hull}")
    return report


@lru_cache(maxsize=None)
def _hull_meets_interior(labels: tuple, P: Polytope) -> bool:
    return geo.hull_meets_interior(labels, P)


# -- label spaces ------------------------------------------------------------

def _admissible(theorem: TheoremId, P: Polytope, x, points) -> tuple:
    """Labels allowed at x, derived from the tight facet constraints."""
    if geo.point_location(P, x) is Location.INTERIOR:
        return tuple(points)
    active = geo.active_constraints(P, x)
    if theorem is TheoremId.SPERNER:
        banned = {i - 1 for i in active}
        return tuple(lab for lab in points if lab.index(1) not in banned)
    if theorem is TheoremId.OCT_OCT:
        banned = {tuple(-v[i] if j == i else 0 for j in range(P.dim))
                  for v in active for i in range(P.dim)}
        return tuple(lab for lab in points if lab not in banned)
    if theorem is TheoremId.CUB_CUB:
        return tuple(lab for lab in points if all(lab[i - 1] == s for i, s in active))
    if theorem is TheoremId.CUB_OCT:
        banned = {tuple(-s if j == i - 1 else 0 for j in range(P.dim)) for i, s in active}
        return tuple(lab for lab in points if lab not in banned)
    if theorem is TheoremId.OCT_CUB:
        banned = {tuple(-c for c in v) for v in active}
        return tuple(lab for lab in points if lab not in banned)
    raise ValueError(f"no per-vertex conditions for {theorem.value}")


@lru_cache(maxsize=64)
def _units(theorem: TheoremId, T: Triangulation) -> tuple:
    points = LabelSet(theorem.codomain, T.domain.dim).points()
    units = []
    if theorem.antipodal:
        bverts, sym = _boundary_facts(T)
        if not sym.ok:
            raise ValueError("boundary is not antipodally symmetric")
        for v in T.vertices:
            if v not in bverts:
                units.append(((v,), tuple((lab,) for lab in points)))
                continue
            w = T.negate_vertex(v)
            if v < w:  # the smaller id represents the pair
                opts = tuple((lab, tuple(-c for c in lab)) for lab in points)
                units.append(((v, w), opts))
    else:
        for v in T.vertices:
            opts = _admissible(theorem, T.domain, T.coords[v], points)
            units.append(((v,), tuple((lab,) for lab in opts)))
    return tuple(units)


class LabelSpace:
    """All labellings satisfying a theorem's hypotheses on T, as a product of
    independent units (single vertices, or antipodal boundary pairs)."""

    def __init__(self, theorem: TheoremId, T: Triangulation, m: int | None = None):
        theorem = TheoremId(theorem)
        check_domain(theorem, T)
        if m is not None and m != T.domain.dim:
            raise ValueError(f"{theorem.value} needs label dimension {T.domain.dim}, got {m}")
        self.theorem = theorem
        self.T = T
        self.codomain = LabelSet(theorem.codomain, T.domain.dim)
        self.units = _units(theorem, T)

    def count(self) -> int:
        return math.prod(len(opts) for _, opts in self.units)

    def _build(self, choice) -> LabelFunction:
        assignment = {}
        for (verts, _), labs in zip(self.units, choice):
            assignment.update(zip(verts, labs))
        return LabelFunction(assignment, self.codomain)

    def sample(self, rng: random.Random) -> LabelFunction:
        return self._build(rng.choice(opts) for _, opts in self.units)

    def __iter__(self) -> Iterator[LabelFunction]:
        for choice in itertools.product(*(opts for _, opts in self.units)):
            yield self._build(choice)


def random_labelling(theorem: TheoremId, T: Triangulation, m: int | None = None,
                     seed: int = 0) -> LabelFunction:
    """Uniform sample among labellings meeting the theorem's hypotheses."""
    return LabelSpace(theorem, T, m).sample(random.Random(seed))


def check_report(theorem: TheoremId, T: Triangulation, lam: LabelFunction) -> dict:
    """Report JSON for a single instance."""
    theorem = TheoremId(theorem)
    report = validate_label_conditions(theorem, T, lam)
    witness = find_witness(theorem, T, lam, check=False) if report.ok else None
    return {"theorem": theorem.value, "valid": report.ok,
            "violations": [v.to_json() for v in report.violations],
            "witness": witness.to_json() if witness else None}
