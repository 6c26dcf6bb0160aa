"""The generalized Fan parity framework over hemisphere-aligned chains.

Forbidden sets, partition rules and the M^i recursion operate on labellings
alone; :func:`run_framework` ties them to a labelled chain and counts the
i-simplices of each level T^i whose labelling lies in M^i.
"""

from __future__ import annotations

import enum
import itertools
import random
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable

from .complex import ValidationReport
from .generators import HemisphereChain
from .labels import (LabelFunction, LabelSet, check_strict_symmetry, cross_label,
                     enumerate_labellings, has_complementary_pair, is_neutral, labelling,
                     opposite)

NOT_STRICTLY_SYMMETRIC = "NOT_STRICTLY_SYMMETRIC"
FORBIDDEN_SINGLETON = "FORBIDDEN_SINGLETON"
ODD_DEGREE = "ODD_DEGREE"
NOT_ANTIPODAL = "NOT_ANTIPODAL"
EVEN_COUNT = "EVEN_COUNT"
PHI_BOUND = "PHI_BOUND"


class ForbiddenKind(str, enum.Enum):
    COMPLEMENTARY = "COMPLEMENTARY"
    NEUTRAL = "NEUTRAL"
    CUSTOM = "CUSTOM"


@dataclass(frozen=True)
class ForbiddenSet:
    """A set F of labellings, given by a membership predicate."""

    kind: ForbiddenKind
    predicate: Callable | None = None
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "kind", ForbiddenKind(self.kind))
        if self.kind is ForbiddenKind.CUSTOM and self.predicate is None:
            raise ValueError("custom forbidden sets need a predicate")

    @classmethod
    def complementary(cls) -> "ForbiddenSet":
        return cls(ForbiddenKind.COMPLEMENTARY)

    @classmethod
    def neutral(cls) -> "ForbiddenSet":
        return cls(ForbiddenKind.NEUTRAL)

    @classmethod
    def empty(cls) -> "ForbiddenSet":
        return cls(ForbiddenKind.CUSTOM, lambda ell: False, "empty")

    def __contains__(self, ell) -> bool:
        if self.kind is ForbiddenKind.COMPLEMENTARY:
            return has_complementary_pair(ell)
        if self.kind is ForbiddenKind.NEUTRAL:
            return is_neutral(ell)
        return bool(self.predicate(ell))

    def __str__(self) -> str:
        return self.name or self.kind.value


@lru_cache(maxsize=None)
def allowed_labellings(ls: LabelSet, F: ForbiddenSet, i: int) -> frozenset:
    """L^i minus F."""
    return frozenset(ell for ell in enumerate_labellings(ls, i) if ell not in F)


def verify_strict_symmetry(F: ForbiddenSet, ls: LabelSet, n: int) -> ValidationReport:
    """F misses L^0 and each L^i minus F (i = 0..n) is strictly symmetric."""
    report = ValidationReport()
    if not ls.negatable:
        report.add(NOT_STRICTLY_SYMMETRIC, detail=f"{ls} has no negation")
        return report
    for ell in sorted(enumerate_labellings(ls, 0)):
        if ell in F:
            report.add(FORBIDDEN_SINGLETON, ell)
    for i in range(n + 1):
        S = allowed_labellings(ls, F, i)
        for ell in sorted(S):
            neg = opposite(ell)
            if neg == ell:
                report.add(NOT_STRICTLY_SYMMETRIC, ell, detail=f"level {i}: self-opposite")
            elif neg not in S:
                report.add(NOT_STRICTLY_SYMMETRIC, ell, detail=f"level {i}: opposite is forbidden")
    return report


def face_degree(ell, M) -> int:
    """How many of the len(ell) position-removals of ell land in M."""
    ell = labelling(ell)
    M = M if isinstance(M, (set, frozenset)) else set(M)
    for member in M:
        if len(member) != len(ell) - 1:
            raise ValueError("M must hold labellings with one label fewer than ell")
        break
    return sum(ell[:j] + ell[j + 1:] in M for j in range(len(ell)))


# -- partition rules ---------------------------------------------------------

class PartitionRuleError(ValueError):
    pass


@dataclass(frozen=True)
class PartitionRule:
    """Chooses '+' (returns 1) or '-' (returns -1) for each labelling."""

    name: str
    sign: Callable

    def __call__(self, ell) -> int:
        return self.sign(ell)

    def split(self, M) -> tuple[frozenset, frozenset]:
        """(M_+, M_-), checking antisymmetry on M."""
        plus, minus = set(), set()
        for ell in M:
            s = self.sign(ell)
            if s not in (1, -1):
                raise PartitionRuleError(f"{self.name} returned {s!r}")
            neg = opposite(ell)
            if neg in M and self.sign(neg) != -s:
                raise PartitionRuleError(f"{self.name} is not antisymmetric at {ell}")
            (plus if s == 1 else minus).add(ell)
        return frozenset(plus), frozenset(minus)


TUCKER_RULE = "TUCKER_RULE"
CUBICAL_RULE = "CUBICAL_RULE"


def _tucker_sign(ell) -> int:
    """Sign of the smallest index that appears."""
    seen = {}
    for lab in ell:
        i = next(j for j, c in enumerate(lab) if c != 0)
        seen.setdefault(i, set()).add(lab[i])
    if not seen:
        raise PartitionRuleError("empty labelling")
    signs = seen[min(seen)]
    if len(signs) > 1:
        raise PartitionRuleError(f"{ell} is complementary at its smallest index")
    return signs.pop()


def phi(ell) -> tuple[int, int] | None:
    """(1-based smallest coordinate on which all labels agree, common sign),
    or None when the labelling is neutral."""
    ell = list(ell)
    if not ell:
        raise ValueError("empty labelling")
    for i in range(len(ell[0])):
        values = {lab[i] for lab in ell}
        if len(values) == 1:
            return i + 1, values.pop()
    return None


def _cubical_sign(ell) -> int:
    found = phi(ell)
    if found is None:
        raise PartitionRuleError(f"{ell} is neutral; no agreeing coordinate")
    return found[1]


def builtin_rule(kind: str) -> PartitionRule:
    kind = kind.upper()
    if kind in (TUCKER_RULE, "TUCKER"):
        return PartitionRule(TUCKER_RULE, _tucker_sign)
    if kind in (CUBICAL_RULE, "CUBICAL"):
        return PartitionRule(CUBICAL_RULE, _cubical_sign)
    raise ValueError(f"unknown rule {kind!r}")


# -- M sequences -------------------------------------------------------------

def next_M(M_plus_prev, ls: LabelSet, F: ForbiddenSet, i: int) -> frozenset:
    """Labellings in L^i minus F with an odd face degree into M_plus_prev."""
    M_plus_prev = frozenset(M_plus_prev)
    if not M_plus_prev:
        return frozenset()
    return frozenset(ell for ell in allowed_labellings(ls, F, i)
                     if face_degree(ell, M_plus_prev) % 2 == 1)


def even_degree_check(ls: LabelSet, F: ForbiddenSet, i: int, M_prev) -> ValidationReport:
    """Every labelling in L^i minus F has an even face degree into M^(i-1)."""
    report = ValidationReport()
    M_prev = frozenset(M_prev)
    for ell in sorted(allowed_labellings(ls, F, i)):
        d = face_degree(ell, M_prev)
        if d % 2:
            report.add(ODD_DEGREE, ell, detail=f"level {i}: degree {d}")
    return report


@dataclass(frozen=True)
class MLevel:
    M: frozenset
    plus: frozenset
    minus: frozenset


@lru_cache(maxsize=None)
def m_sequence(ls: LabelSet, F: ForbiddenSet, rule: PartitionRule, n: int) -> tuple:
    """Levels 0..n of the recursion, each with its partition (the partition
    of M^n is included for completeness)."""
    M = enumerate_labellings(ls, 0)
    levels = []
    for i in range(n + 1):
        if i > 0:
            M = next_M(levels[-1].plus, ls, F, i)
        plus, minus = rule.split(M)
        levels.append(MLevel(M, plus, minus))
    return tuple(levels)


@lru_cache(maxsize=None)
def _level_checks(ls: LabelSet, F: ForbiddenSet, rule: PartitionRule, n: int) -> tuple:
    """Per level: (M^i strictly symmetric, even degrees into M^(i-1), Phi bound
    or None for rules other than the cubical one)."""
    levels = m_sequence(ls, F, rule, n)
    out = []
    for i, lv in enumerate(levels):
        even = True if i == 0 else even_degree_check(ls, F, i, levels[i - 1].M).ok
        bound = None
        if rule.name == CUBICAL_RULE:
            bound = all(phi(ell)[0] >= i + 1 for ell in lv.M)
        out.append((check_strict_symmetry(lv.M), even, bound))
    return tuple(out)


def closed_form_tucker_M(i: int, m: int) -> tuple[frozenset, frozenset, frozenset]:
    """(M^(i-1)_+, M^(i-1)_-, M^i) for the Tucker rule: alternating-sign
    families over strictly increasing indices bounded by m."""
    if i < 1 or m < 1:
        raise ValueError("need i >= 1 and m >= 1")

    def family(size, first):
        out = set()
        for ks in itertools.combinations(range(1, m + 1), size):
            out.add(labelling(cross_label(first * (-1) ** t * k, m) for t, k in enumerate(ks)))
        return frozenset(out)

    plus, minus = family(i, 1), family(i, -1)
    return plus, minus, family(i + 1, 1) | family(i + 1, -1)


# -- framework runs ----------------------------------------------------------

@dataclass
class LevelTrace:
    level: int
    size: int
    plus: int
    minus: int
    count: int
    strictly_symmetric: bool
    even_degrees: bool
    phi_bound: bool | None = None
    members: list | None = None

    @property
    def odd(self) -> bool:
        return self.count % 2 == 1

    def to_json(self) -> dict:
        out = {"level": self.level, "size": self.size, "plus": self.plus,
               "minus": self.minus, "count": self.count,
               "parity": "odd" if self.odd else "even",
               "strictly_symmetric": self.strictly_symmetric,
               "even_degrees": self.even_degrees}
        if self.phi_bound is not None:
            out["phi_bound"] = self.phi_bound
        if self.members is not None:
            out["members"] = [[list(lab) for lab in ell] for ell in self.members]
        return out


@dataclass
class FrameworkTrace:
    rule: str
    forbidden: str
    labels: str
    n: int
    levels: list = field(default_factory=list)
    witness: tuple | None = None
    witness_labelling: tuple | None = None
    report: ValidationReport = field(default_factory=ValidationReport)

    @property
    def aborted(self) -> bool:
        return self.witness is not None

    @property
    def ok(self) -> bool:
        """Checks passed; a completed run also needs odd counts everywhere."""
        if not self.report.ok:
            return False
        if self.aborted:
            return True
        return all(lv.odd and lv.strictly_symmetric and lv.even_degrees
                   and lv.phi_bound is not False for lv in self.levels)

    def to_json(self) -> dict:
        return {"rule": self.rule, "forbidden": self.forbidden, "labels": self.labels,
                "n": self.n, "ok": self.ok, "aborted": self.aborted,
                "witness": list(self.witness) if self.witness else None,
                "witness_labelling": ([list(lab) for lab in self.witness_labelling]
                                      if self.witness_labelling else None),
                "levels": [lv.to_json() for lv in self.levels],
                "violations": self.report.to_json()["violations"]}


def _boundary_vertices(chain: HemisphereChain) -> set:
    """Vertices of the boundary of T, i.e. of T^(n-1) and its reflection."""
    T = chain.triangulation
    upper = {v for i in range(chain.n) for s in chain.level(i) for v in s}
    return upper | {T.negate_vertex(v) for v in upper}


def _antipodal_report(chain: HemisphereChain, lam: LabelFunction) -> ValidationReport:
    T = chain.triangulation
    report = ValidationReport()
    boundary = _boundary_vertices(chain)
    for v in sorted(boundary):
        w = T.negate_vertex(v)
        if w is None or lam[w] != opposite(lam[v]):
            report.add(NOT_ANTIPODAL, (v,) if w is None else (v, w))
    return report


def run_framework(chain: HemisphereChain, lam: LabelFunction, F: ForbiddenSet,
                  rule: PartitionRule, list_limit: int = 10 ** 4) -> FrameworkTrace:
    """Run the recursion on a labelled chain.

    A simplex of T with a forbidden labelling aborts the run and is returned
    as the witness.  Otherwise each level records |M^i|, the partition sizes
    and the number of i-simplices of T^i labelled in M^i.
    """
    ls, n = lam.codomain, chain.n
    trace = FrameworkTrace(rule.name, str(F), str(ls), n)
    missing = lam.missing(chain.triangulation.vertices)
    if missing:
        raise ValueError(f"unlabelled vertices {missing[:5]}")
    sym = verify_strict_symmetry(F, ls, n)
    if not sym.ok:
        raise ValueError(f"forbidden set {F} fails strict symmetry: {sym.violations[:3]}")
    anti = _antipodal_report(chain, lam)
    if not anti.ok:
        raise ValueError(f"labels are not antipodal on the boundary: {anti.violations[:3]}")

    for s in chain.triangulation.sorted_simplices:
        ell = lam.labelling(s)
        if ell in F:
            trace.witness, trace.witness_labelling = s, ell
            return trace

    levels = m_sequence(ls, F, rule, n)
    for i, (lv, (symmetric, even, bound)) in enumerate(zip(levels, _level_checks(ls, F, rule, n))):
        count = sum(lam.labelling(s) in lv.M for s in chain.simplices(i))
        members = sorted(lv.M) if len(lv.M) <= list_limit else None
        trace.levels.append(LevelTrace(i, len(lv.M), len(lv.plus), len(lv.minus), count,
                                       symmetric, even, bound, members))
        if count % 2 == 0:
            trace.report.add(EVEN_COUNT, detail=f"level {i}: {count} simplices")
        if bound is False:
            trace.report.add(PHI_BOUND, detail=f"level {i}")
    return trace


# -- searching for forbidden-free labellings ---------------------------------

def search_labelling(chain: HemisphereChain, ls: LabelSet, F: ForbiddenSet,
                     seed: int = 0, budget: int = 10 ** 5) -> LabelFunction | None:
    """Randomized backtracking for an antipodal labelling with no forbidden
    simplex; None when the budget of assignments runs out.

    F is assumed monotone (a simplex with a forbidden face is forbidden), so
    partial labellings of maximal simplices are checked as vertices are set.
    """
    T = chain.triangulation
    rng = random.Random(seed)
    boundary = _boundary_vertices(chain)
    units = []
    for v in sorted(T.vertices):
        if v in boundary:
            w = T.negate_vertex(v)
            if v < w:
                units.append((v, w))
        else:
            units.append((v,))
    rng.shuffle(units)
    containing = {v: [] for v in T.vertices}
    for s in T.maximal:
        for v in s:
            containing[v].append(s)
    points = list(ls.points())
    assignment: dict[int, tuple] = {}
    steps = 0

    def consistent(verts) -> bool:
        for v in verts:
            for s in containing[v]:
                labs = [assignment[u] for u in s if u in assignment]
                if labs and labelling(labs) in F:
                    return False
        return True

    def solve(k: int) -> bool:
        nonlocal steps
        if k == len(units):
            return True
        unit = units[k]
        options = points[:]
        rng.shuffle(options)
        for lab in options:
            steps += 1
            if steps > budget:
                return False
            assignment[unit[0]] = lab
            if len(unit) == 2:
                assignment[unit[1]] = opposite(lab)
            if consistent(unit) and solve(k + 1):
                return True
            for v in unit:
                assignment.pop(v, None)
        return False

    if not solve(0):
        return None
    return LabelFunction(assignment, ls)


def random_antipodal_labelling(chain: HemisphereChain, ls: LabelSet, seed: int = 0) -> LabelFunction:
    """Uniform labelling that is antipodal on the chain's lower levels."""
    T = chain.triangulation
    rng = random.Random(seed)
    boundary = _boundary_vertices(chain)
    points = ls.points()
    assignment = {}
    for v in sorted(T.vertices):
        if v in assignment:
            continue
        lab = rng.choice(points)
        assignment[v] = lab
        if v in boundary:
            assignment[T.negate_vertex(v)] = opposite(lab)
    return LabelFunction(assignment, ls)
