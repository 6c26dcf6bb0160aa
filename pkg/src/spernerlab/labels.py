"""Ext-point label sets, labellings as multisets, and label functions.

A label is a plain tuple of ints.  A labelling is the sorted tuple of its
labels, which makes equal multisets compare and hash equal.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

Label = tuple
Labelling = tuple


class LabelKind(str, enum.Enum):
    SIMPLEX_EXT = "SIMPLEX_EXT"
    CROSS_EXT = "CROSS_EXT"
    CUBE_EXT = "CUBE_EXT"


@dataclass(frozen=True)
class LabelSet:
    """The extreme points of the m-simplex, m-cross-polytope or m-cube."""

    kind: LabelKind
    dim: int

    def __post_init__(self):
        object.__setattr__(self, "kind", LabelKind(self.kind))
        if self.dim < 1:
            raise ValueError("label dimension must be at least 1")

    @property
    def size(self) -> int:
        if self.kind is LabelKind.SIMPLEX_EXT:
            return self.dim + 1
        if self.kind is LabelKind.CROSS_EXT:
            return 2 * self.dim
        return 2 ** self.dim

    @property
    def vector_length(self) -> int:
        return self.dim + 1 if self.kind is LabelKind.SIMPLEX_EXT else self.dim

    @property
    def negatable(self) -> bool:
        return self.kind is not LabelKind.SIMPLEX_EXT

    def points(self) -> tuple:
        return ext_points(self.kind, self.dim)

    def __contains__(self, label) -> bool:
        return tuple(label) in set(self.points())

    def __str__(self) -> str:
        short = {LabelKind.SIMPLEX_EXT: "simplex", LabelKind.CROSS_EXT: "cross",
                 LabelKind.CUBE_EXT: "cube"}[self.kind]
        return f"{short}:{self.dim}"


def parse_label_set(text: str) -> LabelSet:
    """``cross:3`` -> CROSS_EXT of dimension 3 (likewise ``cube``, ``simplex``)."""
    try:
        name, dim = text.strip().split(":")
        kind = {"simplex": LabelKind.SIMPLEX_EXT, "cross": LabelKind.CROSS_EXT,
                "cube": LabelKind.CUBE_EXT}[name]
        return LabelSet(kind, int(dim))
    except (KeyError, ValueError) as exc:
        raise ValueError(f"cannot parse label set {text!r}") from exc


@lru_cache(maxsize=None)
def ext_points(kind: LabelKind, m: int) -> tuple:
    """All extreme points: e_1, -e_1, ..., e_m, -e_m for the cross-polytope,
    sign vectors with (1, ..., 1) first for the cube, e_1 .. e_(m+1) for the
    simplex."""
    kind = LabelKind(kind)
    if m < 1:
        raise ValueError("label dimension must be at least 1")

    def e(i, length, s=1):
        return tuple(s if j == i else 0 for j in range(length))

    if kind is LabelKind.CROSS_EXT:
        return tuple(e(i, m, s) for i in range(m) for s in (1, -1))
    if kind is LabelKind.CUBE_EXT:
        return tuple(itertools.product((1, -1), repeat=m))
    return tuple(e(i, m + 1) for i in range(m + 1))


def labelling(labels: Iterable[Sequence[int]]) -> Labelling:
    """Canonical multiset form."""
    return tuple(sorted(tuple(int(c) for c in lab) for lab in labels))


def cross_label(k: int, m: int) -> Label:
    """Shorthand: ``+k`` is e_k and ``-k`` is -e_k in R^m."""
    if k == 0 or abs(k) > m:
        raise ValueError(f"index {k} out of range for dimension {m}")
    return tuple((1 if k > 0 else -1) if j == abs(k) - 1 else 0 for j in range(m))


def signed_index(label: Sequence[int]) -> int:
    """Inverse of :func:`cross_label`."""
    _require_cross([label])
    i = next(j for j, c in enumerate(label) if c != 0)
    return (i + 1) * label[i]


def _is_label(x) -> bool:
    return len(x) > 0 and all(isinstance(c, int) for c in x)


def opposite(x, kind: LabelKind | None = None):
    """Negate a label, or every label of a labelling."""
    if kind is not None and LabelKind(kind) is LabelKind.SIMPLEX_EXT:
        raise ValueError("simplex labels have no negation")
    x = tuple(x)
    if _is_label(x):
        return tuple(-c for c in x)
    return labelling(tuple(-c for c in lab) for lab in x)


def _require_cross(labels) -> None:
    for lab in labels:
        nonzero = [c for c in lab if c != 0]
        if len(nonzero) != 1 or nonzero[0] not in (1, -1):
            raise ValueError(f"{tuple(lab)} is not a cross-polytope label")


def _require_cube(labels) -> None:
    lengths = set()
    for lab in labels:
        if not lab or any(c not in (1, -1) for c in lab):
            raise ValueError(f"{tuple(lab)} is not a cube label")
        lengths.add(len(lab))
    if len(lengths) > 1:
        raise ValueError("cube labels of different lengths")


def has_complementary_pair(ell: Iterable[Sequence[int]]) -> bool:
    labels = [tuple(lab) for lab in ell]
    _require_cross(labels)
    present = set(labels)
    return any(tuple(-c for c in lab) in present for lab in present)


def is_neutral(ell: Iterable[Sequence[int]]) -> bool:
    labels = [tuple(lab) for lab in ell]
    _require_cube(labels)
    if not labels:
        return False
    return all({lab[i] for lab in labels} == {1, -1} for i in range(len(labels[0])))


def is_panchromatic(ell: Iterable[Sequence[int]], m: int) -> bool:
    return set(tuple(lab) for lab in ell) == set(ext_points(LabelKind.SIMPLEX_EXT, m))


@lru_cache(maxsize=None)
def enumerate_labellings(ls: LabelSet, i: int) -> frozenset:
    """L^i: every multiset of i + 1 labels."""
    if i < 0:
        raise ValueError("i must be non-negative")
    return frozenset(labelling(c) for c in
                     itertools.combinations_with_replacement(ls.points(), i + 1))


def check_strict_symmetry(S: Iterable[Labelling]) -> bool:
    """Closed under negation with no self-opposite member."""
    S = set(S)
    for ell in S:
        neg = opposite(ell)
        if neg == ell or neg not in S:
            return False
    return True


class LabelFunction:
    """A total map vertex id -> label into a fixed codomain."""

    def __init__(self, assignment: Mapping[int, Sequence[int]], codomain: LabelSet):
        self.codomain = codomain
        allowed = set(codomain.points())
        self.assignment: dict[int, Label] = {}
        for v, lab in assignment.items():
            lab = tuple(int(c) for c in lab)
            if lab not in allowed:
                raise ValueError(f"label {lab} of vertex {v} is not in {codomain}")
            self.assignment[int(v)] = lab

    def __getitem__(self, v: int) -> Label:
        return self.assignment[v]

    def __contains__(self, v: int) -> bool:
        return v in self.assignment

    def __eq__(self, other) -> bool:
        return (isinstance(other, LabelFunction) and self.codomain == other.codomain
                and self.assignment == other.assignment)

    def __repr__(self) -> str:
        return f"LabelFunction({len(self.assignment)} vertices -> {self.codomain})"

    def labelling(self, simplex: Sequence[int]) -> Labelling:
        return labelling(self.assignment[v] for v in simplex)

    def missing(self, vertices: Iterable[int]) -> list:
        return [v for v in vertices if v not in self.assignment]

    def with_labels(self, updates: Mapping[int, Sequence[int]]) -> "LabelFunction":
        merged = dict(self.assignment)
        merged.update(updates)
        return LabelFunction(merged, self.codomain)

    def to_json(self) -> dict:
        return {"codomain": {"kind": self.codomain.kind.value, "dim": self.codomain.dim},
                "labels": {str(v): list(self.assignment[v]) for v in sorted(self.assignment)}}

    @classmethod
    def from_json(cls, d: dict) -> "LabelFunction":
        codomain = LabelSet(LabelKind(d["codomain"]["kind"]), int(d["codomain"]["dim"]))
        return cls({int(v): lab for v, lab in d["labels"].items()}, codomain)
