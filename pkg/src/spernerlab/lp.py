"""Exact rational linear programming.

A dense two-phase tableau simplex with Bland's pivot rule.  Inputs are
rationals; each tableau row is kept as an integer vector scaled by an
arbitrary positive factor, so pivoting never touches Fractions.  Problems
here are tiny (a few dozen rows), so the tableau is rebuilt on every call.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LPResult:
    status: str
    value: Fraction | None = None
    x: tuple[Fraction, ...] | None = None


def _integer_row(values) -> list[int]:
    values = [Fraction(v) for v in values]
    scale = math.lcm(*(v.denominator for v in values)) if values else 1
    return [int(v * scale) for v in values]


def _reduce(row: list[int]) -> list[int]:
    g = math.gcd(*row)
    return [v // g for v in row] if g > 1 else row


def _pivot(rows, obj, basis, r, c):
    if rows[r][c] < 0:
        rows[r] = [-v for v in rows[r]]
    prow = rows[r]
    p = prow[c]
    for k, row in enumerate(rows):
        f = row[c]
        if k != r and f != 0:
            rows[k] = _reduce([p * a - f * b for a, b in zip(row, prow)])
    f = obj[c]
    if f != 0:
        obj[:] = _reduce([p * a - f * b for a, b in zip(obj, prow)])
    basis[r] = c


def _run(rows, obj, basis, allowed) -> bool:
    """Maximize with reduced costs in ``obj``; False when unbounded."""
    while True:
        entering = next((j for j in allowed if obj[j] > 0), None)
        if entering is None:
            return True
        best = None
        for i, row in enumerate(rows):
            a = row[entering]
            if a > 0:
                key = (Fraction(row[-1], a), basis[i])
                if best is None or key < best[0]:
                    best = (key, i)
        if best is None:
            return False
        _pivot(rows, obj, basis, best[1], entering)


def maximize(
    c: Sequence,
    A_ub: Sequence[Sequence] = (),
    b_ub: Sequence = (),
    A_eq: Sequence[Sequence] = (),
    b_eq: Sequence = (),
    free: Sequence[int] = (),
) -> LPResult:
    """Maximize ``c.x`` subject to ``A_ub x <= b_ub``, ``A_eq x = b_eq`` and
    ``x >= 0`` except for the indices listed in ``free``.

    The answer is exact.
    """
    n = len(c)
    free = sorted(set(free))
    # columns: original vars, negative parts of free vars, slacks, artificials
    neg_col = {j: n + k for k, j in enumerate(free)}
    n_struct = n + len(free)
    m_ub, m_eq = len(A_ub), len(A_eq)
    m = m_ub + m_eq
    art0 = n_struct + m_ub
    n_cols = art0 + m

    rows = []
    for i in range(m):
        if i < m_ub:
            coeffs, rhs = A_ub[i], b_ub[i]
        else:
            coeffs, rhs = A_eq[i - m_ub], b_eq[i - m_ub]
        if len(coeffs) != n:
            raise ValueError("constraint row has wrong length")
        row = [Fraction(0)] * (n_cols + 1)
        for j, a in enumerate(coeffs):
            row[j] = Fraction(a)
            if j in neg_col:
                row[neg_col[j]] = -row[j]
        if i < m_ub:
            row[n_struct + i] = Fraction(1)
        row[-1] = Fraction(rhs)
        if row[-1] < 0:
            row = [-v for v in row]
        row[art0 + i] = Fraction(1)
        rows.append(_integer_row(row))
    basis = [art0 + i for i in range(m)]

    # phase 1: maximize -(sum of artificials), written in terms of nonbasics
    obj = _phase_one_objective(rows, basis, n_cols)
    _run(rows, obj, basis, range(art0))
    if obj[-1] != 0:
        return LPResult(INFEASIBLE)

    # drive artificials out of the basis, dropping redundant rows
    r = 0
    while r < len(rows):
        if basis[r] >= art0:
            col = next((j for j in range(art0) if rows[r][j] != 0), None)
            if col is None:
                del rows[r]
                del basis[r]
                continue
            _pivot(rows, obj, basis, r, col)
        r += 1
    rows = [row[:art0] + [row[-1]] for row in rows]

    # phase 2
    cost = [Fraction(0)] * art0
    for j, v in enumerate(c):
        cost[j] = Fraction(v)
        if j in neg_col:
            cost[neg_col[j]] = -cost[j]
    obj = _objective(rows, basis, cost)
    if not _run(rows, obj, basis, range(art0)):
        return LPResult(UNBOUNDED)

    values = [Fraction(0)] * art0
    for i, b in enumerate(basis):
        values[b] = Fraction(rows[i][-1], rows[i][b])
    x = tuple(values[j] - (values[neg_col[j]] if j in neg_col else 0) for j in range(n))
    value = sum((Fraction(cj) * xj for cj, xj in zip(c, x)), Fraction(0))
    return LPResult(OPTIMAL, value, x)


def _objective(rows, basis, cost) -> list[int]:
    """Integer reduced-cost row (up to a positive factor) for ``cost`` given
    the current basis; the last entry is minus the objective value."""
    obj = _integer_row(list(cost) + [0])
    for i, b in enumerate(basis):
        f = obj[b]
        if f != 0:
            p = rows[i][b]  # basic entries stay positive
            obj = _reduce([p * o - f * v for o, v in zip(obj, rows[i])])
    return obj


def _phase_one_objective(rows, basis, n_cols) -> list[int]:
    art0 = n_cols - len(rows)
    cost = [Fraction(0)] * art0 + [Fraction(-1)] * len(rows)
    return _objective(rows, basis, cost)
