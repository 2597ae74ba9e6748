"""Exact linear algebra over Q."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


def rref(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int], list[list[Fraction]]]:
    """Reduced row echelon form.

    Returns ``(R, pivots, kernel)`` where ``R`` keeps the original row count,
    ``pivots`` lists pivot columns in order and ``kernel`` is a basis of the
    null space with one vector per free column, taken in column order.
    """
    m = [[Fraction(x) for x in r] for r in rows]
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if m[i][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        pivot_row = m[r]
        nz = [j for j in range(c, ncols) if pivot_row[j]]
        for i in range(nrows):
            if i != r and m[i][c]:
                f = m[i][c]
                row = m[i]
                for j in nz:
                    row[j] -= f * pivot_row[j]
        pivots.append(c)
        r += 1
    free = [c for c in range(ncols) if c not in set(pivots)]
    kernel = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -m[i][fc]
        kernel.append(v)
    return m, pivots, kernel


def rank(rows: Sequence[Sequence]) -> int:
    if not rows:
        return 0
    return len(rref(rows)[1])


class InconsistentSystem(ArithmeticError):
    pass


def solve_affine(A: Sequence[Sequence], b: Sequence, free_values: dict[int, Fraction] | None = None):
    """Solve A x = b exactly.

    Free variables (non-pivot columns, in column order) take values from
    ``free_values`` keyed by their rank among free columns, defaulting to 0.
    Returns ``(x, free_columns)``.
    """
    ncols = len(A[0]) if A else 0
    aug = [list(r) + [bv] for r, bv in zip(A, b)]
    if not aug:
        return [Fraction(0)] * ncols, list(range(ncols))
    R, pivots, _ = rref(aug)
    if ncols in pivots:
        raise InconsistentSystem("affine system has no solution")
    free = [c for c in range(ncols) if c not in set(pivots)]
    free_values = free_values or {}
    x = [Fraction(0)] * ncols
    for rank_, c in enumerate(free):
        x[c] = Fraction(free_values.get(rank_, 0))
    for i, pc in enumerate(pivots):
        x[pc] = R[i][ncols] - sum(R[i][c] * x[c] for c in free)
    return x, free


class IncrementalRank:
    """Row space accumulated one vector at a time (sparse dict rows)."""

    def __init__(self):
        self.rows: dict = {}  # pivot key -> normalised row dict

    def add(self, vec: dict) -> bool:
        v = {k: Fraction(c) for k, c in vec.items() if c}
        for p, row in self.rows.items():
            c = v.get(p)
            if c:
                for k, rc in row.items():
                    nv = v.get(k, 0) - c * rc
                    if nv:
                        v[k] = nv
                    else:
                        v.pop(k, None)
        if not v:
            return False
        p = min(v)
        inv = 1 / v[p]
        v = {k: c * inv for k, c in v.items()}
        for q, row in self.rows.items():
            c = row.get(p)
            if c:
                for k, vc in v.items():
                    nv = row.get(k, 0) - c * vc
                    if nv:
                        row[k] = nv
                    else:
                        row.pop(k, None)
        self.rows[p] = v
        return True

    def __len__(self) -> int:
        return len(self.rows)
