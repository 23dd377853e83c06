"""Exact-rational phase-1 simplex for feasibility of ``A x = b, x >= 0``."""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence


def feasible_point(A: Sequence[Sequence], b: Sequence) -> list[Fraction] | None:
    """Return a nonnegative rational solution of ``A x = b`` or ``None``.

    Dense tableau, Bland's rule, one artificial variable per row. Exact, so a
    ``None`` answer is a proof of infeasibility rather than a numerical guess.
    """
    rows = len(A)
    cols = len(A[0]) if rows else 0
    if rows == 0:
        return [Fraction(0)] * cols

    tab = []
    for i in range(rows):
        row = [Fraction(v) for v in A[i]]
        rhs = Fraction(b[i])
        if rhs < 0:
            row = [-v for v in row]
            rhs = -rhs
        art = [Fraction(0)] * rows
        art[i] = Fraction(1)
        tab.append(row + art + [rhs])
    width = cols + rows
    basis = [cols + i for i in range(rows)]

    # phase-1 objective: minimise the artificial sum; reduced costs kept in `obj`
    obj = [Fraction(0)] * (width + 1)
    for row in tab:
        for j in range(cols):
            obj[j] -= row[j]
        obj[width] -= row[width]

    while True:
        enter = next((j for j in range(width) if obj[j] < 0), None)
        if enter is None:
            break
        leave, best = None, None
        for i in range(rows):
            a = tab[i][enter]
            if a > 0:
                ratio = tab[i][width] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    leave, best = i, ratio
        if leave is None:  # unbounded direction; cannot happen for phase 1
            break
        _pivot(tab, obj, leave, enter)
        basis[leave] = enter

    if obj[width] != 0:
        return None
    x = [Fraction(0)] * cols
    for i, var in enumerate(basis):
        if var < cols:
            x[var] = tab[i][width]
    return x


def _pivot(tab, obj, r, c):
    prow = tab[r]
    p = prow[c]
    if p != 1:
        inv = 1 / p
        prow[:] = [v * inv for v in prow]
    for i, row in enumerate(tab):
        if i != r:
            f = row[c]
            if f:
                row[:] = [v - f * w for v, w in zip(row, prow)]
    f = obj[c]
    if f:
        obj[:] = [v - f * w for v, w in zip(obj, prow)]
