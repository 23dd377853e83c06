"""Exact Tverberg partitions.

Given ``t >= (d+1)(r-1)+1`` points in ``R^d`` this finds a partition into
``r`` blocks and convex weights inside every block whose weighted centroids
all coincide.  Arithmetic is exact (``Fraction``); float inputs are converted
exactly.

Three search strategies are used:

* ``d == 1``: nested intervals.  Sort descending, pair the ``j``-th largest
  with the ``j``-th smallest; every interval contains the innermost one, so
  its midpoint (or the middle point when ``t`` is odd) is a common point.
* few candidate partitions: enumerate set partitions in restricted-growth
  order and decide each with an exact phase-1 simplex; the first feasible
  one wins.
* otherwise: Sarkaria's tensor lift turns the problem into a colorful
  Caratheodory instance, solved by the Barany-Onn descent with Wolfe's
  minimum-norm-point routine.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .lp import feasible_point

ENUM_LIMIT = 2000


class TverbergInfeasible(ArithmeticError):
    pass


@dataclass(frozen=True)
class TverbergPartition:
    points: tuple            # tuple of tuples of Fraction
    parts: tuple             # tuple of tuples of point indices
    weights: tuple           # weights[k][a] belongs to point parts[k][a]
    witness: tuple           # common point

    @property
    def r(self) -> int:
        return len(self.parts)

    def check(self) -> bool:
        """Exact re-check of every invariant."""
        t = len(self.points)
        seen = sorted(j for p in self.parts for j in p)
        if seen != list(range(t)) or any(not p for p in self.parts):
            return False
        for part, w in zip(self.parts, self.weights):
            if len(part) != len(w) or any(x < 0 for x in w) or sum(w) != 1:
                return False
            cent = tuple(sum((wj * self.points[j][i] for j, wj in zip(part, w)), Fraction(0))
                         for i in range(len(self.witness)))
            if cent != tuple(self.witness):
                return False
        return True


def _as_points(points) -> tuple:
    pts = tuple(tuple(Fraction(x) for x in p) for p in points)
    if pts and len({len(p) for p in pts}) != 1:
        raise ValueError("points have different dimensions")
    return pts


def stirling2(n: int, k: int) -> int:
    """Number of partitions of ``n`` labelled items into ``k`` nonempty blocks."""
    if k > n or k < 0:
        return 0
    row = [1] + [0] * k
    for i in range(1, n + 1):
        new = [0] * (k + 1)
        for j in range(1, min(i, k) + 1):
            new[j] = j * row[j] + row[j - 1]
        row = new
    return row[k]


def restricted_growth_strings(t: int, r: int) -> Iterator[list[int]]:
    """All partitions of ``range(t)`` into exactly ``r`` blocks, lexicographically."""
    if r > t or r < 1:
        return
    s = [0] * t

    def rec(i: int, used: int):
        if t - i < r - used:
            return
        if i == t:
            if used == r:
                yield list(s)
            return
        for v in range(min(used + 1, r)):
            s[i] = v
            yield from rec(i + 1, used + (v == used))

    yield from rec(0, 0)


def _blocks(labels: Sequence[int], r: int) -> list[list[int]]:
    blocks: list[list[int]] = [[] for _ in range(r)]
    for j, k in enumerate(labels):
        blocks[k].append(j)
    return blocks


def _make(points, blocks, d_of) -> TverbergPartition:
    dim = len(points[0]) if points else 0
    parts = tuple(tuple(b) for b in blocks)
    weights = tuple(tuple(d_of[j] for j in b) for b in blocks)
    b0, w0 = parts[0], weights[0]
    witness = tuple(sum((w * points[j][i] for j, w in zip(b0, w0)), Fraction(0))
                    for i in range(dim))
    return TverbergPartition(points, parts, weights, witness)


def _canonical(blocks: list[list[int]]) -> list[list[int]]:
    blocks = [sorted(b) for b in blocks if b]
    blocks.sort(key=lambda b: b[0])
    return blocks


# ---------------------------------------------------------------------------
# feasibility of one partition

def partition_weights(points, blocks) -> dict | None:
    """Convex weights making all block centroids equal, or ``None``."""
    t = len(points)
    dim = len(points[0]) if points else 0
    rows, rhs = [], []
    for b in blocks:
        row = [Fraction(0)] * t
        for j in b:
            row[j] = Fraction(1)
        rows.append(row)
        rhs.append(Fraction(1))
    b0 = blocks[0]
    for b in blocks[1:]:
        for i in range(dim):
            row = [Fraction(0)] * t
            for j in b:
                row[j] += points[j][i]
            for j in b0:
                row[j] -= points[j][i]
            rows.append(row)
            rhs.append(Fraction(0))
    x = feasible_point(rows, rhs)
    if x is None:
        return None
    return dict(enumerate(x))


# ---------------------------------------------------------------------------
# strategies

def _nested_intervals(points, r: int) -> TverbergPartition:
    t = len(points)
    T = 2 * r - 1
    use = list(range(T))
    order = sorted(use, key=lambda j: (-points[j][0], j))
    vals = [points[j][0] for j in order]
    blocks, d = [], {}
    if T % 2:
        mid = order[T // 2]
        w = vals[T // 2]
        blocks.append([mid])
        d[mid] = Fraction(1)
    else:
        w = (vals[T // 2 - 1] + vals[T // 2]) / 2
    for a in range(T // 2):
        hi, lo = order[a], order[T - 1 - a]
        x, y = vals[a], vals[T - 1 - a]
        if x == y:
            d[hi] = d[lo] = Fraction(1, 2)
        else:
            d[hi] = (w - y) / (x - y)
            d[lo] = 1 - d[hi]
        blocks.append([hi, lo])
    blocks = _canonical(blocks)
    extra = list(range(T, t))
    for j in extra:
        d[j] = Fraction(0)
    blocks[0] = sorted(blocks[0] + extra)
    return _make(points, blocks, d)


def _enumerate(points, r: int) -> TverbergPartition | None:
    for labels in restricted_growth_strings(len(points), r):
        blocks = _blocks(labels, r)
        d = partition_weights(points, blocks)
        if d is not None:
            return _make(points, blocks, d)
    return None


def _solve(M: list[list[int]], rhs: list[int]) -> list[Fraction]:
    """Solve an integer system with fraction-free (Bareiss) elimination."""
    n = len(M)
    A = [list(M[i]) + [rhs[i]] for i in range(n)]
    prev = 1
    for c in range(n):
        p = next((i for i in range(c, n) if A[i][c] != 0), None)
        if p is None:
            raise ZeroDivisionError("singular corral system")
        A[c], A[p] = A[p], A[c]
        piv = A[c][c]
        for i in range(c + 1, n):
            a = A[i][c]
            row_i, row_c = A[i], A[c]
            A[i] = [(piv * row_i[j] - a * row_c[j]) // prev if j > c else 0
                    for j in range(n + 1)]
        prev = piv
    x = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        acc = Fraction(A[i][n])
        for j in range(i + 1, n):
            if A[i][j]:
                acc -= A[i][j] * x[j]
        x[i] = acc / A[i][i]
    return x


def colorful_partition(points, r: int, max_iter: int = 100000) -> TverbergPartition:
    """Sarkaria lift plus Barany-Onn descent, all in exact arithmetic.

    Point ``j`` with class choice ``k`` lifts to ``(c_j, 1) (x) f_k`` where
    ``f_0..f_{r-2}`` are unit vectors and ``f_{r-1} = -(1,...,1)``.  Inner
    products of lifts factor as ``<y_j, y_l> <f_k, f_h>``, so only the Gram
    matrix of the homogenised points is ever formed.  Once the origin is a
    convex combination of one lift per point, the chosen classes form a
    Tverberg partition.
    """
    T = len(points)
    # Positive rescaling of each point keeps "0 is in the colorful hull"
    # invariant, so clear denominators and work with integer lifts.
    scale = [math.lcm(*(x.denominator for x in p)) if p else 1 for p in points]
    ys = [tuple(int(x * L) for x in p) + (L,) for p, L in zip(points, scale)]
    Yg = [[sum(a * b for a, b in zip(ys[i], ys[j])) for j in range(T)] for i in range(T)]

    def fg(k: int, h: int) -> int:
        if k == r - 1 and h == r - 1:
            return r - 1
        if k == r - 1 or h == r - 1:
            return -1
        return 1 if k == h else 0

    def ip(a, b) -> int:
        return Yg[a[0]][b[0]] * fg(a[1], b[1])

    choice = [j % r for j in range(T)]
    corral: list | None = None
    lam: dict = {}
    for _ in range(max_iter):
        atoms = [(j, choice[j]) for j in range(T)]
        if corral is None:
            a0 = min(atoms, key=lambda a: ip(a, a))
            corral, lam = [a0], {a0: Fraction(1)}
        # Wolfe's method, warm-started from the previous corral
        while True:
            xx = sum((lam[a] * lam[b] * ip(a, b) for a in corral for b in corral), Fraction(0))
            if xx == 0:
                break
            xq = {q: sum((lam[a] * ip(a, q) for a in corral), Fraction(0)) for q in atoms}
            q = min(atoms, key=lambda q: xq[q])
            if xx <= xq[q]:
                break
            corral.append(q)
            lam[q] = Fraction(0)
            while True:
                c = len(corral)
                M = [[ip(a, b) for b in corral] + [1] for a in corral]
                M.append([1] * c + [0])
                mu = _solve(M, [0] * c + [1])[:c]
                if all(v > 0 for v in mu):
                    lam = dict(zip(corral, mu))
                    break
                theta = min(lam[a] / (lam[a] - v) for a, v in zip(corral, mu) if v <= 0)
                lam = {a: theta * v + (1 - theta) * lam[a] for a, v in zip(corral, mu)}
                corral = [a for a in corral if lam[a] > 0]
                lam = {a: lam[a] for a in corral}
        if xx == 0:
            alpha = {a[0]: w for a, w in lam.items()}
            blocks = _canonical(_blocks(choice, r))
            d = {}
            for blk in blocks:
                mass = sum((alpha.get(j, 0) * scale[j] for j in blk), Fraction(0))
                for j in blk:
                    d[j] = alpha.get(j, Fraction(0)) * scale[j] / mass
            return _make(points, blocks, d)
        used = {a[0] for a in corral}
        j = next(j for j in range(T) if j not in used)
        xj = [sum((lam[a] * ip(a, (j, k)) for a in corral), Fraction(0)) for k in range(r)]
        choice[j] = min(range(r), key=lambda k: xj[k])
    raise TverbergInfeasible("colorful descent did not converge")


def tverberg_partition(points, r: int, method: str = "auto") -> TverbergPartition:
    """Partition ``points`` into ``r`` blocks with a common convex combination.

    ``method`` is ``auto``, ``enumerate``, ``colorful`` or ``intervals``.
    Enumeration is exhaustive, so it also decides instances below Tverberg's
    point count, raising :class:`TverbergInfeasible` when none exists.
    """
    pts = _as_points(points)
    t = len(pts)
    if r < 1 or r > t:
        raise ValueError(f"cannot split {t} points into {r} nonempty blocks")
    dim = len(pts[0])
    need = (dim + 1) * (r - 1) + 1
    if r == 1:
        d = {j: Fraction(int(j == 0)) for j in range(t)}
        return _make(pts, [list(range(t))], d)
    if method == "auto":
        if t < need or stirling2(t, r) <= ENUM_LIMIT:
            method = "enumerate"
        elif dim == 1:
            method = "intervals"
        elif dim == 0:
            method = "trivial"
        else:
            method = "colorful"
    if method == "enumerate":
        out = _enumerate(pts, r)
        if out is None:
            if t >= need:
                raise AssertionError("no Tverberg partition found above the guaranteed count")
            raise TverbergInfeasible(f"no partition of {t} points into {r} blocks shares a point")
        return out
    if t < need:
        raise TverbergInfeasible(f"{t} points are fewer than the {need} Tverberg guarantees")
    if method == "intervals":
        if dim != 1:
            raise ValueError("interval method needs one-dimensional points")
        return _nested_intervals(pts, r)
    if method == "trivial":
        labels = [0] * (t - r + 1) + list(range(1, r))
        blocks = _blocks(labels, r)
        d = {j: Fraction(int(j == b[0])) for b in blocks for j in b}
        return _make(pts, blocks, d)
    if method == "colorful":
        use = pts[:need]
        part = colorful_partition(use, r)
        if t == need:
            return part
        blocks = [list(b) for b in part.parts]
        d = {j: w for b, ws in zip(part.parts, part.weights) for j, w in zip(b, ws)}
        for j in range(need, t):
            blocks[0].append(j)
            d[j] = Fraction(0)
        return _make(pts, blocks, d)
    raise ValueError(f"unknown method {method!r}")
