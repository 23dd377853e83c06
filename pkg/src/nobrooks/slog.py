"""Step logarithm: ``slog(p, q)`` counts the steps ``p -> p - ceil(p/q)`` down to 0.

Two dual ways of reaching the same count are provided: subtracting from ``p``
(:func:`subtract_path`) and building up from 0 with the inverse sequence
``s_q`` (:func:`build_path`).  :func:`slog_trace` bundles both and renders the
digit-grouping picture that makes the two counts easy to compare by eye.
"""
from __future__ import annotations

import math
from dataclasses import dataclass


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def _check(p: int, q: int) -> None:
    if q < 2:
        raise ValueError(f"slog needs q >= 2, got q={q}")
    if p < 0:
        raise ValueError(f"slog needs p >= 0, got p={p}")


def slog(p: int, q: int) -> int:
    """Number of steps ``p -> p - ceil(p/q)`` needed to reach 0.

    Evaluated iteratively with Python integers so very large ``p`` is fine.
    """
    _check(p, q)
    steps = 0
    while p > 0:
        p -= _ceil_div(p, q)
        steps += 1
    return steps


def slog_table(pmax: int, q: int) -> list[int]:
    """``[slog(0, q), ..., slog(pmax, q)]`` by memoising the recursion.

    Each entry reuses the already computed value at ``p - ceil(p/q)``, so a
    whole sweep costs one step per entry.
    """
    _check(pmax, q)
    table = [0] * (pmax + 1)
    for p in range(1, pmax + 1):
        table[p] = table[p - _ceil_div(p, q)] + 1
    return table


def s_seq(q: int, p: int) -> int:
    """Inverse sequence: ``s(0) = 0`` and ``s(p) = s(p-1) + ceil((s(p-1)+1)/(q-1))``.

    ``s_q(p)`` is the largest integer whose step logarithm base ``q`` is ``p``.
    """
    _check(p, q)
    s = 0
    for _ in range(p):
        s += _ceil_div(s + 1, q - 1)
    return s


def subtract_path(p: int, q: int) -> list[int]:
    """``[p, p1, ..., 0]`` with ``p_{t+1} = p_t - ceil(p_t/q)``."""
    _check(p, q)
    path = [p]
    while p > 0:
        p -= _ceil_div(p, q)
        path.append(p)
    return path


def build_path(p: int, q: int) -> list[int]:
    """``[0, s1, s2, ...]`` following ``s_q``, stopping at the first term ``>= p``."""
    _check(p, q)
    path = [0]
    while path[-1] < p:
        s = path[-1]
        path.append(s + _ceil_div(s + 1, q - 1))
    return path


def slog_asymptote(p: float, q: int) -> float:
    """Reference curve ``log_{q/(q-1)}(p) + 1``."""
    if p < 1:
        raise ValueError("asymptote needs p >= 1")
    if q < 2:
        raise ValueError("asymptote needs q >= 2")
    return math.log(p) / math.log(q / (q - 1)) + 1.0


@dataclass(frozen=True)
class SlogTrace:
    p: int
    q: int
    subtract_path: tuple[int, ...]
    build_path: tuple[int, ...]

    @property
    def value(self) -> int:
        return len(self.subtract_path) - 1

    @property
    def right_groups(self) -> list[int]:
        """Group sizes of the subtracting count, listed right to left."""
        sp = self.subtract_path
        return [a - b for a, b in zip(sp, sp[1:])]

    @property
    def left_groups(self) -> list[int]:
        """Group sizes of the building count, listed left to right.

        The last group is truncated so that the sizes add up to ``p``.
        """
        bp = list(self.build_path)
        if bp[-1] > self.p:
            bp[-1] = self.p
        return [b - a for a, b in zip(bp, bp[1:])]

    def render(self) -> tuple[str, str]:
        """The two digit pictures as strings of space separated groups.

        Each picture writes ``p`` digits.  In the first, digit ``d`` is
        repeated ``q`` times and groups are cut from the right, the group
        length being read off the rightmost digit of what remains.  In the
        second, digit ``d`` is repeated ``q-1`` times and groups are cut from
        the left, the length read off the leftmost digit.
        """
        right = _digits(self.p, self.q)
        groups_r = []
        end = len(right)
        for size in self.right_groups:
            groups_r.append(right[end - size:end])
            end -= size
        groups_r.reverse()
        left = _digits(self.p, self.q - 1)
        groups_l = []
        start = 0
        for size in self.left_groups:
            groups_l.append(left[start:start + size])
            start += size
        return _join(groups_r), _join(groups_l)


def _digits(p: int, reps: int) -> list[int]:
    return [1 + i // reps for i in range(p)]


def _join(groups: list[list[int]]) -> str:
    wide = any(d > 9 for g in groups for d in g)
    sep = "," if wide else ""
    return " ".join(sep.join(str(d) for d in g) for g in groups)


def slog_trace(p: int, q: int) -> SlogTrace:
    return SlogTrace(p, q, tuple(subtract_path(p, q)), tuple(build_path(p, q)))
