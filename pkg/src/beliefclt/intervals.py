"""Interval events on the real line with open/closed/infinite endpoints.

An :class:`IntervalEvent` is a finite union of intervals in canonical form:
pieces are nonempty, pairwise disjoint, non-touching, and sorted.  Endpoint
openness is tracked symbolically (boolean flags), never by epsilon nudging,
so containment and intersection tests against closed intervals are exact.
Infinite endpoints are represented by ``math.inf`` and are always open.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable


@dataclass(frozen=True)
class Piece:
    """One interval of an event: lo/hi bounds plus closedness flags."""

    lo: float
    hi: float
    lo_closed: bool
    hi_closed: bool

    def __post_init__(self):
        if math.isnan(self.lo) or math.isnan(self.hi):
            raise ValueError("interval endpoints must not be NaN")
        if math.isinf(self.lo) and self.lo_closed:
            object.__setattr__(self, "lo_closed", False)
        if math.isinf(self.hi) and self.hi_closed:
            object.__setattr__(self, "hi_closed", False)

    def is_empty(self) -> bool:
        if self.lo > self.hi:
            return True
        if self.lo == self.hi:
            return not (self.lo_closed and self.hi_closed)
        return False

    def contains_point(self, x: float) -> bool:
        above = self.lo < x or (self.lo == x and self.lo_closed)
        below = self.hi > x or (self.hi == x and self.hi_closed)
        return above and below

    def __str__(self) -> str:
        lb = "[" if self.lo_closed else "("
        rb = "]" if self.hi_closed else ")"
        return f"{lb}{self.lo}, {self.hi}{rb}"


def _merges_with(cur: Piece, nxt: Piece) -> bool:
    # pieces are pre-sorted; merge on overlap or closed touch
    if nxt.lo < cur.hi:
        return True
    if nxt.lo == cur.hi and (nxt.lo_closed or cur.hi_closed):
        return True
    return False


def _hi_key(p: Piece):
    return (p.hi, p.hi_closed)


class IntervalEvent:
    """A finite union of real intervals in canonical form."""

    __slots__ = ("pieces",)

    def __init__(self, pieces: Iterable[Piece] = ()):
        self.pieces: tuple[Piece, ...] = _canonicalize(pieces)

    # -- constructors ------------------------------------------------------

    @staticmethod
    def empty() -> "IntervalEvent":
        return IntervalEvent(())

    @staticmethod
    def real_line() -> "IntervalEvent":
        return IntervalEvent((Piece(-math.inf, math.inf, False, False),))

    @staticmethod
    def closed(lo: float, hi: float) -> "IntervalEvent":
        return IntervalEvent((Piece(lo, hi, True, True),))

    @staticmethod
    def open(lo: float, hi: float) -> "IntervalEvent":
        return IntervalEvent((Piece(lo, hi, False, False),))

    @staticmethod
    def point(x: float) -> "IntervalEvent":
        return IntervalEvent.closed(x, x)

    @staticmethod
    def at_least(t: float) -> "IntervalEvent":
        """The closed half-line [t, +inf)."""
        return IntervalEvent((Piece(t, math.inf, True, False),))

    @staticmethod
    def less_than(t: float) -> "IntervalEvent":
        """The open half-line (-inf, t)."""
        return IntervalEvent((Piece(-math.inf, t, False, False),))

    @staticmethod
    def interval(lo: float, hi: float, lo_closed: bool = True, hi_closed: bool = True) -> "IntervalEvent":
        return IntervalEvent((Piece(lo, hi, lo_closed, hi_closed),))

    # -- predicates --------------------------------------------------------

    def is_empty(self) -> bool:
        return not self.pieces

    def contains_point(self, x: float) -> bool:
        return any(p.contains_point(x) for p in self.pieces)

    def contains_closed_interval(self, a: float, b: float) -> bool:
        """Whether [a, b] (a <= b, both finite) lies inside the event.

        Pieces are disjoint and [a, b] is connected, so containment can only
        happen within a single piece.
        """
        for p in self.pieces:
            if p.contains_point(a):
                return p.contains_point(b)
        return False

    def intersects_closed_interval(self, a: float, b: float) -> bool:
        """Whether [a, b] meets the event."""
        for p in self.pieces:
            lo_ok = p.lo < b or (p.lo == b and p.lo_closed)
            hi_ok = p.hi > a or (p.hi == a and p.hi_closed)
            if lo_ok and hi_ok:
                return True
        return False

    # -- algebra -----------------------------------------------------------

    def complement(self) -> "IntervalEvent":
        """The complement within the whole real line."""
        if not self.pieces:
            return IntervalEvent.real_line()
        out: list[Piece] = []
        cursor = -math.inf
        cursor_closed = False  # openness of the *lower* end of the gap
        for p in self.pieces:
            gap = Piece(cursor, p.lo, cursor_closed, not p.lo_closed)
            if not gap.is_empty():
                out.append(gap)
            cursor = p.hi
            cursor_closed = not p.hi_closed
        tail = Piece(cursor, math.inf, cursor_closed, False)
        if not tail.is_empty():
            out.append(tail)
        return IntervalEvent(out)

    def union(self, other: "IntervalEvent") -> "IntervalEvent":
        return IntervalEvent(self.pieces + other.pieces)

    def intersect(self, other: "IntervalEvent") -> "IntervalEvent":
        out: list[Piece] = []
        for p in self.pieces:
            for q in other.pieces:
                # tighter bound wins; on tie, open beats closed
                if p.lo > q.lo:
                    lo, lo_c = p.lo, p.lo_closed
                elif q.lo > p.lo:
                    lo, lo_c = q.lo, q.lo_closed
                else:
                    lo, lo_c = p.lo, p.lo_closed and q.lo_closed
                if p.hi < q.hi:
                    hi, hi_c = p.hi, p.hi_closed
                elif q.hi < p.hi:
                    hi, hi_c = q.hi, q.hi_closed
                else:
                    hi, hi_c = p.hi, p.hi_closed and q.hi_closed
                cand = Piece(lo, hi, lo_c, hi_c)
                if not cand.is_empty():
                    out.append(cand)
        return IntervalEvent(out)

    # -- dunder ------------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, IntervalEvent):
            return NotImplemented
        return self.pieces == other.pieces

    def __hash__(self) -> int:
        return hash(self.pieces)

    def __repr__(self) -> str:
        if not self.pieces:
            return "IntervalEvent(<empty>)"
        return "IntervalEvent(" + " u ".join(str(p) for p in self.pieces) + ")"


def _canonicalize(pieces: Iterable[Piece]) -> tuple[Piece, ...]:
    live = [p for p in pieces if not p.is_empty()]
    if not live:
        return ()
    # closed lower endpoint sorts before open at the same coordinate
    live.sort(key=lambda p: (p.lo, not p.lo_closed))
    merged: list[Piece] = [live[0]]
    for nxt in live[1:]:
        cur = merged[-1]
        if _merges_with(cur, nxt):
            if _hi_key(nxt) > _hi_key(cur):
                merged[-1] = Piece(cur.lo, nxt.hi, cur.lo_closed, nxt.hi_closed)
        else:
            merged.append(nxt)
    return tuple(merged)
