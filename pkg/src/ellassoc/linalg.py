"""Exact sparse row reduction over the rationals.

The one data structure here, :class:`RowSpan`, is the semantic oracle for
every quotient in the package: two-sided ideals in truncated algebras,
relation spans of Jacobi diagram slices, and rank computations.  Rows are
sparse mappings column-id -> coefficient.  Stored pivot rows are kept with
integer entries of content 1 so elimination arithmetic stays in ZZ; queries
reduce with exact Fractions.

Columns are eliminated in increasing column order, which makes the reduced
form of any vector unique (the normal form supported on non-pivot columns).
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from math import gcd, lcm

IntRow = dict[int, int]
FracRow = dict[int, Fraction]


def _to_int_row(row: FracRow) -> IntRow:
    """Clear denominators and divide out the content; leading entry > 0."""
    denom = lcm(*(v.denominator for v in row.values())) if row else 1
    ints = {c: int(v * denom) for c, v in row.items()}
    g = 0
    for v in ints.values():
        g = gcd(g, v)
    if ints[min(ints)] < 0:
        g = -g
    return {c: v // g for c, v in ints.items()}


class RowSpan:
    """Incrementally echelonized span of sparse rational rows."""

    def __init__(self) -> None:
        self.pivots: dict[int, IntRow] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def insert(self, row: dict[int, Fraction | int]) -> int | None:
        """Add a row to the span.

        Returns the new pivot column, or None if the row was already in the
        span.
        """
        work: FracRow = {c: Fraction(v) for c, v in row.items() if v}
        heap = list(work)
        heapq.heapify(heap)
        while heap:
            lead = heapq.heappop(heap)
            val = work.pop(lead, None)
            if not val:
                continue
            piv = self.pivots.get(lead)
            if piv is None:
                work[lead] = val
                self.pivots[lead] = _to_int_row(work)
                return lead
            factor = val / piv[lead]
            for c, pv in piv.items():
                if c == lead:
                    continue
                cur = work.get(c)
                nv = (cur if cur is not None else 0) - factor * pv
                if nv:
                    if cur is None:
                        heapq.heappush(heap, c)
                    work[c] = nv
                else:
                    work.pop(c, None)
        return None

    def extend(self, rows) -> None:
        for row in rows:
            self.insert(row)

    def reduce(self, vec: dict[int, Fraction | int]) -> FracRow:
        """Normal form of `vec` modulo the span (pivot columns eliminated)."""
        work: FracRow = {c: Fraction(v) for c, v in vec.items() if v}
        out: FracRow = {}
        heap = list(work)
        heapq.heapify(heap)
        while heap:
            lead = heapq.heappop(heap)
            val = work.pop(lead, None)
            if not val:
                continue
            piv = self.pivots.get(lead)
            if piv is None:
                out[lead] = val
                continue
            factor = val / piv[lead]
            for c, pv in piv.items():
                if c == lead:
                    continue
                cur = work.get(c)
                nv = (cur if cur is not None else 0) - factor * pv
                if nv:
                    if cur is None:
                        heapq.heappush(heap, c)
                    work[c] = nv
                else:
                    work.pop(c, None)
        return out

    def contains(self, vec: dict[int, Fraction | int]) -> bool:
        return not self.reduce(vec)

    def pivot_columns(self) -> list[int]:
        return sorted(self.pivots)


def rank_of(rows) -> int:
    """Rank of an iterable of sparse rows."""
    span = RowSpan()
    span.extend(rows)
    return span.rank
