"""Sparse row reduction over the rationals."""
from __future__ import annotations

from fractions import Fraction
from typing import Hashable, Iterable, Mapping

Row = dict


class RowEchelon:
    """Incrementally maintained reduced row echelon form.

    Rows are sparse dicts column -> Fraction. Columns are compared by their
    position in `order` (lower index = pivot preference).
    """

    def __init__(self, order: Iterable[Hashable] = ()):
        self.rank_of = {c: i for i, c in enumerate(order)}
        self.pivots: dict[Hashable, Row] = {}

    def _rank(self, c):
        r = self.rank_of.get(c)
        if r is None:
            r = self.rank_of[c] = len(self.rank_of)
        return r

    def reduce(self, row: Mapping[Hashable, Fraction]) -> Row:
        """Reduce a row against the current pivots (returns a new dict)."""
        out = {c: Fraction(v) for c, v in row.items() if v}
        # pivot rows carry no other pivot column, so one pass suffices
        for c in [c for c in out if c in self.pivots]:
            f = out.get(c)
            if not f:
                continue
            for cc, vv in self.pivots[c].items():
                nv = out.get(cc, 0) - f * vv
                if nv:
                    out[cc] = nv
                else:
                    out.pop(cc, None)
        return out

    def add(self, row: Mapping[Hashable, Fraction]) -> bool:
        """Insert a row; returns False if it was already in the span."""
        r = self.reduce(row)
        if not r:
            return False
        c = min(r, key=self._rank)
        inv = 1 / r[c]
        r = {cc: v * inv for cc, v in r.items()}
        for other in self.pivots.values():
            f = other.get(c)
            if f:
                for cc, vv in r.items():
                    nv = other.get(cc, 0) - f * vv
                    if nv:
                        other[cc] = nv
                    else:
                        other.pop(cc, None)
        self.pivots[c] = r
        return True

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def rows(self) -> list[Row]:
        return [self.pivots[c] for c in sorted(self.pivots, key=self._rank)]
