"""Exact sparse row reduction over the session scalar field.

Vectors are dicts ``{column_key: scalar}``.  Column keys only need to be
hashable and totally ordered; pivots are chosen as the largest key of each
row, which keeps reduction deterministic.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping

__all__ = ["SpanCoordinates", "SparseEchelon"]


class SparseEchelon:
    """Incrementally maintained echelon basis of a span of sparse vectors."""

    def __init__(self):
        self.rows: dict = {}  # pivot key -> row normalised to pivot coefficient 1

    def __len__(self) -> int:
        return len(self.rows)

    def reduce(self, vec: Mapping) -> dict:
        """Remainder of vec after eliminating every pivot column."""
        v = {k: c for k, c in vec.items() if c != 0}
        while True:
            hits = [k for k in v if k in self.rows]
            if not hits:
                return v
            k = max(hits)
            c = v[k]
            for kk, x in self.rows[k].items():
                s = v.get(kk, 0) - c * x
                if s == 0:
                    v.pop(kk, None)
                else:
                    v[kk] = s

    def add(self, vec: Mapping) -> bool:
        """Add vec to the span; True when it was independent."""
        v = self.reduce(vec)
        if not v:
            return False
        p = max(v)
        lead = v[p]
        inv = Fraction(1, lead) if isinstance(lead, int) else 1 / lead
        self.rows[p] = {k: c * inv for k, c in v.items()}
        return True

    def contains(self, vec: Mapping) -> bool:
        return not self.reduce(vec)


class SpanCoordinates:
    """Coordinates of vectors with respect to a fixed independent family.

    Each generator is tagged with an extra column that sorts below every data
    column, so after reduction the tags record the combination used.
    """

    def __init__(self, vectors):
        self.echelon = SparseEchelon()
        self.size = 0
        for i, vec in enumerate(vectors):
            row = {(1, k): c for k, c in vec.items()}
            row[(0, i)] = 1
            if not self.echelon.add(row):
                raise ValueError("generators are linearly dependent")
            self.size += 1

    def __call__(self, vec: Mapping) -> dict | None:
        """``{i: c}`` with vec = sum c v_i, or None when vec is outside the span."""
        rem = self.echelon.reduce({(1, k): c for k, c in vec.items()})
        if any(k[0] == 1 for k in rem):
            return None
        return {k[1]: -c for k, c in rem.items()}
