"""Exact sparse row reduction over the rationals.

Rows are dicts ``column -> Fraction``.  Columns must be mutually comparable;
the pivot of a row is its largest column.
"""
from __future__ import annotations

from fractions import Fraction


class Echelon:
    """Incrementally maintained reduced row-echelon basis.

    Invariant: for every pivot column ``p`` exactly one stored row has a
    nonzero entry in ``p`` (coefficient 1), namely ``rows[p]``.
    """

    def __init__(self):
        self.rows: dict = {}
        self._col_rows: dict = {}  # column -> set of pivots whose row touches it

    def __len__(self):
        return len(self.rows)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def pivots(self):
        return self.rows.keys()

    def reduce(self, vec: dict) -> dict:
        """Return ``vec`` minus its projection along the stored rows."""
        out = dict(vec)
        rows = self.rows
        for p in [c for c in vec if c in rows]:
            c = out.get(p)
            if not c:
                continue
            for col, v in rows[p].items():
                nv = out.get(col, 0) - c * v
                if nv:
                    out[col] = nv
                else:
                    out.pop(col, None)
        return out

    def add(self, vec: dict) -> bool:
        """Insert a row; returns True if it enlarged the span."""
        r = self.reduce(vec)
        if not r:
            return False
        p = max(r)
        inv = 1 / Fraction(r[p])
        r = {c: v * inv for c, v in r.items()}
        # back-substitute into existing rows that touch the new pivot
        touching = self._col_rows.pop(p, set())
        for q in touching:
            row = self.rows[q]
            c = row[p]
            for col, v in r.items():
                nv = row.get(col, 0) - c * v
                if nv:
                    if col not in row:
                        self._col_rows.setdefault(col, set()).add(q)
                    row[col] = nv
                else:
                    if col in row:
                        del row[col]
                        s = self._col_rows.get(col)
                        if s is not None:
                            s.discard(q)
        self.rows[p] = r
        for col in r:
            if col != p:
                self._col_rows.setdefault(col, set()).add(p)
        return True

    def extend(self, vecs) -> int:
        n = 0
        for v in vecs:
            n += self.add(v)
        return n


def solve_linear(columns: list[dict], rhs: dict):
    """Solve ``sum_j x_j * columns[j] = rhs`` exactly.

    Returns ``(x, free)`` where ``x`` is a particular solution with all free
    variables set to zero and ``free`` lists the indices of free variables,
    or ``(None, free)`` when the system is inconsistent.
    """
    # augment each equation-row: we transpose so that unknowns are columns
    eqs: dict = {}
    for j, col in enumerate(columns):
        for key, v in col.items():
            if v:
                eqs.setdefault(key, {})[j] = Fraction(v)
    for key, v in rhs.items():
        if v:
            eqs.setdefault(key, {})["rhs"] = Fraction(v)
    # unknown j is a column; reduce with pivot = smallest unknown index so
    # that free parameters are the later ones in basis order
    n = len(columns)
    pivot_rows: dict = {}
    order = sorted(eqs, key=repr)
    for key in order:
        row = dict(eqs[key])
        for p in sorted(k for k in row if k != "rhs" and k in pivot_rows):
            c = row.get(p)
            if not c:
                continue
            for col, v in pivot_rows[p].items():
                nv = row.get(col, 0) - c * v
                if nv:
                    row[col] = nv
                else:
                    row.pop(col, None)
        unknowns = [k for k in row if k != "rhs"]
        if not unknowns:
            if row.get("rhs"):
                return None, []
            continue
        p = min(unknowns)
        inv = 1 / row[p]
        row = {c: v * inv for c, v in row.items()}
        for q, prow in pivot_rows.items():
            c = prow.get(p)
            if c:
                for col, v in row.items():
                    nv = prow.get(col, 0) - c * v
                    if nv:
                        prow[col] = nv
                    else:
                        prow.pop(col, None)
        pivot_rows[p] = row
    free = [j for j in range(n) if j not in pivot_rows]
    x = [Fraction(0)] * n
    for p, row in pivot_rows.items():
        x[p] = row.get("rhs", Fraction(0))
    return x, free
