"""Exact sparse linear algebra over Q.

Rows are dicts ``{column: value}``.  Values are kept as ``gmpy2.mpq`` while
eliminating (much faster than ``fractions.Fraction``) and converted back to
``Fraction`` at the boundary.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence

import gmpy2

Row = Dict[int, object]

_mpq = gmpy2.mpq


def _to_mpq(row: Mapping[int, object]) -> Row:
    return {k: _mpq(v) for k, v in row.items() if v}


def _to_fraction(x) -> Fraction:
    return Fraction(int(x.numerator), int(x.denominator))


class Echelon:
    """Incrementally built row-echelon basis of a subspace of Q^N.

    Each stored row has its smallest column as pivot, normalised to 1.
    """

    def __init__(self):
        self.pivots: Dict[int, Row] = {}

    def __len__(self):
        return len(self.pivots)

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, row: Mapping[int, object]) -> Row:
        """Residual of ``row`` after elimination against the stored basis."""
        r = _to_mpq(row)
        pivots = self.pivots
        while r:
            cols = [c for c in r if c in pivots]
            if not cols:
                break
            c = min(cols)
            f = r[c]
            for k, v in pivots[c].items():
                nv = r.get(k, 0) - f * v
                if nv:
                    r[k] = nv
                else:
                    r.pop(k, None)
        return r

    def add(self, row: Mapping[int, object]) -> bool:
        """Insert a row; return True if it enlarged the span."""
        r = self.reduce(row)
        if not r:
            return False
        # residual has no pivot columns left; its smallest column becomes the pivot
        c = min(r)
        inv = 1 / r[c]
        self.pivots[c] = {k: v * inv for k, v in r.items()}
        return True

    def contains(self, row: Mapping[int, object]) -> bool:
        return not self.reduce(row)

    def reduced_rows(self) -> Dict[int, Row]:
        """Fully reduced echelon form (each pivot column zero in other rows)."""
        piv = {c: dict(r) for c, r in self.pivots.items()}
        for c in sorted(piv, reverse=True):
            rc = piv[c]
            for c2 in piv:
                if c2 < c and c in piv[c2]:
                    f = piv[c2][c]
                    row = piv[c2]
                    for k, v in rc.items():
                        nv = row.get(k, 0) - f * v
                        if nv:
                            row[k] = nv
                        else:
                            row.pop(k, None)
        return piv


def rank(rows: Iterable[Mapping[int, object]]) -> int:
    e = Echelon()
    for r in rows:
        e.add(r)
    return e.rank


def nullspace(rows: Iterable[Mapping[int, object]], ncols: int) -> List[Dict[int, Fraction]]:
    """Basis of ``{v : row . v = 0 for all rows}`` in Q^ncols.

    One basis vector per free column ``f``: it has a 1 in column ``f`` and zeros
    in every other free column, so coordinates of a kernel element in this
    basis are read off at the free columns.
    """
    e = Echelon()
    for r in rows:
        e.add(r)
    piv = e.reduced_rows()
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        v = {f: Fraction(1)}
        for c, r in piv.items():
            if f in r:
                v[c] = -_to_fraction(r[f])
        basis.append(v)
    return basis


def free_columns(rows: Iterable[Mapping[int, object]], ncols: int) -> List[int]:
    e = Echelon()
    for r in rows:
        e.add(r)
    return [c for c in range(ncols) if c not in e.pivots]


def dense_rank(matrix: Sequence[Sequence[object]]) -> int:
    return rank({j: v for j, v in enumerate(row) if v} for row in matrix)
