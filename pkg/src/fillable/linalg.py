"""Exact rank bookkeeping over Q with integer vectors, for search pruning."""
from __future__ import annotations

from math import gcd


def _primitive(v: list[int]) -> list[int]:
    g = 0
    for x in v:
        if x:
            g = gcd(g, x)
    if g > 1:
        v = [x // g for x in v]
    return v


class Echelon:
    """Incrementally maintained row echelon basis of a subspace of Q^n."""

    def __init__(self, n: int):
        self.n = n
        self.rows: dict[int, list[int]] = {}

    def copy(self) -> "Echelon":
        e = Echelon(self.n)
        e.rows = dict(self.rows)
        return e

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, v: list[int]) -> list[int]:
        v = list(v)
        for c in sorted(self.rows):
            if v[c]:
                row = self.rows[c]
                a, b = row[c], v[c]
                v = _primitive([a * x - b * y for x, y in zip(v, row)])
        return v

    def add(self, v: list[int]) -> bool:
        """Insert ``v``; False (and no change) if it is already in the span."""
        v = self.reduce(v)
        for c, x in enumerate(v):
            if x:
                self.rows[c] = v
                return True
        return False


def rank(vectors: list[list[int]], n: int) -> int:
    e = Echelon(n)
    for v in vectors:
        e.add(v)
    return e.rank


def nullspace(columns: list[list[int]], nrows: int) -> list[list[int]]:
    """Integer basis of {x : Σ x_j columns[j] = 0}."""
    from fractions import Fraction

    ncols = len(columns)
    a = [[Fraction(columns[j][i]) for j in range(ncols)] for i in range(nrows)]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(nrows):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        x = [Fraction(0)] * ncols
        x[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            x[pc] = -a[i][fc]
        denom = 1
        for q in x:
            denom = denom * q.denominator // gcd(denom, q.denominator)
        basis.append(_primitive([int(q * denom) for q in x]))
    return basis
