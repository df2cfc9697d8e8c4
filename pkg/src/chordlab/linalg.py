"""Exact linear algebra over the rationals: rank, nullity and incremental echelon bases."""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Hashable, Iterable, Mapping, Sequence


def _integer_rows(rows: Sequence[Sequence]) -> list[list[int]]:
    out = []
    for row in rows:
        fr = [Fraction(x) for x in row]
        scale = lcm(*(x.denominator for x in fr)) if fr else 1
        out.append([int(x * scale) for x in fr])
    return out


def rank(rows: Sequence[Sequence]) -> int:
    """Rank of a rational matrix by fraction-free (Bareiss) elimination."""
    m = _integer_rows(rows)
    if not m or not m[0]:
        return 0
    n_rows, n_cols = len(m), len(m[0])
    r = 0
    prev = 1
    for col in range(n_cols):
        piv = next((i for i in range(r, n_rows) if m[i][col]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        p = m[r][col]
        for i in range(r + 1, n_rows):
            a = m[i][col]
            row_i, row_r = m[i], m[r]
            for j in range(col, n_cols):
                row_i[j] = (p * row_i[j] - a * row_r[j]) // prev
        prev = p
        r += 1
        if r == n_rows:
            break
    return r


def nullity(rows: Sequence[Sequence]) -> int:
    """Dimension of the right null space of a square or rectangular matrix."""
    if not rows:
        return 0
    return len(rows[0]) - rank(rows)


class EchelonBasis:
    """Incrementally maintained reduced basis of a span of sparse vectors.

    Vectors are mappings ``key -> Fraction``; keys must be orderable so the
    pivot choice is deterministic.
    """

    def __init__(self):
        self._rows: list[tuple[Hashable, dict]] = []  # (pivot key, row normalised to 1 at pivot)

    def __len__(self) -> int:
        return len(self._rows)

    def reduce(self, vec: Mapping) -> dict:
        v = {k: Fraction(c) for k, c in vec.items() if c}
        for pivot, row in self._rows:
            c = v.get(pivot)
            if c:
                for k, x in row.items():
                    nv = v.get(k, 0) - c * x
                    if nv:
                        v[k] = nv
                    else:
                        v.pop(k, None)
        return v

    def add(self, vec: Mapping) -> bool:
        """Add ``vec``; returns False if it was already in the span."""
        v = self.reduce(vec)
        if not v:
            return False
        pivot = min(v)
        c = v[pivot]
        row = {k: x / c for k, x in v.items()}
        self._rows.append((pivot, row))
        return True

    def contains(self, vec: Mapping) -> bool:
        return not self.reduce(vec)


def independent(vectors: Iterable[Mapping]) -> bool:
    basis = EchelonBasis()
    return all(basis.add(v) for v in vectors)


def span_rank(vectors: Iterable[Mapping]) -> int:
    basis = EchelonBasis()
    for v in vectors:
        basis.add(v)
    return len(basis)
