"""Young diagram combinatorics and the eigenvalue polynomials indexed by them."""

from __future__ import annotations

from collections import Counter
from functools import lru_cache
from math import factorial, prod
from typing import Iterator, Sequence

from .polyg import PolyG

Partition = tuple[int, ...]
Tableau = tuple[tuple[int, ...], ...]


class NotAnEigenvaluePolynomial(ValueError):
    pass


def as_partition(parts: Sequence[int]) -> Partition:
    """Validate and freeze a weakly decreasing sequence of positive integers."""
    p = tuple(int(x) for x in parts)
    if any(x < 1 for x in p):
        raise ValueError(f"partition parts must be positive: {p}")
    if any(p[i] < p[i + 1] for i in range(len(p) - 1)):
        raise ValueError(f"partition parts must be weakly decreasing: {p}")
    return p


def weight(lam: Partition) -> int:
    return sum(lam)


def height(lam: Partition) -> int:
    return len(lam)


def boxes(lam: Partition) -> Iterator[tuple[int, int]]:
    """(row, column) of every box, 0-based, row-major."""
    for r, length in enumerate(lam):
        for c in range(length):
            yield r, c


def _partitions_bounded(n: int, bound: int) -> Iterator[Partition]:
    if n == 0:
        yield ()
        return
    for first in range(min(n, bound), 0, -1):
        for rest in _partitions_bounded(n - first, first):
            yield (first,) + rest


@lru_cache(maxsize=None)
def enumerate_partitions(k: int) -> tuple[Partition, ...]:
    """All partitions of ``k`` in reverse lexicographic order ([k] first, [1^k] last).

    ``k = 0`` yields the single empty partition.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    return tuple(_partitions_bounded(k, k))


def conjugate(lam: Partition) -> Partition:
    if not lam:
        return ()
    return tuple(sum(1 for x in lam if x > c) for c in range(lam[0]))


def double(lam: Partition) -> Partition:
    """The even-type diagram 2λ: every row doubled in length."""
    return tuple(2 * x for x in lam)


def delta(lam: Partition) -> Partition:
    """λ^δ: every row repeated twice."""
    return tuple(x for x in lam for _ in range(2))


def transform(lam: Partition, kind: str) -> Partition:
    ops = {"conjugate": conjugate, "double": double, "delta": delta}
    try:
        return ops[kind](as_partition(lam))
    except KeyError:
        raise ValueError(f"unknown transform {kind!r}; expected one of {sorted(ops)}") from None


def hook_lengths(lam: Partition) -> list[int]:
    conj = conjugate(lam)
    return [(lam[r] - c - 1) + (conj[c] - r - 1) + 1 for r, c in boxes(lam)]


@lru_cache(maxsize=None)
def hook_dim(mu: Partition) -> int:
    """Dimension of the irreducible S_n-module of shape ``mu`` (hook length formula)."""
    n = sum(mu)
    hooks = prod(hook_lengths(mu))
    q, r = divmod(factorial(n), hooks)
    assert r == 0
    return q


def standard_tableaux(mu: Partition) -> list[Tableau]:
    """All standard tableaux of shape ``mu`` filled with 1..|mu|.

    Built by placing the largest entry in each removable corner in turn.
    """
    mu = as_partition(mu)

    def build(shape: Partition) -> list[list[list[int]]]:
        n = sum(shape)
        if n == 0:
            return [[[] for _ in shape]]
        out = []
        for r, length in enumerate(shape):
            below = shape[r + 1] if r + 1 < len(shape) else 0
            if length > below:
                smaller = list(shape)
                smaller[r] -= 1
                for t in build(tuple(smaller)):
                    t = [row[:] for row in t]
                    t[r].append(n)
                    out.append(t)
        return out

    tabs = [tuple(tuple(row) for row in t) for t in build(mu)]
    return sorted(tabs)


def row_reading_tableau(mu: Partition) -> Tableau:
    """Fill rows left to right, top to bottom with 1, 2, ..."""
    rows, nxt = [], 1
    for length in mu:
        rows.append(tuple(range(nxt, nxt + length)))
        nxt += length
    return tuple(rows)


def is_standard(t: Tableau) -> bool:
    shape = tuple(len(r) for r in t)
    try:
        as_partition(shape)
    except ValueError:
        return False
    entries = sorted(x for r in t for x in r)
    if entries != list(range(1, len(entries) + 1)):
        return False
    for r, row in enumerate(t):
        if any(row[c] >= row[c + 1] for c in range(len(row) - 1)):
            return False
        if r and any(t[r - 1][c] >= row[c] for c in range(len(row))):
            return False
    return True


def tableau_columns(t: Tableau) -> list[tuple[int, ...]]:
    if not t:
        return []
    return [tuple(row[c] for row in t if len(row) > c) for c in range(len(t[0]))]


def box_factor_offsets(lam: Partition) -> list[int]:
    """Offsets ``c`` such that the box factors of μ_λ are ``2g + c``."""
    return [r - 2 * c for r, c in boxes(lam)]


def eigenvalue_mu(lam: Partition) -> PolyG:
    """μ_λ = ∏ over boxes (2g − 2s + t), s = columns to the left, t = rows above."""
    return PolyG.product(PolyG.linear(2, off) for off in box_factor_offsets(as_partition(lam)))


def _linear_factor_offsets(p: PolyG, k: int) -> Counter:
    """Multiset of offsets c with p = const * ∏ (2g + c), by trial division."""
    found: Counter = Counter()
    rest = p
    for c in range(-2 * k + 2, k):
        f = PolyG.linear(2, c)
        while rest.degree > 0:
            q, r = rest.divmod(f)
            if r:
                break
            found[c] += 1
            rest = q
    if rest.degree != 0 or rest.coeffs[0] != 1:
        raise NotAnEigenvaluePolynomial(f"{p} does not split into factors 2g + c")
    return found


def mu_to_partition(p: PolyG) -> Partition:
    """Invert :func:`eigenvalue_mu` by peeling first row and column off the diagram.

    At peeling depth ``j`` the remaining factors are ``2g - j - 2s + t`` for the
    boxes of the diagram with its first ``j`` rows and columns removed; the
    largest gives the first-column length, the smallest the first-row length.
    """
    if p.is_zero():
        raise NotAnEigenvaluePolynomial("zero polynomial")
    k = p.degree
    if k == 0:
        if p == 1:
            return ()
        raise NotAnEigenvaluePolynomial(f"{p} is a nonunit constant")
    pool = _linear_factor_offsets(p, k)
    arms, legs = [], []
    depth = 0
    while +pool:
        top = max(c for c in pool if pool[c])
        low = min(c for c in pool if pool[c])
        leg = top + depth + 1  # boxes in the current first column
        arm = (-depth - low) // 2 + 1  # boxes in the current first row
        if (-depth - low) % 2 or leg < 1 or arm < 1:
            raise NotAnEigenvaluePolynomial(f"{p}: factor pattern breaks at depth {depth}")
        need = Counter(-depth - 2 * s for s in range(arm))
        need.update(-depth + t for t in range(1, leg))
        if any(pool[c] < n for c, n in need.items()):
            raise NotAnEigenvaluePolynomial(f"{p}: missing hook factors at depth {depth}")
        pool.subtract(need)
        arms.append(arm)
        legs.append(leg)
        depth += 1
    d = len(arms)
    rows = [arms[i] + i for i in range(d)]
    n_rows = legs[0]
    for i in range(d, n_rows):
        rows.append(sum(1 for j in range(d) if legs[j] + j > i))
    try:
        lam = as_partition(rows)
    except ValueError as exc:
        raise NotAnEigenvaluePolynomial(f"{p}: peeled rows {rows} are not a diagram") from exc
    if eigenvalue_mu(lam) != p:
        raise NotAnEigenvaluePolynomial(f"{p}: peeling gives {lam} which does not reproduce it")
    return lam


def invariant_dim(g: int, k: int) -> int:
    """Σ over λ ⊢ k with at most g rows of dim (λ^δ)."""
    if g < 1 or k < 0:
        raise ValueError("need g >= 1 and k >= 0")
    return sum(hook_dim(delta(lam)) for lam in enumerate_partitions(k) if len(lam) <= g)


def decomposition_rows(k: int) -> list[tuple[Partition, PolyG, int, int]]:
    """(λ, μ_{λ'}, dim U_λ = dim E_{λ'}, least genus with U_λ ≠ 0), longest column first."""
    rows = []
    for lam in reversed(enumerate_partitions(k)):
        lc = conjugate(lam)
        rows.append((lam, eigenvalue_mu(lc), hook_dim(double(lc)), height(lam)))
    return rows
