"""Linear chord diagrams, the symmetric-group action and the genus-dependent pairing.

A diagram on ``2k`` points is a tuple of ``k`` pairs ``(i, j)`` with ``i < j``
sorted by first element; points are labelled ``1..2k``.  Permutations are
tuples of images, ``perm[i - 1] == γ(i)``, composed as functions
(``compose(γ, δ)`` applies ``δ`` first).  Vectors over diagrams are plain
dicts ``diagram -> coefficient`` without stored zeros.
"""

from __future__ import annotations

import random
from collections import defaultdict
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .partitions import Partition
from .polyg import PolyG

Diagram = tuple[tuple[int, int], ...]
Permutation = tuple[int, ...]
ChordVector = dict

DEFAULT_MAX_POINTS = 12
DEFAULT_MAX_MATRIX_POINTS = 8


class SizeGuardError(ValueError):
    """A requested computation exceeds a configured size limit."""


def _check_even(n: int) -> int:
    if n < 2 or n % 2:
        raise ValueError(f"number of points must be even and >= 2, got {n}")
    return n // 2


def double_factorial_odd(k: int) -> int:
    """(2k - 1)!!"""
    out = 1
    for m in range(1, 2 * k, 2):
        out *= m
    return out


# diagrams ------------------------------------------------------------------


def canonicalize(pairs: Iterable[Sequence[int]], n: int | None = None) -> Diagram:
    """Sort a perfect matching of ``{1..n}`` into canonical form."""
    out = []
    seen = set()
    for pair in pairs:
        if len(pair) != 2:
            raise ValueError(f"not a pair: {pair!r}")
        i, j = sorted(int(x) for x in pair)
        if i == j or i in seen or j in seen:
            raise ValueError(f"pairs overlap at {pair!r}")
        seen.update((i, j))
        out.append((i, j))
    size = len(seen) if n is None else n
    if seen != set(range(1, size + 1)):
        raise ValueError(f"pairs do not cover 1..{size} exactly")
    return tuple(sorted(out))


def c0(n: int) -> Diagram:
    """The diagram {{1,2},{3,4},...}."""
    k = _check_even(n)
    return tuple((2 * i + 1, 2 * i + 2) for i in range(k))


def _matchings(free: tuple[int, ...]):
    if not free:
        yield ()
        return
    first, rest = free[0], free[1:]
    for idx, partner in enumerate(rest):
        remaining = rest[:idx] + rest[idx + 1 :]
        for tail in _matchings(remaining):
            yield ((first, partner),) + tail


@lru_cache(maxsize=None)
def _enumerate(n: int) -> tuple[Diagram, ...]:
    return tuple(_matchings(tuple(range(1, n + 1))))


def enumerate_diagrams(n: int, max_points: int = DEFAULT_MAX_POINTS) -> tuple[Diagram, ...]:
    """All (2k-1)!! diagrams on ``n = 2k`` points.

    Order: the smallest free point is matched with each larger free point in
    increasing order, recursively.
    """
    _check_even(n)
    if n > max_points:
        raise SizeGuardError(f"{n} points exceeds the enumeration limit {max_points}")
    return _enumerate(n)


@lru_cache(maxsize=None)
def diagram_index(n: int) -> dict[Diagram, int]:
    return {d: i for i, d in enumerate(_enumerate(n))}


def num_points(c: Diagram) -> int:
    return 2 * len(c)


def mates(c: Diagram) -> list[int]:
    """``mate[i]`` is the partner of point ``i`` (index 0 unused)."""
    m = [0] * (2 * len(c) + 1)
    for i, j in c:
        m[i], m[j] = j, i
    return m


def from_mates(m: Sequence[int]) -> Diagram:
    return tuple((i, m[i]) for i in range(1, len(m)) if i < m[i])


# permutations --------------------------------------------------------------


def identity(n: int) -> Permutation:
    return tuple(range(1, n + 1))


def compose(a: Permutation, b: Permutation) -> Permutation:
    """``a ∘ b``: apply ``b`` first."""
    return tuple(a[x - 1] for x in b)


def inverse(a: Permutation) -> Permutation:
    out = [0] * len(a)
    for i, x in enumerate(a, start=1):
        out[x - 1] = i
    return tuple(out)


def transposition(n: int, i: int, j: int) -> Permutation:
    p = list(range(1, n + 1))
    p[i - 1], p[j - 1] = j, i
    return tuple(p)


def perm_sign(images: Sequence[int]) -> int:
    """Sign by cycle parity; ``images`` is a bijection of ``{1..n}``."""
    n = len(images)
    seen = [False] * (n + 1)
    parity = 0
    for start in range(1, n + 1):
        if seen[start]:
            continue
        length = 0
        x = start
        while not seen[x]:
            seen[x] = True
            x = images[x - 1]
            length += 1
        parity += length - 1
    return -1 if parity % 2 else 1


def random_permutation(n: int, rng: random.Random) -> Permutation:
    p = list(range(1, n + 1))
    rng.shuffle(p)
    return tuple(p)


def check_permutation(p: Sequence[int]) -> Permutation:
    p = tuple(int(x) for x in p)
    if sorted(p) != list(range(1, len(p) + 1)):
        raise ValueError(f"not a permutation of 1..{len(p)}: {p}")
    return p


def permute(gamma: Permutation, c: Diagram) -> Diagram:
    """γ(C) = {{γ(i), γ(j)}}."""
    if len(gamma) != num_points(c):
        raise ValueError(f"permutation on {len(gamma)} points applied to diagram on {num_points(c)}")
    return tuple(sorted((min(a, b), max(a, b)) for a, b in ((gamma[i - 1], gamma[j - 1]) for i, j in c)))


def sign_of(c: Diagram) -> int:
    """Sign of the permutation (1, 2, ..., 2k) -> (i_1, j_1, ..., i_k, j_k)."""
    return perm_sign([x for pair in c for x in pair])


def random_diagram(n: int, rng: random.Random) -> Diagram:
    pts = list(range(1, n + 1))
    rng.shuffle(pts)
    return canonicalize(zip(pts[::2], pts[1::2]), n)


# pairing -------------------------------------------------------------------


def _check_same_size(c: Diagram, d: Diagram) -> None:
    if len(c) != len(d):
        raise ValueError(f"diagrams on {num_points(c)} and {num_points(d)} points")


def union_components(c: Diagram, d: Diagram) -> int:
    """Connected components of the multigraph with edge multiset C ⊎ D (union-find)."""
    _check_same_size(c, d)
    n = num_points(c)
    parent = list(range(n + 1))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    comps = n
    for i, j in c + d:
        a, b = find(i), find(j)
        if a != b:
            parent[a] = b
            comps -= 1
    return comps


@lru_cache(maxsize=None)
def _monomial(k: int, r: int) -> PolyG:
    return PolyG.const((-1) ** (k - r)) * PolyG((0, 2)) ** r


def pairing_from_components(k: int, r: int) -> PolyG:
    return _monomial(k, r)


def pairing(c: Diagram, d: Diagram) -> PolyG:
    """⟨C, D⟩ = (−1)^(k−r) (2g)^r, r the component count of C ∪ D."""
    return _monomial(len(c), union_components(c, d))


def pairing_at(c: Diagram, d: Diagram, g) -> Fraction:
    k, r = len(c), union_components(c, d)
    return Fraction((-1) ** (k - r) * (2 * g) ** r)


def p_ij(c: Diagram, i: int, j: int) -> tuple[PolyG, Diagram]:
    """Contract slots ``i, j`` and reinsert the symplectic class.

    Returns ``(2g, C)`` if ``{i, j}`` is a chord, otherwise ``(-1, C')`` where
    the chords ``{i, j'}, {i', j}`` are replaced by ``{i, j}, {i', j'}``.
    """
    n = num_points(c)
    if not (1 <= i < j <= n):
        raise ValueError(f"need 1 <= i < j <= {n}, got ({i}, {j})")
    m = mates(c)
    if m[i] == j:
        return PolyG((0, 2)), c
    jp, ip = m[i], m[j]
    m[i], m[j], m[ip], m[jp] = j, i, jp, ip
    return PolyG.const(-1), from_mates(m)


def pairing_iterative(c: Diagram, d: Diagram) -> PolyG:
    """⟨C, D⟩ via successive p_ij along the chords of C, accumulating factors."""
    _check_same_size(c, d)
    acc = PolyG.const(1)
    cur = d
    for i, j in c:
        f, cur = p_ij(cur, i, j)
        acc = acc * f
    assert cur == c
    return acc


@lru_cache(maxsize=8)
def component_table(n: int) -> tuple[tuple[int, ...], ...]:
    """Component counts r(C, D) over the enumeration order, cached per size."""
    if n > 10:
        raise SizeGuardError(f"component table for {n} points is too large to materialise")
    ds = _enumerate(n)
    rows = []
    for a, c in enumerate(ds):
        rows.append(tuple(union_components(c, d) for d in ds))
    return tuple(rows)


def intersection_matrix(n: int, max_points: int = DEFAULT_MAX_MATRIX_POINTS) -> list[list[PolyG]]:
    """M_{2k}: entry (C, D) = ⟨C, D⟩ in enumeration order."""
    k = _check_even(n)
    if n > max_points:
        raise SizeGuardError(f"{n} points exceeds the matrix limit {max_points}")
    return [[_monomial(k, r) for r in row] for row in component_table(n)]


def evaluate_matrix(mat: Sequence[Sequence[PolyG]], g) -> list[list[Fraction]]:
    return [[p(g) for p in row] for row in mat]


# vectors -------------------------------------------------------------------


def vec_add(*vs: Mapping) -> dict:
    out: dict = {}
    for v in vs:
        for key, c in v.items():
            nc = out.get(key, 0) + c
            if nc:
                out[key] = nc
            else:
                out.pop(key, None)
    return out


def vec_scale(v: Mapping, s) -> dict:
    if not s:
        return {}
    return {key: c * s for key, c in v.items() if c * s}


def vec_sub(a: Mapping, b: Mapping) -> dict:
    return vec_add(a, vec_scale(b, -1))


def vec_dot(a: Mapping, b: Mapping):
    """Euclidean dot product with diagrams as an orthonormal basis."""
    if len(a) > len(b):
        a, b = b, a
    return sum((c * b[key] for key, c in a.items() if key in b), Fraction(0))


def vec_evaluate(v: Mapping, g) -> dict:
    """Evaluate polynomial coefficients at a concrete genus."""
    out = {}
    for key, c in v.items():
        x = c(g) if isinstance(c, PolyG) else Fraction(c)
        if x:
            out[key] = x
    return out


def all_ones(n: int) -> dict:
    return {d: Fraction(1) for d in enumerate_diagrams(n)}


def permute_vector(gamma: Permutation, v: Mapping) -> dict:
    out: dict = {}
    for d, c in v.items():
        e = permute(gamma, d)
        nc = out.get(e, 0) + c
        if nc:
            out[e] = nc
        else:
            out.pop(e, None)
    return out


def vector_points(v: Mapping) -> int:
    sizes = {num_points(d) for d in v}
    if len(sizes) > 1:
        raise ValueError(f"vector mixes diagram sizes {sorted(sizes)}")
    return sizes.pop() if sizes else 0


def pairing_vectors(a: Mapping, b: Mapping) -> PolyG:
    """Bilinear extension of ⟨ , ⟩ to vectors (coefficients may be polynomials)."""
    acc = PolyG()
    for c, x in a.items():
        for d, y in b.items():
            acc = acc + pairing(c, d) * x * y
    return acc


def apply_M(v: Mapping, max_points: int = DEFAULT_MAX_POINTS) -> dict:
    """M(v) = Σ_C v_C Σ_D ⟨C, D⟩ D with polynomial coefficients."""
    n = vector_points(v)
    if not n:
        return {}
    k = n // 2
    ds = enumerate_diagrams(n, max_points)
    counts: list[dict[int, Fraction | PolyG]] = [defaultdict(int) for _ in ds]
    if n <= 10:
        table = component_table(n)
        idx = diagram_index(n)
        for c, x in v.items():
            row = table[idx[c]]
            for b, r in enumerate(row):
                counts[b][r] += x
    else:
        for c, x in v.items():
            for b, d in enumerate(ds):
                counts[b][union_components(c, d)] += x
    out = {}
    for d, byr in zip(ds, counts):
        total = PolyG()
        for r, x in byr.items():
            if x:
                total = total + _monomial(k, r) * x
        if total:
            out[d] = total
    return out


def apply_M_at(v: Mapping, g, max_points: int = DEFAULT_MAX_POINTS) -> dict:
    """M(v) at a concrete genus, exact rationals."""
    return vec_evaluate(apply_M(v, max_points), g)


# relative types ------------------------------------------------------------


def relative_type(c: Diagram) -> Partition:
    """C₀-relative type: half the vertex counts of the components of C₀ ∪ C."""
    n = num_points(c)
    base = c0(n)
    parent = list(range(n + 1))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, j in base + c:
        a, b = find(i), find(j)
        if a != b:
            parent[a] = b
    sizes: dict[int, int] = defaultdict(int)
    for x in range(1, n + 1):
        sizes[find(x)] += 1
    return tuple(sorted((s // 2 for s in sizes.values()), reverse=True))


def stabilizer_element(k: int, rng: random.Random) -> Permutation:
    """Random element of the stabiliser H_k of C₀ (pair swaps and pair flips)."""
    order = list(range(k))
    rng.shuffle(order)
    images = [0] * (2 * k)
    for src, dst in enumerate(order):
        a, b = 2 * dst + 1, 2 * dst + 2
        if rng.random() < 0.5:
            a, b = b, a
        images[2 * src], images[2 * src + 1] = a, b
    return tuple(images)
