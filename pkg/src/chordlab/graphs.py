"""Trivalent multigraphs from collapsed chord diagrams and their graphical contractions.

Graphs have vertices ``1..n`` and an edge multiset of sorted pairs; a loop
``(v, v)`` contributes 2 to the degree of ``v``.  Graph vectors are dicts
``canonical graph -> coefficient`` where coefficients are :class:`RatG`
(symbolic in g) or :class:`Fraction` (evaluated at a fixed genus).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations, product
from math import comb, prod
from typing import Iterator, Mapping, Sequence

from . import chords
from .chords import Diagram, SizeGuardError
from .partitions import Partition, double, enumerate_partitions, hook_dim
from .polyg import PolyG, RatG

Edge = tuple[int, int]


@dataclass(frozen=True, order=True)
class TrivalentGraph:
    vertex_count: int
    edges: tuple[Edge, ...]

    @classmethod
    def make(cls, vertex_count: int, edges) -> "TrivalentGraph":
        es = tuple(sorted((min(u, v), max(u, v)) for u, v in edges))
        g = cls(vertex_count, es)
        g.check()
        return g

    def degrees(self) -> Counter:
        deg: Counter = Counter()
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def check(self) -> None:
        deg = self.degrees()
        bad = [v for v in range(1, self.vertex_count + 1) if deg[v] != 3]
        if bad or any(not (1 <= x <= self.vertex_count) for e in self.edges for x in e):
            raise ValueError(f"not trivalent on 1..{self.vertex_count}: {self.edges}")

    def loops(self) -> int:
        return sum(1 for u, v in self.edges if u == v)


THETA = TrivalentGraph(2, ((1, 2), (1, 2), (1, 2)))
DUMBBELL = TrivalentGraph(2, ((1, 1), (1, 2), (2, 2)))


# canonical forms -----------------------------------------------------------


def _vertex_invariant(g: TrivalentGraph, v: int) -> tuple:
    loops = sum(1 for a, b in g.edges if a == b == v)
    mult = Counter(b if a == v else a for a, b in g.edges if (a == v) != (b == v))
    return (loops, tuple(sorted(mult.values())))


@lru_cache(maxsize=None)
def _canonical(g: TrivalentGraph) -> TrivalentGraph:
    n = g.vertex_count
    classes: dict[tuple, list[int]] = {}
    for v in range(1, n + 1):
        classes.setdefault(_vertex_invariant(g, v), []).append(v)
    ordered = [classes[key] for key in sorted(classes)]
    slots, nxt = [], 1
    for members in ordered:
        slots.append(list(range(nxt, nxt + len(members))))
        nxt += len(members)
    best = None
    for choice in product(*(permutations(s) for s in slots)):
        relabel = {}
        for members, images in zip(ordered, choice):
            relabel.update(zip(members, images))
        code = tuple(sorted((min(relabel[a], relabel[b]), max(relabel[a], relabel[b])) for a, b in g.edges))
        if best is None or code < best:
            best = code
    return TrivalentGraph(n, best)


def canonical_graph(g: TrivalentGraph, max_vertices: int = 8) -> TrivalentGraph:
    """Minimal edge encoding over vertex relabellings that respect a degree invariant."""
    g.check()
    if g.vertex_count > max_vertices:
        raise SizeGuardError(f"brute-force canonical labelling limited to {max_vertices} vertices")
    return _canonical(g)


def isomorphic(a: TrivalentGraph, b: TrivalentGraph) -> bool:
    return canonical_graph(a) == canonical_graph(b)


# collapse ------------------------------------------------------------------


def collapse(c: Diagram) -> TrivalentGraph:
    """Identify the points of each block {1,2,3}, {4,5,6}, … to one vertex."""
    n = chords.num_points(c)
    if n % 6:
        raise ValueError(f"collapse needs a multiple of 6 points, got {n}")
    block = lambda x: (x - 1) // 3 + 1  # noqa: E731
    return TrivalentGraph.make(n // 3, ((block(i), block(j)) for i, j in c))


def collapse_vector(v: Mapping) -> dict:
    out: dict = {}
    for d, c in v.items():
        key = canonical_graph(collapse(d))
        nc = out.get(key, 0) + c
        if nc:
            out[key] = nc
        else:
            out.pop(key, None)
    return out


# graphical contraction -----------------------------------------------------


HalfEdge = tuple[int, int]  # (edge index, end 0 or 1)


def _half_edges_at(g: TrivalentGraph) -> dict[int, list[HalfEdge]]:
    at: dict[int, list[HalfEdge]] = {v: [] for v in range(1, g.vertex_count + 1)}
    for e, (u, v) in enumerate(g.edges):
        at[u].append((e, 0))
        at[v].append((e, 1))
    return at


def contraction_choices(g: TrivalentGraph, p: int) -> Iterator[tuple[tuple[int, ...], tuple[tuple[HalfEdge, HalfEdge], ...]]]:
    """All (F, ϖ): F a p-subset of vertices, ϖ(v) a pair of the 3 half-edges at v."""
    n = g.vertex_count
    if not 0 <= p <= n:
        raise ValueError(f"p must lie in 0..{n}")
    at = _half_edges_at(g)
    for F in combinations(range(1, n + 1), p):
        for picks in product(*(list(combinations(at[v], 2)) for v in F)):
            yield F, picks


def surgery(g: TrivalentGraph, picks: Sequence[tuple[HalfEdge, HalfEdge]]) -> tuple[TrivalentGraph, int]:
    """Cut the chosen half-edges near their vertex, loop the stubs, join the far ends.

    Returns the resulting trivalent graph (all original vertices) and the number
    of closed circles that were discarded.
    """
    cut = {h for pair in picks for h in pair}
    # nodes: ints are vertices; ("s", h) is the stub tip of half-edge h, ("r", h) the far piece's free end
    links: list[tuple] = []
    for e, (u, v) in enumerate(g.edges):
        ends = [u, v]
        for s in (0, 1):
            if (e, s) in cut:
                links.append((ends[s], ("s", (e, s))))
                ends[s] = ("r", (e, s))
        links.append((ends[0], ends[1]))
    for h1, h2 in picks:
        links.append((("s", h1), ("s", h2)))
        links.append((("r", h1), ("r", h2)))

    incident: dict = {}
    for idx, (a, b) in enumerate(links):
        incident.setdefault(a, []).append(idx)
        incident.setdefault(b, []).append(idx)
    used = [False] * len(links)
    new_edges = []
    for idx, (a, b) in enumerate(links):
        if used[idx]:
            continue
        if not isinstance(a, int) and not isinstance(b, int):
            continue
        # walk from a real endpoint through auxiliary nodes
        start = a if isinstance(a, int) else b
        cur_node, cur_link = start, idx
        while True:
            used[cur_link] = True
            x, y = links[cur_link]
            other = y if x == cur_node else x
            if isinstance(other, int):
                new_edges.append((start, other))
                break
            nxt = [j for j in incident[other] if j != cur_link]
            assert len(nxt) == 1, "auxiliary node of degree != 2"
            cur_node, cur_link = other, nxt[0]
    circles = 0
    for idx in range(len(links)):
        if used[idx]:
            continue
        circles += 1
        stack = [idx]
        while stack:
            j = stack.pop()
            if used[j]:
                continue
            used[j] = True
            for node in links[j]:
                stack.extend(i for i in incident[node] if not used[i])
    return TrivalentGraph.make(g.vertex_count, new_edges), circles


def _weight(p: int, loops: int, g) -> RatG | Fraction:
    if g is None:
        num = PolyG.const((-1) ** p) * PolyG((0, -2)) ** loops
        return RatG(num, PolyG((-2, 2)) ** p)
    if g == 1 and p:
        raise ZeroDivisionError("graphical contraction needs g >= 2")
    return Fraction((-1) ** p * (-2 * g) ** loops, (2 * g - 2) ** p)


def _check_genus(g) -> None:
    if g is not None and g < 2:
        raise ValueError("graphical contraction is defined for g >= 2 only")


def gamma_p(graph: TrivalentGraph, p: int, g: int | None = None) -> dict:
    """Γ^(p) = (2g−2)^−p Σ_F Σ_ϖ (−1)^p (−2g)^ℓ(ϖ) Γ_ϖ; symbolic when ``g`` is None."""
    _check_genus(g)
    tally: dict[TrivalentGraph, Counter] = {}
    for _, picks in contraction_choices(graph, p):
        res, loops = surgery(graph, picks)
        tally.setdefault(canonical_graph(res), Counter())[loops] += 1
    out = {}
    for key, by_loops in tally.items():
        coeff = sum((_weight(p, l, g) * m for l, m in by_loops.items()), RatG(0) if g is None else Fraction(0))
        if coeff:
            out[key] = coeff
    return out


def _accumulate(out: dict, v: Mapping, scale) -> None:
    for key, c in v.items():
        nc = out.get(key, 0) + c * scale
        if nc:
            out[key] = nc
        else:
            out.pop(key, None)


def gamma_p_vector(v: Mapping, p: int, g: int | None = None) -> dict:
    out: dict = {}
    for graph, c in v.items():
        _accumulate(out, gamma_p(graph, p, g), c)
    return out


def bar(x, g: int | None = None) -> dict:
    """Γ̄ = Γ − Γ^(1) + Γ^(2) − ⋯ + Γ^(2k) for a graph or a graph vector."""
    v = {x: 1} if isinstance(x, TrivalentGraph) else x
    out: dict = {}
    for graph, c in v.items():
        for p in range(graph.vertex_count + 1):
            _accumulate(out, gamma_p(graph, p, g), c * (-1) ** p)
    return out


def evaluate_vector(v: Mapping, g: int) -> dict:
    out = {}
    for key, c in v.items():
        x = c(g) if isinstance(c, (RatG, PolyG)) else Fraction(c)
        if x:
            out[key] = x
    return out


# relations -----------------------------------------------------------------


DEFAULT_RELATION_WORK = 10 ** 6


@dataclass
class Relation:
    lam: Partition
    index: int
    variant: str
    vectors: list[dict]  # one entry (closed) or 2k+1 entries p = 0..2k (pointed)
    zero: list[bool] = field(default_factory=list)


def relation_work(k: int, g: int) -> int:
    """Rough work estimate: eigenvectors times diagrams on 6k points."""
    lams = [lam for lam in enumerate_partitions(3 * k) if lam[0] > g]
    return sum(hook_dim(double(lam)) for lam in lams) * chords.double_factorial_odd(3 * k)


def eigenspace_vectors(lam: Partition) -> list[dict]:
    from .symmetrizer import eigenbasis

    n = 2 * sum(lam)
    if len(lam) == 1:
        # E_[m] is spanned by the sum of all diagrams
        return [chords.all_ones(n)]
    return eigenbasis(lam, n).vectors


def relations(k: int, g: int, variant: str = "closed", limit_work: int = DEFAULT_RELATION_WORK) -> list[Relation]:
    """Graph vectors from E_λ ⊂ QD(6k), λ ⊢ 3k with λ_1 > g, evaluated at g."""
    if variant not in ("closed", "pointed"):
        raise ValueError("variant must be 'closed' or 'pointed'")
    if g < 2:
        raise ValueError("relations need g >= 2")
    if k < 1:
        raise ValueError("k must be >= 1")
    work = relation_work(k, g)
    if work > limit_work:
        raise SizeGuardError(f"relation work estimate {work} exceeds limit {limit_work}")
    out = []
    for lam in enumerate_partitions(3 * k):
        if lam[0] <= g:
            continue
        for idx, xi in enumerate(eigenspace_vectors(lam)):
            gv = collapse_vector(xi)
            if variant == "closed":
                vecs = [bar(gv, g)]
            else:
                vecs = [gamma_p_vector(gv, p, g) for p in range(2 * k + 1)]
            out.append(Relation(lam, idx, variant, vecs, [not v for v in vecs]))
    return out
