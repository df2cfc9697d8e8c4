import random
from itertools import permutations
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from chordlab import chords, graphs
from chordlab.chords import SizeGuardError, all_ones, enumerate_diagrams
from chordlab.graphs import (
    DUMBBELL,
    THETA,
    TrivalentGraph,
    bar,
    canonical_graph,
    collapse,
    collapse_vector,
    contraction_choices,
    evaluate_vector,
    gamma_p,
    gamma_p_vector,
    relations,
    surgery,
)
from chordlab.partitions import double, hook_dim
from chordlab.polyg import PolyG, RatG

TWO_G_MINUS_2 = PolyG.linear(2, -2)
K2_GRAPHS = sorted(collapse_vector(all_ones(12)))


def symbolic(v):
    return {k: RatG._coerce(c) for k, c in v.items() if c}


def iso_oracle(a: TrivalentGraph, b: TrivalentGraph) -> bool:
    # try every vertex bijection, no invariant pruning
    if a.vertex_count != b.vertex_count:
        return False
    target = sorted(b.edges)
    for p in permutations(range(1, a.vertex_count + 1)):
        e = sorted((min(p[u - 1], p[v - 1]), max(p[u - 1], p[v - 1])) for u, v in a.edges)
        if e == target:
            return True
    return False


def test_collapse_examples():
    assert collapse(((1, 4), (2, 5), (3, 6))) == THETA
    assert collapse(chords.c0(6)) == DUMBBELL
    with pytest.raises(ValueError):
        collapse(chords.c0(4))


def test_make_rejects_non_trivalent():
    with pytest.raises(ValueError):
        TrivalentGraph.make(2, [(1, 2), (1, 2)])
    assert DUMBBELL.loops() == 2


def test_canonical_forms():
    assert canonical_graph(TrivalentGraph.make(2, [(2, 1), (1, 2), (2, 1)])) == THETA
    swapped = TrivalentGraph.make(2, [(2, 2), (1, 2), (1, 1)])
    assert canonical_graph(swapped) == DUMBBELL
    assert canonical_graph(THETA) != canonical_graph(DUMBBELL)
    for g in K2_GRAPHS:
        assert canonical_graph(canonical_graph(g)) == canonical_graph(g)


def test_canonical_classes_match_brute_force():
    raw = {collapse(d) for d in enumerate_diagrams(12)}
    classes: list[TrivalentGraph] = []
    for g in raw:
        if not any(iso_oracle(g, h) for h in classes):
            classes.append(g)
    assert len(classes) == len(K2_GRAPHS) == 8
    for g in raw:
        for h in K2_GRAPHS:
            assert (canonical_graph(g) == h) == iso_oracle(g, h)


def test_census_k1():
    assert collapse_vector(all_ones(6)) == {THETA: 6, DUMBBELL: 9}
    d = ((1, 4), (2, 5), (3, 6))
    assert collapse_vector({d: 1}) == {THETA: 1}


@settings(max_examples=40)
@given(st.integers(1, 2), st.randoms(use_true_random=False))
def test_collapse_block_invariance(k, rng):
    n = 6 * k
    c = chords.random_diagram(n, rng)
    blocks = list(range(2 * k))
    rng.shuffle(blocks)
    images = []
    for dst in blocks:
        inner = [3 * dst + 1, 3 * dst + 2, 3 * dst + 3]
        rng.shuffle(inner)
        images.extend(inner)
    h = tuple(images)
    assert canonical_graph(collapse(chords.permute(h, c))) == canonical_graph(collapse(c))


@pytest.mark.parametrize("graph", [THETA, DUMBBELL] + K2_GRAPHS)
def test_choice_counts(graph):
    n = graph.vertex_count
    for p in range(n + 1):
        assert sum(1 for _ in contraction_choices(graph, p)) == 3 ** p * comb(n, p)
    with pytest.raises(ValueError):
        next(contraction_choices(graph, n + 1))


@pytest.mark.parametrize("graph", K2_GRAPHS)
def test_surgery_outputs_are_trivalent(graph):
    for p in range(graph.vertex_count + 1):
        for _, picks in contraction_choices(graph, p):
            res, circles = surgery(graph, picks)
            res.check()
            assert res.vertex_count == graph.vertex_count
            assert 0 <= circles <= p


def test_gamma_p_k1():
    assert gamma_p(THETA, 0) == {THETA: 1}
    assert gamma_p(DUMBBELL, 0) == {DUMBBELL: 1}
    # theta: at either vertex each of the 3 half-edge pairs gives a dumbbell with no circle
    assert symbolic(gamma_p(THETA, 1)) == {DUMBBELL: RatG(-6, TWO_G_MINUS_2)}
    # dumbbell: per vertex the loop pair closes one circle, the two mixed pairs close none
    assert symbolic(gamma_p(DUMBBELL, 1)) == {DUMBBELL: RatG(2)}
    assert symbolic(gamma_p(THETA, 2)) == {DUMBBELL: RatG(-3, TWO_G_MINUS_2)}
    assert symbolic(gamma_p(DUMBBELL, 2)) == {DUMBBELL: RatG(1)}


def test_bar_k1():
    assert bar(DUMBBELL) == {}
    assert symbolic(bar(THETA)) == {THETA: RatG(1), DUMBBELL: RatG(3, TWO_G_MINUS_2)}


@pytest.mark.parametrize("graph", [THETA, DUMBBELL] + K2_GRAPHS)
def test_contractions_act_as_elementary_symmetric_idempotents(graph):
    e1 = gamma_p(graph, 1)
    rhs = dict(e1)
    for key, c in gamma_p(graph, 2).items():
        rhs[key] = rhs.get(key, RatG(0)) + 2 * c
    assert symbolic(gamma_p_vector(e1, 1)) == symbolic(rhs)
    b = bar(graph)
    assert symbolic(bar(b)) == symbolic(b)


@pytest.mark.parametrize("g", [2, 3, 4])
def test_symbolic_then_evaluated(g):
    for graph in [THETA, DUMBBELL] + K2_GRAPHS[:4]:
        for p in range(graph.vertex_count + 1):
            assert evaluate_vector(gamma_p(graph, p), g) == gamma_p(graph, p, g)
        assert evaluate_vector(bar(graph), g) == bar(graph, g)


def test_bar_is_linear():
    v = {THETA: RatG(2), DUMBBELL: RatG(-5)}
    lhs = symbolic(bar(v))
    rhs = {}
    for graph, c in v.items():
        for key, x in bar(graph).items():
            rhs[key] = rhs.get(key, RatG(0)) + c * x
    assert lhs == symbolic(rhs)


def test_genus_one_rejected():
    with pytest.raises(ValueError):
        gamma_p(THETA, 1, 1)
    with pytest.raises(ValueError):
        relations(1, 1)


def test_relations_k1():
    closed = relations(1, 2)
    assert [(r.lam, r.index) for r in closed] == [((3,), 0)]
    assert closed[0].vectors == [{THETA: 6, DUMBBELL: 9}]
    pointed = relations(1, 2, "pointed")
    assert len(pointed[0].vectors) == 3
    assert pointed[0].vectors[0] == {THETA: 6, DUMBBELL: 9}
    assert pointed[0].zero == [False, True, True]
    assert relations(1, 3) == []
    with pytest.raises(ValueError):
        relations(1, 2, "open")


def test_relations_work_guard():
    with pytest.raises(SizeGuardError):
        relations(2, 2)


def test_relations_k2_one_row():
    rels = relations(2, 5)
    assert len(rels) == 1 and rels[0].lam == (6,)
    xi = collapse_vector(all_ones(12))
    assert rels[0].vectors[0] == bar(xi, 5)


@pytest.mark.slow
def test_relations_k2_genus4():
    rels = relations(2, 4)
    assert len(rels) == hook_dim(double((6,))) + hook_dim(double((5, 1)))
    assert all(r.lam[0] > 4 for r in rels)
    for r in rels:
        assert r.zero == [not v for v in r.vectors]
