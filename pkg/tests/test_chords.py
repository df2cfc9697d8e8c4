import random
from collections import Counter

import pytest
from hypothesis import given, strategies as st

from chordlab import chords
from chordlab.chords import (
    SizeGuardError,
    all_ones,
    apply_M,
    c0,
    canonicalize,
    enumerate_diagrams,
    intersection_matrix,
    p_ij,
    pairing,
    pairing_iterative,
    permute,
    relative_type,
    sign_of,
    union_components,
)
from chordlab.partitions import enumerate_partitions
from chordlab.polyg import PolyG

TWO_G = PolyG.linear(2, 0)
C13 = ((1, 3), (2, 4))
C14 = ((1, 4), (2, 3))


def inversions_sign(seq):
    inv = sum(1 for a in range(len(seq)) for b in range(a + 1, len(seq)) if seq[a] > seq[b])
    return -1 if inv % 2 else 1


def components_oracle(c, d):
    # depth-first search over an adjacency list
    adj = {}
    for i, j in c + d:
        adj.setdefault(i, []).append(j)
        adj.setdefault(j, []).append(i)
    seen, count = set(), 0
    for start in adj:
        if start in seen:
            continue
        count += 1
        stack = [start]
        while stack:
            x = stack.pop()
            if x not in seen:
                seen.add(x)
                stack.extend(adj[x])
    return count


def diagrams(max_k=5):
    return st.integers(1, max_k).flatmap(
        lambda k: st.permutations(range(1, 2 * k + 1)).map(lambda p: canonicalize(zip(p[::2], p[1::2])))
    )


def diagram_pairs(max_k=5):
    return st.integers(1, max_k).flatmap(
        lambda k: st.tuples(st.permutations(range(1, 2 * k + 1)), st.permutations(range(1, 2 * k + 1)))
    ).map(lambda pq: tuple(canonicalize(zip(p[::2], p[1::2])) for p in pq))


def test_enumeration_counts():
    assert enumerate_diagrams(2) == (((1, 2),),)
    assert len(enumerate_diagrams(8)) == 105
    assert len(enumerate_diagrams(12)) == 10395
    assert len(set(enumerate_diagrams(10))) == 945
    with pytest.raises(SizeGuardError):
        enumerate_diagrams(14)
    with pytest.raises(ValueError):
        enumerate_diagrams(5)


def test_canonicalize():
    assert canonicalize([(3, 4), (1, 2)]) == ((1, 2), (3, 4))
    assert canonicalize([(2, 1), (4, 3)]) == ((1, 2), (3, 4))
    assert canonicalize([(5, 2), (1, 6), (3, 4)]) == ((1, 6), (2, 5), (3, 4))
    with pytest.raises(ValueError):
        canonicalize([(1, 2), (2, 3)])
    with pytest.raises(ValueError):
        canonicalize([(1, 2), (4, 5)])


def test_permute():
    assert permute(chords.identity(4), c0(4)) == c0(4)
    assert permute(chords.transposition(4, 2, 3), c0(4)) == C13


def test_signs():
    assert sign_of(c0(4)) == 1
    assert sign_of(C13) == -1
    # (1, 4, 2, 3) has the two inversions 4>2 and 4>3
    assert sign_of(C14) == 1


@given(diagrams(6))
def test_sign_matches_inversion_count(c):
    assert sign_of(c) == inversions_sign([x for p in c for x in p])


def test_components():
    assert union_components(c0(4), c0(4)) == 2
    assert union_components(c0(4), C13) == 1
    assert union_components(c0(4), C14) == 1


@given(diagram_pairs(6))
def test_components_match_dfs(cd):
    c, d = cd
    assert union_components(c, d) == components_oracle(c, d)


def test_pairing_examples():
    assert pairing(c0(4), c0(4)) == TWO_G ** 2
    assert pairing(c0(4), C13) == -TWO_G
    assert pairing_iterative(c0(4), C13) == -TWO_G
    assert pairing_iterative(c0(6), c0(6)) == TWO_G ** 3


def test_p_ij():
    assert p_ij(c0(4), 1, 2) == (TWO_G, c0(4))
    assert p_ij(c0(4), 1, 3) == (PolyG.const(-1), C13)
    assert p_ij(c0(4), 1, 4) == (PolyG.const(-1), C14)
    with pytest.raises(ValueError):
        p_ij(c0(4), 3, 3)


@given(diagram_pairs(5), st.randoms(use_true_random=False))
def test_pairing_symmetric_and_invariant(cd, rng):
    c, d = cd
    assert pairing(c, d) == pairing(d, c)
    gamma = chords.random_permutation(chords.num_points(c), rng)
    assert pairing(permute(gamma, c), permute(gamma, d)) == pairing(c, d)


@given(diagram_pairs(6))
def test_iterative_pairing_agrees(cd):
    assert pairing_iterative(*cd) == pairing(*cd)


def test_matrix_small():
    assert intersection_matrix(2) == [[TWO_G]]
    m = intersection_matrix(4)
    assert all(m[i][i] == TWO_G ** 2 for i in range(3))
    assert all(m[i][j] == -TWO_G for i in range(3) for j in range(3) if i != j)
    with pytest.raises(SizeGuardError):
        intersection_matrix(10)


@pytest.mark.parametrize("n", [2, 4, 6, 8])
def test_row_sums(n):
    k = n // 2
    want = PolyG.product([PolyG.linear(2, -2 * s) for s in range(k)])
    for row in intersection_matrix(n):
        assert sum(row, PolyG()) == want


def test_apply_M_examples():
    assert apply_M({c0(2): 1}) == {c0(2): TWO_G}
    ones = all_ones(4)
    mu = TWO_G * PolyG.linear(2, -2)
    assert apply_M(ones) == {d: mu for d in ones}


@pytest.mark.parametrize("n", [4, 6, 12])
def test_apply_M_is_equivariant(n):
    rng = random.Random(n)
    ds = enumerate_diagrams(n)
    v = {rng.choice(ds): rng.randint(-3, 3) or 1 for _ in range(3)}
    gamma = chords.random_permutation(n, rng)
    lhs = apply_M(chords.permute_vector(gamma, v))
    rhs = chords.permute_vector(gamma, apply_M(v))
    assert lhs == rhs


def test_apply_M_matches_matrix():
    n = 6
    ds = enumerate_diagrams(n)
    m = intersection_matrix(n)
    v = {ds[0]: 2, ds[7]: -1}
    got = apply_M(v)
    for b, d in enumerate(ds):
        want = m[0][b] * 2 - m[7][b]
        assert got.get(d, PolyG()) == want


def test_relative_types():
    assert relative_type(c0(8)) == (1, 1, 1, 1)
    assert relative_type(C13) == (2,)
    for k in range(1, 7):
        types = Counter(relative_type(d) for d in enumerate_diagrams(2 * k))
        assert set(types) == set(enumerate_partitions(k))
        assert sum(types.values()) == chords.double_factorial_odd(k)


@given(diagrams(5), st.randoms(use_true_random=False))
def test_relative_type_stabilizer_invariance(c, rng):
    h = chords.stabilizer_element(len(c), rng)
    assert permute(h, c0(2 * len(c))) == c0(2 * len(c))
    assert relative_type(permute(h, c)) == relative_type(c)
