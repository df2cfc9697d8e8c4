import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from chordlab import chords, sympl
from chordlab.chords import SizeGuardError, apply_M_at, c0, enumerate_diagrams, evaluate_matrix, intersection_matrix
from chordlab.partitions import enumerate_partitions, invariant_dim
from chordlab.symmetrizer import eigenbasis
from chordlab.sympl import (
    NotAntisymmetric,
    SymplecticSpace,
    basis_word,
    contract_K,
    gram_matrix,
    invariant_rank,
    mu_pairing,
    omega0,
    phi,
    phi_vector,
    tilde_c,
    wedge_blocks,
    wedge_vectors,
    xi_p,
    zero,
)
from chordlab.partitions import eigenvalue_mu


def wedge3(space, a, b, c):
    return wedge_vectors(basis_word(a), basis_word(b), basis_word(c))


def test_omega0():
    s1 = SymplecticSpace(1)
    assert omega0(s1).terms == {(1, 2): 1, (2, 1): -1}
    assert len(omega0(SymplecticSpace(2))) == 4
    for g in (1, 2, 3):
        s = SymplecticSpace(g)
        assert mu_pairing(omega0(s), omega0(s), s) == 2 * g


def test_mu_pairing_basic():
    s = SymplecticSpace(1)
    assert mu_pairing(basis_word(1, 1), basis_word(2, 2), s) == 1
    assert mu_pairing(basis_word(1), basis_word(2), s) == 1
    assert mu_pairing(basis_word(2), basis_word(1), s) == -1


def test_phi_of_single_chord_is_omega0():
    for g in (1, 2):
        s = SymplecticSpace(g)
        assert phi(c0(2), s) == omega0(s)


def test_contract_omega0():
    for g in (1, 2, 3):
        s = SymplecticSpace(g)
        assert contract_K(omega0(s), s) == {c0(2): 2 * g}


@pytest.mark.parametrize("g", [1, 2, 3])
@pytest.mark.parametrize("n", [2, 4, 6])
def test_commutative_square(g, n):
    s = SymplecticSpace(g)
    for d in enumerate_diagrams(n):
        assert contract_K(phi(d, s), s) == apply_M_at({d: 1}, g)


def test_K_phi_on_an_eigenvector():
    s = SymplecticSpace(2)
    xi = eigenbasis((2,)).vectors[0]
    assert contract_K(phi_vector(xi, s), s) == chords.vec_scale(xi, eigenvalue_mu((2,))(2))


@pytest.mark.parametrize("g,n", [(1, 2), (1, 4), (2, 4), (3, 4), (1, 6), (2, 6), (3, 6)])
def test_gram_is_the_evaluated_matrix(g, n):
    assert gram_matrix(SymplecticSpace(g), n) == evaluate_matrix(intersection_matrix(n), g)


def test_gram_example():
    m = gram_matrix(SymplecticSpace(2), 4)
    assert [m[i][i] for i in range(3)] == [16, 16, 16]
    assert m[0][1] == m[1][2] == -4


@pytest.mark.parametrize("g,k", [(1, 1), (1, 2), (2, 2), (1, 3), (2, 3), (3, 3)])
def test_invariant_rank(g, k):
    assert invariant_rank(SymplecticSpace(g), 2 * k) == invariant_dim(g, k)


def test_budget_guard():
    with pytest.raises(SizeGuardError):
        gram_matrix(SymplecticSpace(3), 8)
    with pytest.raises(ValueError):
        SymplecticSpace(0)


@settings(max_examples=60)
@given(st.sampled_from([4, 6]), st.randoms(use_true_random=False))
def test_anti_equivariance(n, rng):
    s = SymplecticSpace(2)
    gamma = chords.random_permutation(n, rng)
    c = chords.random_diagram(n, rng)
    lhs = phi(chords.permute(gamma, c), s)
    rhs = sympl.permute_slots(gamma, phi(c, s)).scale(chords.perm_sign(gamma))
    assert lhs == rhs


@pytest.mark.parametrize("g", [1, 2])
def test_kernel_of_phi(g):
    s = SymplecticSpace(g)
    for k in (1, 2, 3):
        for lam in enumerate_partitions(k):
            for v in eigenbasis(lam).vectors:
                assert (not phi_vector(v, s)) == (lam[0] > g)


def test_image_orthogonality():
    g, s = 3, SymplecticSpace(3)
    images = {lam: [phi_vector(v, s) for v in eigenbasis(lam).vectors] for lam in enumerate_partitions(3)}
    lams = list(images)
    for i, a in enumerate(lams):
        for b in lams[i + 1 :]:
            for t in images[a]:
                for u in images[b]:
                    assert mu_pairing(t, u, s) == 0


def test_tilde_c_examples():
    s3 = SymplecticSpace(3)
    assert not tilde_c(wedge3(s3, 1, 2, 3), s3)
    for g in (2, 3):
        s = SymplecticSpace(g)
        # only μ(x₁, y₁) = 1 survives, leaving x₂ ∧ ω₀ / (g − 1)
        got = tilde_c(wedge3(s, s.x(1), s.y(1), s.x(2)), s)
        want = zero(3)
        for i in range(1, g + 1):
            want = want + wedge3(s, s.x(2), s.x(i), s.y(i))
        assert got == want.scale(Fraction(1, g - 1))


def test_tilde_c_errors():
    with pytest.raises(ValueError):
        tilde_c(wedge3(SymplecticSpace(1), 1, 2, 1), SymplecticSpace(1))
    s = SymplecticSpace(2)
    with pytest.raises(NotAntisymmetric):
        tilde_c(basis_word(1, 3, 2), s)


@pytest.mark.parametrize("g", [2, 3])
def test_tilde_c_is_a_projection(g):
    # contracting v ∧ ω₀ returns (g - 1) v, so C̃ ∘ C̃ = C̃
    s = SymplecticSpace(g)
    rng = random.Random(g)
    for _ in range(5):
        t = zero(3)
        for _ in range(3):
            a, b, c = rng.sample(range(1, 2 * g + 1), 3)
            t = t + wedge3(s, a, b, c).scale(rng.randint(-2, 2))
        once = tilde_c(t, s)
        assert tilde_c(once, s) == once


def test_tilde_c_is_linear():
    s = SymplecticSpace(2)
    a, b = wedge3(s, 1, 3, 2), wedge3(s, 2, 4, 1)
    assert tilde_c(a.scale(3) + b, s) == tilde_c(a, s).scale(3) + tilde_c(b, s)


def test_xi_p_identity_and_vanishing():
    s3 = SymplecticSpace(3)
    blocks = [wedge3(s3, 1, 2, 3), wedge3(s3, 4, 5, 6)]
    assert xi_p(blocks, 0, s3) == wedge_blocks(blocks)
    assert not xi_p(blocks, 2, s3)
    with pytest.raises(ValueError):
        xi_p(blocks, 3, s3)
    with pytest.raises(ValueError):
        xi_p(blocks, 1, SymplecticSpace(1))


def test_xi_p_hand_expansion():
    s = SymplecticSpace(2)
    b1 = wedge3(s, 1, 3, 2)
    b2 = wedge3(s, 3, 2, 4)
    want = wedge_blocks([tilde_c(b1, s), b2]) + wedge_blocks([b1, tilde_c(b2, s)])
    assert xi_p([b1, b2], 1, s) == want
    assert xi_p([b1, b2], 2, s) == wedge_blocks([tilde_c(b1, s), tilde_c(b2, s)])
