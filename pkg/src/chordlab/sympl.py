"""Explicit symplectic tensors for a concrete genus.

Basis labels ``1..g`` stand for x_1..x_g and ``g+1..2g`` for y_1..y_g, so
μ(x_i, y_i) = 1 = −μ(y_i, x_i).  A tensor of order ``n`` is a sparse map from
length-``n`` label words to exact rationals.

Exterior products live inside the tensor power: for antisymmetric tensors
of orders ``p`` and ``q``, ``a ∧ b = Alt(a ⊗ b) / (p! q!)`` with
``Alt = Σ_σ sgn σ · σ``.  In particular ``u ∧ v ∧ w = Alt(u ⊗ v ⊗ w)`` and the
symplectic class is ``ω₀ = Σ x_i ∧ y_i``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations, product
from math import factorial
from typing import Iterable, Mapping, Sequence

from . import chords
from .chords import Diagram, Permutation, SizeGuardError
from .linalg import rank

Word = tuple[int, ...]

DEFAULT_TERM_BUDGET = 2 ** 16


@dataclass(frozen=True)
class SymplecticSpace:
    genus: int

    def __post_init__(self):
        if self.genus < 1:
            raise ValueError("genus must be >= 1")

    @property
    def dim(self) -> int:
        return 2 * self.genus

    def x(self, i: int) -> int:
        return i

    def y(self, i: int) -> int:
        return i + self.genus

    def label(self, a: int) -> str:
        return f"x{a}" if a <= self.genus else f"y{a - self.genus}"

    def mu(self, a: int, b: int) -> int:
        g = self.genus
        if a <= g and b == a + g:
            return 1
        if a > g and b == a - g:
            return -1
        return 0

    def dual(self, a: int) -> tuple[int, int]:
        """The unique label pairing nontrivially with ``a`` and the value μ(a, dual)."""
        g = self.genus
        return (a + g, 1) if a <= g else (a - g, -1)


class SymplecticTensor:
    __slots__ = ("order", "terms")

    def __init__(self, order: int, terms: Mapping[Word, Fraction] | None = None):
        self.order = order
        self.terms: dict[Word, Fraction] = {}
        for w, c in (terms or {}).items():
            if len(w) != order:
                raise ValueError(f"word {w} does not have length {order}")
            if c:
                self.terms[tuple(w)] = Fraction(c)

    def __eq__(self, other) -> bool:
        return isinstance(other, SymplecticTensor) and self.order == other.order and self.terms == other.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __add__(self, other: "SymplecticTensor") -> "SymplecticTensor":
        if self.order != other.order:
            raise ValueError("order mismatch")
        out = dict(self.terms)
        for w, c in other.terms.items():
            nc = out.get(w, 0) + c
            if nc:
                out[w] = nc
            else:
                out.pop(w, None)
        return SymplecticTensor(self.order, out)

    def __neg__(self) -> "SymplecticTensor":
        return self.scale(-1)

    def __sub__(self, other: "SymplecticTensor") -> "SymplecticTensor":
        return self + (-other)

    def scale(self, s) -> "SymplecticTensor":
        return SymplecticTensor(self.order, {w: c * s for w, c in self.terms.items()})

    def __repr__(self) -> str:
        return f"SymplecticTensor(order={self.order}, terms={len(self.terms)})"

    def to_pairs(self) -> list[tuple[list[int], str]]:
        return [(list(w), str(c)) for w, c in sorted(self.terms.items())]


def zero(order: int) -> SymplecticTensor:
    return SymplecticTensor(order)


def basis_word(*labels: int) -> SymplecticTensor:
    return SymplecticTensor(len(labels), {tuple(labels): 1})


def tensor(a: SymplecticTensor, b: SymplecticTensor) -> SymplecticTensor:
    out: dict[Word, Fraction] = {}
    for w, c in a.terms.items():
        for v, d in b.terms.items():
            out[w + v] = c * d
    return SymplecticTensor(a.order + b.order, out)


def permute_slots(gamma: Permutation, t: SymplecticTensor) -> SymplecticTensor:
    """γ(u_1 ⊗ ⋯ ⊗ u_n) puts u_i into slot γ(i)."""
    if len(gamma) != t.order:
        raise ValueError("permutation size does not match tensor order")
    out = {}
    for w, c in t.terms.items():
        nw = [0] * t.order
        for i, a in enumerate(w):
            nw[gamma[i] - 1] = a
        out[tuple(nw)] = c
    return SymplecticTensor(t.order, out)


def alternate(t: SymplecticTensor) -> SymplecticTensor:
    """Alt(t) = Σ_σ sgn σ σ(t) (no 1/n!)."""
    acc: dict[Word, Fraction] = {}
    for p in permutations(range(1, t.order + 1)):
        s = chords.perm_sign(p)
        for w, c in permute_slots(p, t).terms.items():
            acc[w] = acc.get(w, 0) + s * c
    return SymplecticTensor(t.order, acc)


def is_antisymmetric(t: SymplecticTensor) -> bool:
    n = t.order
    for i in range(1, n):
        swapped = permute_slots(chords.transposition(n, i, i + 1), t)
        if swapped != -t:
            return False
    return True


def wedge_vectors(*vecs: SymplecticTensor) -> SymplecticTensor:
    """v_1 ∧ ⋯ ∧ v_m = Alt(v_1 ⊗ ⋯ ⊗ v_m) for order-1 tensors."""
    t = SymplecticTensor(0, {(): 1})
    for v in vecs:
        t = tensor(t, v)
    return alternate(t)


# invariants and pairings ---------------------------------------------------


def omega0(space: SymplecticSpace) -> SymplecticTensor:
    """ω₀ = Σ x_i ⊗ y_i − y_i ⊗ x_i."""
    terms = {}
    for i in range(1, space.genus + 1):
        terms[(space.x(i), space.y(i))] = 1
        terms[(space.y(i), space.x(i))] = -1
    return SymplecticTensor(2, terms)


def phi(c: Diagram, space: SymplecticSpace) -> SymplecticTensor:
    """a_C: one ω₀ across slots (i_s, j_s) of every chord, times sgn C."""
    n = chords.num_points(c)
    g = space.genus
    s = chords.sign_of(c)
    choices = []
    for i in range(1, g + 1):
        choices.append((space.x(i), space.y(i), 1))
        choices.append((space.y(i), space.x(i), -1))
    out = {}
    for pick in product(choices, repeat=len(c)):
        w = [0] * n
        coeff = s
        for (i, j), (a, b, e) in zip(c, pick):
            w[i - 1], w[j - 1] = a, b
            coeff *= e
        out[tuple(w)] = coeff
    return SymplecticTensor(n, out)


def phi_vector(v: Mapping, space: SymplecticSpace) -> SymplecticTensor:
    n = chords.vector_points(v)
    acc = zero(n)
    for d, c in v.items():
        acc = acc + phi(d, space).scale(c)
    return acc


def mu_pairing(s: SymplecticTensor, t: SymplecticTensor, space: SymplecticSpace) -> Fraction:
    """μ^{⊗n}(s ⊗ t), bilinear extension of ∏ μ(u_i, v_i)."""
    if s.order != t.order:
        raise ValueError(f"order mismatch {s.order} vs {t.order}")
    if len(s) > len(t):
        # μ^{⊗n} is symmetric for even n and antisymmetric for odd n
        sign = -1 if s.order % 2 else 1
        return sign * mu_pairing(t, s, space)
    total = Fraction(0)
    for w, c in s.terms.items():
        dual = []
        sign = 1
        for a in w:
            b, e = space.dual(a)
            dual.append(b)
            sign *= e
        d = t.terms.get(tuple(dual))
        if d:
            total += sign * c * d
    return total


def _contraction_matchings(w: Word, space: SymplecticSpace):
    """Perfect matchings of slot positions pairing dual labels, with ∏ μ."""
    n = len(w)

    def rec(free: tuple[int, ...]):
        if not free:
            yield (), 1
            return
        i, rest = free[0], free[1:]
        partner, e = space.dual(w[i - 1])
        for idx, j in enumerate(rest):
            if w[j - 1] == partner:
                for tail, val in rec(rest[:idx] + rest[idx + 1 :]):
                    yield ((i, j),) + tail, e * val

    yield from rec(tuple(range(1, n + 1)))


def contract_K(t: SymplecticTensor, space: SymplecticSpace) -> dict:
    """K(t) = Σ_C α_C(t) C, α_C(u) = sgn C ∏ μ(u_{i_s}, u_{j_s})."""
    if t.order % 2:
        raise ValueError("contraction needs an even order tensor")
    out: dict = {}
    for w, c in t.terms.items():
        for d, val in _contraction_matchings(w, space):
            x = out.get(d, 0) + chords.sign_of(d) * val * c
            if x:
                out[d] = x
            else:
                out.pop(d, None)
    return out


def check_budget(space: SymplecticSpace, n: int, budget: int) -> None:
    if space.dim ** n > budget:
        raise SizeGuardError(f"(2g)^n = {space.dim ** n} exceeds the tensor budget {budget}")


def gram_matrix(space: SymplecticSpace, n: int, budget: int = DEFAULT_TERM_BUDGET) -> list[list[Fraction]]:
    """[μ^{⊗n}(Φ(C), Φ(D))] over the diagram enumeration."""
    check_budget(space, n, budget)
    ds = chords.enumerate_diagrams(n)
    images = [phi(d, space) for d in ds]
    m = [[Fraction(0)] * len(ds) for _ in ds]
    for a in range(len(ds)):
        for b in range(a, len(ds)):
            m[a][b] = m[b][a] = mu_pairing(images[a], images[b], space)
    return m


def invariant_rank(space: SymplecticSpace, n: int, budget: int = DEFAULT_TERM_BUDGET) -> int:
    return rank(gram_matrix(space, n, budget))


# the contraction operators on ∧³H -----------------------------------------


class NotAntisymmetric(ValueError):
    pass


def _contract_triple(t: SymplecticTensor, space: SymplecticSpace) -> dict[int, Fraction]:
    """c(u∧v∧w) = μ(u,v)w + μ(v,w)u + μ(w,u)v, read off sorted-word coefficients."""
    out: dict[int, Fraction] = {}
    for (a, b, c), coeff in t.terms.items():
        if not (a < b < c):
            continue
        for (p, q, r) in ((a, b, c), (b, c, a), (c, a, b)):
            m = space.mu(p, q)
            if m:
                out[r] = out.get(r, 0) + m * coeff
    return {k: v for k, v in out.items() if v}


def _vector_wedge_omega(vec: Mapping[int, Fraction], space: SymplecticSpace) -> SymplecticTensor:
    """v ∧ ω₀ = Σ_i v ∧ x_i ∧ y_i."""
    acc = zero(3)
    for a, c in vec.items():
        for i in range(1, space.genus + 1):
            acc = acc + wedge_vectors(basis_word(a), basis_word(space.x(i)), basis_word(space.y(i))).scale(c)
    return acc


def tilde_c(t: SymplecticTensor, space: SymplecticSpace, check: bool = True) -> SymplecticTensor:
    """C̃(u∧v∧w) = (μ(u,v)w + μ(v,w)u + μ(w,u)v) ∧ ω₀ / (g − 1)."""
    if space.genus < 2:
        raise ValueError("C~ is undefined at genus 1 (division by g - 1)")
    if t.order != 3:
        raise ValueError("C~ acts on order 3 tensors")
    if check and not is_antisymmetric(t):
        raise NotAntisymmetric("input is not antisymmetric in its three slots")
    vec = _contract_triple(t, space)
    return _vector_wedge_omega(vec, space).scale(Fraction(1, space.genus - 1))


def _apply_on_block(t: SymplecticTensor, block: int, op, space: SymplecticSpace) -> SymplecticTensor:
    lo, hi = 3 * block, 3 * block + 3
    grouped: dict[tuple[Word, Word], dict[Word, Fraction]] = {}
    for w, c in t.terms.items():
        grouped.setdefault((w[:lo], w[hi:]), {})[w[lo:hi]] = c
    out: dict[Word, Fraction] = {}
    for (pre, post), inner in grouped.items():
        res = op(SymplecticTensor(3, inner), space)
        for mid, c in res.terms.items():
            key = pre + mid + post
            nc = out.get(key, 0) + c
            if nc:
                out[key] = nc
            else:
                out.pop(key, None)
    return SymplecticTensor(t.order, out)


def wedge_blocks(blocks: Sequence[SymplecticTensor]) -> SymplecticTensor:
    """ξ_1 ∧ ⋯ ∧ ξ_m in ∧^m(∧³H): Σ_σ sgn σ ξ_σ(1) ⊗ ⋯ ⊗ ξ_σ(m)."""
    m = len(blocks)
    acc = zero(3 * m)
    for p in permutations(range(m)):
        s = chords.perm_sign([i + 1 for i in p])
        t = SymplecticTensor(0, {(): 1})
        for i in p:
            t = tensor(t, blocks[i])
        acc = acc + t.scale(s)
    return acc


def xi_p(t, p: int, space: SymplecticSpace) -> SymplecticTensor:
    """ξ^(p): sum over p-subsets of the blocks of C̃ applied to the chosen blocks.

    ``t`` is either a sequence of antisymmetric order-3 blocks (combined with
    :func:`wedge_blocks`) or an order-3m tensor antisymmetric within each block.
    """
    if space.genus < 2:
        raise ValueError("xi_p is undefined at genus 1 (division by g - 1)")
    if not isinstance(t, SymplecticTensor):
        blocks = list(t)
        for b in blocks:
            if b.order != 3 or not is_antisymmetric(b):
                raise NotAntisymmetric("every block must be an antisymmetric order 3 tensor")
        t = wedge_blocks(blocks)
    if t.order % 3:
        raise ValueError("tensor order must be a multiple of 3")
    m = t.order // 3
    if not 0 <= p <= m:
        raise ValueError(f"p must lie in 0..{m}")
    # elementary symmetric combination of the per-block operators
    layers = [t] + [zero(t.order) for _ in range(p)]
    for block in range(m):
        for j in range(min(p, block + 1), 0, -1):
            if layers[j - 1]:
                layers[j] = layers[j] + _apply_on_block(layers[j - 1], block, tilde_c, space)
    return layers[p]


def block_alternate(t: SymplecticTensor) -> SymplecticTensor:
    """Projection of an order-3m tensor to ∧^m(∧³H): Alt within blocks, then across blocks."""
    m = t.order // 3
    cur = t
    for block in range(m):
        cur = _apply_on_block(cur, block, lambda b, _s: alternate(b).scale(Fraction(1, 6)), None)
    acc = zero(t.order)
    for p in permutations(range(m)):
        s = chords.perm_sign([i + 1 for i in p])
        out = {}
        for w, c in cur.terms.items():
            nw = tuple(x for i in p for x in w[3 * i : 3 * i + 3])
            out[nw] = c * s
        acc = acc + SymplecticTensor(t.order, out)
    return acc.scale(Fraction(1, factorial(m)))


