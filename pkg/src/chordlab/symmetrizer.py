"""Young symmetrizers acting on the diagram space, eigenspace bases and spectral projection."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial, prod
from typing import Mapping, Sequence

from . import chords
from .chords import Diagram, Permutation
from .linalg import EchelonBasis
from .partitions import (
    Partition,
    Tableau,
    as_partition,
    conjugate,
    double,
    eigenvalue_mu,
    enumerate_partitions,
    hook_dim,
    is_standard,
    row_reading_tableau,
    standard_tableaux,
    tableau_columns,
)

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class SymmetrizerSpec:
    """A standard tableau on an even-type shape plus the product order.

    ``variant="c"`` is a·b (column antisymmetrizer applied first),
    ``variant="c_prime"`` is b·a (row symmetrizer applied first).
    """

    tableau: Tableau
    variant: str = "c"

    def __post_init__(self):
        if self.variant not in ("c", "c_prime"):
            raise ValueError(f"variant must be 'c' or 'c_prime', got {self.variant!r}")
        if not is_standard(self.tableau):
            raise ValueError(f"tableau is not standard: {self.tableau}")
        if any(len(row) % 2 for row in self.tableau):
            raise ValueError(f"shape {self.shape} is not of even type")

    @property
    def shape(self) -> Partition:
        return tuple(len(r) for r in self.tableau)


def _apply_transposition(d: Diagram, a: int, b: int) -> Diagram:
    def t(x: int) -> int:
        return b if x == a else a if x == b else x

    return tuple(sorted((min(t(i), t(j)), max(t(i), t(j))) for i, j in d))


def _group_sum(labels: Sequence[int], v: Mapping, signed: bool) -> dict:
    """Σ over all permutations of ``labels`` (with signs if ``signed``) applied to ``v``.

    Uses Σ_{S_m} = T_m ⋯ T_2 with T_i = 1 ± Σ_{j<i} (l_j l_i).
    """
    sgn = -1 if signed else 1
    cur = dict(v)
    for i in range(1, len(labels)):
        nxt = dict(cur)
        li = labels[i]
        for j in range(i):
            lj = labels[j]
            for d, c in cur.items():
                e = _apply_transposition(d, lj, li)
                nc = nxt.get(e, 0) + sgn * c
                if nc:
                    nxt[e] = nc
                else:
                    nxt.pop(e, None)
        cur = nxt
    return cur


def row_symmetrize(tableau: Tableau, v: Mapping) -> dict:
    """a_T · v"""
    for row in tableau:
        v = _group_sum(row, v, signed=False)
    return dict(v)


def column_antisymmetrize(tableau: Tableau, v: Mapping) -> dict:
    """b_T · v"""
    for col in tableau_columns(tableau):
        v = _group_sum(col, v, signed=True)
    return dict(v)


def apply_symmetrizer(spec: SymmetrizerSpec, v: Mapping) -> dict:
    n = sum(spec.shape)
    if v and chords.vector_points(v) != n:
        raise ValueError(f"tableau on {n} boxes applied to vectors on {chords.vector_points(v)} points")
    if spec.variant == "c":
        return row_symmetrize(spec.tableau, column_antisymmetrize(spec.tableau, v))
    return column_antisymmetrize(spec.tableau, row_symmetrize(spec.tableau, v))


def relabel_permutation(src: Tableau, dst: Tableau) -> Permutation:
    """σ with σ(src[r][c]) = dst[r][c]."""
    n = sum(len(r) for r in src)
    images = [0] * n
    for rs, rd in zip(src, dst):
        for a, b in zip(rs, rd):
            images[a - 1] = b
    return tuple(images)


@dataclass
class EigenBasis:
    lam: Partition
    vectors: list[dict]
    tableaux: list[Tableau]
    fallback: bool = False
    primary_rank: int = 0
    notes: list[str] = field(default_factory=list)

    @property
    def dimension(self) -> int:
        return len(self.vectors)


def _unit(d: Diagram) -> dict:
    return {d: Fraction(1)}


def eigenbasis(lam: Partition, n: int | None = None, verify: bool = True) -> EigenBasis:
    """Basis of E_λ ⊂ QD(2|λ|).

    First tries {c_τ(C₀) : τ standard on 2λ}.  Several of these vanish whenever
    a column of τ holds both ends of a chord of C₀, so when the rank falls short
    the basis {σ_τ · c'_{T₀}(C₀)} is used instead (σ_τ relabels the row-reading
    tableau T₀ into τ), and the shortfall is recorded on the result.
    """
    lam = as_partition(lam)
    k = sum(lam)
    if n is None:
        n = 2 * k
    if n != 2 * k:
        raise ValueError(f"points {n} do not match 2|λ| = {2 * k}")
    shape = double(lam)
    target = hook_dim(shape)
    start = _unit(chords.c0(n))
    taus = standard_tableaux(shape)

    basis = EchelonBasis()
    vecs, used = [], []
    for tau in taus:
        w = apply_symmetrizer(SymmetrizerSpec(tau, "c"), start)
        if w and basis.add(w):
            vecs.append(w)
            used.append(tau)
    primary_rank = len(vecs)
    if primary_rank == target:
        return EigenBasis(lam, vecs, used, fallback=False, primary_rank=primary_rank)

    note = (
        f"c_tau(C0) over {len(taus)} standard tableaux of {list(shape)} has rank "
        f"{primary_rank} < {target}; using relabelled c'_T0(C0)"
    )
    log.info(note)
    t0 = row_reading_tableau(shape)
    seed = apply_symmetrizer(SymmetrizerSpec(t0, "c_prime"), start)
    basis = EchelonBasis() if verify else None
    vecs, used = [], []
    for tau in taus:
        w = chords.permute_vector(relabel_permutation(t0, tau), seed)
        if basis is None or basis.add(w):
            vecs.append(w)
            used.append(tau)
    if basis is not None and len(vecs) < target:
        # close under adjacent transpositions; E_λ is irreducible so this terminates at full rank
        frontier = list(vecs)
        while frontier and len(vecs) < target:
            w0 = frontier.pop()
            for i in range(1, n):
                w = chords.permute_vector(chords.transposition(n, i, i + 1), w0)
                if basis.add(w):
                    vecs.append(w)
                    used.append(())
                    frontier.append(w)
        note += f"; relabelled set short, closed under adjacent transpositions"
    if len(vecs) != target:
        raise ArithmeticError(f"E_{list(lam)}: rank {len(vecs)} != expected {target}")
    return EigenBasis(lam, vecs, used, fallback=True, primary_rank=primary_rank, notes=[note])


def c0_coefficient(lam: Partition) -> int:
    """Coefficient of C₀ in c'_{2λ} C₀ for the row-reading tableau."""
    lam = as_partition(lam)
    n = 2 * sum(lam)
    t0 = row_reading_tableau(double(lam))
    start = chords.c0(n)
    w = apply_symmetrizer(SymmetrizerSpec(t0, "c_prime"), _unit(start))
    return int(w.get(start, 0))


def c0_coefficient_formula(lam: Partition) -> int:
    """2^k ∏ λ_i! ∏ λ'_j!"""
    return 2 ** sum(lam) * prod(factorial(x) for x in lam) * prod(factorial(x) for x in conjugate(lam))


# spectral projection -------------------------------------------------------


class EigenvalueCollision(ValueError):
    pass


def eigenvalues_at(k: int, g0) -> dict[Partition, Fraction]:
    return {mu: eigenvalue_mu(mu)(g0) for mu in enumerate_partitions(k)}


def _distinct(values: Mapping) -> bool:
    return len(set(values.values())) == len(values)


def default_genus(k: int) -> int:
    """Smallest g0 >= k at which all μ_λ(g0), |λ| = k, are distinct."""
    g0 = max(k, 1)
    while not _distinct(eigenvalues_at(k, g0)):
        g0 += 1
    return g0


def spectral_project(lam: Partition, g0: int | None, v: Mapping) -> dict:
    """Component of ``v`` in E_λ via ∏_{μ≠λ} (M − μ_μ(g0)) / (μ_λ(g0) − μ_μ(g0))."""
    lam = as_partition(lam)
    k = sum(lam)
    if v and chords.vector_points(v) != 2 * k:
        raise ValueError("vector size does not match the partition")
    if g0 is None:
        g0 = default_genus(k)
    vals = eigenvalues_at(k, g0)
    if not _distinct(vals):
        raise EigenvalueCollision(f"eigenvalues collide at g0={g0} for k={k}")
    target = vals[lam]
    w = {d: Fraction(c) for d, c in v.items() if c}
    for mu, val in vals.items():
        if mu == lam or not w:
            continue
        mw = chords.apply_M_at(w, g0)
        w = chords.vec_scale(chords.vec_sub(mw, chords.vec_scale(w, val)), 1 / (target - val))
    return w


def decompose(v: Mapping, g0: int | None = None) -> dict[Partition, dict]:
    """Split ``v`` into its E_λ components (exact; components sum to ``v``)."""
    n = chords.vector_points(v)
    if not n:
        return {}
    k = n // 2
    if g0 is None:
        g0 = default_genus(k)
    return {lam: spectral_project(lam, g0, v) for lam in enumerate_partitions(k)}
