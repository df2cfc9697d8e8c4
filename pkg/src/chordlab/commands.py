"""Computations behind each CLI subcommand, returning serializable documents.

Every builder returns ``(document, ok)`` where ``ok`` is False when a checked
identity failed; the caller maps that to exit status 1.
"""

from __future__ import annotations

from fractions import Fraction

from . import chords, graphs, sympl
from .parallel import pmap
from .partitions import (
    Partition,
    as_partition,
    conjugate,
    decomposition_rows,
    double,
    eigenvalue_mu,
    enumerate_partitions,
    hook_dim,
    invariant_dim,
)
from .serialize import chord_vector, diagram, document, graph_vector, matrix_document, poly, tensor_terms
from .symmetrizer import eigenbasis


def partitions_doc(k: int) -> tuple[dict, bool]:
    rows = [
        {
            "partition": list(lam),
            "conjugate": list(conjugate(lam)),
            "dimension": hook_dim(double(lam)),
            "eigenvalue": poly(eigenvalue_mu(lam)),
        }
        for lam in enumerate_partitions(k)
    ]
    return document("partitions", k=k, count=len(rows), partitions=rows), True


def diagrams_doc(n: int) -> tuple[dict, bool]:
    ds = chords.enumerate_diagrams(n)
    rows = [
        {"index": i, "diagram": diagram(d), "sign": chords.sign_of(d), "relative_type": list(chords.relative_type(d))}
        for i, d in enumerate(ds)
    ]
    ok = len(ds) == chords.double_factorial_odd(n // 2)
    return document("diagrams", points=n, count=len(ds), diagrams=rows), ok


def _matrix_row(args: tuple[int, int]) -> list:
    n, a = args
    ds = chords.enumerate_diagrams(n)
    return [chords.pairing(ds[a], d) for d in ds]


def matrix_doc(n: int, genus: int | None = None, jobs: int = 1) -> tuple[dict, bool]:
    if n > chords.DEFAULT_MAX_MATRIX_POINTS:
        raise chords.SizeGuardError(f"matrix export limited to {chords.DEFAULT_MAX_MATRIX_POINTS} points")
    size = len(chords.enumerate_diagrams(n))
    rows = pmap(_matrix_row, [(n, a) for a in range(size)], jobs)
    ok = all(rows[a][b] == rows[b][a] for a in range(size) for b in range(a))
    if genus is not None:
        rows = [[x(genus) for x in row] for row in rows]
    return matrix_document(n, rows, genus), ok


def eigen_doc(lam: Partition) -> tuple[dict, bool]:
    lam = as_partition(lam)
    basis = eigenbasis(lam)
    mu = eigenvalue_mu(lam)
    ok = all(chords.apply_M(v) == chords.vec_scale(v, mu) for v in basis.vectors)
    ok = ok and basis.dimension == hook_dim(double(lam))
    doc = document(
        "eigen",
        partition=list(lam),
        eigenvalue=poly(mu),
        dimension=basis.dimension,
        fallback=basis.fallback,
        verified=ok,
        tableaux=[[list(r) for r in t] for t in basis.tableaux],
        basis=[chord_vector(v) for v in basis.vectors],
    )
    return doc, ok


def table_doc(n: int) -> tuple[dict, bool]:
    if n % 2:
        raise ValueError("points must be even")
    rows = [
        {"partition": list(lam), "eigenvalue": poly(mu), "dimension": dim, "min_genus": h}
        for lam, mu, dim, h in decomposition_rows(n // 2)
    ]
    total = sum(r["dimension"] for r in rows)
    ok = total == chords.double_factorial_odd(n // 2)
    return document("table", points=n, rows=rows, total=total), ok


def dims_doc(genus: int, k: int, verify: bool = False) -> tuple[dict, bool]:
    dim = invariant_dim(genus, k)
    doc = document("dims", genus=genus, k=k, dimension=dim)
    ok = True
    if verify:
        r = sympl.invariant_rank(sympl.SymplecticSpace(genus), 2 * k)
        doc["rank"] = r
        ok = r == dim
    return doc, ok


def _square_holds(args: tuple[int, int, int]) -> bool:
    genus, n, a = args
    space = sympl.SymplecticSpace(genus)
    d = chords.enumerate_diagrams(n)[a]
    return sympl.contract_K(sympl.phi(d, space), space) == chords.apply_M_at({d: 1}, genus)


def tensors_doc(genus: int, n: int, lam: Partition | None = None, jobs: int = 1) -> tuple[dict, bool]:
    """Φ of C₀ (or of the first E_λ basis vector) plus the K∘Φ = M check on all diagrams."""
    space = sympl.SymplecticSpace(genus)
    sympl.check_budget(space, n, sympl.DEFAULT_TERM_BUDGET)
    if lam is not None:
        lam = as_partition(lam)
        if 2 * sum(lam) != n:
            raise ValueError(f"partition {list(lam)} does not match {n} points")
        source = eigenbasis(lam).vectors[0]
    else:
        source = {chords.c0(n): Fraction(1)}
    t = sympl.phi_vector(source, space)
    size = len(chords.enumerate_diagrams(n))
    checks = {"commutative_square": all(pmap(_square_holds, [(genus, n, a) for a in range(size)], jobs))}
    if lam is not None and lam[0] > genus:
        checks["kernel"] = not t
    doc = document(
        "tensors",
        genus=genus,
        points=n,
        partition=None if lam is None else list(lam),
        source=chord_vector(source),
        terms=tensor_terms(t),
        checks=checks,
    )
    return doc, all(checks.values())


def relations_doc(k: int, genus: int, variant: str = "closed", seed: int = 0, limit_work: int | None = None) -> tuple[dict, bool]:
    kw = {} if limit_work is None else {"limit_work": limit_work}
    rels = graphs.relations(k, genus, variant, **kw)
    out = [
        {
            "partition": list(r.lam),
            "index": r.index,
            "vectors": [graph_vector(v) if v else {"vertex_count": 2 * k, "terms": []} for v in r.vectors],
            "zero": r.zero,
        }
        for r in rels
    ]
    return document("relations", k=k, genus=genus, variant=variant, seed=seed, relations=out), True
