"""JSON, CSV and text encodings of computed results, with parsers for round-trips.

Rationals are ``"num/den"`` strings (plain ``"n"`` for integers), genus
polynomials are coefficient arrays with the constant term first, diagrams are
sorted pair lists and graphs are sorted edge lists with loops as ``[v, v]``.
"""

from __future__ import annotations

import csv
import io
import json
from fractions import Fraction
from typing import Any, Mapping, Sequence

from .graphs import TrivalentGraph
from .polyg import PolyG, RatG, _frac_str

SCHEMA_VERSION = 1
FORMATS = ("json", "csv", "text")


class UnsupportedFormat(ValueError):
    pass


# scalars -------------------------------------------------------------------


def rational(x) -> str:
    return _frac_str(Fraction(x))


def parse_rational(s: str) -> Fraction:
    return Fraction(s)


def poly(p) -> list[str]:
    return PolyG._coerce(p).to_strings()


def parse_poly(items: Sequence[str]) -> PolyG:
    return PolyG.from_strings(items)


def _coeff_pair(c) -> tuple[list[str], list[str]]:
    if isinstance(c, RatG):
        return c.num.to_strings(), c.den.to_strings()
    if isinstance(c, PolyG):
        return c.to_strings(), ["1"]
    fr = Fraction(c)
    return [rational(fr.numerator)], [rational(fr.denominator)]


# diagrams and vectors ------------------------------------------------------


def diagram(d) -> list[list[int]]:
    return [[i, j] for i, j in sorted(d)]


def parse_diagram(items) -> tuple[tuple[int, int], ...]:
    return tuple(sorted((min(i, j), max(i, j)) for i, j in items))


def chord_vector(v: Mapping) -> list[dict]:
    """Sparse vector as sorted terms; PolyG coefficients become arrays."""
    out = []
    for d in sorted(v):
        c = v[d]
        coeff = poly(c) if isinstance(c, PolyG) else rational(c)
        out.append({"diagram": diagram(d), "coeff": coeff})
    return out


def parse_chord_vector(terms: Sequence[Mapping]) -> dict:
    out = {}
    for t in terms:
        c = t["coeff"]
        out[parse_diagram(t["diagram"])] = parse_poly(c) if isinstance(c, list) else parse_rational(c)
    return out


def graph_vector(v: Mapping[TrivalentGraph, Any]) -> dict:
    counts = {g.vertex_count for g in v}
    if len(counts) > 1:
        raise ValueError("graph vector mixes vertex counts")
    terms = []
    for g in sorted(v):
        num, den = _coeff_pair(v[g])
        terms.append({"edges": [[a, b] for a, b in g.edges], "coeff_num": num, "coeff_den": den})
    return {"vertex_count": counts.pop() if counts else 0, "terms": terms}


def parse_graph_vector(doc: Mapping, symbolic: bool = False) -> dict:
    """Inverse of :func:`graph_vector`; constant coefficients come back as Fractions unless ``symbolic``."""
    out = {}
    n = doc["vertex_count"]
    for t in doc["terms"]:
        g = TrivalentGraph(n, tuple((a, b) for a, b in t["edges"]))
        num, den = parse_poly(t["coeff_num"]), parse_poly(t["coeff_den"])
        if symbolic or num.degree > 0 or den.degree > 0:
            out[g] = RatG(num, den)
        else:
            out[g] = num(0) / den(0)
    return out


def tensor_terms(t) -> list[list]:
    return [[list(w), rational(c)] for w, c in sorted(t.terms.items())]


# documents -----------------------------------------------------------------


def document(kind: str, **fields) -> dict:
    return {"schema_version": SCHEMA_VERSION, "kind": kind, **fields}


def matrix_document(points: int, entries: Sequence[Sequence], genus: int | None = None) -> dict:
    doc = document("matrix", points=points, entries=[[poly(x) for x in row] for row in entries])
    if genus is not None:
        doc["genus"] = genus
    return doc


def parse_matrix(doc: Mapping) -> list[list[PolyG]]:
    _check_version(doc)
    return [[parse_poly(x) for x in row] for row in doc["entries"]]


def _check_version(doc: Mapping) -> None:
    v = doc.get("schema_version")
    if v != SCHEMA_VERSION:
        raise ValueError(f"schema_version {v!r} is not {SCHEMA_VERSION}")


def to_json(doc: Mapping) -> bytes:
    return (json.dumps(doc, indent=2, ensure_ascii=False) + "\n").encode()


def from_json(data: bytes | str) -> dict:
    doc = json.loads(data)
    _check_version(doc)
    return doc


# csv and text --------------------------------------------------------------


def _csv(rows: Sequence[Sequence]) -> bytes:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerows(rows)
    return buf.getvalue().encode()


def _csv_rows(doc: Mapping) -> list[list]:
    kind = doc["kind"]
    if kind == "matrix":
        return [[str(parse_poly(x)) for x in row] for row in doc["entries"]]
    if kind == "table":
        rows = [["partition", "eigenvalue", "dimension", "min_genus"]]
        for r in doc["rows"]:
            rows.append([_part(r["partition"]), str(parse_poly(r["eigenvalue"])), r["dimension"], r["min_genus"]])
        rows.append(["total", "", doc["total"], ""])
        return rows
    if kind == "partitions":
        rows = [["partition", "conjugate", "dimension", "eigenvalue"]]
        for r in doc["partitions"]:
            rows.append([_part(r["partition"]), _part(r["conjugate"]), r["dimension"], str(parse_poly(r["eigenvalue"]))])
        return rows
    if kind == "diagrams":
        rows = [["index", "diagram", "sign", "relative_type"]]
        for r in doc["diagrams"]:
            rows.append([r["index"], " ".join(f"{i}-{j}" for i, j in r["diagram"]), r["sign"], _part(r["relative_type"])])
        return rows
    if kind == "dims":
        return [["genus", "k", "dimension"], [doc["genus"], doc["k"], doc["dimension"]]]
    raise UnsupportedFormat(f"csv is not available for {kind!r} results")


def _part(p) -> str:
    return ",".join(map(str, p)) if p else "()"


def _text(doc: Mapping) -> str:
    kind = doc["kind"]
    lines = []
    if kind == "table":
        lines.append(f"orthogonal decomposition, {doc['points']} points")
        for r in doc["rows"]:
            lines.append(
                f"  [{_part(r['partition'])}]  mu = {parse_poly(r['eigenvalue'])}  "
                f"dim = {r['dimension']}  g >= {r['min_genus']}"
            )
        lines.append(f"  total {doc['total']}")
    elif kind == "matrix":
        lines.append(f"intersection matrix, {doc['points']} points" + (f", g = {doc['genus']}" if "genus" in doc else ""))
        for row in doc["entries"]:
            lines.append("  " + " | ".join(str(parse_poly(x)) for x in row))
    elif kind == "partitions":
        lines.append(f"partitions of {doc['k']}")
        for r in doc["partitions"]:
            lines.append(f"  [{_part(r['partition'])}]  dim E = {r['dimension']}  mu = {parse_poly(r['eigenvalue'])}")
    elif kind == "diagrams":
        lines.append(f"{doc['count']} diagrams on {doc['points']} points")
        for r in doc["diagrams"]:
            lines.append(f"  {r['index']}: " + " ".join(f"{i}-{j}" for i, j in r["diagram"]) + f"  sign {r['sign']:+d}")
    elif kind == "dims":
        lines.append(f"dim of invariants, g = {doc['genus']}, 2k = {2 * doc['k']}: {doc['dimension']}")
        if "rank" in doc:
            lines.append(f"  Gram rank {doc['rank']}")
    elif kind == "eigen":
        lines.append(f"E_[{_part(doc['partition'])}]: mu = {parse_poly(doc['eigenvalue'])}, dim {doc['dimension']}")
        lines.append(f"  basis: {'relabelled symmetrizer images' if doc['fallback'] else 'c_tau(C0)'}")
        lines.append(f"  eigen identity: {'ok' if doc['verified'] else 'FAILED'}")
    elif kind == "relations":
        lines.append(f"relations k = {doc['k']}, g = {doc['genus']}, {doc['variant']} variant, seed {doc['seed']}")
        for r in doc["relations"]:
            sizes = ", ".join(str(len(v["terms"])) for v in r["vectors"])
            lines.append(f"  [{_part(r['partition'])}] #{r['index']}: terms {sizes}  zero {r['zero']}")
    elif kind == "tensors":
        lines.append(f"Phi of {doc['points']}-point input at g = {doc['genus']}: {len(doc['terms'])} terms")
        for name, ok in doc["checks"].items():
            lines.append(f"  {name}: {'ok' if ok else 'FAILED'}")
    elif kind == "selftest":
        for r in doc["results"]:
            lines.append(f"{'PASS' if r['passed'] else 'FAIL'}  {r['name']}" + (f"  ({r['detail']})" if r["detail"] else ""))
        lines.append(f"{doc['passed']}/{len(doc['results'])} passed")
    else:
        raise UnsupportedFormat(f"no text rendering for {kind!r}")
    return "\n".join(lines) + "\n"


def serialize(doc: Mapping, fmt: str = "json") -> bytes:
    if fmt == "json":
        return to_json(doc)
    if fmt == "csv":
        return _csv(_csv_rows(doc))
    if fmt == "text":
        return _text(doc).encode()
    raise UnsupportedFormat(f"unknown format {fmt!r}")
