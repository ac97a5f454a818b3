"""JSON hypergraph documents.

Layout::

    {
      "format_version": 1,
      "vertices": ["v1", "v2"],
      "hyperedges": [
        {"id": "h1", "coefficients": {"v1": 1, "v2": 1}},
        {"id": "h2", "coefficients": {"v1": 1, "v2": 2}}
      ]
    }

Vertex and hyperedge order is the file order.  Coefficient maps list only
incident vertices; a zero entry is a schema error.
"""

from __future__ import annotations

import json
import math

from .errors import DocumentSyntaxError, InvalidHypergraph, SchemaError, UnknownVertex
from .hypergraph import Hypergraph, build_hypergraph

FORMAT_VERSION = 1


def parse(data: bytes | str) -> Hypergraph:
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise DocumentSyntaxError(f"not UTF-8: {exc}", f"byte {exc.start}") from None
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as exc:
        raise DocumentSyntaxError(exc.msg, f"line {exc.lineno}, column {exc.colno}") from None
    return from_document(doc)


def from_document(doc) -> Hypergraph:
    if not isinstance(doc, dict):
        raise SchemaError("top level must be an object", "$")
    version = doc.get("format_version", FORMAT_VERSION)
    if version != FORMAT_VERSION:
        raise SchemaError(f"unsupported format_version {version!r}", "format_version")
    unknown = set(doc) - {"format_version", "vertices", "hyperedges"}
    if unknown:
        raise SchemaError(f"unexpected keys {sorted(unknown)}", "$")

    vertices = doc.get("vertices")
    if not isinstance(vertices, list) or not vertices:
        raise SchemaError("must be a non-empty list of strings", "vertices")
    for i, v in enumerate(vertices):
        if not isinstance(v, str):
            raise SchemaError("vertex identifiers must be strings", f"vertices[{i}]")

    edges = doc.get("hyperedges")
    if not isinstance(edges, list) or not edges:
        raise SchemaError("must be a non-empty list", "hyperedges")
    records = []
    for j, rec in enumerate(edges):
        where = f"hyperedges[{j}]"
        if not isinstance(rec, dict):
            raise SchemaError("must be an object", where)
        hid = rec.get("id")
        if not isinstance(hid, str):
            raise SchemaError("id must be a string", f"{where}.id")
        coefs = rec.get("coefficients")
        if not isinstance(coefs, dict) or not coefs:
            raise SchemaError("coefficients must be a non-empty object", f"{where}.coefficients")
        for v, c in coefs.items():
            loc = f"{where}.coefficients.{v}"
            if isinstance(c, bool) or not isinstance(c, (int, float)):
                raise SchemaError("coefficient must be a number", loc)
            if not math.isfinite(c):
                raise SchemaError("coefficient must be finite", loc)
            if c == 0:
                raise SchemaError("coefficient must be nonzero (list incident vertices only)", loc)
        records.append((hid, coefs))

    _locate_structural_errors(vertices, records)
    try:
        return build_hypergraph(vertices, records)
    except (InvalidHypergraph, UnknownVertex) as exc:
        raise SchemaError(str(exc), "$") from None


def _locate_structural_errors(vertices, records):
    seen: dict[str, int] = {}
    for i, v in enumerate(vertices):
        if v in seen:
            raise SchemaError(f"duplicate vertex identifier {v!r}", f"vertices[{i}]")
        seen[v] = i
    ids: set[str] = set()
    covered: set[str] = set()
    for j, (hid, coefs) in enumerate(records):
        if hid in ids:
            raise SchemaError(f"duplicate hyperedge identifier {hid!r}", f"hyperedges[{j}].id")
        ids.add(hid)
        for v in coefs:
            if v not in seen:
                raise SchemaError(f"unknown vertex {v!r}", f"hyperedges[{j}].coefficients.{v}")
            covered.add(v)
    for v, i in seen.items():
        if v not in covered:
            raise SchemaError(f"vertex {v!r} is in no hyperedge", f"vertices[{i}]")


def to_document(H: Hypergraph) -> dict:
    return {
        "format_version": FORMAT_VERSION,
        "vertices": list(H.vertices),
        "hyperedges": [
            {"id": h.id, "coefficients": {v: _plain(c) for v, c in h.coefficients}}
            for h in H.hyperedges
        ],
    }


def serialize(H: Hypergraph) -> str:
    return json.dumps(to_document(H), indent=2) + "\n"


def _plain(c: float):
    return int(c) if float(c).is_integer() and abs(c) < 2**53 else float(c)
