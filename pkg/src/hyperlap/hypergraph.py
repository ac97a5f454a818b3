"""Hypergraphs whose vertex-hyperedge incidences carry real coefficients."""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import (
    DeleteAll,
    DuplicateIdentifier,
    EmptyHyperedge,
    IsolatedVertex,
    NonFiniteCoefficient,
    UnknownHyperedge,
    UnknownVertex,
    WouldIsolate,
    ZeroCoefficient,
)


@dataclass(frozen=True)
class Hyperedge:
    """A named hyperedge; ``coefficients`` holds ``(vertex, C)`` pairs in input order."""

    id: str
    coefficients: tuple[tuple[str, float], ...]

    @property
    def coef(self) -> dict[str, float]:
        return dict(self.coefficients)

    @property
    def members(self) -> tuple[str, ...]:
        return tuple(v for v, _ in self.coefficients)

    def __len__(self):
        return len(self.coefficients)


@dataclass(frozen=True)
class Hypergraph:
    """Immutable hypergraph with real coefficients.

    Build instances through :func:`build_hypergraph`; the constructor itself
    does not validate.  Vertex and hyperedge order is the input order and is
    never re-sorted.
    """

    vertices: tuple[str, ...]
    hyperedges: tuple[Hyperedge, ...]

    @property
    def N(self) -> int:
        return len(self.vertices)

    @property
    def M(self) -> int:
        return len(self.hyperedges)

    @cached_property
    def _vertex_pos(self) -> dict[str, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def _edge_pos(self) -> dict[str, int]:
        return {h.id: j for j, h in enumerate(self.hyperedges)}

    @property
    def hyperedge_ids(self) -> tuple[str, ...]:
        return tuple(h.id for h in self.hyperedges)

    def vertex_index(self, v: str) -> int:
        try:
            return self._vertex_pos[v]
        except KeyError:
            raise UnknownVertex(f"unknown vertex {v!r}") from None

    def hyperedge_index(self, h: str) -> int:
        try:
            return self._edge_pos[h]
        except KeyError:
            raise UnknownHyperedge(f"unknown hyperedge {h!r}") from None

    def hyperedge(self, h: str) -> Hyperedge:
        return self.hyperedges[self.hyperedge_index(h)]

    @cached_property
    def incidence(self) -> np.ndarray:
        """Dense N x M coefficient matrix (read-only)."""
        mat = np.zeros((self.N, self.M))
        for j, h in enumerate(self.hyperedges):
            for v, c in h.coefficients:
                mat[self._vertex_pos[v], j] = c
        mat.setflags(write=False)
        return mat

    @cached_property
    def degrees(self) -> np.ndarray:
        deg = np.zeros(self.N)
        for h in self.hyperedges:
            for v, c in h.coefficients:
                deg[self._vertex_pos[v]] += c * c
        deg.setflags(write=False)
        return deg

    def degree(self, v: str) -> float:
        """Sum of squared coefficients of ``v`` over all hyperedges."""
        return float(self.degrees[self.vertex_index(v)])

    def cardinality(self, h: str) -> int:
        return len(self.hyperedge(h))

    @property
    def cardinalities(self) -> np.ndarray:
        return np.array([len(h) for h in self.hyperedges], dtype=int)

    @property
    def max_cardinality(self) -> int:
        return max(len(h) for h in self.hyperedges)

    def components(self) -> list[tuple[str, ...]]:
        """Connected vertex components, each in stored order, ordered by first vertex."""
        incident: dict[str, list[int]] = {v: [] for v in self.vertices}
        for j, h in enumerate(self.hyperedges):
            for v in h.members:
                incident[v].append(j)
        seen_v: set[str] = set()
        seen_h: set[int] = set()
        comps = []
        for start in self.vertices:
            if start in seen_v:
                continue
            comp = {start}
            seen_v.add(start)
            queue = deque([start])
            while queue:
                v = queue.popleft()
                for j in incident[v]:
                    if j in seen_h:
                        continue
                    seen_h.add(j)
                    for w in self.hyperedges[j].members:
                        if w not in seen_v:
                            seen_v.add(w)
                            comp.add(w)
                            queue.append(w)
            comps.append(tuple(v for v in self.vertices if v in comp))
        return comps

    def is_connected(self) -> bool:
        return len(self.components()) == 1

    def restrict(self, keep: Iterable[str]) -> "Hypergraph":
        """Sub-hypergraph on a union of components (hyperedges kept whole)."""
        keep = set(keep)
        edges = [h for h in self.hyperedges if set(h.members) <= keep]
        return Hypergraph(tuple(v for v in self.vertices if v in keep), tuple(edges))

    def flip_orientation(self, h: str) -> "Hypergraph":
        """Negate every coefficient of hyperedge ``h``."""
        j = self.hyperedge_index(h)
        edges = list(self.hyperedges)
        old = edges[j]
        edges[j] = Hyperedge(old.id, tuple((v, -c) for v, c in old.coefficients))
        return Hypergraph(self.vertices, tuple(edges))

    def weak_delete_vertices(self, removed: Iterable[str]) -> "Hypergraph":
        """Remove ``removed`` from V and from every hyperedge.

        Hyperedges left empty are dropped.  Surviving coefficients (and hence
        surviving degrees) are untouched.
        """
        removed = set(removed)
        for v in removed:
            self.vertex_index(v)
        if removed and len(removed) >= self.N:
            raise DeleteAll("cannot weak-delete every vertex")
        edges = []
        for h in self.hyperedges:
            rest = tuple((v, c) for v, c in h.coefficients if v not in removed)
            if rest:
                edges.append(Hyperedge(h.id, rest))
        covered = {v for h in edges for v in h.members}
        vertices = tuple(v for v in self.vertices if v not in removed)
        lonely = [v for v in vertices if v not in covered]
        if lonely:
            raise WouldIsolate(f"deletion would isolate {', '.join(lonely)}")
        return Hypergraph(vertices, tuple(edges))


def build_hypergraph(
    vertices: Sequence[str],
    hyperedges: Iterable[Hyperedge | tuple[str, Mapping[str, float]]],
) -> Hypergraph:
    """Validate and assemble a :class:`Hypergraph`.

    ``hyperedges`` may hold :class:`Hyperedge` records or ``(id, {vertex: C})``
    pairs.  Malformed input raises a subclass of :class:`InvalidHypergraph`,
    or :class:`UnknownVertex` for a coefficient on an undeclared vertex.
    """
    vertices = tuple(str(v) for v in vertices)
    if len(set(vertices)) != len(vertices):
        dup = _first_duplicate(vertices)
        raise DuplicateIdentifier(f"duplicate vertex identifier {dup!r}")
    known = set(vertices)

    records = []
    for item in hyperedges:
        if isinstance(item, Hyperedge):
            hid, pairs = item.id, item.coefficients
        else:
            hid, mapping = item
            pairs = tuple(mapping.items())
        hid = str(hid)
        if not pairs:
            raise EmptyHyperedge(f"hyperedge {hid!r} has no vertices")
        members = [str(v) for v, _ in pairs]
        if len(set(members)) != len(members):
            raise DuplicateIdentifier(
                f"vertex {_first_duplicate(members)!r} listed twice in hyperedge {hid!r}"
            )
        clean = []
        for v, c in pairs:
            v = str(v)
            if v not in known:
                raise UnknownVertex(f"hyperedge {hid!r} references unknown vertex {v!r}")
            c = float(c)
            if not math.isfinite(c):
                raise NonFiniteCoefficient(f"coefficient of {v!r} in {hid!r} is {c}")
            if c == 0.0:
                raise ZeroCoefficient(f"coefficient of {v!r} in {hid!r} is zero")
            clean.append((v, c))
        records.append(Hyperedge(hid, tuple(clean)))

    ids = [h.id for h in records]
    if len(set(ids)) != len(ids):
        raise DuplicateIdentifier(f"duplicate hyperedge identifier {_first_duplicate(ids)!r}")

    covered = {v for h in records for v in h.members}
    for v in vertices:
        if v not in covered:
            raise IsolatedVertex(f"vertex {v!r} is in no hyperedge")
    return Hypergraph(vertices, tuple(records))


def from_incidence(matrix, vertices=None, hyperedges=None) -> Hypergraph:
    """Build from a dense N x M coefficient matrix (zeros mean non-incidence)."""
    mat = np.asarray(matrix, dtype=float)
    n, m = mat.shape
    vertices = list(vertices) if vertices is not None else [f"v{i + 1}" for i in range(n)]
    hyperedges = list(hyperedges) if hyperedges is not None else [f"h{j + 1}" for j in range(m)]
    records = []
    for j, hid in enumerate(hyperedges):
        records.append((hid, {vertices[i]: mat[i, j] for i in range(n) if mat[i, j] != 0}))
    return build_hypergraph(vertices, records)


def _first_duplicate(items):
    seen = set()
    for x in items:
        if x in seen:
            return x
        seen.add(x)
    return None
