"""Random instances, optionally with planted structure, for tests and the CLI."""

from __future__ import annotations

import numpy as np

from .hypergraph import Hypergraph, build_hypergraph
from .symmetry import Automorphism

PLANTED = ("none", "twins", "duplicates", "involution", "bipartition")


def _rng(seed):
    return seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)


def _coefficient(rng, low, high):
    """Uniform on [-high, -low] U [low, high]; low=0 gives [-high, high] without 0."""
    while True:
        mag = rng.uniform(low, high)
        if mag != 0.0:
            return float(mag if rng.random() < 0.5 else -mag)


def _names(prefix, count, start=1):
    return [f"{prefix}{k}" for k in range(start, start + count)]


def random_incidence(rng, n, m, min_card=1, max_card=None, low=0.0, high=3.0, connected=False):
    """Dense N x M coefficient matrix with no empty rows or columns."""
    rng = _rng(rng)
    max_card = n if max_card is None else min(max_card, n)
    min_card = min(min_card, max_card)
    inc = np.zeros((n, m))
    for j in range(m):
        size = int(rng.integers(min_card, max_card + 1))
        for i in rng.choice(n, size=size, replace=False):
            inc[i, j] = _coefficient(rng, low, high)
    for i in range(n):
        if not inc[i].any():
            inc[i, int(rng.integers(m))] = _coefficient(rng, low, high)
    if connected:
        inc = _connect(rng, inc, low, high)
    return inc


def _connect(rng, inc, low, high):
    # join components by adding one vertex of each later component to a hyperedge of the first
    H = _to_hypergraph(inc)
    comps = H.components()
    while len(comps) > 1:
        base = [H.vertex_index(v) for v in comps[0]]
        j = int(np.flatnonzero(inc[base].any(axis=0))[0])
        i = H.vertex_index(comps[1][0])
        inc[i, j] = _coefficient(rng, low, high)
        H = _to_hypergraph(inc)
        comps = H.components()
    return inc


def _to_hypergraph(inc, vertices=None, hyperedges=None):
    n, m = inc.shape
    vertices = vertices or _names("v", n)
    hyperedges = hyperedges or _names("h", m)
    records = [
        (hyperedges[j], {vertices[i]: float(inc[i, j]) for i in range(n) if inc[i, j] != 0})
        for j in range(m)
    ]
    return build_hypergraph(vertices, records)


def random_hypergraph(
    seed=None, n=6, m=5, min_card=1, max_card=None, low=0.0, high=3.0, connected=False
) -> Hypergraph:
    rng = _rng(seed)
    return _to_hypergraph(random_incidence(rng, n, m, min_card, max_card, low, high, connected))


def plant_twin(seed, H: Hypergraph, vertex: str | None = None, anti=False) -> Hypergraph:
    """Add a new vertex with the same (anti: negated) coefficient row as ``vertex``."""
    rng = _rng(seed)
    vertex = vertex or H.vertices[int(rng.integers(H.N))]
    name = _fresh(H.vertices, "t")
    sgn = -1.0 if anti else 1.0
    records = []
    for h in H.hyperedges:
        coef = dict(h.coefficients)
        if vertex in coef:
            coef[name] = sgn * coef[vertex]
        records.append((h.id, coef))
    return build_hypergraph(list(H.vertices) + [name], records)


def plant_duplicate(seed, H: Hypergraph, vertex: str | None = None) -> Hypergraph:
    """Add a vertex copying ``vertex``'s hyperedges as new hyperedges (same adjacency row)."""
    rng = _rng(seed)
    vertex = vertex or H.vertices[int(rng.integers(H.N))]
    name = _fresh(H.vertices, "d")
    records = [(h.id, dict(h.coefficients)) for h in H.hyperedges]
    ids = set(H.hyperedge_ids)
    for h in H.hyperedges:
        if vertex in h.coef:
            coef = {(name if v == vertex else v): c for v, c in h.coefficients}
            hid = _fresh(ids, h.id + "_d")
            ids.add(hid)
            records.append((hid, coef))
    return build_hypergraph(list(H.vertices) + [name], records)


def _fresh(existing, prefix):
    existing = set(existing)
    if prefix not in existing:
        return prefix
    k = 1
    while f"{prefix}{k}" in existing:
        k += 1
    return f"{prefix}{k}"


def planted_involution(
    seed=None, n_fixed=3, n_swapped=2, m_fixed=2, m_motif=3, low=0.0, high=3.0, signs=True
) -> tuple[Hypergraph, Automorphism]:
    """Hypergraph with an involution swapping two disconnected copies of a motif.

    Vertices are ``u*`` (fixed), ``a*`` (V') and ``b*`` (V'').  Every motif
    hyperedge meets V' and is mirrored onto V'' with the vertex sign map.
    """
    rng = _rng(seed)
    fixed = _names("u", n_fixed)
    left = _names("a", n_swapped)
    right = _names("b", n_swapped)
    sign = {v: (int(rng.choice([-1, 1])) if signs else 1) for v in left}
    records = []
    for j in range(m_fixed if n_fixed else 0):
        size = int(rng.integers(1, n_fixed + 1))
        members = rng.choice(n_fixed, size=size, replace=False)
        records.append((f"f{j + 1}", {fixed[i]: _coefficient(rng, low, high) for i in sorted(members)}))
    motif_pairs = []
    for j in range(m_motif):
        k = int(rng.integers(1, n_swapped + 1))
        lv = [left[i] for i in sorted(rng.choice(n_swapped, size=k, replace=False))]
        fv = []
        if n_fixed:
            kf = int(rng.integers(0, n_fixed + 1))
            fv = [fixed[i] for i in sorted(rng.choice(n_fixed, size=kf, replace=False))]
        coef = {v: _coefficient(rng, low, high) for v in fv + lv}
        mirror = {}
        for v, c in coef.items():
            if v in sign:
                mirror[right[left.index(v)]] = sign[v] * c
            else:
                mirror[v] = c
        records.append((f"p{j + 1}", coef))
        records.append((f"q{j + 1}", mirror))
        motif_pairs.append((f"p{j + 1}", f"q{j + 1}"))

    vertices = fixed + left + right
    covered = {v for _, c in records for v in c}
    # cover stragglers: fixed vertices get a fixed singleton, motif vertices a mirrored pair
    for v in fixed:
        if v not in covered:
            records.append((f"s_{v}", {v: _coefficient(rng, low, high)}))
    for idx, v in enumerate(left):
        if v not in covered:
            c = _coefficient(rng, low, high)
            records.append((f"p_{v}", {v: c}))
            records.append((f"q_{v}", {right[idx]: sign[v] * c}))
            motif_pairs.append((f"p_{v}", f"q_{v}"))
    H = build_hypergraph(vertices, records)
    signs_map = {v: 1 for v in vertices}
    for idx, v in enumerate(left):
        signs_map[v] = sign[v]
        signs_map[right[idx]] = sign[v]
    sv = {v: v for v in vertices}
    for a, b in zip(left, right):
        sv[a], sv[b] = b, a
    sh = {h: h for h in H.hyperedge_ids}
    for a, b in motif_pairs:
        sh[a], sh[b] = b, a
    return H, Automorphism(sv, sh, signs_map)


def planted_bipartite(seed=None, n=6, m=4, card=None, unit=False, low=0.5, high=3.0) -> Hypergraph:
    """Connected bipartite hypergraph; with ``card`` every hyperedge has that size.

    Signs follow a random bipartition times a random per-hyperedge orientation.
    ``unit`` makes every |C| equal to 1.
    """
    rng = _rng(seed)
    vertices = _names("v", n)
    for _ in range(1000):
        side = rng.choice([-1, 1], size=n)
        records = []
        for j in range(m):
            size = card if card is not None else int(rng.integers(1, n + 1))
            members = sorted(rng.choice(n, size=size, replace=False))
            orient = rng.choice([-1, 1])
            coef = {}
            for i in members:
                mag = 1.0 if unit else rng.uniform(low, high)
                coef[vertices[i]] = float(orient * side[i] * mag)
            records.append((f"h{j + 1}", coef))
        covered = {v for _, c in records for v in c}
        if len(covered) < n:
            continue
        H = build_hypergraph(vertices, records)
        if H.is_connected():
            return H
    raise RuntimeError("could not draw a connected bipartite instance; raise m")


def random_graph(seed=None, n=6, p=0.5, connected=True) -> Hypergraph:
    """Simple graph: each edge carries +1 at one end and -1 at the other."""
    rng = _rng(seed)
    vertices = _names("v", n)
    for _ in range(1000):
        edges = [(i, k) for i in range(n) for k in range(i + 1, n) if rng.random() < p]
        H = graph_from_edges(vertices, [(vertices[i], vertices[k]) for i, k in edges], check=False)
        if H is not None and (not connected or H.is_connected()):
            return H
    raise RuntimeError("could not draw a connected graph; raise p")


def graph_from_edges(vertices, edges, check=True) -> Hypergraph | None:
    records = [(f"e{k + 1}", {a: 1.0, b: -1.0}) for k, (a, b) in enumerate(edges)]
    covered = {v for a, b in edges for v in (a, b)}
    if not check and len(covered) < len(vertices):
        return None
    return build_hypergraph(vertices, records)


def generate(seed=None, n=6, m=5, min_card=1, max_card=None, low=0.0, high=3.0, planted="none"):
    """Entry point used by the CLI; returns (hypergraph, automorphism or None)."""
    rng = _rng(seed)
    if planted == "none":
        return random_hypergraph(rng, n, m, min_card, max_card, low, high), None
    if planted == "twins":
        base = random_hypergraph(rng, max(n - 1, 1), m, min_card, max_card, low, high)
        return plant_twin(rng, base), None
    if planted == "duplicates":
        base = random_hypergraph(rng, max(n - 1, 1), m, min_card, max_card, low, high)
        return plant_duplicate(rng, base), None
    if planted == "involution":
        swapped = max(1, n // 3)
        return planted_involution(rng, max(0, n - 2 * swapped), swapped, max(1, m // 3), max(1, m // 3), low, high)
    if planted == "bipartition":
        return planted_bipartite(rng, n, m, low=max(low, 0.1), high=high), None
    raise ValueError(f"unknown planted structure {planted!r}; choose from {', '.join(PLANTED)}")
