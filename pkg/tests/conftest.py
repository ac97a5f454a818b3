import numpy as np
import pytest

from hyperlap import Automorphism, build_hypergraph, build_operators
from hyperlap.generate import graph_from_edges, random_graph, random_incidence
from hyperlap.hypergraph import from_incidence


def small_pair():
    return build_hypergraph(["v1", "v2"], [("h1", {"v1": 1, "v2": 1}), ("h2", {"v1": 1, "v2": 2})])


def triangle_motif():
    return build_hypergraph(
        ["v1", "v2", "v3"],
        [
            ("h1", {"v1": 1, "v2": 1}),
            ("h2", {"v2": 1, "v3": 1}),
            ("h3", {"v1": 1, "v2": 1, "v3": 1}),
        ],
    )


def two_sided():
    return build_hypergraph(
        ["v1", "v2", "v3", "v4", "v5", "v6"],
        [
            ("h1", {"v1": 2, "v2": 3, "v4": -7, "v5": -1}),
            ("h2", {"v2": 1, "v3": 2, "v5": -1, "v6": -4}),
        ],
    )


def edge():
    return build_hypergraph(["a", "b"], [("e", {"a": 1, "b": -1})])


def random_instance(rng, n_max=12, m_max=12):
    """Coefficients uniform in [-3, 3] minus zero, no isolated vertices."""
    n = int(rng.integers(1, n_max + 1))
    m = int(rng.integers(1, m_max + 1))
    inc = random_incidence(rng, n, m, low=0.0, high=3.0)
    return from_incidence(inc)


def split_oracle(H, tau):
    """Eigenvalues of the symmetric Laplacian compressed onto the +-1 eigenspaces of tau."""
    sym = build_operators(H).symmetric_vertex_laplacian
    P = tau.vertex_operator(H)
    w, U = np.linalg.eigh(0.5 * (P + P.T))
    out = {}
    for sgn in (1, -1):
        Q = U[:, np.abs(w - sgn) < 1e-9]
        out[sgn] = np.linalg.eigvalsh(Q.T @ sym @ Q) if Q.shape[1] else np.zeros(0)
    return out[-1], out[1]


def graph_with_twin_vertex(rng, n=6, adjacent=False):
    """Random graph plus x' copying the neighbourhood of v1 (and joined to it if adjacent)."""
    base = random_graph(rng, n, 0.5)
    edges = [tuple(h.members) for h in base.hyperedges]
    if not any("v1" in e for e in edges):
        edges.append(("v1", "v2"))
    extra = [("x", b) if a == "v1" else (a, "x") for a, b in edges if "v1" in (a, b)]
    if adjacent:
        extra.append(("v1", "x"))
    return graph_from_edges(list(base.vertices) + ["x"], edges + extra), edges, extra


def graph_with_duplicated_edge(rng, n=6):
    base = random_graph(rng, n, 0.5)
    edges = [tuple(h.members) for h in base.hyperedges]
    if ("v1", "v2") not in edges:
        edges.append(("v1", "v2"))
    ren = {"v1": "y1", "v2": "y2"}
    copies = [(ren.get(a, a), ren.get(b, b)) for a, b in edges if {a, b} & {"v1", "v2"}]
    H = graph_from_edges(list(base.vertices) + ["y1", "y2"], edges + copies)
    hpairs = [(f"e{edges.index(e) + 1}", f"e{len(edges) + k + 1}")
              for k, e in enumerate(e for e in edges if {e[0], e[1]} & {"v1", "v2"})]
    tau = Automorphism.from_swaps(H, [("v1", "y1"), ("v2", "y2")], hpairs)
    return H, tau


@pytest.fixture
def pair():
    return small_pair()


@pytest.fixture
def tri():
    return triangle_motif()


@pytest.fixture
def sided():
    return two_sided()


@pytest.fixture
def rng():
    return np.random.default_rng(20240917)
