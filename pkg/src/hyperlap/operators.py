"""Boundary/coboundary maps and the two normalized Laplacians."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import sparse

from .errors import DimensionMismatch
from .hypergraph import Hypergraph

# above this many incidence-matrix entries, operator-form application uses CSR
SPARSE_THRESHOLD = 250_000


@dataclass(frozen=True)
class OperatorBundle:
    incidence: np.ndarray
    degree_diag: np.ndarray
    adjacency: np.ndarray
    vertex_laplacian: np.ndarray
    hyperedge_laplacian: np.ndarray

    @property
    def symmetric_vertex_laplacian(self) -> np.ndarray:
        """Id - D^{-1/2} A D^{-1/2}, similar to the vertex Laplacian."""
        s = 1.0 / np.sqrt(self.degree_diag)
        sym = np.eye(len(s)) - s[:, None] * self.adjacency * s[None, :]
        return 0.5 * (sym + sym.T)


def adjacency_matrix(H: Hypergraph) -> np.ndarray:
    inc = H.incidence
    adj = -(inc @ inc.T)
    np.fill_diagonal(adj, 0.0)
    return adj


def build_operators(H: Hypergraph) -> OperatorBundle:
    inc = np.array(H.incidence)
    deg = np.array(H.degrees)
    adj = adjacency_matrix(H)
    lap = np.eye(H.N) - adj / deg[:, None]
    lap_h = inc.T @ (inc / deg[:, None])
    lap_h = 0.5 * (lap_h + lap_h.T)
    return OperatorBundle(inc, deg, adj, lap, lap_h)


def incidence_operator(H: Hypergraph, threshold: int = SPARSE_THRESHOLD):
    """Incidence matrix, as CSR once it has more than ``threshold`` entries."""
    if H.N * H.M > threshold:
        return sparse.csr_matrix(H.incidence)
    return H.incidence


def _vertex_vector(H, f):
    f = np.asarray(f, dtype=float)
    if f.shape != (H.N,):
        raise DimensionMismatch(f"vertex function has shape {f.shape}, expected ({H.N},)")
    return f


def _edge_vector(H, gamma):
    gamma = np.asarray(gamma, dtype=float)
    if gamma.shape != (H.M,):
        raise DimensionMismatch(f"hyperedge function has shape {gamma.shape}, expected ({H.M},)")
    return gamma


def boundary(H: Hypergraph, f) -> np.ndarray:
    """(delta f)(h) = sum_v C[v,h] f(v)."""
    f = _vertex_vector(H, f)
    return np.asarray(incidence_operator(H).T @ f).ravel()


def coboundary(H: Hypergraph, gamma) -> np.ndarray:
    """(delta* gamma)(v) = sum_h C[v,h] gamma(h) / deg v; adjoint of :func:`boundary`."""
    gamma = _edge_vector(H, gamma)
    return np.asarray(incidence_operator(H) @ gamma).ravel() / H.degrees


def scalar_product_V(H: Hypergraph, f1, f2) -> float:
    f1 = _vertex_vector(H, f1)
    f2 = _vertex_vector(H, f2)
    return float(np.sum(H.degrees * f1 * f2))


def scalar_product_H(gamma1, gamma2) -> float:
    g1 = np.asarray(gamma1, dtype=float)
    g2 = np.asarray(gamma2, dtype=float)
    if g1.shape != g2.shape or g1.ndim != 1:
        raise DimensionMismatch(f"hyperedge functions of shapes {g1.shape} and {g2.shape}")
    return float(g1 @ g2)


def apply_L(H: Hypergraph, f) -> np.ndarray:
    return coboundary(H, boundary(H, f))


def apply_LH(H: Hypergraph, gamma) -> np.ndarray:
    return boundary(H, coboundary(H, gamma))
