"""Kernels of the incidence matrix: harmonic vertex functions and balanced fluxes."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .errors import TooLarge
from .hypergraph import Hypergraph
from .operators import _edge_vector
from .spectral import _fix_signs, rank_threshold

BALANCE_TOL = 1e-10
SUPPORT_TOL = 1e-9
MAX_ENUMERATION = 20


@dataclass(frozen=True)
class FluxDistribution:
    gamma: np.ndarray
    support: tuple[str, ...]


def _null_space(mat: np.ndarray) -> np.ndarray:
    """Orthonormal basis (columns) of the right null space."""
    if mat.shape[1] == 0:
        return np.zeros((0, 0))
    if mat.shape[0] == 0:
        return np.eye(mat.shape[1])
    u, sv, vt = np.linalg.svd(mat, full_matrices=True)
    rank = int(np.sum(sv > rank_threshold(mat, sv)))
    return _fix_signs(vt[rank:].T)


def _support(H: Hypergraph, gamma, tol=SUPPORT_TOL):
    return tuple(h for h, x in zip(H.hyperedge_ids, gamma) if abs(x) > tol)


def kernel_basis_hyperedges(H: Hypergraph) -> list[FluxDistribution]:
    basis = _null_space(H.incidence)
    return [FluxDistribution(col, _support(H, col)) for col in basis.T]


def kernel_basis_vertices(H: Hypergraph) -> list[np.ndarray]:
    """Orthonormal basis of ker I^T: the vertex functions with L f = 0."""
    basis = _null_space(H.incidence.T)
    return list(basis.T)


def check_balancing(H: Hypergraph, gamma) -> float:
    """Largest entry of |I gamma|."""
    gamma = _edge_vector(H, gamma)
    return float(np.abs(H.incidence @ gamma).max(initial=0.0))


def is_balanced(H: Hypergraph, gamma) -> bool:
    gamma = _edge_vector(H, gamma)
    return check_balancing(H, gamma) <= BALANCE_TOL * max(1.0, float(np.abs(gamma).max(initial=0.0)))


def elementary_modes(
    H: Hypergraph, max_support: int | None = None, max_hyperedges: int = MAX_ENUMERATION
) -> list[FluxDistribution]:
    """Support-minimal balanced flux vectors, one per sign pair.

    Hyperedge subsets are scanned by increasing size; a subset is a mode
    support when the restricted incidence matrix has a one-dimensional
    kernel spanned by a nowhere-zero vector and no smaller support sits
    inside it.  Each mode is scaled so its largest entry is +1.
    """
    if H.M > max_hyperedges:
        raise TooLarge(
            f"{H.M} hyperedges exceeds the enumeration guard of {max_hyperedges}; "
            "pass a larger max_hyperedges to force it"
        )
    limit = H.M if max_support is None else min(max_support, H.M)
    inc = H.incidence
    found: list[frozenset[int]] = []
    modes = []
    for size in range(1, limit + 1):
        for subset in combinations(range(H.M), size):
            s = frozenset(subset)
            if any(prev <= s for prev in found):
                continue
            ns = _null_space(inc[:, list(subset)])
            if ns.shape[1] != 1:
                continue
            vec = ns[:, 0]
            if np.min(np.abs(vec)) <= SUPPORT_TOL * np.abs(vec).max():
                continue
            vec = vec / vec[int(np.argmax(np.abs(vec)))]
            gamma = np.zeros(H.M)
            gamma[list(subset)] = vec
            found.append(s)
            modes.append(FluxDistribution(gamma, _support(H, gamma)))
    return modes
