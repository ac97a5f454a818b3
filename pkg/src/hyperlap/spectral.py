"""Spectra of the vertex and hyperedge Laplacians.

The vertex Laplacian ``L = Id - D^{-1} A`` is not symmetric, so its spectrum is
computed from the similar symmetric matrix ``Id - D^{-1/2} A D^{-1/2}`` and the
eigenvectors are mapped back with ``D^{-1/2}``.  The resulting basis is
orthonormal for the degree-weighted product ``(f, g)_V``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import EigensolverFailure, ZeroFunction
from .hypergraph import Hypergraph
from .operators import _edge_vector, _vertex_vector, boundary, build_operators, coboundary

RANK_EPS = 2.0**-40


def default_zero_tolerance(n: int) -> float:
    return 1e-9 * max(n, 1)


@dataclass(frozen=True)
class Spectrum:
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray  # columns
    zero_tolerance: float
    kind: str = "vertex"

    def __len__(self):
        return len(self.eigenvalues)

    @property
    def zero_count(self) -> int:
        return int(np.sum(np.abs(self.eigenvalues) <= self.zero_tolerance))

    @property
    def nonzero(self) -> np.ndarray:
        return self.eigenvalues[np.abs(self.eigenvalues) > self.zero_tolerance]

    def clusters(self, tol: float | None = None) -> list[tuple[float, int]]:
        """(mean value, multiplicity) of runs of eigenvalues closer than ``tol``."""
        tol = self.zero_tolerance if tol is None else tol
        out: list[list[float]] = []
        for lam in self.eigenvalues:
            if out and lam - out[-1][-1] <= tol:
                out[-1].append(float(lam))
            else:
                out.append([float(lam)])
        return [(float(np.mean(c)), len(c)) for c in out]


@dataclass(frozen=True)
class ZeroMultiplicities:
    m_V: int
    m_H: int
    incidence_rank: int


def _fix_signs(vecs: np.ndarray) -> np.ndarray:
    # first entry of largest magnitude is made positive
    vecs = vecs.copy()
    for k in range(vecs.shape[1]):
        col = vecs[:, k]
        mags = np.abs(col)
        i = int(np.argmax(mags >= mags.max() * (1 - 1e-12)))
        if col[i] < 0:
            vecs[:, k] = -col
    return vecs


def _eigh(mat: np.ndarray):
    try:
        vals, vecs = np.linalg.eigh(mat)
    except np.linalg.LinAlgError as exc:
        raise EigensolverFailure(f"symmetric eigensolver did not converge: {exc}", mat) from exc
    if not np.all(np.isfinite(vals)):
        raise EigensolverFailure("eigensolver returned non-finite values", mat)
    return vals, vecs


def spectrum_vertex(H: Hypergraph, zero_tolerance: float | None = None) -> Spectrum:
    ops = build_operators(H)
    vals, vecs = _eigh(ops.symmetric_vertex_laplacian)
    vecs = vecs / np.sqrt(ops.degree_diag)[:, None]
    tol = default_zero_tolerance(H.N) if zero_tolerance is None else zero_tolerance
    return Spectrum(vals, _fix_signs(vecs), tol, "vertex")


def spectrum_hyperedge(H: Hypergraph, zero_tolerance: float | None = None) -> Spectrum:
    ops = build_operators(H)
    vals, vecs = _eigh(ops.hyperedge_laplacian)
    tol = default_zero_tolerance(H.N) if zero_tolerance is None else zero_tolerance
    return Spectrum(vals, _fix_signs(vecs), tol, "hyperedge")


def rayleigh_vertex(H: Hypergraph, f) -> float:
    f = _vertex_vector(H, f)
    denom = float(np.sum(H.degrees * f * f))
    if denom == 0.0:
        raise ZeroFunction("Rayleigh quotient of the zero function")
    df = boundary(H, f)
    return float(df @ df) / denom


def rayleigh_hyperedge(H: Hypergraph, gamma) -> float:
    gamma = _edge_vector(H, gamma)
    denom = float(gamma @ gamma)
    if denom == 0.0:
        raise ZeroFunction("Rayleigh quotient of the zero function")
    g = coboundary(H, gamma)
    return float(np.sum(H.degrees * g * g)) / denom


def rank_threshold(matrix: np.ndarray, singular_values: np.ndarray | None = None) -> float:
    if singular_values is None:
        singular_values = np.linalg.svd(matrix, compute_uv=False)
    smax = float(singular_values.max()) if singular_values.size else 0.0
    return max(matrix.shape) * smax * RANK_EPS


def incidence_rank(H: Hypergraph) -> int:
    sv = np.linalg.svd(H.incidence, compute_uv=False)
    return int(np.sum(sv > rank_threshold(H.incidence, sv)))


def zero_multiplicities(H: Hypergraph) -> ZeroMultiplicities:
    r = incidence_rank(H)
    return ZeroMultiplicities(H.N - r, H.M - r, r)
