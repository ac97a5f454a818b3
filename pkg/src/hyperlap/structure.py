"""Bipartiteness and upper bounds on eigenvalues."""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .errors import Disconnected
from .hypergraph import Hypergraph
from .operators import apply_L
from .spectral import Spectrum, spectrum_vertex, zero_multiplicities

SLACK = 1e-9
LOG_TOL = 1e-9


@dataclass(frozen=True)
class BipartitenessCertificate:
    part1: tuple[str, ...]
    part2: tuple[str, ...]
    # True where the positive coefficients (inputs) of the hyperedge lie in part1
    inputs_in_part1: tuple[bool, ...]

    def side(self, v: str) -> int:
        return 1 if v in self.part1 else -1


@dataclass(frozen=True)
class EqualityCertificate:
    f: np.ndarray
    g: np.ndarray


@dataclass(frozen=True)
class LambdaMaxReport:
    bound: int
    attained: bool
    lambda_max: float
    bipartite: bool
    uniform: bool
    certificate: EqualityCertificate | None = None
    reason: str = ""


def _require_connected(H: Hypergraph):
    if not H.is_connected():
        raise Disconnected("hypergraph is disconnected; analyse each component separately")


def _incidence_lists(H: Hypergraph) -> dict[str, list[int]]:
    out: dict[str, list[int]] = {v: [] for v in H.vertices}
    for j, h in enumerate(H.hyperedges):
        for v in h.members:
            out[v].append(j)
    return out


def bipartition(H: Hypergraph) -> BipartitenessCertificate | None:
    """Two-colour the vertices so each hyperedge has inputs and outputs on opposite sides.

    Within a hyperedge, ``side(v) * sign(C[v,h])`` must be constant.  The first
    vertex is put in ``part1``.  Returns None if no such split exists.
    """
    _require_connected(H)
    incident = _incidence_lists(H)
    side: dict[str, int] = {H.vertices[0]: 1}
    queue = deque([H.vertices[0]])
    while queue:
        v = queue.popleft()
        for j in incident[v]:
            coef = H.hyperedges[j].coef
            target = side[v] * np.sign(coef[v])
            for w, c in coef.items():
                want = int(target * np.sign(c))
                if w not in side:
                    side[w] = want
                    queue.append(w)
                elif side[w] != want:
                    return None
    part1 = tuple(v for v in H.vertices if side[v] == 1)
    part2 = tuple(v for v in H.vertices if side[v] == -1)
    flags = []
    for h in H.hyperedges:
        v, c = h.coefficients[0]
        flags.append(bool(side[v] * c > 0))
    return BipartitenessCertificate(part1, part2, tuple(flags))


def equality_function(H: Hypergraph, cert: BipartitenessCertificate) -> np.ndarray | None:
    """Solve |C[v,h] f(v)| = g(h) for all v in h, up to scale, or return None.

    Works with log|f|: a BFS spanning tree fixes every value, then every
    hyperedge is swept for consistency.  Signs come from the bipartition.
    """
    incident = _incidence_lists(H)
    logf: dict[str, float] = {H.vertices[0]: 0.0}
    queue = deque([H.vertices[0]])
    while queue:
        v = queue.popleft()
        for j in incident[v]:
            coef = H.hyperedges[j].coef
            logg = math.log(abs(coef[v])) + logf[v]
            for w, c in coef.items():
                if w not in logf:
                    logf[w] = logg - math.log(abs(c))
                    queue.append(w)
    for h in H.hyperedges:
        vals = [math.log(abs(c)) + logf[v] for v, c in h.coefficients]
        if max(vals) - min(vals) > LOG_TOL:
            return None
    f = np.array([cert.side(v) * math.exp(logf[v]) for v in H.vertices])
    return f / np.sqrt(np.sum(H.degrees * f * f))


def lambda_max_analysis(H: Hypergraph, spectrum: Spectrum | None = None) -> LambdaMaxReport:
    """Check whether the largest eigenvalue reaches ``max |h|`` and certify it if so."""
    _require_connected(H)
    spect = spectrum if spectrum is not None else spectrum_vertex(H)
    bound = H.max_cardinality
    lam = float(spect.eigenvalues[-1])
    cards = H.cardinalities
    uniform = bool(np.all(cards == cards[0]))
    cert = bipartition(H)
    common = dict(bound=bound, lambda_max=lam, bipartite=cert is not None, uniform=uniform)
    if cert is None:
        return LambdaMaxReport(attained=False, reason="not bipartite", **common)
    if not uniform:
        return LambdaMaxReport(attained=False, reason="hyperedge cardinality not constant", **common)
    f = equality_function(H, cert)
    if f is None:
        return LambdaMaxReport(
            attained=False, reason="|C[v,h] f(v)| cannot be constant on every hyperedge", **common
        )
    idx = {v: i for i, v in enumerate(H.vertices)}
    v0 = [h.coefficients[0] for h in H.hyperedges]
    g = np.array([abs(c * f[idx[v]]) for v, c in v0])
    return LambdaMaxReport(attained=True, certificate=EqualityCertificate(f, g), **common)


def certificate_residual(H: Hypergraph, report: LambdaMaxReport) -> float:
    f = report.certificate.f
    return float(np.linalg.norm(apply_L(H, f) - report.bound * f))


@dataclass(frozen=True)
class InterlacingReport:
    removed: tuple[str, ...]
    original: np.ndarray
    reduced: np.ndarray
    holds: bool
    violations: list[int] = field(default_factory=list)


def interlacing_report(H: Hypergraph, removed: Iterable[str], slack: float = SLACK) -> InterlacingReport:
    removed = tuple(removed)
    reduced_graph = H.weak_delete_vertices(removed)
    lam = spectrum_vertex(H).eigenvalues
    mu = spectrum_vertex(reduced_graph).eigenvalues
    r = len(removed)
    bad = [
        k
        for k in range(H.N - r)
        if not (lam[k] - slack <= mu[k] <= lam[k + r] + slack)
    ]
    return InterlacingReport(removed, lam, mu, not bad, bad)


def eigenvalue_upper_bounds(H: Hypergraph) -> np.ndarray:
    """Upper bounds on lambda_{N-k} for k = 0..N-1.

    With cardinalities sorted ascending as c_1 <= ... <= c_M the bound is
    ``max_i (c_{M-i} - k + i)`` over ``i = 0..k``.  Once ``k >= M`` the
    missing hyperedges count as empty and the bound is clamped at 0, which
    is safe because then lambda_{N-k} lies inside the zero eigenspace.
    """
    cards = np.sort(H.cardinalities)
    M = len(cards)
    out = np.empty(H.N)
    for k in range(H.N):
        best = max(cards[M - 1 - i] - k + i for i in range(min(k, M - 1) + 1))
        out[k] = max(best, 0) if k >= M else best
    return out


def check_upper_bounds(H: Hypergraph, spectrum: Spectrum | None = None, slack: float = SLACK):
    """Return (bounds, eigenvalues lambda_{N-k}, list of violated k)."""
    spect = spectrum if spectrum is not None else spectrum_vertex(H)
    bounds = eigenvalue_upper_bounds(H)
    top_down = spect.eigenvalues[::-1]
    bad = [k for k in range(H.N) if top_down[k] > bounds[k] + slack]
    return bounds, top_down, bad


@dataclass(frozen=True)
class SandwichReport:
    lambda_min: float
    ratio: float
    lambda_max: float
    ordered: bool
    equalities: bool
    m_V: int
    m_H: int
    m_V_bound: float
    m_H_bound: float


def min_nonzero_sandwich(H: Hypergraph, spectrum: Spectrum | None = None, tol: float = SLACK) -> SandwichReport | None:
    """lambda_min <= N/(N - m_V) <= lambda_N; None when the incidence matrix is zero-rank."""
    spect = spectrum if spectrum is not None else spectrum_vertex(H)
    zm = zero_multiplicities(H)
    if zm.incidence_rank == 0:
        return None
    nonzero = spect.nonzero
    lam_min = float(nonzero[0])
    lam_max = float(spect.eigenvalues[-1])
    ratio = H.N / (H.N - zm.m_V)
    ordered = lam_min <= ratio + tol and ratio <= lam_max + tol
    equal = abs(lam_max - lam_min) <= tol * max(1.0, lam_max)
    cmax = H.max_cardinality
    return SandwichReport(
        lambda_min=lam_min,
        ratio=ratio,
        lambda_max=lam_max,
        ordered=bool(ordered),
        equalities=bool(equal),
        m_V=zm.m_V,
        m_H=zm.m_H,
        m_V_bound=H.N * (1 - 1 / cmax),
        m_H_bound=H.M - H.N / cmax,
    )
