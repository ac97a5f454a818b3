"""Vertex symmetries and their signatures in the spectrum.

Two layers live here:

* pair-level relations (twin, anti-twin, duplicate, anti-duplicate) and the
  eigenfunctions supported on two vertices that they produce;
* automorphisms with a sign map, the involution split ``V = V0 + V' + V''``,
  induced (motif) Laplacians, and the quotient by an involution whose
  ``V'`` motif is duplicated.

Automorphisms are verified, never searched for.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import (
    ConditionsNotMet,
    EigensolverFailure,
    InvalidMotif,
    MalformedPermutation,
    NotDuplicatedMotif,
    NotInvolution,
)
from .hypergraph import Hyperedge, Hypergraph, build_hypergraph
from .operators import build_operators
from .spectral import Spectrum, spectrum_vertex

RELATION_TOL = 1e-12
LOCALIZED_RESIDUAL = 1e-10
MOTIF_RESIDUAL = 1e-9
COMMUTE_TOL = 1e-10

KINDS = ("twin", "anti-twin", "duplicate", "anti-duplicate")


@dataclass(frozen=True, order=True)
class VertexRelation:
    first: str
    second: str
    kind: str


def _close(a, b, scale):
    return bool(np.all(np.abs(np.asarray(a) - np.asarray(b)) <= RELATION_TOL * max(1.0, scale)))


def find_vertex_relations(H: Hypergraph) -> list[VertexRelation]:
    """All twin / anti-twin / duplicate / anti-duplicate pairs, in vertex order.

    Coefficient rows are compared exactly; adjacency rows to 1e-12 relative
    to the largest adjacency entry.
    """
    inc = H.incidence
    adj = build_operators(H).adjacency
    scale = float(np.abs(adj).max()) if adj.size else 0.0
    out = []
    for i in range(H.N):
        for j in range(i + 1, H.N):
            vi, vj = H.vertices[i], H.vertices[j]
            if np.array_equal(inc[i], inc[j]):
                out.append(VertexRelation(vi, vj, "twin"))
            if np.array_equal(inc[i], -inc[j]):
                out.append(VertexRelation(vi, vj, "anti-twin"))
            if _close(adj[i], adj[j], scale):
                out.append(VertexRelation(vi, vj, "duplicate"))
            if _close(adj[i], -adj[j], scale):
                out.append(VertexRelation(vi, vj, "anti-duplicate"))
    return out


def localized_eigenpair(H: Hypergraph, vi: str, vj: str, mode: str = "opposite-sign"):
    """Eigenpair whose eigenfunction lives on two vertices only.

    ``same-sign`` tests f = 1 at both vertices, ``opposite-sign`` tests
    f(vi) = 1, f(vj) = -1.  Returns ``(lam, f)``; raises
    :class:`ConditionsNotMet` naming the failed condition otherwise.
    """
    if mode not in ("same-sign", "opposite-sign"):
        raise ValueError(f"unknown mode {mode!r}")
    i, j = H.vertex_index(vi), H.vertex_index(vj)
    if i == j:
        raise ValueError("the two vertices must differ")
    ops = build_operators(H)
    adj, deg = ops.adjacency, ops.degree_diag
    scale = max(1.0, float(np.abs(adj).max()), float(deg.max()))
    tol = RELATION_TOL * scale

    if abs(deg[i] - deg[j]) > tol and abs(adj[i, j]) > tol:
        raise ConditionsNotMet(
            f"deg {vi} != deg {vj} and A[{vi},{vj}] != 0", condition="degree"
        )
    others = [k for k in range(H.N) if k not in (i, j)]
    sign = -1.0 if mode == "same-sign" else 1.0
    diff = np.abs(adj[i, others] - sign * adj[j, others])
    if diff.size and diff.max() > tol:
        k = others[int(np.argmax(diff))]
        rel = "-" if mode == "same-sign" else ""
        raise ConditionsNotMet(
            f"A[{vi},{H.vertices[k]}] != {rel}A[{vj},{H.vertices[k]}]", condition="neighbours"
        )

    f = np.zeros(H.N)
    f[i] = 1.0
    f[j] = -sign
    lam = 1.0 + sign * adj[i, j] / deg[i]
    residual = float(np.linalg.norm(ops.vertex_laplacian @ f - lam * f))
    if residual > LOCALIZED_RESIDUAL * scale:
        raise EigensolverFailure(f"localized eigenpair residual {residual:.3e}")
    return float(lam), f


def localized_eigenpairs(H: Hypergraph) -> list[tuple[str, str, str, float]]:
    """Scan all pairs and modes; returns ``(vi, vj, mode, lam)`` for each success."""
    found = []
    for i in range(H.N):
        for j in range(i + 1, H.N):
            for mode in ("same-sign", "opposite-sign"):
                try:
                    lam, _ = localized_eigenpair(H, H.vertices[i], H.vertices[j], mode)
                except ConditionsNotMet:
                    continue
                found.append((H.vertices[i], H.vertices[j], mode, lam))
    return found


def constant_eigenvalue(H: Hypergraph, tol: float = 1e-10) -> float | None:
    """Eigenvalue of the constant functions, or None when constants are not eigenfunctions."""
    ops = build_operators(H)
    q = 1.0 - ops.adjacency.sum(axis=1) / ops.degree_diag
    if q.max() - q.min() > tol:
        return None
    return float(q.mean())


# -- automorphisms -----------------------------------------------------------


@dataclass(frozen=True)
class Automorphism:
    """Paired vertex/hyperedge bijections plus a per-vertex sign."""

    sigma_V: Mapping[str, str]
    sigma_H: Mapping[str, str]
    signs: Mapping[str, int]

    @classmethod
    def identity(cls, H: Hypergraph) -> "Automorphism":
        return cls(
            {v: v for v in H.vertices}, {h: h for h in H.hyperedge_ids}, {v: 1 for v in H.vertices}
        )

    @classmethod
    def from_swaps(
        cls,
        H: Hypergraph,
        vertex_pairs: Iterable[Sequence[str]] = (),
        hyperedge_pairs: Iterable[Sequence[str]] = (),
        signs: Mapping[str, int] | None = None,
    ) -> "Automorphism":
        """Involution from transpositions; unspecified signs are inferred from coefficients."""
        sv = {v: v for v in H.vertices}
        sh = {h: h for h in H.hyperedge_ids}
        for a, b in vertex_pairs:
            sv[a], sv[b] = b, a
        for a, b in hyperedge_pairs:
            sh[a], sh[b] = b, a
        for key in sv:
            H.vertex_index(key)
        for key in sh:
            H.hyperedge_index(key)
        inferred = infer_signs(H, sv, sh)
        if signs:
            inferred.update({v: int(s) for v, s in signs.items()})
        return cls(sv, sh, inferred)

    def vertex_operator(self, H: Hypergraph) -> np.ndarray:
        """Matrix of f -> sigma_* f, where (sigma_* f)(v) = s(v) f(sigma(v))."""
        P = np.zeros((H.N, H.N))
        for v in H.vertices:
            P[H.vertex_index(v), H.vertex_index(self.sigma_V[v])] = self.signs[v]
        return P

    def apply(self, H: Hypergraph, f) -> np.ndarray:
        return self.vertex_operator(H) @ np.asarray(f, dtype=float)


def infer_signs(H: Hypergraph, sigma_V, sigma_H) -> dict[str, int]:
    signs = {}
    for v in H.vertices:
        s = 1
        for h in H.hyperedges:
            c = h.coef.get(v)
            if c is None:
                continue
            target = H.hyperedge(sigma_H.get(h.id, h.id)).coef.get(sigma_V.get(v, v))
            if target is not None and target == -c:
                s = -1
            break
        signs[v] = s
    return signs


@dataclass(frozen=True)
class AutomorphismCheck:
    valid: bool
    residual: float
    violation: tuple[str, str] | None = None
    message: str = ""

    def __bool__(self):
        return self.valid


def _check_bijection(mapping, domain, what):
    domain = list(domain)
    if set(mapping) != set(domain):
        raise MalformedPermutation(f"{what} map must be defined exactly on the {what} set")
    if set(mapping.values()) != set(domain):
        raise MalformedPermutation(f"{what} map is not a bijection of the {what} set")


def verify_automorphism(H: Hypergraph, aut: Automorphism) -> AutomorphismCheck:
    """Check incidence and coefficient preservation, then commutation with L."""
    _check_bijection(aut.sigma_V, H.vertices, "vertex")
    _check_bijection(aut.sigma_H, H.hyperedge_ids, "hyperedge")
    if set(aut.signs) != set(H.vertices) or any(s not in (1, -1) for s in aut.signs.values()):
        raise MalformedPermutation("sign map must assign +1 or -1 to every vertex")

    for h in H.hyperedges:
        image = H.hyperedge(aut.sigma_H[h.id]).coef
        coef = h.coef
        for v in H.vertices:
            c = coef.get(v, 0.0)
            target = image.get(aut.sigma_V[v], 0.0)
            if (c == 0.0) != (target == 0.0):
                return AutomorphismCheck(False, math.inf, (v, h.id), "incidence not preserved")
            if target != aut.signs[v] * c:
                return AutomorphismCheck(False, math.inf, (v, h.id), "coefficient not preserved")

    lap = build_operators(H).vertex_laplacian
    P = aut.vertex_operator(H)
    # columns of L P - P L are the commutator applied to indicator functions
    residual = float(np.linalg.norm(lap @ P - P @ lap, axis=0).max())
    scale = max(1.0, float(np.abs(lap).max()))
    if residual > COMMUTE_TOL * scale:
        return AutomorphismCheck(False, residual, None, "does not commute with L")
    return AutomorphismCheck(True, residual)


@dataclass(frozen=True)
class InvolutionSplit:
    V0: tuple[str, ...]
    Vp: tuple[str, ...]
    Vpp: tuple[str, ...]
    vp_connected: bool = True

    @property
    def note(self) -> str:
        if self.vp_connected:
            return ""
        return "V' is not connected; the split can be refined into several involutions"


def _induced_connected(H: Hypergraph, subset: Sequence[str]) -> bool:
    if len(subset) <= 1:
        return True
    members = set(subset)
    nbrs: dict[str, set[str]] = {v: set() for v in subset}
    for h in H.hyperedges:
        inside = [v for v in h.members if v in members]
        for v in inside:
            nbrs[v].update(inside)
    seen = {subset[0]}
    queue = deque([subset[0]])
    while queue:
        for w in nbrs[queue.popleft()]:
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return len(seen) == len(members)


def _require_involution(H: Hypergraph, tau: Automorphism):
    check = verify_automorphism(H, tau)
    if not check:
        raise NotInvolution(f"not an automorphism: {check.message} at {check.violation}")
    for v, w in tau.sigma_V.items():
        if tau.sigma_V[w] != v:
            raise NotInvolution(f"tau^2 moves vertex {v!r}")
    for h, k in tau.sigma_H.items():
        if tau.sigma_H[k] != h:
            raise NotInvolution(f"tau^2 moves hyperedge {h!r}")


def involution_split(H: Hypergraph, tau: Automorphism, duplicated: bool = False) -> InvolutionSplit:
    """Fixed vertices V0 and swapped halves V', V'' = tau(V').

    By default V' takes the lower-indexed vertex of every swapped pair.  With
    ``duplicated=True`` the halves are chosen so that no hyperedge meets both,
    raising :class:`NotDuplicatedMotif` if that is impossible.
    """
    _require_involution(H, tau)
    V0 = tuple(v for v in H.vertices if tau.sigma_V[v] == v)
    if duplicated:
        Vp = _duplicated_half(H, tau)
    else:
        Vp = tuple(
            v
            for v in H.vertices
            if tau.sigma_V[v] != v and H.vertex_index(v) < H.vertex_index(tau.sigma_V[v])
        )
    Vpp = tuple(tau.sigma_V[v] for v in Vp)
    return InvolutionSplit(V0, Vp, Vpp, _induced_connected(H, Vp))


def _duplicated_half(H: Hypergraph, tau: Automorphism) -> tuple[str, ...]:
    # side[v] = 0 if v in V', 1 if in V''; paired vertices take opposite sides
    # and all swapped vertices of one hyperedge must share a side
    moved = [v for v in H.vertices if tau.sigma_V[v] != v]
    edges_of: dict[str, list[Hyperedge]] = {v: [] for v in moved}
    for h in H.hyperedges:
        for v in h.members:
            if v in edges_of:
                edges_of[v].append(h)
    side: dict[str, int] = {}
    for start in moved:
        if start in side:
            continue
        side[start] = 0
        side[tau.sigma_V[start]] = 1
        queue = deque([start, tau.sigma_V[start]])
        while queue:
            v = queue.popleft()
            for h in edges_of[v]:
                for w in h.members:
                    if w not in edges_of:
                        continue
                    if w not in side:
                        side[w] = side[v]
                        side[tau.sigma_V[w]] = 1 - side[v]
                        queue.extend([w, tau.sigma_V[w]])
                    elif side[w] != side[v]:
                        raise NotDuplicatedMotif(
                            f"hyperedge {h.id!r} meets both halves of the involution", h.id
                        )
    return tuple(v for v in moved if side[v] == 0)


def _check_duplicated(H: Hypergraph, split: InvolutionSplit):
    a, b = set(split.Vp), set(split.Vpp)
    for h in H.hyperedges:
        members = set(h.members)
        if members & a and members & b:
            raise NotDuplicatedMotif(f"hyperedge {h.id!r} meets both V' and V''", h.id)


@dataclass(frozen=True)
class SymmetrySplit:
    antisymmetric: np.ndarray
    symmetric: np.ndarray
    antisymmetric_vectors: np.ndarray
    symmetric_vectors: np.ndarray
    spectrum: Spectrum = field(repr=False)


def symmetry_eigenspace_split(
    H: Hypergraph, tau: Automorphism, spectrum: Spectrum | None = None
) -> SymmetrySplit:
    """Sort the spectrum into the +1 and -1 eigenspaces of ``tau_*``.

    Eigenvectors of each eigenvalue cluster are pushed through the
    symmetrizers (f +- tau_* f)/2 and re-orthonormalized; the restricted
    Rayleigh matrices then give the eigenvalues of each part.
    """
    _require_involution(H, tau)
    spect = spectrum if spectrum is not None else spectrum_vertex(H)
    ops = build_operators(H)
    sym = ops.symmetric_vertex_laplacian
    sq = np.sqrt(ops.degree_diag)
    # tau preserves degrees, so tau_* is the same matrix in symmetric coordinates
    P = tau.vertex_operator(H)
    U = spect.eigenvectors * sq[:, None]
    U /= np.linalg.norm(U, axis=0)

    parts = {1: ([], []), -1: ([], [])}
    start = 0
    for _, mult in spect.clusters():
        block = U[:, start : start + mult]
        start += mult
        for sgn in (1, -1):
            proj = 0.5 * (block + sgn * (P @ block))
            left, sv, _ = np.linalg.svd(proj, full_matrices=False)
            Q = left[:, sv > 0.5]
            if Q.shape[1] == 0:
                continue
            vals, vecs = np.linalg.eigh(Q.T @ sym @ Q)
            parts[sgn][0].extend(vals)
            parts[sgn][1].append((Q @ vecs) / sq[:, None])

    def pack(sgn):
        vals = np.array(parts[sgn][0])
        vecs = np.hstack(parts[sgn][1]) if parts[sgn][1] else np.zeros((H.N, 0))
        order = np.argsort(vals, kind="stable")
        return vals[order], vecs[:, order]

    anti_vals, anti_vecs = pack(-1)
    sym_vals, sym_vecs = pack(1)
    return SymmetrySplit(anti_vals, sym_vals, anti_vecs, sym_vecs, spect)


# -- motifs -------------------------------------------------------------------


@dataclass(frozen=True)
class Motif:
    vertices: tuple[str, ...]
    hyperedges: tuple[str, ...]

    @classmethod
    def induced(cls, H: Hypergraph, vertices: Iterable[str]) -> "Motif":
        """Smallest valid motif on ``vertices``: every hyperedge meeting two of them."""
        vs = tuple(vertices)
        members = set(vs)
        edges = tuple(h.id for h in H.hyperedges if len(members & set(h.members)) >= 2)
        return cls(vs, edges)

    @classmethod
    def touching(cls, H: Hypergraph, vertices: Iterable[str]) -> "Motif":
        """Motif on ``vertices`` carrying every hyperedge that meets any of them."""
        vs = tuple(vertices)
        members = set(vs)
        edges = tuple(h.id for h in H.hyperedges if members & set(h.members))
        return cls(vs, edges)


def validate_motif(H: Hypergraph, motif: Motif):
    if not motif.vertices:
        raise InvalidMotif("motif needs at least one vertex")
    for v in motif.vertices:
        H.vertex_index(v)
    for h in motif.hyperedges:
        H.hyperedge_index(h)
    members = set(motif.vertices)
    chosen = set(motif.hyperedges)
    for h in H.hyperedges:
        if h.id not in chosen and len(members & set(h.members)) >= 2:
            raise InvalidMotif(
                f"hyperedge {h.id!r} joins motif vertices but is not in the motif"
            )


def induced_laplacian(H: Hypergraph, motif: Motif) -> np.ndarray:
    """Motif Laplacian: motif hyperedges and vertices only, degrees taken in the whole hypergraph."""
    validate_motif(H, motif)
    rows = [H.vertex_index(v) for v in motif.vertices]
    cols = [H.hyperedge_index(h) for h in motif.hyperedges]
    sub = H.incidence[np.ix_(rows, cols)]
    coupling = sub @ sub.T
    np.fill_diagonal(coupling, 0.0)
    return np.eye(len(rows)) + coupling / H.degrees[rows][:, None]


def are_twin_motifs(H: Hypergraph, tau: Automorphism, Vp: Iterable[str], anti: bool = False) -> bool:
    """True if each v' in Vp and tau(v') share hyperedges with equal (anti: opposite) coefficients."""
    sgn = -1.0 if anti else 1.0
    inc = H.incidence
    for v in Vp:
        i, j = H.vertex_index(v), H.vertex_index(tau.sigma_V[v])
        if not np.array_equal(inc[i], sgn * inc[j]):
            return False
    return True


def _require_plus_on_fixed(tau: Automorphism, split: InvolutionSplit):
    bad = [v for v in split.V0 if tau.signs[v] != 1]
    if bad:
        raise NotDuplicatedMotif(f"fixed vertices with sign -1 are not supported: {bad}")


def duplicated_motif_eigenpairs(
    H: Hypergraph, tau: Automorphism, motif: Motif | None = None
) -> list[tuple[float, np.ndarray]]:
    """Eigenpairs of L built from the motif Laplacian of a duplicated V'.

    Each eigenvector of the |V'|-dimensional motif problem is extended by
    f(tau v) = -s(v) f(v) on V'' and 0 on V0; every extension is checked
    against the full Laplacian.
    """
    if motif is None:
        split = involution_split(H, tau, duplicated=True)
    else:
        split = involution_split(H, tau)
        vp = tuple(motif.vertices)
        if set(vp) & set(split.V0) or len(vp) != len(split.Vp):
            raise InvalidMotif("motif vertices must be one half of the swapped vertices")
        split = InvolutionSplit(split.V0, vp, tuple(tau.sigma_V[v] for v in vp))
    _check_duplicated(H, split)
    _require_plus_on_fixed(tau, split)
    if not split.Vp:
        return []
    motif = Motif.touching(H, split.Vp) if motif is None else motif
    K = induced_laplacian(H, motif)

    rows = [H.vertex_index(v) for v in split.Vp]
    deg = H.degrees[rows]
    sq = np.sqrt(deg)
    ksym = sq[:, None] * K / sq[None, :]
    vals, vecs = np.linalg.eigh(0.5 * (ksym + ksym.T))
    vecs = vecs / sq[:, None]

    lap = build_operators(H).vertex_laplacian
    out = []
    for lam, u in zip(vals, vecs.T):
        f = np.zeros(H.N)
        for v, x in zip(split.Vp, u):
            f[H.vertex_index(v)] = x
            f[H.vertex_index(tau.sigma_V[v])] = -tau.signs[v] * x
        f /= np.sqrt(np.sum(H.degrees * f * f))
        residual = float(np.linalg.norm(lap @ f - lam * f))
        if residual > MOTIF_RESIDUAL:
            raise EigensolverFailure(f"motif eigenpair residual {residual:.3e} for lambda={lam}")
        out.append((float(lam), f))
    return out


def quotient_hypergraph(H: Hypergraph, tau: Automorphism) -> Hypergraph:
    """Collapse the orbits of an involution whose V' motif is duplicated.

    Vertices: V0 then V' in stored order.  Each pair of swapped hyperedges is
    represented by the member meeting V' (or the first one); fixed hyperedges
    are kept as they are.  Incidences of fixed vertices in collapsed
    hyperedges are scaled by sqrt(2); everything else keeps its coefficient.
    With this convention the quotient's spectrum is the symmetric part of
    the spectrum of ``H``.
    """
    split = involution_split(H, tau, duplicated=True)
    _check_duplicated(H, split)
    _require_plus_on_fixed(tau, split)
    fixed = set(split.V0)
    keep = fixed | set(split.Vp)
    other = set(split.Vpp)
    root2 = math.sqrt(2.0)

    records = []
    done: set[str] = set()
    for h in H.hyperedges:
        if h.id in done:
            continue
        partner = tau.sigma_H[h.id]
        done.update((h.id, partner))
        if partner == h.id:
            records.append((h.id, dict(h.coefficients)))
            continue
        rep = h
        if set(h.members) & other:
            rep = H.hyperedge(partner)
        coef = {v: (root2 * c if v in fixed else c) for v, c in rep.coefficients}
        records.append((rep.id, coef))

    vertices = [v for v in H.vertices if v in keep]
    return build_hypergraph(vertices, records)


def relabel(H: Hypergraph, aut: Automorphism) -> Hypergraph:
    """Apply an automorphism as a relabelling: v -> sigma(v), h -> sigma(h)."""
    records = []
    for h in H.hyperedges:
        records.append(
            (aut.sigma_H[h.id], {aut.sigma_V[v]: aut.signs[v] * c for v, c in h.coefficients})
        )
    return build_hypergraph([aut.sigma_V[v] for v in H.vertices], records)
