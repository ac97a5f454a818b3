"""Run every spectral identity and bound against one hypergraph.

This backs the ``check`` command.  Each check yields a :class:`CheckResult`;
a failed check means either a numerical problem or a bug, never a property
of the input.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernel, operators, spectral, structure, symmetry
from .errors import ConditionsNotMet, HypergraphError, WouldIsolate
from .hypergraph import Hypergraph, from_incidence


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


def _multiset_close(a, b, tol):
    a, b = np.sort(np.asarray(a)), np.sort(np.asarray(b))
    return a.shape == b.shape and (a.size == 0 or float(np.abs(a - b).max()) <= tol)


def run_checks(H: Hypergraph, tau: symmetry.Automorphism | None = None, seed: int = 0,
               zero_tolerance: float | None = None) -> list[CheckResult]:
    rng = np.random.default_rng(seed)
    out: list[CheckResult] = []

    def record(name, ok, detail=""):
        out.append(CheckResult(name, bool(ok), detail))

    ops = operators.build_operators(H)
    lap, lap_h = ops.vertex_laplacian, ops.hyperedge_laplacian
    spect = spectral.spectrum_vertex(H, zero_tolerance)
    spect_h = spectral.spectrum_hyperedge(H, zero_tolerance)
    lam = spect.eigenvalues
    N, M = H.N, H.M

    record("trace", abs(np.trace(lap) - N) <= 1e-10 * N and abs(lam.sum() - N) <= 1e-10 * N,
           f"sum of eigenvalues {lam.sum():.12g}")

    basis = np.eye(N)
    op_form = np.column_stack([operators.apply_L(H, e) for e in basis])
    record("matrix-form", np.abs(op_form - lap).max() <= 1e-12 * max(1.0, np.abs(lap).max()))
    record("hyperedge-laplacian-psd",
           np.allclose(lap_h, lap_h.T, atol=1e-12) and spect_h.eigenvalues[0] >= -1e-9)

    worst = 0.0
    for _ in range(20):
        f, g = rng.normal(size=N), rng.normal(size=M)
        lhs = operators.scalar_product_H(operators.boundary(H, f), g)
        rhs = operators.scalar_product_V(H, f, operators.coboundary(H, g))
        worst = max(worst, abs(lhs - rhs) / max(1.0, abs(lhs)))
    record("adjointness", worst <= 1e-10, f"max relative gap {worst:.3e}")

    res = max(
        (np.linalg.norm(lap @ spect.eigenvectors[:, k] - lam[k] * spect.eigenvectors[:, k])
         / max(1.0, lam[k]) for k in range(N)),
        default=0.0,
    )
    record("eigen-residuals", res <= 1e-9, f"max residual {res:.3e}")
    record("eigenvalue-range", lam[0] >= -1e-9 and lam[-1] <= N + 1e-9)
    record("nonzero-spectra-agree", _multiset_close(spect.nonzero, spect_h.nonzero, 1e-8))

    zm = spectral.zero_multiplicities(H)
    record("zero-multiplicity-identity",
           zm.m_V - zm.m_H == N - M and spect.zero_count == zm.m_V and spect_h.zero_count == zm.m_H,
           f"m_V={zm.m_V} m_H={zm.m_H} rank={zm.incidence_rank}")

    worst = 0.0
    for k in range(N):
        if abs(lam[k]) <= spect.zero_tolerance:
            continue
        gamma = operators.boundary(H, spect.eigenvectors[:, k])
        worst = max(worst, np.linalg.norm(lap_h @ gamma - lam[k] * gamma) / np.linalg.norm(gamma))
    record("eigenfunction-correspondence", worst <= 1e-9, f"max residual {worst:.3e}")

    quotients = [spectral.rayleigh_vertex(H, rng.normal(size=N)) for _ in range(200)]
    quotients_h = [spectral.rayleigh_hyperedge(H, rng.normal(size=M)) for _ in range(200)]
    lam_h = spect_h.eigenvalues
    record("rayleigh-bracket",
           min(quotients) >= lam[0] - 1e-9 and max(quotients) <= lam[-1] + 1e-9
           and min(quotients_h) >= lam_h[0] - 1e-9 and max(quotients_h) <= lam_h[-1] + 1e-9)

    record("lambda-max-bound", lam[-1] <= H.max_cardinality + 1e-9,
           f"lambda_N={lam[-1]:.12g} max|h|={H.max_cardinality}")

    for comp in H.components():
        sub = H.restrict(comp)
        label = comp[0]
        rep = structure.lambda_max_analysis(sub)
        hits = abs(rep.lambda_max - rep.bound) <= 1e-8
        ok = rep.attained == hits
        if rep.attained:
            ok = ok and structure.certificate_residual(sub, rep) <= 1e-8
        record(f"lambda-max-equality[{label}]", ok, f"attained={rep.attained}")

    _, top, bad = structure.check_upper_bounds(H, spect)
    record("cardinality-bounds", not bad, f"violations at k={bad}" if bad else "")

    sand = structure.min_nonzero_sandwich(H, spect)
    if sand is not None:
        eq_ok = sand.equalities == (
            abs(sand.lambda_min - sand.ratio) <= 1e-9 or abs(sand.ratio - sand.lambda_max) <= 1e-9
        )
        record("min-nonzero-sandwich", sand.ordered and eq_ok,
               f"{sand.lambda_min:.12g} <= {sand.ratio:.12g} <= {sand.lambda_max:.12g}")
        cmax = H.max_cardinality
        record("zero-multiplicity-estimates",
               zm.m_V <= N * (1 - 1 / cmax) + 1e-9 and zm.m_H <= M - N / cmax + 1e-9)

    ok, tried = True, 0
    for v in H.vertices:
        try:
            rep = structure.interlacing_report(H, [v])
        except (WouldIsolate, HypergraphError):
            continue
        tried += 1
        ok = ok and rep.holds
    record("interlacing", ok, f"{tried} single-vertex deletions")

    adj, deg = ops.adjacency, ops.degree_diag
    inc = H.incidence
    ok = True
    for i in range(N):
        for j in range(i + 1, N):
            tol = 1e-12 * max(1.0, deg[i] + deg[j])
            for sgn in (1, -1):
                # sgn=+1: deg_i + deg_j >= 2 A_ij, tight for anti-twins; sgn=-1 for twins
                slack = deg[i] + deg[j] - sgn * 2 * adj[i, j]
                tight_rows = np.array_equal(inc[i], -sgn * inc[j])
                ok = ok and slack >= -tol
                if tight_rows:
                    ok = ok and abs(slack) <= tol
                elif abs(slack) <= tol:
                    ok = ok and np.abs(inc[i] + sgn * inc[j]).max() <= np.sqrt(tol)
    record("degree-adjacency-inequality", ok)

    ok = True
    for vi, vj, mode, value in symmetry.localized_eigenpairs(H):
        ok = ok and -1e-12 <= value <= 2 + 1e-12 and np.min(np.abs(lam - value)) <= 1e-9
    record("localized-eigenpairs", ok)

    const = symmetry.constant_eigenvalue(H)
    if const is not None:
        record("constant-eigenfunction", np.min(np.abs(lam - const)) <= 1e-9, f"lambda={const:.12g}")

    kh = kernel.kernel_basis_hyperedges(H)
    kv = kernel.kernel_basis_vertices(H)
    record("kernel-dimensions", len(kh) == zm.m_H and len(kv) == zm.m_V)
    record("kernel-balanced", all(kernel.is_balanced(H, m.gamma) for m in kh))
    record("harmonic-vertex-functions",
           all(np.linalg.norm(lap @ f) <= 1e-9 for f in kv))

    ok = True
    for j, h in enumerate(H.hyperedge_ids):
        flipped = operators.build_operators(H.flip_orientation(h))
        # L^H acts on oriented functions: flipping h conjugates it by a sign change at h
        sign = np.ones(M)
        sign[j] = -1.0
        ok = ok and np.abs(flipped.vertex_laplacian - lap).max() <= 1e-12
        ok = ok and np.abs(flipped.hyperedge_laplacian - sign[:, None] * lap_h * sign).max() <= 1e-12
    record("orientation-invariance", ok)

    scale = rng.uniform(0.5, 2.0, size=N) * rng.choice([-1, 1], size=N)
    rescaled = from_incidence(inc * scale[:, None], H.vertices, H.hyperedge_ids)
    record("hyperedge-laplacian-rescaling",
           np.abs(operators.build_operators(rescaled).hyperedge_laplacian - lap_h).max() <= 1e-10)

    if tau is not None:
        out.extend(_involution_checks(H, tau, spect))
    return out


def _involution_checks(H, tau, spect):
    out = []
    verdict = symmetry.verify_automorphism(H, tau)
    out.append(CheckResult("automorphism", verdict.valid, verdict.message or f"residual {verdict.residual:.3e}"))
    if not verdict:
        return out
    try:
        split = symmetry.symmetry_eigenspace_split(H, tau, spect)
    except HypergraphError as exc:
        out.append(CheckResult("symmetry-split", False, str(exc)))
        return out
    union = np.concatenate([split.antisymmetric, split.symmetric])
    out.append(CheckResult("symmetry-split", _multiset_close(union, spect.eigenvalues, 1e-9)))
    try:
        q = symmetry.quotient_hypergraph(H, tau)
        pairs = symmetry.duplicated_motif_eigenpairs(H, tau)
    except (HypergraphError, ConditionsNotMet) as exc:
        out.append(CheckResult("quotient", True, f"skipped: {exc}"))
        return out
    qs = spectral.spectrum_vertex(q).eigenvalues
    out.append(CheckResult("quotient-spectrum", _multiset_close(qs, split.symmetric, 1e-8)))
    out.append(CheckResult("duplicated-motif",
                           _multiset_close([p[0] for p in pairs], split.antisymmetric, 1e-9)))
    return out
