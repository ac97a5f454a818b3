"""Structured reports for the CLI.

Every float is rounded to 12 significant digits and keys keep insertion
order, so identical inputs give byte-identical output.
"""

from __future__ import annotations

import csv
import io
import json

import numpy as np

from . import kernel, spectral, structure, symmetry
from .errors import HypergraphError, TooLarge
from .hypergraph import Hypergraph


def num(x):
    x = float(x)
    if x == 0.0:
        return 0.0
    return float(f"{x:.12g}")


def nums(xs):
    return [num(x) for x in np.asarray(xs).ravel()]


def instance_summary(H: Hypergraph) -> dict:
    comps = H.components()
    return {
        "N": H.N,
        "M": H.M,
        "max_cardinality": H.max_cardinality,
        "components": [list(c) for c in comps],
    }


def _components(H):
    comps = H.components()
    return [(k, H.restrict(c)) for k, c in enumerate(comps)]


def spectrum_report(H: Hypergraph, zero_tolerance=None) -> dict:
    rows, rows_h = [], []
    for k, sub in _components(H):
        s = spectral.spectrum_vertex(sub, zero_tolerance)
        sh = spectral.spectrum_hyperedge(sub, zero_tolerance)
        rows += [(float(x), k) for x in s.eigenvalues]
        rows_h += [(float(x), k) for x in sh.eigenvalues]
    rows.sort(key=lambda r: (r[0], r[1]))
    rows_h.sort(key=lambda r: (r[0], r[1]))
    zm = spectral.zero_multiplicities(H)
    tol = spectral.default_zero_tolerance(H.N) if zero_tolerance is None else zero_tolerance
    return {
        "instance": instance_summary(H),
        "zero_tolerance": num(tol),
        "vertex_spectrum": [
            {"index": i + 1, "eigenvalue": num(x), "component": c} for i, (x, c) in enumerate(rows)
        ],
        "hyperedge_spectrum": [
            {"index": i + 1, "eigenvalue": num(x), "component": c} for i, (x, c) in enumerate(rows_h)
        ],
        "zero_multiplicities": {"m_V": zm.m_V, "m_H": zm.m_H, "incidence_rank": zm.incidence_rank},
    }


def bounds_report(H: Hypergraph, zero_tolerance=None) -> dict:
    comps = []
    for k, sub in _components(H):
        s = spectral.spectrum_vertex(sub, zero_tolerance)
        bounds, top, bad = structure.check_upper_bounds(sub, s)
        sand = structure.min_nonzero_sandwich(sub, s)
        entry = {
            "component": k,
            "lambda_max": num(s.eigenvalues[-1]),
            "max_cardinality": sub.max_cardinality,
            "bipartiteness_gap": num(sub.max_cardinality - s.eigenvalues[-1]),
            "cardinality_bounds": [
                {"k": i, "bound": num(b), "eigenvalue": num(x), "holds": i not in bad}
                for i, (b, x) in enumerate(zip(bounds, top))
            ],
        }
        if sand is not None:
            entry["min_nonzero"] = {
                "lambda_min": num(sand.lambda_min),
                "ratio": num(sand.ratio),
                "lambda_max": num(sand.lambda_max),
                "ordered": sand.ordered,
                "equalities": sand.equalities,
                "m_V": sand.m_V,
                "m_H": sand.m_H,
                "m_V_bound": num(sand.m_V_bound),
                "m_H_bound": num(sand.m_H_bound),
            }
        comps.append(entry)
    return {"instance": instance_summary(H), "components": comps}


def bipartite_report(H: Hypergraph) -> dict:
    comps = []
    for k, sub in _components(H):
        cert = structure.bipartition(sub)
        rep = structure.lambda_max_analysis(sub)
        entry = {
            "component": k,
            "bipartite": cert is not None,
            "part1": list(cert.part1) if cert else None,
            "part2": list(cert.part2) if cert else None,
            "bound": rep.bound,
            "lambda_max": num(rep.lambda_max),
            "uniform_cardinality": rep.uniform,
            "attained": rep.attained,
            "reason": rep.reason,
        }
        if rep.certificate is not None:
            entry["certificate"] = {
                "f": dict(zip(sub.vertices, nums(rep.certificate.f))),
                "g": dict(zip(sub.hyperedge_ids, nums(rep.certificate.g))),
            }
        comps.append(entry)
    return {"instance": instance_summary(H), "components": comps}


def symmetries_report(H: Hypergraph, tau: symmetry.Automorphism | None = None) -> dict:
    rels = symmetry.find_vertex_relations(H)
    pairs = symmetry.localized_eigenpairs(H)
    const = symmetry.constant_eigenvalue(H)
    out = {
        "instance": instance_summary(H),
        "relations": [{"first": r.first, "second": r.second, "kind": r.kind} for r in rels],
        "localized_eigenpairs": [
            {"first": a, "second": b, "mode": mode, "eigenvalue": num(lam)}
            for a, b, mode, lam in pairs
        ],
        "constant_eigenvalue": None if const is None else num(const),
    }
    if tau is not None:
        out["involution"] = involution_section(H, tau)
    return out


def involution_section(H: Hypergraph, tau: symmetry.Automorphism) -> dict:
    check = symmetry.verify_automorphism(H, tau)
    sec = {
        "automorphism": check.valid,
        "commutation_residual": num(check.residual) if np.isfinite(check.residual) else None,
        "violation": list(check.violation) if check.violation else None,
    }
    if not check:
        sec["message"] = check.message
        return sec
    split = symmetry.involution_split(H, tau)
    sec["split"] = {"V0": list(split.V0), "Vp": list(split.Vp), "Vpp": list(split.Vpp)}
    if split.note:
        sec["split"]["note"] = split.note
    parts = symmetry.symmetry_eigenspace_split(H, tau)
    sec["antisymmetric"] = nums(parts.antisymmetric)
    sec["symmetric"] = nums(parts.symmetric)
    try:
        pairs = symmetry.duplicated_motif_eigenpairs(H, tau)
        sec["duplicated_motif_eigenvalues"] = [num(lam) for lam, _ in pairs]
    except HypergraphError as exc:
        sec["duplicated_motif_eigenvalues"] = None
        sec["duplicated_motif_note"] = str(exc)
    return sec


def kernel_report(H: Hypergraph, max_support=None, max_hyperedges=kernel.MAX_ENUMERATION) -> dict:
    zm = spectral.zero_multiplicities(H)
    out = {
        "instance": instance_summary(H),
        "zero_multiplicities": {"m_V": zm.m_V, "m_H": zm.m_H, "incidence_rank": zm.incidence_rank},
        "vertex_kernel": [dict(zip(H.vertices, nums(f))) for f in kernel.kernel_basis_vertices(H)],
        "hyperedge_kernel": [
            dict(zip(H.hyperedge_ids, nums(m.gamma))) for m in kernel.kernel_basis_hyperedges(H)
        ],
    }
    try:
        modes = kernel.elementary_modes(H, max_support, max_hyperedges)
        out["elementary_modes"] = [
            {"support": list(m.support), "flux": dict(zip(H.hyperedge_ids, nums(m.gamma)))}
            for m in modes
        ]
    except TooLarge as exc:
        out["elementary_modes"] = None
        out["elementary_modes_note"] = str(exc)
    return out


def to_json(report) -> str:
    return json.dumps(report, indent=2, ensure_ascii=False) + "\n"


def spectrum_csv(report: dict) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["index", "eigenvalue"])
    for row in report["vertex_spectrum"]:
        writer.writerow([row["index"], repr(row["eigenvalue"])])
    return buf.getvalue()


def table_csv(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()

