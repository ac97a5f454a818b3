"""Command-line entry point.

Exit codes: 0 success, 1 a ``check`` found a violation, 2 bad input,
3 numerical failure.  Reports go to stdout (or ``--output``); diagnostics
go to stderr.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

import numpy as np

from . import audit, document, report
from .errors import DocumentError, EigensolverFailure, HypergraphError
from .generate import PLANTED, generate
from .symmetry import Automorphism, quotient_hypergraph

log = logging.getLogger("hyperlap")

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT, EXIT_NUMERIC = 0, 1, 2, 3


class InputError(Exception):
    pass


def _read_input(path):
    if path is None or path == "-":
        data = sys.stdin.buffer.read()
    else:
        try:
            data = Path(path).read_bytes()
        except OSError as exc:
            raise InputError(f"cannot read {path}: {exc.strerror}") from None
    return document.parse(data)


def parse_tau(source: str, H):
    """Involution given as JSON text or a path to a JSON file.

    ``{"vertices": [["v1", "v3"]], "hyperedges": [["h1", "h2"]], "signs": {"v1": -1}}``
    lists the swapped pairs; omitted signs are inferred from the coefficients.
    """
    text = source
    if not source.lstrip().startswith("{"):
        try:
            text = Path(source).read_text()
        except OSError as exc:
            raise InputError(f"cannot read tau file {source}: {exc.strerror}") from None
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"--tau: {exc.msg} at line {exc.lineno}, column {exc.colno}") from None
    if not isinstance(obj, dict):
        raise InputError("--tau must be a JSON object")
    try:
        return Automorphism.from_swaps(
            H, obj.get("vertices", []), obj.get("hyperedges", []), obj.get("signs")
        )
    except (TypeError, ValueError) as exc:
        raise InputError(f"--tau: {exc}") from None


def tau_to_json(H, tau: Automorphism) -> dict:
    vpairs = [[v, w] for v, w in tau.sigma_V.items() if H.vertex_index(v) < H.vertex_index(w)]
    hpairs = [
        [h, k] for h, k in tau.sigma_H.items() if H.hyperedge_index(h) < H.hyperedge_index(k)
    ]
    signs = {v: s for v, s in tau.signs.items() if s != 1}
    return {"vertices": vpairs, "hyperedges": hpairs, "signs": signs}


def _emit(text: str, output):
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


def _csv_unsupported(args):
    raise InputError(f"--format csv is not available for '{args.command}'")


def cmd_spectrum(args):
    H = _read_input(args.input)
    rep = report.spectrum_report(H, args.tolerance)
    if args.format == "csv":
        return report.spectrum_csv(rep), EXIT_OK
    return report.to_json(rep), EXIT_OK


def cmd_bounds(args):
    H = _read_input(args.input)
    rep = report.bounds_report(H, args.tolerance)
    if args.format == "csv":
        rows = [
            [c["component"], b["k"], repr(b["bound"]), repr(b["eigenvalue"])]
            for c in rep["components"]
            for b in c["cardinality_bounds"]
        ]
        return report.table_csv(["component", "k", "bound", "eigenvalue"], rows), EXIT_OK
    return report.to_json(rep), EXIT_OK


def cmd_bipartite(args):
    H = _read_input(args.input)
    if args.format == "csv":
        _csv_unsupported(args)
    return report.to_json(report.bipartite_report(H)), EXIT_OK


def cmd_symmetries(args):
    H = _read_input(args.input)
    tau = parse_tau(args.tau, H) if args.tau else None
    rep = report.symmetries_report(H, tau)
    if args.format == "csv":
        rows = [[r["first"], r["second"], r["kind"]] for r in rep["relations"]]
        return report.table_csv(["first", "second", "kind"], rows), EXIT_OK
    return report.to_json(rep), EXIT_OK


def cmd_kernel(args):
    H = _read_input(args.input)
    rep = report.kernel_report(H, args.max_support)
    if args.format == "csv":
        rows = []
        for k, f in enumerate(rep["hyperedge_kernel"]):
            rows += [["hyperedge_kernel", k, h, repr(x)] for h, x in f.items()]
        for k, f in enumerate(rep["vertex_kernel"]):
            rows += [["vertex_kernel", k, v, repr(x)] for v, x in f.items()]
        for k, mode in enumerate(rep["elementary_modes"] or []):
            rows += [["elementary_mode", k, h, repr(x)] for h, x in mode["flux"].items() if x]
        return report.table_csv(["kind", "index", "element", "value"], rows), EXIT_OK
    return report.to_json(rep), EXIT_OK


def cmd_quotient(args):
    H = _read_input(args.input)
    if not args.tau:
        raise InputError("quotient needs --tau")
    if args.format == "csv":
        _csv_unsupported(args)
    tau = parse_tau(args.tau, H)
    Q = quotient_hypergraph(H, tau)
    log.info("quotient: %d vertices, %d hyperedges", Q.N, Q.M)
    return document.serialize(Q), EXIT_OK


def cmd_check(args):
    H = _read_input(args.input)
    tau = parse_tau(args.tau, H) if args.tau else None
    results = audit.run_checks(H, tau, seed=args.seed or 0, zero_tolerance=args.tolerance)
    failed = [r for r in results if not r.passed]
    for r in failed:
        log.error("check failed: %s %s", r.name, r.detail)
    if args.format == "csv":
        text = report.table_csv(
            ["check", "passed", "detail"], [[r.name, r.passed, r.detail] for r in results]
        )
    else:
        text = report.to_json(
            {
                "instance": report.instance_summary(H),
                "passed": not failed,
                "checks": [{"name": r.name, "passed": r.passed, "detail": r.detail} for r in results],
            }
        )
    return text, (EXIT_VIOLATION if failed else EXIT_OK)


def cmd_generate(args):
    if args.format == "csv":
        _csv_unsupported(args)
    try:
        H, tau = generate(
            args.seed, args.n, args.m, args.min_card, args.max_card,
            args.coef_low, args.coef_high, args.planted,
        )
    except ValueError as exc:
        raise InputError(str(exc)) from None
    if args.tau_output:
        if tau is None:
            raise InputError("--tau-output only applies to --planted involution")
        Path(args.tau_output).write_text(json.dumps(tau_to_json(H, tau), indent=2) + "\n")
    return document.serialize(H), EXIT_OK


COMMANDS = {
    "spectrum": (cmd_spectrum, "eigenvalues of L and L^H, per connected component"),
    "bounds": (cmd_bounds, "eigenvalue upper bounds and the smallest nonzero eigenvalue"),
    "bipartite": (cmd_bipartite, "bipartition and equality certificate for lambda_max"),
    "symmetries": (cmd_symmetries, "vertex pair relations with their eigenpairs; --tau adds an involution"),
    "kernel": (cmd_kernel, "kernels of the incidence matrix and elementary flux modes"),
    "quotient": (cmd_quotient, "quotient hypergraph by an involution (writes a document)"),
    "check": (cmd_check, "verify every spectral identity and bound on the input"),
    "generate": (cmd_generate, "random valid document, optionally with planted structure"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hyperlap", description="Normalized Laplacians of hypergraphs with real coefficients."
    )
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text)
        if name != "generate":
            p.add_argument("--input", "-i", help="hypergraph document (default: stdin)")
        p.add_argument("--output", "-o", help="write here instead of stdout")
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--tolerance", type=float, default=None,
                       help="zero threshold for eigenvalues (default 1e-9*N)")
        p.add_argument("--seed", type=int, default=None)
        if name in ("symmetries", "quotient", "check"):
            p.add_argument("--tau", help="involution as JSON text or JSON file path")
        if name == "kernel":
            p.add_argument("--max-support", type=int, default=None)
        if name == "generate":
            p.add_argument("--n", type=int, default=6, help="number of vertices")
            p.add_argument("--m", type=int, default=5, help="number of hyperedges")
            p.add_argument("--min-card", type=int, default=1)
            p.add_argument("--max-card", type=int, default=None)
            p.add_argument("--coef-low", type=float, default=0.0, help="smallest |C|")
            p.add_argument("--coef-high", type=float, default=3.0, help="largest |C|")
            p.add_argument("--planted", choices=PLANTED, default="none")
            p.add_argument("--tau-output", help="write the planted involution here")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s: %(message)s",
        stream=sys.stderr,
    )
    handler = COMMANDS[args.command][0]
    try:
        text, code = handler(args)
    except (InputError, DocumentError) as exc:
        log.error("%s", exc)
        return EXIT_INPUT
    except (EigensolverFailure, np.linalg.LinAlgError) as exc:
        log.error("numerical failure: %s", exc)
        return EXIT_NUMERIC
    except HypergraphError as exc:
        log.error("%s", exc)
        return EXIT_INPUT
    _emit(text, args.output)
    return code


if __name__ == "__main__":
    sys.exit(main())
