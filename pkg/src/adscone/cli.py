"""Command-line front end.

Every subcommand reads a JSON document, runs the corresponding library
operation and writes a deterministic JSON report.  Exit codes: 0 for a
successful classification or passing check, 2 for a domain rejection (a
rejected singularity type, a failed causality or condition check), 1 for
malformed input.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from . import documents as docs
from .errors import GeometryError
from .hssurface import check_causal, check_polyhedron_conditions, classify_hs_sphere
from .interactions import assemble_holonomy, validate_geometric_data
from .links import classify_singularity
from .spacetimes import causal_speed_check, link_of_line, model_lines

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_REJECT = 2


def _load(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as err:
        raise docs.DocumentError(f"cannot read {path}: {err}")


def _emit(report: dict, out_path: str | None):
    text = docs.canonical_json(report)
    if out_path:
        Path(out_path).write_text(text + "\n")
    else:
        sys.stdout.write(text + "\n")


def _scale(args) -> float:
    return float(getattr(args, "tolerance_scale", 1.0) or 1.0)


def cmd_classify_link(args) -> int:
    link = docs.link_circle_from_doc(_load(args.input))
    s = classify_singularity(link)
    report = {
        "kind": s.kind.value,
        "angle": s.angle,
        "mass": s.mass,
        "degree": s.degree,
        "positive": s.is_positive,
    }
    _emit(report, args.output)
    if s.is_rejected or (args.positive and not s.is_positive):
        return EXIT_REJECT
    return EXIT_OK


def cmd_classify_sphere(args) -> int:
    surface = docs.hs_surface_from_doc(_load(args.input))
    try:
        tag = classify_hs_sphere(surface, positive=args.positive)
    except GeometryError as err:
        _emit({"classification": None, "error": str(err)}, args.output)
        return EXIT_REJECT
    _emit({"classification": tag.value}, args.output)
    return EXIT_OK


def cmd_trace_causal(args) -> int:
    surface = docs.hs_surface_from_doc(_load(args.input))
    report = check_causal(surface, positive=args.positive)
    _emit({"causal": report.causal, "failures": list(report.failures)}, args.output)
    return EXIT_OK if report.causal else EXIT_REJECT


def cmd_check_polyhedron(args) -> int:
    metric = docs.marked_metric_from_doc(_load(args.input))
    report = check_polyhedron_conditions(metric)
    _emit(
        {
            "conditions": {k: bool(v) for k, v in sorted(report.passed.items())},
            "failures": list(report.failures),
        },
        args.output,
    )
    return EXIT_OK if report.all_passed else EXIT_REJECT


def cmd_speed_check(args) -> int:
    doc = _load(args.input)
    payload = docs.check_envelope(doc, "causal-curve.json")
    ts = np.asarray(payload["samples"], dtype=float)[:, 0]
    zs = np.asarray(payload["samples"], dtype=float)[:, 1] + 1j * np.asarray(
        payload["samples"], dtype=float
    )[:, 2]
    mass = float(payload["mass"])
    ok = causal_speed_check(ts, zs, mass, slack=1e-6 * _scale(args))
    _emit({"causal": bool(ok), "mass": mass}, args.output)
    if args.plot:
        _plot_speed(ts, zs, mass, args.plot)
    return EXIT_OK if ok else EXIT_REJECT


def cmd_classify_model_links(args) -> int:
    model = docs.model_from_doc(_load(args.input))
    out = {}
    rejected = False
    for line in model_lines(model):
        s = classify_singularity(link_of_line(model, line))
        out[line] = {"kind": s.kind.value, "angle": s.angle, "mass": s.mass}
        rejected = rejected or s.is_rejected
    _emit({"lines": out}, args.output)
    return EXIT_REJECT if rejected else EXIT_OK


def cmd_lr_metrics(args) -> int:
    jet = docs.surface_jet_from_doc(_load(args.input))
    from .lrmetrics import left_right_metrics, transverse_check

    check = transverse_check(jet)
    if not check.transverse:
        _emit(
            {
                "transverse": False,
                "degenerate_samples": list(check.degenerate_samples),
                "curvatures": list(check.curvatures),
            },
            args.output,
        )
        return EXIT_REJECT
    mls, mrs = left_right_metrics(jet)
    report = {
        "transverse": True,
        "curvatures": list(check.curvatures),
        "mu_l": [docs.matrix_to_list(m) for m in mls],
        "mu_r": [docs.matrix_to_list(m) for m in mrs],
        "det_mu_l": [float(np.linalg.det(m)) for m in mls],
        "det_mu_r": [float(np.linalg.det(m)) for m in mrs],
    }
    _emit(report, args.output)
    if args.plot:
        _plot_determinants(report["det_mu_l"], report["det_mu_r"], args.plot)
    return EXIT_OK


def cmd_surgery(args) -> int:
    from .spacetimes import product_spacetime

    doc = _load(args.input)
    payload = docs.check_envelope(doc, "surgery-request.json")
    base = docs.cone_surface_from_doc(payload["base"])
    link = docs.hs_surface_from_doc(payload["link"])
    at = int(payload["at"])
    from .errors import LinkRealizationError

    try:
        graph = __import__("adscone.interactions", fromlist=["surgery_collision"]).surgery_collision(
            product_spacetime(base), link, at
        )
    except (GeometryError, LinkRealizationError) as err:
        _emit({"graph": None, "error": str(err)}, args.output)
        return EXIT_REJECT
    _emit(docs.interaction_graph_to_doc(graph), args.output)
    return EXIT_OK


def cmd_validate_graph(args) -> int:
    graph = docs.interaction_graph_from_doc(_load(args.input))
    report = validate_geometric_data(graph, tol=1e-8 * _scale(args))
    _emit({"valid": report.passed, "failures": list(report.failures)}, args.output)
    return EXIT_OK if report.passed else EXIT_REJECT


def cmd_assemble_holonomy(args) -> int:
    graph = docs.interaction_graph_from_doc(_load(args.input))
    try:
        asm = assemble_holonomy(graph, tol=1e-8 * _scale(args))
    except (GeometryError, ArithmeticError) as err:
        _emit({"assembly": None, "error": str(err)}, args.output)
        return EXIT_REJECT
    tables = {
        vertex: {
            side: {name: docs.matrix_to_list(g.m) for name, g in table.items()}
            for side, table in sides.items()
        }
        for vertex, sides in asm.tables.items()
    }
    residuals = [asm.relation_residual(e) for e in graph.edges]
    _emit({"generators": tables, "relation_residuals": residuals}, args.output)
    return EXIT_OK


# -- tiny deterministic SVG plots ----------------------------------------------


def _svg_header(w, h):
    return (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" '
        f'viewBox="0 0 {w} {h}">'
    )


def _plot_speed(ts, zs, mass, path):
    """Causal curve |z|(t) against the saturating envelope."""
    w, hgt = 480, 320
    rs = np.abs(zs)
    alpha = 1.0 - mass
    t0, t1 = float(ts[0]), float(ts[-1])
    env = (ts - t0 + rs[0] ** alpha) ** (1.0 / alpha)

    def sx(t):
        return 40 + 400 * (t - t0) / max(t1 - t0, 1e-12)

    def sy(r):
        return 300 - 280 * min(r, 1.0)

    def poly(vals, color):
        pts = " ".join(f"{sx(t):.2f},{sy(v):.2f}" for t, v in zip(ts, vals))
        return f'<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{pts}"/>'

    parts = [_svg_header(w, hgt)]
    parts.append('<rect width="100%" height="100%" fill="white"/>')
    parts.append(poly(rs, "#225599"))
    parts.append(poly(env, "#bb3333"))
    parts.append(
        '<text x="46" y="24" font-size="12">|z|(t) (blue) vs saturating envelope (red), '
        f"m={mass:.4g}</text>"
    )
    parts.append("</svg>")
    Path(path).write_text("".join(parts))


def _plot_determinants(det_l, det_r, path):
    """Determinant profiles of the left and right metrics over the samples."""
    w, hgt = 480, 320
    n = len(det_l)
    top = max(max(det_l), max(det_r), 1e-12)

    def sx(i):
        return 40 + 400 * (i / max(n - 1, 1))

    def sy(v):
        return 300 - 280 * (v / top)

    def poly(vals, color, width):
        pts = " ".join(f"{sx(i):.2f},{sy(v):.2f}" for i, v in enumerate(vals))
        return f'<polyline fill="none" stroke="{color}" stroke-width="{width}" points="{pts}"/>'

    parts = [_svg_header(w, hgt), '<rect width="100%" height="100%" fill="white"/>']
    parts.append(poly(det_l, "#225599", 2.5))
    parts.append(poly(det_r, "#dd8800", 1.2))
    parts.append(
        '<text x="46" y="24" font-size="12">det mu_l (blue) and det mu_r (orange) '
        "per sample</text>"
    )
    parts.append("</svg>")
    Path(path).write_text("".join(parts))


# -- driver ---------------------------------------------------------------------


COMMANDS = {
    "classify-link": cmd_classify_link,
    "classify-sphere": cmd_classify_sphere,
    "trace-causal": cmd_trace_causal,
    "check-polyhedron": cmd_check_polyhedron,
    "speed-check": cmd_speed_check,
    "classify-model-links": cmd_classify_model_links,
    "lr-metrics": cmd_lr_metrics,
    "surgery": cmd_surgery,
    "validate-graph": cmd_validate_graph,
    "assemble-holonomy": cmd_assemble_holonomy,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="adscone",
        description="anti-de Sitter cone-singularity toolkit",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in sorted(COMMANDS):
        p = sub.add_parser(name)
        p.add_argument("--input", required=False, help="input document path")
        p.add_argument("--output", help="write the JSON report here instead of stdout")
        p.add_argument("--plot", help="write a static SVG figure here")
        p.add_argument("--batch", help="process every .json file in this directory")
        p.add_argument(
            "--tolerance-scale",
            type=float,
            default=1.0,
            dest="tolerance_scale",
            help="multiply all documented tolerances",
        )
        p.add_argument(
            "--positive",
            action="store_true",
            help="enable the positive-mass filter in classifiers",
        )
    return parser


def _run_single(fn, args) -> int:
    try:
        return fn(args)
    except docs.DocumentError as err:
        sys.stderr.write(f"input error: {err}\n")
        return EXIT_INPUT
    except GeometryError as err:
        sys.stderr.write(f"rejected: {err}\n")
        return EXIT_REJECT


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    fn = COMMANDS[args.command]
    if args.batch:
        files = sorted(Path(args.batch).glob("*.json"))
        if not files:
            sys.stderr.write("batch directory contains no .json files\n")
            return EXIT_INPUT
        codes = {}

        def run_one(path):
            import copy

            sub_args = copy.copy(args)
            sub_args.input = str(path)
            if args.output:
                sub_args.output = str(Path(args.output) / (path.stem + ".report.json"))
            return path.name, _run_single(fn, sub_args)

        with ThreadPoolExecutor(max_workers=4) as pool:
            for name, code in pool.map(run_one, files):
                codes[name] = code
        sys.stderr.write(docs.canonical_json({"batch": codes}) + "\n")
        return max(codes.values()) if codes else EXIT_OK
    if not args.input:
        sys.stderr.write("--input is required outside batch mode\n")
        return EXIT_INPUT
    return _run_single(fn, args)


if __name__ == "__main__":
    sys.exit(main())
