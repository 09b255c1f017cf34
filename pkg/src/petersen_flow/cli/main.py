"""
Command-line entry point: flow polynomials, roots, Q_c, limiting curves, spectra and checks.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from collections.abc import Sequence
from pathlib import Path
from typing import Any

from rich.console import Console
from rich.logging import RichHandler
from rich.markup import escape
from rich.table import Table

from petersen_flow.cli.suites import SUITES, run_suites
from petersen_flow.config.settings import OutputFormat, RunConfig
from petersen_flow.exceptions import FlowPolyError, GraphDomainError

logger = logging.getLogger("petersen_flow")
console = Console()

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_ERROR = 2

ALL_SUITES = "all"


def _emit(text: str, output: Path | None) -> None:
    if output is None:
        console.print(text, highlight=False, markup=False, soft_wrap=True)
    else:
        output.write_text(text + "\n")
        logger.info(f"Wrote {output}")


def _ints(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from exc


def _floats(text: str, count: int) -> tuple[float, ...]:
    values = tuple(float(v) for v in text.split(","))
    if len(values) != count:
        raise argparse.ArgumentTypeError(f"expected {count} comma-separated numbers, got {text!r}")
    return values


def cmd_flowpoly(args: argparse.Namespace, config: RunConfig) -> int:
    """Assemble, validate and write one flow polynomial."""
    from petersen_flow.flows.assembler import AssembledFlow, FlowAssembler, FlowMethod
    from petersen_flow.flows.serialization import factored_view, flow_to_json
    from petersen_flow.flows.validation import validate
    from petersen_flow.graphs.oracle import flow_poly_bruteforce
    from petersen_flow.graphs.petersen import GPGraph, graph_from_json

    if args.graph is not None:
        graph = graph_from_json(args.graph.read_text())
        if not isinstance(graph, GPGraph):
            poly = flow_poly_bruteforce(graph, config)
            _emit(json.dumps({"coefficients": [str(c) for c in poly.coefficients]}, indent=2), args.output)
            return EXIT_OK
        args.n, args.k = graph.n, graph.k
    if args.n is None or args.k is None:
        raise GraphDomainError("flowpoly needs --n and --k, or --graph")

    method = FlowMethod(args.method)
    assembler = FlowAssembler(config)
    if method is FlowMethod.COMPLETE and args.cross_check:
        if args.n % args.k:
            raise GraphDomainError(f"transfer methods need k | n, got n={args.n}, k={args.k}")
        flow: AssembledFlow = assembler.assemble_complete(args.k, args.n // args.k, cross_check=True)
    else:
        flow = assembler.assemble(args.n, args.k, method)

    report = validate(flow)
    if config.output_format is OutputFormat.TEXT:
        _emit(str(factored_view(flow.poly)), args.output)
    else:
        document = flow_to_json(flow)
        document["validation"] = {c.name: c.passed for c in report.checks}
        _emit(json.dumps(document, indent=2), args.output)
    if not report.passed:
        for check in report.failures:
            console.print(f"[red]FAILED[/red] {check.name}: {check.detail}")
        return EXIT_VALIDATION
    return EXIT_OK


def cmd_roots(args: argparse.Namespace, config: RunConfig) -> int:
    """CSV of all roots of a polynomial file or the shipped fixture."""
    from petersen_flow.flows.serialization import load_fixture, read_poly
    from petersen_flow.roots.certify import certify_root
    from petersen_flow.roots.finder import all_roots

    poly = load_fixture().poly if args.fixture else read_poly(args.input)
    digits = args.digits or config.root_digits
    roots = all_roots(poly, digits)
    header = ["re", "im", "radius"] + (["certified"] if args.certify else [])
    lines = [",".join(header)]
    for root in roots.roots:
        row = list(root.row(digits))
        if args.certify:
            cert = certify_root(poly, root, digits)
            row.append(str(bool(cert and cert.certified)).lower())
        lines.extend([",".join(row)] * root.multiplicity)
    _emit("\n".join(lines), args.output)
    return EXIT_OK


def cmd_qc(args: argparse.Namespace, config: RunConfig) -> int:
    from petersen_flow.spectra.qc import find_qc

    result = find_qc(args.k, args.bracket, config)
    console.print(result.describe(), markup=False)
    return EXIT_OK


def cmd_curve(args: argparse.Namespace, config: RunConfig) -> int:
    """Trace limiting curves; writes <prefix>.csv and <prefix>.svg."""
    from petersen_flow.flows.serialization import read_poly
    from petersen_flow.roots.finder import all_roots
    from petersen_flow.spectra.curves import plot_svg, trace_curve, write_csv

    result = trace_curve(args.k, args.window, args.res, config)
    prefix: Path = args.output or Path(f"curve_k{args.k}")
    write_csv(result, prefix.with_suffix(".csv"))
    zeros: list[complex] = []
    if args.zeros is not None:
        zeros = [complex(r.center) for r in all_roots(read_poly(args.zeros), 15).roots]
    plot_svg(result, prefix.with_suffix(".svg"), zeros, inverse=args.inverse)
    for q in result.real_crossings():
        console.print(f"real crossing at {q:.10f}")
    if args.branch_radius is not None:
        for angle in result.branch_angles(args.branch_radius):
            console.print(f"outward branch at arg Q = {angle:.6f}")
    if result.unresolved:
        console.print(f"[yellow]{len(result.unresolved)} unresolved grid edges[/yellow]")
    return EXIT_OK


def cmd_spectrum(args: argparse.Namespace, config: RunConfig) -> int:
    from petersen_flow.spectra.bkw import classify_point
    from petersen_flow.spectra.eigen import format_key, leading_eigs

    sample = leading_eigs(args.k, args.q, config=config)
    table = Table(title=f"Leading eigenvalues, k={args.k}, Q={args.q}")
    for column in ("sector", "dim", "mu1", "|mu1|", "mu2", "residual"):
        table.add_column(column)
    for _, s in sorted(sample.sectors.items(), key=lambda kv: -abs(kv[1].mu1)):
        mu2 = "" if s.mu2 is None else f"{s.mu2:.8g}"
        table.add_row(format_key(s.key), str(s.dimension), f"{s.mu1:.10g}", f"{abs(s.mu1):.10g}", mu2, f"{s.residual:.1e}")
    console.print(table)
    feature = classify_point(args.k, args.q, sample, config=config)
    console.print(feature.describe() if feature else "ordinary point", markup=False)
    return EXIT_OK


def cmd_amplitudes(args: argparse.Namespace, config: RunConfig) -> int:
    from petersen_flow.combinatorics.amplitudes import amplitude_table

    _emit(json.dumps(amplitude_table(args.k), indent=2), args.output)
    return EXIT_OK


def cmd_sectors(args: argparse.Namespace, config: RunConfig) -> int:
    from petersen_flow.transfer.block import sector_table

    rows = sector_table(args.k)
    if config.output_format is OutputFormat.JSON and args.output is not None:
        _emit(json.dumps([r.to_json() for r in rows], indent=2), args.output)
        return EXIT_OK
    table = Table(title=f"Sectors of the width-{args.k} strip")
    for column in ("l", "lambda", "orbits", "dim lambda", "dimension", "deflated", "removed", "weight"):
        table.add_column(column)
    for r in rows:
        table.add_row(
            str(r.l),
            "trivial" if r.lam is None else r.lam.label(),
            str(r.orbits),
            str(r.irrep_dim),
            str(r.dimension),
            str(r.deflated_dimension),
            str(r.removed),
            str(r.weight.as_expr()) if r.weight else "-",
        )
    console.print(table)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace, config: RunConfig) -> int:
    """Run one acceptance suite, or all of them, and print a scoreboard."""
    names = list(SUITES) if args.suite == ALL_SUITES else [args.suite]
    results = run_suites(names, config)
    table = Table(title=f"verify {args.suite}")
    for column in ("item", "result", "detail"):
        table.add_column(column)
    for name, ok, detail in results:
        table.add_row(escape(name), "[green]pass[/green]" if ok else "[red]FAIL[/red]", escape(detail))
    console.print(table)
    passed = sum(ok for _, ok, _ in results)
    console.print(f"{passed}/{len(results)} passed")
    return EXIT_OK if passed == len(results) else EXIT_VALIDATION


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="petersen-flow", description="Exact flow polynomials of generalised Petersen graphs"
    )
    parser.add_argument("--cache-dir", type=Path, help="cache directory (default: FLOWPOLY_CACHE)")
    parser.add_argument("--jobs", type=int, help="worker processes")
    parser.add_argument("--max-prime", type=int)
    parser.add_argument("--primes", type=_ints, help="explicit moduli, comma-separated")
    parser.add_argument("--points", type=_ints, help="explicit evaluation points, comma-separated")
    parser.add_argument("--format", choices=[f.value for f in OutputFormat], dest="output_format")
    parser.add_argument("--log-level", help="logging level")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("flowpoly", help="assemble and validate Φ of G(n, k)")
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--method", choices=["complete", "raw", "brute"], default="complete")
    p.add_argument("--graph", type=Path, help="graph JSON; generic multigraphs use the oracle")
    p.add_argument("--cross-check", action="store_true", help="also assemble from raw traces")
    p.add_argument("--output", type=Path)
    p.set_defaults(handler=cmd_flowpoly)

    p = sub.add_parser("roots", help="all roots of a flow polynomial as CSV")
    source = p.add_mutually_exclusive_group(required=True)
    source.add_argument("--input", type=Path, help="flow JSON file")
    source.add_argument("--fixture", action="store_true", help="use the shipped G(119,7) polynomial")
    p.add_argument("--digits", type=int)
    p.add_argument("--certify", action="store_true")
    p.add_argument("--output", type=Path)
    p.set_defaults(handler=cmd_roots)

    p = sub.add_parser("qc", help="locate Q_c(k)")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--bracket", type=lambda s: _floats(s, 2))
    p.set_defaults(handler=cmd_qc)

    p = sub.add_parser("curve", help="trace limiting curves in a window")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--window", type=lambda s: _floats(s, 4), default=(-1.0, 6.0, -3.5, 3.5))
    p.add_argument("--res", type=int, default=41)
    p.add_argument("--zeros", type=Path, help="flow JSON whose zeros are overlaid")
    p.add_argument("--inverse", action="store_true", help="plot in the 1/Q plane")
    p.add_argument("--branch-radius", type=float, help="report outward branch angles beyond this |Q|")
    p.add_argument("--output", type=Path, help="output prefix")
    p.set_defaults(handler=cmd_curve)

    p = sub.add_parser("spectrum", help="leading eigenvalues per sector at one Q")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--q", type=complex, required=True)
    p.set_defaults(handler=cmd_spectrum)

    p = sub.add_parser("amplitudes", help="amplitude polynomials for a strip width")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--output", type=Path)
    p.set_defaults(handler=cmd_amplitudes)

    p = sub.add_parser("sectors", help="dimension table of all sectors")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--output", type=Path)
    p.set_defaults(handler=cmd_sectors)

    p = sub.add_parser("verify", help="run an acceptance suite")
    p.add_argument("--suite", choices=[ALL_SUITES, *sorted(SUITES)], default=ALL_SUITES)
    p.set_defaults(handler=cmd_verify)
    return parser


def make_config(args: argparse.Namespace) -> RunConfig:
    overrides: dict[str, Any] = {
        name: value
        for name in ("cache_dir", "jobs", "max_prime", "primes", "points", "output_format", "log_level")
        if (value := getattr(args, name, None)) is not None
    }
    return RunConfig(**overrides)


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    config = make_config(args)
    logging.basicConfig(
        level=config.log_level.upper(),
        format="%(message)s",
        handlers=[RichHandler(console=Console(stderr=True), show_path=False)],
        force=True,
    )
    try:
        return int(args.handler(args, config))
    except FlowPolyError as exc:
        console.print(f"[red]error:[/red] {exc}")
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
