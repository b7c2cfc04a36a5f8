"""Command-line front end: synth, simulate, decompose, report."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import __version__
from .circuit import Circuit, PlacedGate
from .cost import format_table, report_for
from .decompose import LEVELS, lower_circuit, verify_equivalence
from .errors import QuditColoringError, ResourceError
from .graphs import FORMATS, load_graph
from .grover import histogram_csv, histogram_json, run_grover, synth_initialization
from .netlist import parse_netlist, serialize_netlist
from .oracle import KICKBACK_MODES, synth_oracle

EXIT_OK, EXIT_INPUT, EXIT_RESOURCE = 0, 2, 3
VERIFY_TOL = 1e-9


def _graph_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--graph", required=True, help="graph file")
    p.add_argument("--format", choices=FORMATS, help="graph format (default: from the file suffix)")
    p.add_argument("--k", type=int, required=True, help="number of colors")
    p.add_argument("--d", type=int, required=True, help="qudit dimension")


def _iterations(text: str):
    if text == "auto":
        return None
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer or 'auto', got {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError("iterations must be >= 0")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qcolor", description="Qudit graph-coloring oracle synthesis and Grover simulation.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("synth", help="synthesize the coloring oracle netlist")
    _graph_args(p)
    p.add_argument("--kickback", choices=KICKBACK_MODES, default="paper-exact")
    p.add_argument("--out", required=True, help="netlist output path")
    p.add_argument("--include-init", action="store_true", help="prepend the register initialization gates")

    p = sub.add_parser("simulate", help="run Grover search on the synthesized oracle")
    _graph_args(p)
    p.add_argument("--kickback", choices=KICKBACK_MODES, default="paper-exact")
    p.add_argument("--iterations", type=_iterations, default=None, help="INT or 'auto' (default)")
    p.add_argument("--histogram", help="write the data-register histogram (.csv or .json)")
    p.add_argument("--top", type=int, default=None, help="states to print (default: number of solutions)")

    p = sub.add_parser("decompose", help="lower multi-controlled gates in a netlist")
    p.add_argument("--netlist", required=True, help="input netlist")
    p.add_argument("--level", choices=LEVELS, default="two-wire")
    p.add_argument("--out", required=True, help="output netlist")
    p.add_argument("--verify", action="store_true", help="check each lowered gate against its original")

    p = sub.add_parser("report", help="resource counts for the synthesized oracle")
    _graph_args(p)
    p.add_argument("--kickback", choices=KICKBACK_MODES, default="paper-exact")
    p.add_argument("--compare-baselines", action="store_true")
    p.add_argument("--json", help="also write the report as JSON to this path ('-' for stdout only)")
    return parser


def _oracle(args):
    graph = load_graph(args.graph, args.format)
    return synth_oracle(graph, args.k, args.d, args.kickback)


def cmd_synth(args) -> int:
    oracle = _oracle(args)
    circuit = oracle.circuit
    if args.include_init:
        circuit = Circuit(circuit.dims, tuple(synth_initialization(oracle.layout)) + circuit.gates, circuit.labels)
    Path(args.out).write_text(serialize_netlist(circuit), encoding="utf-8")
    print(f"layout: {oracle.layout.summary()}")
    print(f"gates: {len(circuit.gates)}")
    print(f"wrote {args.out}")
    return EXIT_OK


def cmd_simulate(args) -> int:
    graph = load_graph(args.graph, args.format)
    run = run_grover(graph, args.k, args.d, args.iterations, args.kickback)
    if args.histogram:
        path = Path(args.histogram)
        text = histogram_json(run.histogram) if path.suffix.lower() == ".json" else histogram_csv(run.histogram)
        path.write_text(text, encoding="utf-8")
    print(f"layout: {run.oracle.layout.summary()}")
    print(f"search space: {run.search_space}, solutions: {run.solutions}, iterations: {run.iterations}")
    if run.solutions == 0:
        print("warning: 0 solutions; the graph has no proper coloring with these colors", file=sys.stderr)
        print("warning: 0 solutions")
        return EXIT_OK
    marked = set(run.marked)
    for state, p in run.top(args.top or run.solutions):
        print(f"  |{state}>  {p:.6f}{'  *' if state in marked else ''}")
    print(f"success probability: {run.success_probability:.6f}")
    return EXIT_OK


def _local_check(gate: PlacedGate, d: int, level: str) -> Optional[float]:
    """Deviation of one lowered gate from the original on its own wires, or None if too large."""
    wires = gate.wires
    index = {w: i for i, w in enumerate(wires)}
    local = PlacedGate(gate.kind, index[gate.target], tuple((index[w], v) for w, v in gate.controls))
    original = Circuit((d,) * len(wires), (local,))
    lowered = lower_circuit(original, level)
    try:
        eq = verify_equivalence(lowered, original, subspace_dims=original.dims, tol=VERIFY_TOL)
    except ResourceError:
        return None
    return max(eq.max_deviation, eq.leakage)


def cmd_decompose(args) -> int:
    circuit = parse_netlist(Path(args.netlist).read_text(encoding="utf-8"))
    lowered = lower_circuit(circuit, args.level)
    Path(args.out).write_text(serialize_netlist(lowered), encoding="utf-8")
    print(f"gates: {len(circuit.gates)} -> {len(lowered.gates)}")
    print(f"max arity: {max((g.arity for g in lowered.gates), default=0)}")
    if args.verify:
        d = max(circuit.dims) if circuit.dims else 2
        shapes = {}
        for g in circuit.gates:
            if g.arity > 2:
                key = (g.kind, tuple(v for _, v in g.controls))
                shapes.setdefault(key, g)
        worst, skipped = 0.0, 0
        for g in shapes.values():
            dev = _local_check(g, d, args.level)
            if dev is None:
                skipped += 1
            else:
                worst = max(worst, dev)
        verdict = "<" if worst < VERIFY_TOL else ">="
        print(f"verified {len(shapes) - skipped} gate shapes, skipped {skipped} over the dense guard")
        print(f"max deviation {worst:.3e} {verdict} {VERIFY_TOL:g}")
        if worst >= VERIFY_TOL:
            return 1
    return EXIT_OK


def cmd_report(args) -> int:
    report = report_for(_oracle(args), compare=args.compare_baselines)
    if args.json == "-":
        sys.stdout.write(report.to_json())
        return EXIT_OK
    sys.stdout.write(format_table(report))
    if args.json:
        Path(args.json).write_text(report.to_json(), encoding="utf-8")
    return EXIT_OK


COMMANDS = {"synth": cmd_synth, "simulate": cmd_simulate, "decompose": cmd_decompose, "report": cmd_report}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except ResourceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (QuditColoringError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
