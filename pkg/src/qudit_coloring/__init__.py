"""Qudit oracle synthesis for graph coloring, with Grover simulation and gate lowering."""

__version__ = "0.1.0"

from .circuit import Circuit, PlacedGate, depth, gate_count, invert
from .cost import CostReport, analyze, compare_binary_baselines, compare_ternary_baselines, report_for
from .decompose import lower_circuit, verify_equivalence
from .errors import (
    DegenerateProblemError,
    GraphValidationError,
    NetlistParseError,
    NoSolutionError,
    ParameterError,
    QuditColoringError,
    ResourceError,
    StructuralError,
)
from .graphs import Graph, load_graph, parse_graph
from .grover import optimal_iterations, run_grover, synth_diffusion_circuit
from .netlist import parse_netlist, serialize_netlist
from .oracle import OracleCircuit, plan_layout, synth_oracle
from .state import StateVector, apply_circuit

__all__ = [
    "Circuit", "PlacedGate", "depth", "gate_count", "invert",
    "CostReport", "analyze", "compare_binary_baselines", "compare_ternary_baselines", "report_for",
    "lower_circuit", "verify_equivalence",
    "DegenerateProblemError", "GraphValidationError", "NetlistParseError", "NoSolutionError",
    "ParameterError", "QuditColoringError", "ResourceError", "StructuralError",
    "Graph", "load_graph", "parse_graph",
    "optimal_iterations", "run_grover", "synth_diffusion_circuit",
    "parse_netlist", "serialize_netlist",
    "OracleCircuit", "plan_layout", "synth_oracle",
    "StateVector", "apply_circuit",
]
