"""Line-oriented text netlist for mixed-radix circuits.

Grammar (one statement per line, ``#`` starts a comment)::

    dims 2 2 2 ...                     required, first statement
    labels data data ancilla ...       optional, second statement
    not T [power P] [levels L] [ctrl W:V]...
    phase T [power P] [levels L] [ctrl W:V]...
    hadamard T [dag] [levels L] [ctrl W:V]...
    inc T +1|-1 [levels L] [ctrl W:V]...
    mct [ctrl W:V]... target T [step -1] [levels L]
    perm T P0,P1,...  [ctrl W:V]...
    diag T t0,t1,...  [ctrl W:V]...     phases in turns (fractions of 2*pi)

Defaults (power 1, step +1, no levels) are omitted on output so that the text
form is canonical and byte-stable.
"""

from __future__ import annotations

from .circuit import Circuit, PlacedGate
from .errors import NetlistParseError, QuditColoringError
from .gates import MCT, DiagonalPhase, Hadamard, Increment, Not, Permutation, Phase


def _ctrl_text(gate: PlacedGate) -> list[str]:
    out = []
    for w, v in gate.controls:
        out += ["ctrl", f"{w}:{v}"]
    return out


def _levels(kind) -> list[str]:
    return [] if kind.levels is None else ["levels", str(kind.levels)]


def format_gate(gate: PlacedGate) -> str:
    k = gate.kind
    t = str(gate.target)
    if isinstance(k, MCT):
        parts = ["mct", *_ctrl_text(gate), "target", t]
        if k.step != 1:
            parts += ["step", str(k.step)]
        return " ".join(parts + _levels(k))
    if isinstance(k, (Not, Phase)):
        parts = [k.name, t]
        if k.power != 1:
            parts += ["power", str(k.power)]
        parts += _levels(k)
    elif isinstance(k, Hadamard):
        parts = ["hadamard", t] + (["dag"] if k.dagger else []) + _levels(k)
    elif isinstance(k, Increment):
        parts = ["inc", t, "+1" if k.step == 1 else "-1"] + _levels(k)
    elif isinstance(k, Permutation):
        parts = ["perm", t, ",".join(str(p) for p in k.perm)]
    elif isinstance(k, DiagonalPhase):
        parts = ["diag", t, ",".join(repr(x) for x in k.turns)]
    else:  # pragma: no cover - PlacedGate rejects unknown kinds
        raise TypeError(k)
    return " ".join(parts + _ctrl_text(gate))


def serialize_netlist(circuit: Circuit) -> str:
    lines = ["dims " + " ".join(str(x) for x in circuit.dims)]
    if circuit.labels is not None:
        lines.append("labels " + " ".join(circuit.labels))
    lines += [format_gate(g) for g in circuit.gates]
    return "\n".join(lines) + "\n"


def _int(tok: str, lineno: int, what: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise NetlistParseError(lineno, f"expected integer {what}, got {tok!r}") from None


def _parse_gate(tokens: list[str], lineno: int) -> PlacedGate:
    op, rest = tokens[0], tokens[1:]
    controls, positional = [], []
    opts: dict[str, str] = {}
    dag = False
    i = 0
    while i < len(rest):
        tok = rest[i]
        if tok in ("ctrl", "target", "power", "levels", "step"):
            if i + 1 >= len(rest):
                raise NetlistParseError(lineno, f"{tok!r} needs a value")
            val = rest[i + 1]
            if tok == "ctrl":
                w, sep, v = val.partition(":")
                if not sep:
                    raise NetlistParseError(lineno, f"control must be W:V, got {val!r}")
                controls.append((_int(w, lineno, "wire"), _int(v, lineno, "value")))
            elif tok in opts:
                raise NetlistParseError(lineno, f"duplicate {tok!r}")
            else:
                opts[tok] = val
            i += 2
        elif tok == "dag":
            dag = True
            i += 1
        else:
            positional.append(tok)
            i += 1

    levels = _int(opts["levels"], lineno, "levels") if "levels" in opts else None
    if op == "mct":
        if positional or "target" not in opts:
            raise NetlistParseError(lineno, "mct takes 'ctrl W:V'... 'target T'")
        step = _int(opts.get("step", "1"), lineno, "step")
        return PlacedGate(MCT(step, levels), _int(opts["target"], lineno, "target"), tuple(controls))

    if not positional:
        raise NetlistParseError(lineno, f"{op!r} needs a target wire")
    target = _int(positional[0], lineno, "target")
    args = positional[1:]
    expected = {"not": 0, "phase": 0, "hadamard": 0, "inc": 1, "perm": 1, "diag": 1}
    if op not in expected:
        raise NetlistParseError(lineno, f"unknown gate {op!r}")
    if len(args) != expected[op]:
        raise NetlistParseError(lineno, f"{op!r} takes {expected[op]} positional argument(s) after the target")
    if op in ("not", "phase"):
        power = _int(opts.get("power", "1"), lineno, "power")
        kind = (Not if op == "not" else Phase)(power, levels)
    elif op == "hadamard":
        kind = Hadamard(dag, levels)
    elif op == "inc":
        if args[0] not in ("+1", "-1"):
            raise NetlistParseError(lineno, f"inc step must be +1 or -1, got {args[0]!r}")
        kind = Increment(int(args[0]), levels)
    elif op == "perm":
        kind = Permutation(tuple(_int(p, lineno, "permutation entry") for p in args[0].split(",")))
    else:
        try:
            kind = DiagonalPhase(tuple(float(x) for x in args[0].split(",")))
        except ValueError:
            raise NetlistParseError(lineno, f"bad phase list {args[0]!r}") from None
    return PlacedGate(kind, target, tuple(controls))


def parse_netlist(text: str) -> Circuit:
    dims = None
    labels = None
    gates = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if dims is None:
            if tokens[0] != "dims" or len(tokens) < 2:
                raise NetlistParseError(lineno, "netlist must start with 'dims D0 D1 ...'")
            dims = tuple(_int(t, lineno, "dimension") for t in tokens[1:])
            if any(x < 2 for x in dims):
                raise NetlistParseError(lineno, "wire dimensions must be >= 2")
            continue
        if tokens[0] == "labels":
            if labels is not None or gates:
                raise NetlistParseError(lineno, "labels must directly follow dims")
            if len(tokens) - 1 != len(dims):
                raise NetlistParseError(lineno, f"{len(tokens) - 1} labels for {len(dims)} wires")
            labels = tuple(tokens[1:])
            continue
        try:
            gate = _parse_gate(tokens, lineno)
            gate.check(dims)
        except NetlistParseError:
            raise
        except QuditColoringError as exc:
            raise NetlistParseError(lineno, str(exc)) from exc
        gates.append(gate)
    if dims is None:
        raise NetlistParseError(0, "empty netlist")
    return Circuit(dims, tuple(gates), labels)
