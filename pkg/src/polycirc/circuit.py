"""Region circuits: half-space leaves combined by n-ary union/intersection gates.

A circuit is an acyclic gate list with one designated output; the region it
denotes is evaluated leaf-up, strict leaves excluding their boundary. The
text format is line-oriented:

    dim <d>
    ineq <name>: <int> x<k> [+|- <int> x<k>]... (<=|<) <int>
    gate <name>: (and|or) <name> [<name>]...
    output <name>

with `#` starting a comment and names matching [A-Za-z_][A-Za-z0-9_]*.
There is no negation gate; callers negate at the leaves instead
(a.x <= b complements to -a.x < -b).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from .errors import CircuitParseError, DimensionMismatchError
from .geometry import HPolyhedron, LinearInequality, Point

AND = "and"
OR = "or"


@dataclass(frozen=True)
class InputGate:
    ineq: LinearInequality


@dataclass(frozen=True)
class OpGate:
    op: str  # AND or OR
    children: tuple[int, ...]

    def __post_init__(self):
        if self.op not in (AND, OR):
            raise ValueError(f"unknown gate op {self.op!r}")
        if not self.children:
            raise ValueError("gates need at least one child")


Gate = Union[InputGate, OpGate]


@dataclass(frozen=True)
class PolyhedraCircuit:
    """Gate DAG over half-space leaves with a single output gate.

    Gates are identified by their position; children always point at
    earlier positions, so the list order is a topological order.
    """

    dim: int
    gates: tuple[Gate, ...]
    output: int
    names: tuple[str, ...]

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("dimension must be at least 1")
        gates = tuple(self.gates)
        names = tuple(self.names)
        if len(names) != len(gates):
            raise ValueError("one name per gate required")
        if len(set(names)) != len(names):
            raise ValueError("gate names must be unique")
        if not any(isinstance(g, InputGate) for g in gates):
            raise ValueError("a circuit needs at least one input gate")
        if not 0 <= self.output < len(gates):
            raise ValueError("output index out of range")
        for i, g in enumerate(gates):
            if isinstance(g, InputGate):
                if g.ineq.dim != self.dim:
                    raise DimensionMismatchError(
                        f"gate {names[i]!r} has dim {g.ineq.dim}, circuit has {self.dim}"
                    )
            else:
                if any(ch >= i for ch in g.children):
                    raise ValueError(f"gate {names[i]!r} references a later gate")
        object.__setattr__(self, "gates", gates)
        object.__setattr__(self, "names", names)

    def leaves(self) -> tuple[LinearInequality, ...]:
        return tuple(g.ineq for g in self.gates if isinstance(g, InputGate))


@dataclass(frozen=True)
class ParseDiagnostic:
    line: int
    column: int
    message: str
    severity: str = "error"  # or "warning"

    def __str__(self) -> str:
        return f"line {self.line}, col {self.column}: {self.severity}: {self.message}"


_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*$")
_INT_RE = re.compile(r"[+-]?\d+$")
_VAR_RE = re.compile(r"x(\d+)$")


def _parse_ineq_body(tokens, d, diag):
    """Parse `<int> x<k> [+|- <int> x<k>]... (<=|<) <int>` into (a, b, strict)."""
    coeffs = [0] * d
    pos = 0

    def term(sign):
        nonlocal pos
        if pos >= len(tokens) or not _INT_RE.match(tokens[pos]):
            diag(f"expected integer coefficient, got {tokens[pos] if pos < len(tokens) else 'end of line'!r}")
            return False
        coef = int(tokens[pos])
        pos += 1
        m = _VAR_RE.match(tokens[pos]) if pos < len(tokens) else None
        if not m:
            diag("expected variable like x1 after coefficient")
            return False
        k = int(m.group(1))
        if not 1 <= k <= d:
            diag(f"variable x{k} outside dimension {d}")
            return False
        coeffs[k - 1] += sign * coef
        pos += 1
        return True

    if not term(1):
        return None
    while pos < len(tokens) and tokens[pos] in ("+", "-"):
        sign = 1 if tokens[pos] == "+" else -1
        pos += 1
        if not term(sign):
            return None
    if pos >= len(tokens) or tokens[pos] not in ("<=", "<"):
        diag("expected relation <= or <")
        return None
    strict = tokens[pos] == "<"
    pos += 1
    if pos >= len(tokens) or not _INT_RE.match(tokens[pos]):
        diag("expected integer bound")
        return None
    b = int(tokens[pos])
    pos += 1
    if pos != len(tokens):
        diag(f"unexpected trailing tokens: {' '.join(tokens[pos:])}")
        return None
    if not any(coeffs):
        diag("zero coefficient row")
        return None
    return tuple(coeffs), b, strict


def parse_circuit_with_diagnostics(
    text: str,
) -> tuple[Optional[PolyhedraCircuit], list[ParseDiagnostic]]:
    """Parse circuit text; returns (circuit or None, all diagnostics).

    The circuit is None exactly when an error-severity diagnostic was
    produced; unused-gate warnings do not fail the parse.
    """
    diags: list[ParseDiagnostic] = []
    dim: Optional[int] = None
    gates: list[Gate] = []
    names: list[str] = []
    index: dict[str, int] = {}
    output_name: Optional[str] = None
    output_line = 0

    def err(lineno, msg, col=1):
        diags.append(ParseDiagnostic(lineno, col, msg))

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if output_name is not None:
            err(lineno, "statement after output line")
            continue
        tokens = line.split()
        head = tokens[0]
        if dim is None:
            if head != "dim":
                err(lineno, "first statement must be `dim <d>`")
                return None, diags
            if len(tokens) != 2 or not tokens[1].isdigit() or int(tokens[1]) < 1:
                err(lineno, "dim needs a positive integer")
                return None, diags
            dim = int(tokens[1])
            continue
        if head == "dim":
            err(lineno, "duplicate dim statement")
        elif head == "ineq":
            m = re.match(r"ineq\s+([A-Za-z_][A-Za-z0-9_]*)\s*:\s*(.+)$", line)
            if not m:
                err(lineno, "malformed ineq statement")
                continue
            name, body = m.group(1), m.group(2)
            if name in index:
                err(lineno, f"duplicate name {name!r}")
                continue
            parsed = _parse_ineq_body(
                body.split(), dim, lambda msg: err(lineno, msg)
            )
            if parsed is None:
                continue
            a, b, strict = parsed
            index[name] = len(gates)
            gates.append(InputGate(LinearInequality(a, b, strict)))
            names.append(name)
        elif head == "gate":
            m = re.match(r"gate\s+([A-Za-z_][A-Za-z0-9_]*)\s*:\s*(and|or)((?:\s+[A-Za-z_][A-Za-z0-9_]*)+)$", line)
            if not m:
                err(lineno, "malformed gate statement")
                continue
            name, op, kids = m.group(1), m.group(2), m.group(3).split()
            if name in index:
                err(lineno, f"duplicate name {name!r}")
                continue
            child_ids = []
            ok = True
            for k in kids:
                if k not in index:
                    err(lineno, f"undefined gate reference {k!r}")
                    ok = False
                else:
                    child_ids.append(index[k])
            if not ok:
                continue
            index[name] = len(gates)
            gates.append(OpGate(op, tuple(child_ids)))
            names.append(name)
        elif head == "output":
            if len(tokens) != 2 or not _NAME_RE.match(tokens[1]):
                err(lineno, "malformed output statement")
                continue
            if tokens[1] not in index:
                err(lineno, f"undefined gate reference {tokens[1]!r}")
                continue
            output_name = tokens[1]
            output_line = lineno
        else:
            err(lineno, f"unknown statement {head!r}")

    if dim is None:
        err(1, "empty circuit text")
        return None, diags
    if output_name is None:
        err(len(text.splitlines()) or 1, "missing output")
    if not any(isinstance(g, InputGate) for g in gates):
        err(1, "circuit has no input gates")
    if any(d.severity == "error" for d in diags):
        return None, diags

    out = index[output_name]
    reachable = set()
    stack = [out]
    while stack:
        g = stack.pop()
        if g in reachable:
            continue
        reachable.add(g)
        gate = gates[g]
        if isinstance(gate, OpGate):
            stack.extend(gate.children)
    for i, name in enumerate(names):
        if i not in reachable:
            diags.append(
                ParseDiagnostic(output_line, 1, f"gate {name!r} is unused", "warning")
            )

    return PolyhedraCircuit(dim, tuple(gates), out, tuple(names)), diags


def parse_circuit(text: str) -> PolyhedraCircuit:
    """Parse circuit text, raising CircuitParseError on any error."""
    circuit, diags = parse_circuit_with_diagnostics(text)
    if circuit is None:
        raise CircuitParseError([d for d in diags if d.severity == "error"])
    return circuit


def format_circuit(c: PolyhedraCircuit) -> str:
    """Render a circuit back to its text form (reparses to an equal circuit)."""
    lines = [f"dim {c.dim}"]
    for name, gate in zip(c.names, c.gates):
        if isinstance(gate, InputGate):
            iq = gate.ineq
            parts = []
            for k, coef in enumerate(iq.a, start=1):
                if coef == 0:
                    continue
                if not parts:
                    parts.append(f"{coef} x{k}")
                elif coef < 0:
                    parts.append(f"- {-coef} x{k}")
                else:
                    parts.append(f"+ {coef} x{k}")
            rel = "<" if iq.strict else "<="
            lines.append(f"ineq {name}: {' '.join(parts)} {rel} {iq.b}")
        else:
            kids = " ".join(c.names[ch] for ch in gate.children)
            lines.append(f"gate {name}: {gate.op} {kids}")
    lines.append(f"output {c.names[c.output]}")
    return "\n".join(lines) + "\n"


def contains(c: PolyhedraCircuit, p: Point) -> bool:
    """Exact membership of a point in the circuit's region."""
    if len(p) != c.dim:
        raise DimensionMismatchError(
            f"point has dim {len(p)}, circuit has dim {c.dim}"
        )
    values: list[bool] = []
    for gate in c.gates:
        if isinstance(gate, InputGate):
            values.append(gate.ineq.satisfied_by(p))
        elif gate.op == AND:
            values.append(all(values[ch] for ch in gate.children))
        else:
            values.append(any(values[ch] for ch in gate.children))
    return values[c.output]


def _map_leaves(c: PolyhedraCircuit, f) -> PolyhedraCircuit:
    gates = tuple(
        InputGate(f(g.ineq)) if isinstance(g, InputGate) else g for g in c.gates
    )
    return PolyhedraCircuit(c.dim, gates, c.output, c.names)


def canonicalize_for_volume(c: PolyhedraCircuit) -> PolyhedraCircuit:
    """Close every strict leaf; the region changes only on a measure-zero set."""
    return _map_leaves(c, lambda iq: iq.closed())


def canonicalize_for_lattice(c: PolyhedraCircuit) -> PolyhedraCircuit:
    """Rewrite strict leaves a.x < b as a.x <= b-1.

    Membership of every integer point is preserved exactly because the
    leaf data is integer.
    """
    return _map_leaves(
        c,
        lambda iq: LinearInequality(iq.a, iq.b - 1, False) if iq.strict else iq,
    )


def union_circuit(polys: Sequence[HPolyhedron]) -> PolyhedraCircuit:
    """One intersection gate per polyhedron, a single union output over them."""
    if not polys:
        raise ValueError("empty polyhedron list")
    dim = polys[0].dim
    gates: list[Gate] = []
    names: list[str] = []
    tops = []
    for i, poly in enumerate(polys, start=1):
        if poly.dim != dim:
            raise DimensionMismatchError("polyhedra have mixed dimensions")
        if not poly.rows:
            raise ValueError(f"polyhedron {i} has no rows")
        kids = []
        for j, row in enumerate(poly.rows, start=1):
            names.append(f"h{i}_{j}")
            gates.append(InputGate(row))
            kids.append(len(gates) - 1)
        names.append(f"p{i}")
        gates.append(OpGate(AND, tuple(kids)))
        tops.append(len(gates) - 1)
    names.append("union")
    gates.append(OpGate(OR, tuple(tops)))
    return PolyhedraCircuit(dim, tuple(gates), len(gates) - 1, tuple(names))


def merge_as_union(circuits: Sequence[PolyhedraCircuit]) -> PolyhedraCircuit:
    """Combine whole circuits under one union output (gate ids re-based)."""
    if not circuits:
        raise ValueError("empty circuit list")
    dim = circuits[0].dim
    gates: list[Gate] = []
    names: list[str] = []
    tops = []
    for i, c in enumerate(circuits, start=1):
        if c.dim != dim:
            raise DimensionMismatchError("circuits have mixed dimensions")
        base = len(gates)
        for name, gate in zip(c.names, c.gates):
            if isinstance(gate, OpGate):
                gate = OpGate(gate.op, tuple(ch + base for ch in gate.children))
            gates.append(gate)
            names.append(f"c{i}_{name}")
        tops.append(base + c.output)
    names.append("union")
    gates.append(OpGate(OR, tuple(tops)))
    return PolyhedraCircuit(dim, tuple(gates), len(gates) - 1, tuple(names))


def clip_circuit(c: PolyhedraCircuit, bounds: Sequence[tuple]) -> PolyhedraCircuit:
    """Intersect the circuit region with a closed axis-aligned box.

    Bounds are per-coordinate (lo, hi) rationals; rational bounds become
    integer rows by scaling.
    """
    if len(bounds) != c.dim:
        raise DimensionMismatchError("clip box dimension mismatch")
    gates = list(c.gates)
    names = list(c.names)
    kids = [c.output]
    for i, (lo, hi) in enumerate(bounds, start=1):
        lo, hi = Fraction(lo), Fraction(hi)
        e = [0] * c.dim
        e[i - 1] = hi.denominator
        gates.append(InputGate(LinearInequality(tuple(e), hi.numerator)))
        names.append(f"_clip_hi{i}")
        kids.append(len(gates) - 1)
        e = [0] * c.dim
        e[i - 1] = -lo.denominator
        gates.append(InputGate(LinearInequality(tuple(e), -lo.numerator)))
        names.append(f"_clip_lo{i}")
        kids.append(len(gates) - 1)
    names.append("_clipped")
    gates.append(OpGate(AND, tuple(kids)))
    return PolyhedraCircuit(c.dim, tuple(gates), len(gates) - 1, tuple(names))
