"""Line-oriented netlist format for gate networks (.unet).

Grammar (one statement per line, ``#`` starts a comment, keywords are
case-insensitive, statements apply chronologically top to bottom):

    register <width>                          required first statement
    a    <control> <target> <phi> <alpha> <theta>
    ainv <control> <target> <phi> <alpha> <theta>
    v    <c1> <c2> <target> <phi> <alpha> <theta>
    vbar <c1> <c2> <target> <phi> <alpha> <theta>
    p    <c1> <c2> <target> <phi>
    q    <c1> <c2> <target>
    rz   <c1> <c2> <target> <beta>

Angles are decimal radians; the literal ``pi`` is accepted alone or with a
coefficient, divisor, or factor (``pi/2``, ``3pi/4``, ``2pi*0.618``).
Serialization is canonical: lowercase keywords, single spaces, angles as
17-significant-digit decimals, so parse(serialize(doc)) == doc exactly.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .gates import GateParams, Placement
from .synth import Network, NetOp, OpKind, apply_network, eval_network


class ErrorKind(Enum):
    SYNTAX = "SYNTAX"
    BAD_INDEX = "BAD_INDEX"
    BAD_PARAM = "BAD_PARAM"
    DUPLICATE_QUBIT = "DUPLICATE_QUBIT"
    UNKNOWN_GATE = "UNKNOWN_GATE"
    MISSING_HEADER = "MISSING_HEADER"


class ParseError(Exception):
    """Parse failure with 1-based source position; the first error wins."""

    def __init__(self, kind: ErrorKind, line: int, column: int, message: str):
        super().__init__(f"{kind.value} at line {line}, column {column}: {message}")
        self.kind = kind
        self.line = line
        self.column = column
        self.message = message


@dataclass(frozen=True)
class Document:
    """Parsed netlist: a register width plus chronological ops."""

    width: int
    ops: tuple[NetOp, ...]

    def to_network(self) -> Network:
        return Network(self.width, self.ops)


# arity = number of qubit tokens, number of angle tokens
_GATE_SHAPE = {
    "a": (OpKind.A, 2, 3),
    "ainv": (OpKind.A_INV, 2, 3),
    "v": (OpKind.V, 3, 3),
    "vbar": (OpKind.VBAR, 3, 3),
    "p": (OpKind.P, 3, 1),
    "q": (OpKind.Q, 3, 0),
    "rz": (OpKind.RZ, 3, 1),
}

_PI_RE = re.compile(
    r"([+-]?)((?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?)?pi(?:([*/])((?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?))?",
    re.IGNORECASE,
)


def _parse_angle(token: str) -> float | None:
    m = _PI_RE.fullmatch(token)
    if m:
        sign, coef, op, operand = m.groups()
        value = (float(coef) if coef else 1.0) * math.pi
        if op == "*":
            value *= float(operand)
        elif op == "/":
            value /= float(operand)
        return -value if sign == "-" else value
    try:
        return float(token)
    except ValueError:
        return None


def _tokenize(line: str) -> list[tuple[str, int]]:
    """(token, 1-based column) pairs; text after '#' is dropped."""
    code = line.split("#", 1)[0]
    return [(m.group(0), m.start() + 1) for m in re.finditer(r"\S+", code)]


def parse(text: str) -> Document:
    """Parse netlist text; raises ParseError at the first problem."""
    width: int | None = None
    ops: list[NetOp] = []
    saw_statement = False
    for lineno, line in enumerate(text.splitlines(), start=1):
        tokens = _tokenize(line)
        if not tokens:
            continue
        keyword, kw_col = tokens[0][0].lower(), tokens[0][1]
        if not saw_statement:
            saw_statement = True
            if keyword != "register":
                raise ParseError(
                    ErrorKind.MISSING_HEADER, lineno, kw_col,
                    "first statement must be 'register <width>'",
                )
            if len(tokens) != 2:
                raise ParseError(ErrorKind.SYNTAX, lineno, kw_col, "usage: register <width>")
            wtok, wcol = tokens[1]
            try:
                width = int(wtok)
            except ValueError:
                raise ParseError(ErrorKind.SYNTAX, lineno, wcol, f"width must be an integer, got {wtok!r}") from None
            if width < 1:
                raise ParseError(ErrorKind.BAD_INDEX, lineno, wcol, f"width must be at least 1, got {width}")
            continue
        if keyword == "register":
            raise ParseError(ErrorKind.SYNTAX, lineno, kw_col, "duplicate register statement")
        if keyword not in _GATE_SHAPE:
            raise ParseError(ErrorKind.UNKNOWN_GATE, lineno, kw_col, f"unknown gate {tokens[0][0]!r}")
        kind, n_qubits, n_angles = _GATE_SHAPE[keyword]
        if len(tokens) != 1 + n_qubits + n_angles:
            raise ParseError(
                ErrorKind.SYNTAX, lineno, kw_col,
                f"{keyword} takes {n_qubits} qubit(s) and {n_angles} angle(s), got {len(tokens) - 1} token(s)",
            )
        qubits = []
        for tok, col in tokens[1 : 1 + n_qubits]:
            try:
                q = int(tok)
            except ValueError:
                raise ParseError(ErrorKind.BAD_INDEX, lineno, col, f"qubit index must be an integer, got {tok!r}") from None
            if not (1 <= q <= width):
                raise ParseError(ErrorKind.BAD_INDEX, lineno, col, f"qubit index {q} outside 1..{width}")
            qubits.append(q)
        if len(set(qubits)) != len(qubits):
            raise ParseError(
                ErrorKind.DUPLICATE_QUBIT, lineno, tokens[1][1],
                f"{keyword} qubits must be distinct, got {tuple(qubits)}",
            )
        angles = []
        for tok, col in tokens[1 + n_qubits :]:
            value = _parse_angle(tok)
            if value is None or not math.isfinite(value):
                raise ParseError(ErrorKind.BAD_PARAM, lineno, col, f"bad angle {tok!r}")
            angles.append(value)
        placement = Placement(tuple(qubits[:-1]), qubits[-1], width)
        if n_angles == 3:
            params: GateParams | float | None = GateParams(*angles)
        elif n_angles == 1:
            params = angles[0]
        else:
            params = None
        ops.append(NetOp(kind, placement, params))
    if width is None:
        raise ParseError(ErrorKind.MISSING_HEADER, 1, 1, "empty input: missing 'register <width>'")
    return Document(width, tuple(ops))


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def serialize(doc: Document) -> str:
    """Canonical text form; round-trips through parse exactly."""
    lines = [f"register {doc.width}"]
    for op in doc.ops:
        fields = [op.kind.value, *map(str, op.placement.controls), str(op.placement.target)]
        if isinstance(op.params, GateParams):
            fields += [_fmt(op.params.phi), _fmt(op.params.alpha), _fmt(op.params.theta)]
        elif op.params is not None:
            fields.append(_fmt(op.params))
        lines.append(" ".join(fields))
    return "\n".join(lines) + "\n"


def run(doc: Document, initial: np.ndarray | None = None) -> np.ndarray:
    """Evaluate the netlist: the full matrix, or the final state when an
    initial state vector is supplied."""
    net = doc.to_network()
    if initial is None:
        return eval_network(net)
    return apply_network(net, initial)
