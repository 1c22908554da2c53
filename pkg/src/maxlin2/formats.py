"""Text formats: equation systems, odd-set instances, graphs, assignments.

All formats follow the DIMACS convention: `c` comment lines, one `p` header
line, then one record per line. Variable and vertex indices are 1-based in
files and 0-based in memory.
"""

from __future__ import annotations

from .bipartize import Edge, Graph, GraphError
from .core import Equation, LinSystem, MaxLin2Error
from .gadgets import OddSetInstance


class FormatError(MaxLin2Error):
    """Malformed input text."""

    def __init__(self, lineno: int, message: str) -> None:
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


def _content_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        yield lineno, line


def _ints(lineno: int, tokens) -> list[int]:
    out = []
    for tok in tokens:
        try:
            out.append(int(tok))
        except ValueError:
            raise FormatError(lineno, f"expected an integer, got {tok!r}") from None
    return out


def parse_lin2(text: str) -> LinSystem:
    """Parse `p lin2 <n> <m>` plus m records `<w> <b> <r> <i1> ... <ir>`."""
    header = None
    eqs: list[Equation] = []
    for lineno, line in _content_lines(text):
        tokens = line.split()
        if tokens[0] == "p":
            if header is not None:
                raise FormatError(lineno, "duplicate header")
            if len(tokens) != 4 or tokens[1] != "lin2":
                raise FormatError(lineno, "header must be 'p lin2 <n> <m>'")
            n, m = _ints(lineno, tokens[2:])
            if n < 0 or m < 0:
                raise FormatError(lineno, "header counts must be nonnegative")
            header = (n, m)
            continue
        if header is None:
            raise FormatError(lineno, "record before header")
        values = _ints(lineno, tokens)
        if len(values) < 3:
            raise FormatError(lineno, "record needs weight, rhs and arity")
        weight, rhs, arity = values[:3]
        indices = values[3:]
        if weight < 1:
            raise FormatError(lineno, f"weight must be >= 1, got {weight}")
        if rhs not in (0, 1):
            raise FormatError(lineno, f"rhs must be 0 or 1, got {rhs}")
        if arity < 0 or len(indices) != arity:
            raise FormatError(lineno, f"expected {arity} indices, got {len(indices)}")
        for a, b in zip(indices, indices[1:]):
            if b == a:
                raise FormatError(lineno, f"duplicate index {a}")
            if b < a:
                raise FormatError(lineno, "indices must be strictly ascending")
        for i in indices:
            if not 1 <= i <= header[0]:
                raise FormatError(lineno, f"index {i} out of range 1..{header[0]}")
        eqs.append(Equation(tuple(i - 1 for i in indices), rhs, weight))
    if header is None:
        raise FormatError(0, "missing header")
    if len(eqs) != header[1]:
        raise FormatError(0, f"header declares {header[1]} records, found {len(eqs)}")
    return LinSystem(header[0], tuple(eqs))


def emit_lin2(system: LinSystem, comments=()) -> str:
    """Serialize a system; forced_falsified survives only as a comment."""
    lines = [f"c {comment}" for comment in comments]
    if system.forced_falsified:
        lines.append(f"c forced-falsified {system.forced_falsified}")
    lines.append(f"p lin2 {system.n} {len(system.equations)}")
    for eqn in system.equations:
        indices = " ".join(str(v + 1) for v in eqn.lhs)
        record = f"{eqn.weight} {eqn.rhs} {eqn.arity}"
        lines.append(f"{record} {indices}" if indices else record)
    return "\n".join(lines) + "\n"


def parse_oddset(text: str) -> OddSetInstance:
    """Parse `p ods <n> <m> <k>` plus m records `<r> <j1> ... <jr>`."""
    header = None
    sets: list[tuple[int, ...]] = []
    seen: set[tuple[int, ...]] = set()
    for lineno, line in _content_lines(text):
        tokens = line.split()
        if tokens[0] == "p":
            if header is not None:
                raise FormatError(lineno, "duplicate header")
            if len(tokens) != 5 or tokens[1] != "ods":
                raise FormatError(lineno, "header must be 'p ods <n> <m> <k>'")
            n, m, k = _ints(lineno, tokens[2:])
            if n < 0 or m < 0 or k < 0:
                raise FormatError(lineno, "header counts must be nonnegative")
            header = (n, m, k)
            continue
        if header is None:
            raise FormatError(lineno, "record before header")
        values = _ints(lineno, tokens)
        size = values[0]
        members = values[1:]
        if size < 1:
            raise FormatError(lineno, "empty set not allowed")
        if len(members) != size:
            raise FormatError(lineno, f"expected {size} elements, got {len(members)}")
        if len(set(members)) != size:
            raise FormatError(lineno, "repeated element in set")
        for j in members:
            if not 1 <= j <= header[0]:
                raise FormatError(lineno, f"element {j} out of range 1..{header[0]}")
        canonical = tuple(sorted(j - 1 for j in members))
        if canonical in seen:
            raise FormatError(lineno, "duplicate set")
        seen.add(canonical)
        sets.append(canonical)
    if header is None:
        raise FormatError(0, "missing header")
    if len(sets) != header[1]:
        raise FormatError(0, f"header declares {header[1]} sets, found {len(sets)}")
    return OddSetInstance(header[0], tuple(sets), header[2])


def parse_graph(text: str) -> Graph:
    """Parse `p graph <n> <m>` plus m edge records `<u> <v>`."""
    header = None
    edges: list[Edge] = []
    for lineno, line in _content_lines(text):
        tokens = line.split()
        if tokens[0] == "p":
            if header is not None:
                raise FormatError(lineno, "duplicate header")
            if len(tokens) != 4 or tokens[1] != "graph":
                raise FormatError(lineno, "header must be 'p graph <n> <m>'")
            n, m = _ints(lineno, tokens[2:])
            if n < 0 or m < 0:
                raise FormatError(lineno, "header counts must be nonnegative")
            header = (n, m)
            continue
        if header is None:
            raise FormatError(lineno, "record before header")
        values = _ints(lineno, tokens)
        if len(values) != 2:
            raise FormatError(lineno, "edge record must be '<u> <v>'")
        u, v = values
        for x in (u, v):
            if not 1 <= x <= header[0]:
                raise FormatError(lineno, f"vertex {x} out of range 1..{header[0]}")
        try:
            edges.append(Edge(u - 1, v - 1))
        except GraphError as exc:
            raise FormatError(lineno, str(exc)) from None
    if header is None:
        raise FormatError(0, "missing header")
    if len(edges) != header[1]:
        raise FormatError(0, f"header declares {header[1]} edges, found {len(edges)}")
    return Graph(header[0], tuple(edges))


def parse_assignment(text: str, n: int) -> tuple[int, ...]:
    """Parse a single line of n space-separated bits."""
    lines = [line for _, line in _content_lines(text)]
    if len(lines) != 1:
        raise FormatError(0, f"expected one assignment line, found {len(lines)}")
    values = _ints(1, lines[0].split())
    if len(values) != n:
        raise FormatError(1, f"expected {n} bits, got {len(values)}")
    if any(b not in (0, 1) for b in values):
        raise FormatError(1, "assignment entries must be 0 or 1")
    return tuple(values)


def emit_assignment(assignment) -> str:
    return " ".join(str(b) for b in assignment) + "\n"
