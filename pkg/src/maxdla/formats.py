"""Text formats: digraph instance files and DIMACS 2-CNF.

Instance file::

    # comments start with '#'
    n m
    tail head [multiplicity]      (m lines, 0-based indices)
    name index label              (optional, any number of lines)

2-CNF files follow DIMACS (``p cnf V C`` then zero-terminated clauses),
restricted to clauses of at most two literals.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .core import Digraph
from .errors import InputError
from .relations import Literal, TwoCnf


class ParseError(InputError):
    """Malformed input; ``kind`` is one of syntax, range, loop, multiplicity, clause-size."""

    def __init__(self, kind: str, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.kind = kind
        self.line = line
        self.column = column


@dataclass
class Instance:
    digraph: Digraph
    names: list[str] = field(default_factory=list)

    def label(self, v: int) -> str:
        return self.names[v] if self.names else str(v)

    def vertex(self, token: str) -> int:
        """Vertex index for a label or a plain index."""
        if self.names and token in self.names:
            return self.names.index(token)
        try:
            v = int(token)
        except ValueError:
            raise InputError(f"unknown vertex {token!r}") from None
        if not 0 <= v < self.digraph.n:
            raise InputError(f"vertex {v} outside 0..{self.digraph.n - 1}")
        return v


def _tokens(text: str):
    """Yield ``(line_no, [(column, token), ...])`` for non-blank, non-comment lines."""
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        toks = []
        col = 0
        for part in line.split():
            col = line.index(part, col)
            toks.append((col + 1, part))
            col += len(part)
        if toks:
            yield no, toks


def _int(tok: tuple[int, str], line: int) -> int:
    col, s = tok
    try:
        return int(s)
    except ValueError:
        raise ParseError("syntax", f"expected an integer, got {s!r}", line, col) from None


def parse_instance(text: str) -> Instance:
    lines = list(_tokens(text))
    if not lines:
        raise ParseError("syntax", "missing 'n m' header", 1, 1)
    no, head = lines[0]
    if len(head) != 2:
        raise ParseError("syntax", "header must be 'n m'", no, head[0][0])
    n, m = _int(head[0], no), _int(head[1], no)
    if n < 0 or m < 0:
        raise ParseError("range", "n and m must be non-negative", no, head[0][0])
    body = lines[1:]
    if len(body) < m:
        line = body[-1][0] + 1 if body else no + 1
        raise ParseError("syntax", f"expected {m} arc lines, found {len(body)}", line, 1)
    arcs: dict[tuple[int, int], int] = {}
    for no, toks in body[:m]:
        if len(toks) not in (2, 3):
            raise ParseError("syntax", "arc line must be 'tail head [multiplicity]'", no, toks[0][0])
        t, h = _int(toks[0], no), _int(toks[1], no)
        for tok, v in ((toks[0], t), (toks[1], h)):
            if not 0 <= v < n:
                raise ParseError("range", f"vertex {v} outside 0..{n - 1}", no, tok[0])
        if t == h:
            raise ParseError("loop", f"loop at vertex {t}", no, toks[0][0])
        mult = _int(toks[2], no) if len(toks) == 3 else 1
        if mult < 1:
            raise ParseError("multiplicity", f"multiplicity must be at least 1, got {mult}", no, toks[2][0])
        arcs[(t, h)] = arcs.get((t, h), 0) + mult
    names: list[str] = []
    if body[m:]:
        names = [str(v) for v in range(n)]
        for no, toks in body[m:]:
            if toks[0][1] != "name" or len(toks) != 3:
                raise ParseError("syntax", "expected 'name index label' after the arcs", no, toks[0][0])
            v = _int(toks[1], no)
            if not 0 <= v < n:
                raise ParseError("range", f"vertex {v} outside 0..{n - 1}", no, toks[1][0])
            names[v] = toks[2][1]
        if len(set(names)) != n:
            raise ParseError("syntax", "vertex labels must be distinct", body[m][0], 1)
    return Instance(Digraph(n, arcs), names)


def parse_digraph(text: str) -> Digraph:
    return parse_instance(text).digraph


def serialize_digraph(D: Digraph, names: list[str] | None = None) -> str:
    lines = [f"{D.n} {len(D.arcs)}"]
    for (t, h), m in D.arcs.items():
        lines.append(f"{t} {h}" if m == 1 else f"{t} {h} {m}")
    for v, label in enumerate(names or []):
        lines.append(f"name {v} {label}")
    return "\n".join(lines) + "\n"


def parse_2cnf(text: str) -> TwoCnf:
    num_vars = None
    clauses: list[tuple[Literal, ...]] = []
    current: list[tuple[int, int, int]] = []  # (literal, line, column)
    for no, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("c") or stripped.startswith("%"):
            continue
        if stripped.startswith("p"):
            parts = stripped.split()
            if num_vars is not None:
                raise ParseError("syntax", "duplicate problem line", no, 1)
            if len(parts) != 4 or parts[1] != "cnf":
                raise ParseError("syntax", "problem line must be 'p cnf VARS CLAUSES'", no, 1)
            num_vars = _int((raw.index(parts[2]) + 1, parts[2]), no)
            continue
        if num_vars is None:
            raise ParseError("syntax", "clause before the 'p cnf' line", no, 1)
        col = 0
        for part in raw.split():
            col = raw.index(part, col)
            lit = _int((col + 1, part), no)
            if lit == 0:
                if not current:
                    raise ParseError("syntax", "empty clause", no, col + 1)
                if len(current) > 2:
                    _, l0, c0 = current[0]
                    raise ParseError("clause-size", f"clause has {len(current)} literals; at most 2 allowed", l0, c0)
                vars_ = [abs(x) for x, _, _ in current]
                if len(set(vars_)) != len(vars_):
                    _, l0, c0 = current[0]
                    raise ParseError("syntax", "clause repeats a variable", l0, c0)
                clauses.append(tuple(Literal(abs(x) - 1, x > 0) for x, _, _ in current))
                current = []
            else:
                if abs(lit) > num_vars:
                    raise ParseError("range", f"variable {abs(lit)} outside 1..{num_vars}", no, col + 1)
                current.append((lit, no, col + 1))
            col += len(part)
    if num_vars is None:
        raise ParseError("syntax", "missing 'p cnf' line", 1, 1)
    if current:
        _, l0, c0 = current[0]
        raise ParseError("syntax", "last clause is not terminated by 0", l0, c0)
    return TwoCnf(num_vars, tuple(clauses))


def serialize_2cnf(phi: TwoCnf) -> str:
    lines = [f"p cnf {phi.num_vars} {len(phi.clauses)}"]
    for c in phi.clauses:
        lines.append(" ".join(str((lit.var + 1) * (1 if lit.positive else -1)) for lit in c) + " 0")
    return "\n".join(lines) + "\n"


def looks_like_dimacs(text: str) -> bool:
    for raw in text.splitlines():
        s = raw.strip()
        if s and not s.startswith("#"):
            return s.startswith("p") or s.startswith("c")
    return False
