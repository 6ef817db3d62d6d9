"""Line-oriented hypergraph spec files.

::

    # three-term progressions on the line
    prime 2147483647
    hypergraph n=1 t=3
    components asserted      # optional: cells are the irreducible components
    cell
      eq  x3_1 - 2*x2_1 + x1_1
      neq x1_1 - x2_1
    end

Variables are ``x<i>_<j>`` (slot i, coordinate j, both 1-based).  A file may
instead declare ``split n=<int> m=<int>`` for a set in F^n x F^m, with
variables ``u1..un`` and ``v1..vm``.  Only integer literals appear, so a file
instantiates over any prime.
"""

from __future__ import annotations

import re

from .builders import SplitSet, split_ring
from .errors import ParseError
from .geometry import Cell, ConstructibleSet
from .hypergraph import DefinableHypergraph, hypergraph_ring
from .polycore import DEFAULT_PRIME
from .polyparse import parse_polynomial

_HEADER = re.compile(r"(hypergraph|split)\s+(\w+)\s*=\s*(\d+)\s+(\w+)\s*=\s*(\d+)\s*$")


def _strip(line):
    return line.split("#", 1)[0].rstrip()


def parse_spec(text: str, prime: int | None = None):
    """Parse a spec file into a DefinableHypergraph (or a SplitSet).

    ``prime`` overrides the file's ``prime`` line.
    """
    p = None
    header = None
    components = False
    cells = []
    current = None
    ring = None
    last_line = 0
    for lineno, raw in enumerate(text.splitlines(), 1):
        last_line = lineno
        line = _strip(raw)
        body = line.lstrip()
        if not body:
            continue
        col = len(line) - len(body) + 1
        word, _, rest = body.partition(" ")
        rest_col = col + len(word) + (len(rest) - len(rest.lstrip())) + 1
        rest = rest.strip()
        if word == "prime":
            if p is not None or header is not None:
                raise ParseError("'prime' must come once, before the header", lineno, col)
            if not rest.isdigit():
                raise ParseError("prime must be a positive integer", lineno, rest_col)
            p = int(rest)
        elif word in ("hypergraph", "split"):
            if header is not None:
                raise ParseError("duplicate header", lineno, col)
            m = _HEADER.match(body)
            if m is None:
                raise ParseError(f"expected '{word} <a>=<int> <b>=<int>'", lineno, col)
            kind, k1, v1, k2, v2 = m.groups()
            want = ("n", "t") if kind == "hypergraph" else ("n", "m")
            if (k1, k2) != want:
                raise ParseError(f"expected parameters {want[0]}= and {want[1]}=", lineno, col)
            a, b = int(v1), int(v2)
            if a < 1 or b < 1:
                raise ParseError("parameters must be positive", lineno, col)
            header = (kind, a, b)
            q = prime or p or DEFAULT_PRIME
            try:
                ring = hypergraph_ring(a, b, q) if kind == "hypergraph" else split_ring(a, b, q)
            except ValueError as exc:
                raise ParseError(str(exc), lineno, col) from None
        elif word == "components":
            if rest != "asserted":
                raise ParseError("expected 'components asserted'", lineno, col)
            components = True
        elif word == "cell":
            if ring is None:
                raise ParseError("'cell' before the header", lineno, col)
            if current is not None:
                raise ParseError("nested 'cell'", lineno, col)
            current = ([], [])
        elif word == "end":
            if current is None:
                raise ParseError("'end' without 'cell'", lineno, col)
            cells.append(Cell.make(ring, current[0], current[1]))
            current = None
        elif word.rstrip(":") in ("eq", "neq"):
            if current is None:
                raise ParseError(f"'{word}' outside a cell", lineno, col)
            if not rest:
                raise ParseError("missing polynomial", lineno, rest_col)
            f = parse_polynomial(rest, ring, lineno, rest_col)
            current[0 if word.rstrip(":") == "eq" else 1].append(f)
        else:
            raise ParseError(f"unknown directive {word!r}", lineno, col)
    if current is not None:
        raise ParseError("unterminated cell", last_line + 1, 1)
    if header is None:
        raise ParseError("missing 'hypergraph' or 'split' header", last_line + 1, 1)
    kind, a, b = header
    S = ConstructibleSet(ring, tuple(cells))
    if kind == "hypergraph":
        return DefinableHypergraph(a, b, S, components)
    return SplitSet(S, a, b)


def emit_spec(obj) -> str:
    """Canonical text for a DefinableHypergraph or SplitSet."""
    S = obj.set
    lines = [f"prime {S.ring.p}"]
    if isinstance(obj, DefinableHypergraph):
        lines.append(f"hypergraph n={obj.n} t={obj.t}")
        if obj.components_asserted:
            lines.append("components asserted")
    else:
        lines.append(f"split n={obj.n} m={obj.m}")
    for cell in S.cells:
        lines.append("cell")
        lines += [f"  eq {f.to_str()}" for f in cell.equations.generators]
        lines += [f"  neq {g.to_str()}" for g in cell.inequations]
        lines.append("end")
    return "\n".join(lines) + "\n"
