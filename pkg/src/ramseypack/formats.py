"""Text formats: graph6, plain edge lists and the colour-pattern container.

Edge list::

    n m
    u v        (m lines, 0-based)

Pattern container::

    pattern n r
    layer 1 m_1
    u v        (m_1 lines)
    ...
    layer r m_r
    ...

Blank lines and lines starting with ``#`` are ignored by the readers.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .graph import ColourPattern, Graph, GraphError, PatternError

GRAPH6_HEADER = b">>graph6<<"


class FormatError(ValueError):
    def __init__(self, message: str, line: int | None = None, col: int | None = None, source: str = "<input>"):
        self.line, self.col, self.source = line, col, source
        where = source
        if line is not None:
            where += f":{line}"
            if col is not None:
                where += f":{col}"
        super().__init__(f"{where}: {message}")


# -- graph6 -------------------------------------------------------------

def _encode_n(n: int) -> bytes:
    if n < 63:
        return bytes([n + 63])
    if n < 258048:
        return bytes([126] + [((n >> s) & 63) + 63 for s in (12, 6, 0)])
    if n < 68719476736:
        return bytes([126, 126] + [((n >> s) & 63) + 63 for s in (30, 24, 18, 12, 6, 0)])
    raise ValueError("graph6 supports at most 2^36 - 1 vertices")


def to_graph6(g: Graph, header: bool = False) -> bytes:
    """graph6 encoding (no trailing newline)."""
    bits = []
    adj = g.adj
    for j in range(1, g.n):
        row = adj[j]
        for i in range(j):
            bits.append(row >> i & 1)
    bits.extend([0] * (-len(bits) % 6))
    body = bytes(
        63 + (bits[t] << 5 | bits[t + 1] << 4 | bits[t + 2] << 3 | bits[t + 3] << 2 | bits[t + 4] << 1 | bits[t + 5])
        for t in range(0, len(bits), 6)
    )
    return (GRAPH6_HEADER if header else b"") + _encode_n(g.n) + body


def from_graph6(data: bytes | str) -> Graph:
    if isinstance(data, str):
        data = data.encode("ascii")
    data = data.strip()
    if data.startswith(GRAPH6_HEADER):
        data = data[len(GRAPH6_HEADER):]
    if not data:
        raise FormatError("empty graph6 string", 1, 1)
    for pos, b in enumerate(data):
        if not 63 <= b <= 126:
            raise FormatError(f"byte {b!r} outside the graph6 range", 1, pos + 1)
    if data[0] != 126:
        n, off = data[0] - 63, 1
    elif len(data) > 1 and data[1] == 126:
        if len(data) < 8:
            raise FormatError("truncated 36-bit vertex count", 1, 1)
        n, off = 0, 8
        for b in data[2:8]:
            n = n << 6 | (b - 63)
    else:
        if len(data) < 4:
            raise FormatError("truncated 18-bit vertex count", 1, 1)
        n, off = 0, 4
        for b in data[1:4]:
            n = n << 6 | (b - 63)
    nbits = n * (n - 1) // 2
    expected = (nbits + 5) // 6
    body = data[off:]
    if len(body) != expected:
        raise FormatError(f"expected {expected} data bytes for n={n}, got {len(body)}", 1, off + 1)
    adj = [0] * n
    t = 0
    for j in range(1, n):
        for i in range(j):
            b = body[t // 6] - 63
            if b >> (5 - t % 6) & 1:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
            t += 1
    return Graph(n, tuple(adj))


# -- line-oriented readers ----------------------------------------------

@dataclass
class _Lines:
    """Iterator over significant lines, remembering line numbers for diagnostics."""

    rows: list[tuple[int, str]]
    source: str
    pos: int = 0

    @classmethod
    def of(cls, text: str, source: str) -> _Lines:
        rows = []
        for i, raw in enumerate(text.splitlines(), start=1):
            s = raw.strip()
            if s and not s.startswith("#"):
                rows.append((i, raw))
        return cls(rows, source)

    def next(self, what: str) -> tuple[int, list[str], str]:
        if self.pos >= len(self.rows):
            last = self.rows[-1][0] + 1 if self.rows else 1
            raise FormatError(f"unexpected end of input, expected {what}", last, 1, self.source)
        lineno, raw = self.rows[self.pos]
        self.pos += 1
        return lineno, raw.split(), raw

    def ints(self, tokens: list[str], raw: str, lineno: int, count: int, what: str) -> list[int]:
        if len(tokens) != count:
            raise FormatError(f"expected {what} ({count} fields), got {len(tokens)}", lineno, 1, self.source)
        out = []
        col = 0
        for tok in tokens:
            col = raw.index(tok, col)
            try:
                out.append(int(tok))
            except ValueError:
                raise FormatError(f"not an integer: {tok!r}", lineno, col + 1, self.source) from None
            col += len(tok)
        return out

    def done(self) -> bool:
        return self.pos >= len(self.rows)


def _read_edges(lines: _Lines, n: int, m: int) -> list[tuple[int, int]]:
    edges = []
    for _ in range(m):
        lineno, toks, raw = lines.next("an edge 'u v'")
        u, v = lines.ints(toks, raw, lineno, 2, "an edge 'u v'")
        for val, tok in ((u, toks[0]), (v, toks[1])):
            if not 0 <= val < n:
                raise FormatError(f"vertex {val} outside 0..{n - 1}", lineno, raw.index(tok) + 1, lines.source)
        if u == v:
            raise FormatError(f"loop at vertex {u}", lineno, 1, lines.source)
        edges.append((u, v))
    return edges


def parse_edgelist(text: str, source: str = "<input>") -> Graph:
    lines = _Lines.of(text, source)
    lineno, toks, raw = lines.next("header 'n m'")
    n, m = lines.ints(toks, raw, lineno, 2, "header 'n m'")
    if n < 0 or m < 0:
        raise FormatError("negative counts in header", lineno, 1, source)
    g = Graph.from_edges(n, _read_edges(lines, n, m))
    if g.num_edges != m:
        raise FormatError(f"header promises {m} distinct edges, found {g.num_edges}", lineno, 1, source)
    if not lines.done():
        raise FormatError("trailing data after the last edge", lines.rows[lines.pos][0], 1, source)
    return g


def format_edgelist(g: Graph) -> str:
    out = [f"{g.n} {g.num_edges}"]
    out.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(out) + "\n"


def parse_pattern(text: str, source: str = "<input>") -> ColourPattern:
    lines = _Lines.of(text, source)
    lineno, toks, raw = lines.next("header 'pattern n r'")
    if not toks or toks[0] != "pattern":
        raise FormatError("expected header 'pattern n r'", lineno, 1, source)
    n, r = lines.ints(toks[1:], raw, lineno, 2, "header 'pattern n r'")
    if r < 1:
        raise FormatError("a pattern needs r >= 1", lineno, 1, source)
    layers = []
    for i in range(1, r + 1):
        lineno, toks, raw = lines.next(f"'layer {i} m'")
        if not toks or toks[0] != "layer":
            raise FormatError(f"expected 'layer {i} m'", lineno, 1, source)
        idx, m = lines.ints(toks[1:], raw, lineno, 2, f"'layer {i} m'")
        if idx != i:
            raise FormatError(f"layers must appear in order; expected {i}, got {idx}", lineno, 1, source)
        layers.append(Graph.from_edges(n, _read_edges(lines, n, m)))
    if not lines.done():
        raise FormatError("trailing data after the last layer", lines.rows[lines.pos][0], 1, source)
    try:
        return ColourPattern(tuple(layers))
    except PatternError as exc:
        raise FormatError(str(exc), None, None, source) from None


def format_pattern(p: ColourPattern) -> str:
    out = [f"pattern {p.n} {p.r}"]
    for i, g in enumerate(p.layers, start=1):
        out.append(f"layer {i} {g.num_edges}")
        out.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(out) + "\n"


def read_graph(path: str | Path, fmt: str | None = None) -> Graph:
    path = Path(path)
    fmt = fmt or ("graph6" if path.suffix in (".g6", ".graph6") else "edgelist")
    if fmt == "graph6":
        raw = path.read_bytes().strip()
        try:
            return from_graph6(raw.splitlines()[0] if raw else b"")
        except FormatError as exc:
            raise FormatError(str(exc).split(": ", 1)[-1], exc.line, exc.col, str(path)) from None
    try:
        return parse_edgelist(path.read_text(), str(path))
    except GraphError as exc:
        raise FormatError(str(exc), None, None, str(path)) from None


def read_pattern(path: str | Path) -> ColourPattern:
    path = Path(path)
    return parse_pattern(path.read_text(), str(path))
