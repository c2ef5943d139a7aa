"""graph6 interchange (one graph per line, optional ``>>graph6<<`` header)."""

from __future__ import annotations

from typing import Iterator, TextIO

from .graph import Graph, GraphError, build

HEADER = ">>graph6<<"


class Graph6Error(GraphError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"graph6 parse error at byte {offset}: {message}")
        self.offset = offset


def _encode_n(n: int) -> str:
    if n < 63:
        return chr(n + 63)
    if n < 258048:
        return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    if n < 68719476736:
        return "~~" + "".join(chr(((n >> s) & 63) + 63) for s in (30, 24, 18, 12, 6, 0))
    raise GraphError(f"graph6 cannot encode n={n}")


def encode(g: Graph) -> str:
    bits = [1 if g.has_edge(i, j) else 0 for j in range(1, g.n) for i in range(j)]
    bits += [0] * (-len(bits) % 6)
    body = "".join(
        chr(63 + int("".join(map(str, bits[k:k + 6])), 2)) for k in range(0, len(bits), 6)
    )
    return _encode_n(g.n) + body


def _sextets(text: str, start: int, count: int) -> list[int]:
    if len(text) < start + count:
        raise Graph6Error("truncated size field", len(text))
    out = []
    for k in range(start, start + count):
        c = ord(text[k]) - 63
        if not 0 <= c < 64:
            raise Graph6Error(f"byte {text[k]!r} outside the printable range", k)
        out.append(c)
    return out


def decode(text: str) -> Graph:
    line = text.strip()
    base = 0
    if line.startswith(HEADER):
        line = line[len(HEADER):]
        base = len(HEADER)
    if not line:
        raise Graph6Error("empty input", base)
    if line[0] == "~":
        if len(line) > 1 and line[1] == "~":
            digits, start = _sextets(line, 2, 6), 8
        else:
            digits, start = _sextets(line, 1, 3), 4
        n = 0
        for c in digits:
            n = (n << 6) | c
    else:
        n = _sextets(line, 0, 1)[0]
        start = 1
    nbits = n * (n - 1) // 2
    nbytes = -(-nbits // 6)
    body = line[start:]
    if len(body) != nbytes:
        raise Graph6Error(
            f"expected {nbytes} data bytes for n={n}, found {len(body)}",
            base + start + min(len(body), nbytes),
        )
    edges = []
    k = 0
    for pos, ch in enumerate(body):
        c = ord(ch) - 63
        if not 0 <= c < 64:
            raise Graph6Error(f"byte {ch!r} outside the printable range", base + start + pos)
        for shift in range(5, -1, -1):
            bit = (c >> shift) & 1
            if k >= nbits:
                if bit:
                    raise Graph6Error("non-zero padding bits", base + start + pos)
            elif bit:
                # column-major upper triangle: k enumerates (i, j) with i < j
                j = int(((8 * k + 1) ** 0.5 + 1) / 2)
                while j * (j - 1) // 2 > k:
                    j -= 1
                while (j + 1) * j // 2 <= k:
                    j += 1
                edges.append((k - j * (j - 1) // 2, j))
            k += 1
    return build(n, edges)


def read_all(stream: TextIO) -> Iterator[Graph]:
    for line in stream:
        if line.strip():
            yield decode(line)


def write_all(graphs, stream: TextIO) -> None:
    for g in graphs:
        stream.write(encode(g) + "\n")
