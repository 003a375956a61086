"""graph6 encoding (McKay's format) and newline-separated graph files."""

from __future__ import annotations

from pathlib import Path
from typing import Iterable

from .graph import MAX_VERTICES, Graph

HEADER = ">>graph6<<"
SHORT_FORM_MAX = 62


class Graph6Error(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at byte {offset})")
        self.offset = offset


def encode(g: Graph) -> str:
    n = g.n
    if n > SHORT_FORM_MAX:
        raise OverflowError(f"graph6 short form supports n <= {SHORT_FORM_MAX}, got {n}")
    out = [chr(63 + n)]
    # Upper triangle in column order: (0,1), (0,2), (1,2), (0,3), ...
    acc = 0
    nbits = 0
    for j in range(1, n):
        col = g.rows[j]
        for i in range(j):
            acc = (acc << 1) | ((col >> i) & 1)
            nbits += 1
            if nbits == 6:
                out.append(chr(63 + acc))
                acc = 0
                nbits = 0
    if nbits:
        out.append(chr(63 + (acc << (6 - nbits))))
    return "".join(out)


def decode(text: str) -> Graph:
    s = text.strip()
    base = 0
    if s.startswith(HEADER):
        s = s[len(HEADER):]
        base = len(HEADER)
    if not s:
        raise Graph6Error("empty graph6 string", base)
    for i, ch in enumerate(s):
        if not 63 <= ord(ch) <= 126:
            raise Graph6Error(f"character {ch!r} outside graph6 range", base + i)
    if ord(s[0]) < 126:
        n = ord(s[0]) - 63
        start = 1
    elif len(s) >= 4 and ord(s[1]) < 126:
        n = ((ord(s[1]) - 63) << 12) | ((ord(s[2]) - 63) << 6) | (ord(s[3]) - 63)
        start = 4
    else:
        raise Graph6Error("vertex counts beyond 258047 are not supported", base)
    if n > MAX_VERTICES:
        raise OverflowError(f"graph6 header declares {n} vertices; the cap is {MAX_VERTICES}")
    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    payload = s[start:]
    if len(payload) != nbytes:
        raise Graph6Error(f"expected {nbytes} payload bytes for n={n}, got {len(payload)}",
                          base + start + min(len(payload), nbytes))
    rows = [0] * n
    k = 0
    i, j = 0, 1
    for b, ch in enumerate(payload):
        val = ord(ch) - 63
        for shift in range(5, -1, -1):
            if k == nbits:
                if val & ((1 << (shift + 1)) - 1):
                    raise Graph6Error("nonzero padding bits", base + start + b)
                break
            if (val >> shift) & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            k += 1
            i += 1
            if i == j:
                i = 0
                j += 1
    return Graph._trusted(n, rows)


def read_graphs(path: str | Path) -> list[Graph]:
    graphs = []
    for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            graphs.append(decode(line))
        except Graph6Error as exc:
            raise Graph6Error(f"{path}:{lineno}: {exc}", exc.offset) from exc
    return graphs


def write_graphs(path: str | Path, graphs: Iterable[Graph]) -> None:
    Path(path).write_text("".join(encode(g) + "\n" for g in graphs))
