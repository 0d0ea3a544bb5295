"""Plain-text frame documents.

Format: a key-value header (``n``, ``m``, optional ``name``), then m lines of
n whitespace-separated decimals, one frame vector per line.  Numbers are
written with 17 significant digits so documents round-trip bit-identically.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ParseError
from .frame_core import Frame, make_frame


@dataclass(frozen=True)
class FrameDocument:
    n: int
    m: int
    vectors: np.ndarray  # m x n
    name: str | None = None


def parse_frame_document(text, source="<input>") -> FrameDocument:
    n = m = None
    name = None
    rows = []
    lines = text.splitlines()
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        key = parts[0]
        if key in ("n", "m") and len(rows) == 0:
            if len(parts) != 2:
                raise ParseError(f"{source}: header '{key}' needs one value", line=lineno)
            try:
                value = int(parts[1])
            except ValueError:
                raise ParseError(f"{source}: header '{key}' is not an integer", line=lineno)
            if value < 1:
                raise ParseError(f"{source}: header '{key}' must be positive", line=lineno)
            if key == "n":
                n = value
            else:
                m = value
            continue
        if key == "name" and len(rows) == 0:
            name = line[len("name"):].strip() or None
            continue
        if n is None or m is None:
            raise ParseError(f"{source}: data before 'n'/'m' headers", line=lineno)
        if len(parts) != n:
            raise ParseError(
                f"{source}: expected {n} values in vector row, got {len(parts)}",
                line=lineno,
            )
        row = []
        for col, tok in enumerate(parts, start=1):
            try:
                row.append(float(tok))
            except ValueError:
                raise ParseError(f"{source}: bad number {tok!r}", line=lineno, col=col)
        rows.append(row)
    if n is None or m is None:
        raise ParseError(f"{source}: missing 'n' or 'm' header")
    if len(rows) != m:
        raise ParseError(f"{source}: expected {m} vector rows, found {len(rows)}")
    vectors = np.array(rows, dtype=float)
    vectors.setflags(write=False)
    return FrameDocument(n=n, m=m, vectors=vectors, name=name)


def format_number(x) -> str:
    return "%.17g" % float(x)


def format_frame_document(doc: FrameDocument) -> str:
    out = [f"n {doc.n}", f"m {doc.m}"]
    if doc.name:
        out.append(f"name {doc.name}")
    for row in doc.vectors:
        out.append(" ".join(format_number(v) for v in row))
    return "\n".join(out) + "\n"


def frame_from_document(doc: FrameDocument) -> Frame:
    return make_frame(doc.vectors)


def document_from_frame(F, name=None) -> FrameDocument:
    vectors = F.synthesis.T.copy()
    vectors.setflags(write=False)
    return FrameDocument(n=F.n, m=F.m, vectors=vectors, name=name)
