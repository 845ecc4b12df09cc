"""Plain-text matrix files.

Grammar: lines starting with ``#`` are comments and blank lines are skipped;
every other line is one row of whitespace-separated tokens, where a token is a
decimal (``[+-]?digits[.digits]``) or ``*`` for a missing entry.
"""

from __future__ import annotations

import hashlib
import re
from fractions import Fraction
from pathlib import Path

from .errors import DimensionError, ParseError
from .matrix import IncompleteMatrix

_DECIMAL = re.compile(r"[+-]?\d+(?:\.\d+)?\Z")
_TOKEN = re.compile(r"[^ \t]+")


def parse_matrix_text(text: str) -> IncompleteMatrix:
    """Parse matrix text; errors report 1-based line and column."""
    rows = []
    where = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip(" \t\r")
        if not stripped or stripped.startswith("#"):
            continue
        row = []
        for m in _TOKEN.finditer(line.rstrip("\r")):
            tok = m.group()
            if tok == "*":
                row.append(None)
            elif _DECIMAL.match(tok):
                row.append(Fraction(tok))
            else:
                raise ParseError(f"bad token {tok!r}", lineno, m.start() + 1)
        rows.append(row)
        where.append(lineno)
    if not rows:
        raise DimensionError("no matrix rows found")
    n = len(rows)
    for r, row in enumerate(rows):
        if len(row) != n:
            raise DimensionError(
                f"line {where[r]}: row {r + 1} has {len(row)} entries, expected {n}",
                row=r + 1,
            )
    return IncompleteMatrix(rows)


def parse_scalar(token: str) -> Fraction:
    if not _DECIMAL.match(token):
        raise ValueError(f"not a decimal: {token!r}")
    return Fraction(token)


def parse_matrix(path) -> IncompleteMatrix:
    return parse_matrix_text(Path(path).read_text())


def format_scalar(v: Fraction) -> str:
    """Exact decimal text for ``v``; raises ValueError if it does not terminate."""
    if v.denominator == 1:
        return str(v.numerator)
    den = v.denominator
    twos = fives = 0
    while den % 2 == 0:
        den //= 2
        twos += 1
    while den % 5 == 0:
        den //= 5
        fives += 1
    if den != 1:
        raise ValueError(f"{v} has no finite decimal expansion")
    places = max(twos, fives)
    scaled = v * 10**places
    sign = "-" if scaled < 0 else ""
    digits = str(abs(scaled.numerator)).rjust(places + 1, "0")
    text = f"{digits[:-places]}.{digits[-places:]}".rstrip("0")
    return sign + text


def format_matrix(A: IncompleteMatrix, header: list[str] | None = None) -> str:
    lines = [f"# {h}" for h in header or ()]
    for row in A.cells:
        lines.append(" ".join("*" if c is None else format_scalar(c) for c in row))
    return "\n".join(lines) + "\n"


def write_matrix(path, A: IncompleteMatrix, header: list[str] | None = None) -> None:
    Path(path).write_text(format_matrix(A, header))


def matrix_digest(A: IncompleteMatrix) -> str:
    """sha256 of the normalized (comment-free) file text."""
    return hashlib.sha256(format_matrix(A).encode()).hexdigest()

