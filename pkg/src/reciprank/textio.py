"""Plain-text matrix and vector files.

One row per line; entries separated by whitespace and/or commas, each a
decimal number or a fraction such as ``1/3``. Blank lines and ``#`` comments
are skipped. Matrices are canonicalized from the upper
triangle when read, and written with 17 significant digits so that a
write/read cycle reproduces the stored floats exactly.
"""

from __future__ import annotations

import os
import re

import numpy as np

from .core import ReciprocalMatrix, as_weight_vector, from_upper_triangle

# Lower-triangle entries only have to match the upper triangle to printed
# precision; the upper triangle is authoritative.
PRINTED_RTOL = 1e-3

_TOKEN = re.compile(r"[^,\s]+")


class MatrixParseError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")


def _tokens(line: str):
    for m in _TOKEN.finditer(line):
        yield m.start() + 1, m.group()


def _number(tok: str) -> float:
    num, sep, den = tok.partition("/")
    if sep:
        return float(num) / float(den)
    return float(tok)


def _parse_rows(text: str) -> list[tuple[int, list[float]]]:
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        row = []
        for col, tok in _tokens(line):
            try:
                row.append(_number(tok))
            except (ValueError, ZeroDivisionError):
                raise MatrixParseError(f"not a number: {tok!r}", lineno, col) from None
        rows.append((lineno, row))
    return rows


def parse_matrix(text: str, lower_rtol: float | None = PRINTED_RTOL) -> ReciprocalMatrix:
    """Parse a matrix from text.

    Parameters
    ----------
    text : str
        Matrix rows, one per line.
    lower_rtol : float or None
        Tolerance for checking the lower triangle against the reciprocals of
        the upper triangle. ``None`` disables the check.
    """
    rows = _parse_rows(text)
    if not rows:
        raise MatrixParseError("no matrix rows found", 1, 1)
    n = len(rows)
    for lineno, row in rows:
        if len(row) != n:
            raise MatrixParseError(
                f"row has {len(row)} entries, expected {n} (square matrix)", lineno, 1
            )
    return from_upper_triangle(np.array([r for _, r in rows]), lower_rtol=lower_rtol)


def parse_vector(text: str) -> np.ndarray:
    """Parse a weight vector written on one line or one entry per line."""
    values = [v for _, row in _parse_rows(text) for v in row]
    if not values:
        raise MatrixParseError("no vector entries found", 1, 1)
    return as_weight_vector(values)


def format_matrix(A: ReciprocalMatrix) -> str:
    a = np.asarray(A)
    return "".join(" ".join(f"{x:.17g}" for x in row) + "\n" for row in a)


def format_vector(w) -> str:
    return " ".join(f"{x:.17g}" for x in np.asarray(w, dtype=float)) + "\n"


def read_matrix(path: str | os.PathLike, lower_rtol: float | None = PRINTED_RTOL) -> ReciprocalMatrix:
    with open(path) as fh:
        return parse_matrix(fh.read(), lower_rtol=lower_rtol)


def read_vector(path: str | os.PathLike) -> np.ndarray:
    with open(path) as fh:
        return parse_vector(fh.read())


def write_matrix(path: str | os.PathLike, A: ReciprocalMatrix) -> None:
    with open(path, "w") as fh:
        fh.write(format_matrix(A))
