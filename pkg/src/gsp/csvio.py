"""Plain CSV matrix files: one vector per row, no header unless asked for."""

import csv

import numpy as np

from gsp.linalg_core import as_vector_set

__all__ = ["read_vectors", "write_vectors"]

# 17 significant digits round-trip every float64 exactly
FLOAT_FORMAT = "%.17g"


def read_vectors(path, header=False):
    """Read a vector set from ``path``.

    Blank lines are ignored; LF and CRLF line endings are both accepted.
    Raises ``ValueError`` on ragged rows or non-numeric fields.
    """
    with open(path, newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    if header and rows:
        rows = rows[1:]
    rows = [r for r in rows if any(cell.strip() for cell in r)]
    if not rows:
        raise ValueError(f"{path}: no data rows")
    width = len(rows[0])
    data = []
    for lineno, row in enumerate(rows, start=1):
        if len(row) != width:
            raise ValueError(f"{path}: row {lineno} has {len(row)} fields, expected {width}")
        try:
            data.append([float(cell) for cell in row])
        except ValueError as exc:
            raise ValueError(f"{path}: row {lineno}: {exc}") from None
    return as_vector_set(np.array(data, dtype=np.float64))


def write_vectors(path, vectors):
    """Write a vector set to ``path`` with LF line endings."""
    V = as_vector_set(vectors)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        for row in V:
            fh.write(",".join(FLOAT_FORMAT % x for x in row))
            fh.write("\n")
