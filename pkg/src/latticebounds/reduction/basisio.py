"""Reading and writing basis files.

Text format: a first line ``m n`` followed by m lines of n numbers; the
columns are the basis vectors. A JSON document with an ``entries`` field
holding the m x n matrix is accepted too.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import TextIO, Union

import numpy as np


class BasisFormatError(ValueError):
    """The file does not describe an m x n basis."""


def parse_basis(text: str) -> np.ndarray:
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            doc = json.loads(stripped)
            rows = doc["entries"]
            a = np.array(rows, dtype=float)
        except (ValueError, KeyError, TypeError) as exc:
            raise BasisFormatError(f"bad structured basis: {exc}") from None
        if a.ndim != 2:
            raise BasisFormatError("entries must be a matrix")
        return a
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise BasisFormatError("empty basis file")
    try:
        m, n = (int(v) for v in lines[0].split())
    except ValueError:
        raise BasisFormatError("first line must be 'm n'") from None
    if m < 1 or n < 1:
        raise BasisFormatError("dimensions must be positive")
    if len(lines) - 1 != m:
        raise BasisFormatError(f"expected {m} rows, found {len(lines) - 1}")
    try:
        rows = [[float(v) for v in ln.split()] for ln in lines[1:]]
    except ValueError:
        raise BasisFormatError("non-numeric entry") from None
    if any(len(row) != n for row in rows):
        raise BasisFormatError(f"every row needs {n} entries")
    return np.array(rows, dtype=float)


def read_basis(path: Union[str, Path]) -> np.ndarray:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise BasisFormatError(f"cannot read {path}: {exc}") from None
    return parse_basis(text)


def _fmt(v) -> str:
    f = float(v)
    if f.is_integer() and abs(f) < 2**53:
        return str(int(f))
    return repr(f)


def format_basis(a) -> str:
    a = np.asarray(a)
    lines = [f"{a.shape[0]} {a.shape[1]}"]
    lines += [" ".join(_fmt(v) for v in row) for row in a]
    return "\n".join(lines) + "\n"


def write_basis(dest: Union[str, Path, TextIO], a) -> None:
    text = format_basis(a)
    if hasattr(dest, "write"):
        dest.write(text)
    else:
        Path(dest).write_text(text)
