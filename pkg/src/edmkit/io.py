"""Reading and writing square matrices.

Two formats are accepted:

* plain text: the order ``n`` followed by ``n*n`` whitespace-separated
  reals in row-major order (written one row per line);
* JSON: ``{"order": n, "entries": [...]}`` with ``entries`` either flat
  row-major or a list of rows.

Integer-valued entries are written without a decimal point; anything else
uses 17 significant digits so reading back is bit-exact.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import numpy as np
from numpy.typing import ArrayLike, NDArray

from .errors import InvalidMatrix

_EXACT_INT_LIMIT = 2.0**53


def format_number(x: float) -> str:
    x = float(x)
    if x.is_integer() and abs(x) < _EXACT_INT_LIMIT:
        return str(int(x))
    return format(x, ".17g")


def _format_rows(A: NDArray[np.float64]) -> list[str]:
    integral = np.all(np.isfinite(A)) and np.all(A == np.round(A)) and np.all(np.abs(A) < _EXACT_INT_LIMIT)
    if integral:
        return [" ".join(map(str, row)) for row in A.astype(np.int64).tolist()]
    return [" ".join(format_number(x) for x in row) for row in A.tolist()]


def dumps_matrix(M: ArrayLike, structured: bool = False) -> str:
    A = np.asarray(M, dtype=np.float64)
    if structured:
        entries = [int(x) if float(x).is_integer() and abs(x) < _EXACT_INT_LIMIT else float(x) for x in A.ravel().tolist()]
        return json.dumps({"order": A.shape[0], "entries": entries}) + "\n"
    return f"{A.shape[0]}\n" + "\n".join(_format_rows(A)) + "\n"


def write_matrix(M: ArrayLike, path: str | Path | None, structured: bool = False) -> None:
    """Write ``M`` to ``path``, or to stdout when ``path`` is ``None`` or ``"-"``."""
    text = dumps_matrix(M, structured)
    if path is None or str(path) == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _parse_json(text: str) -> NDArray[np.float64]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidMatrix(f"malformed JSON matrix: {exc}") from None
    if not isinstance(doc, dict) or "order" not in doc or "entries" not in doc:
        raise InvalidMatrix('JSON matrix needs keys "order" and "entries"')
    n = doc["order"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise InvalidMatrix(f"order must be a positive integer, got {n!r}")
    try:
        values = np.asarray(doc["entries"], dtype=np.float64).ravel()
    except (TypeError, ValueError):
        raise InvalidMatrix("entries must be numbers") from None
    if values.size != n * n:
        raise InvalidMatrix(f"expected {n * n} entries for order {n}, got {values.size}")
    return values.reshape(n, n)


def _parse_text(text: str) -> NDArray[np.float64]:
    tokens = text.split()
    if not tokens:
        raise InvalidMatrix("empty matrix file")
    try:
        n = int(tokens[0])
    except ValueError:
        raise InvalidMatrix(f"first token must be the integer order, got {tokens[0]!r}") from None
    if n < 1:
        raise InvalidMatrix(f"order must be positive, got {n}")
    if len(tokens) - 1 != n * n:
        raise InvalidMatrix(f"expected {n * n} entries for order {n}, got {len(tokens) - 1}")
    try:
        values = np.asarray(tokens[1:], dtype=np.float64)
    except ValueError as exc:
        raise InvalidMatrix(f"bad matrix entry: {exc}") from None
    return values.reshape(n, n)


def loads_matrix(text: str) -> NDArray[np.float64]:
    if text.lstrip().startswith("{"):
        return _parse_json(text)
    return _parse_text(text)


def read_matrix(path: str | Path) -> NDArray[np.float64]:
    """Parse a matrix file in either format; ``"-"`` reads stdin."""
    if str(path) == "-":
        return loads_matrix(sys.stdin.read())
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InvalidMatrix(f"cannot read {path}: {exc.strerror}") from None
    return loads_matrix(text)
