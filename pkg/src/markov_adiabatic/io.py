"""Plain-text matrix and distribution files, CSV curves, atomic writes.

Matrix file: first line the integer n, then n lines of n whitespace-separated
reals. Distribution file: a single line of reals. Numbers are written with
17 significant digits so doubles round-trip exactly.
"""

from __future__ import annotations

import csv
import io as _io
import math
import os
import tempfile
from pathlib import Path

import numpy as np

from .errors import ValidationError

__all__ = [
    "format_number",
    "parse_matrix",
    "read_matrix",
    "format_matrix",
    "write_matrix",
    "parse_distribution",
    "read_distribution",
    "format_distribution",
    "curve_csv",
    "atomic_write",
]


def format_number(x: float) -> str:
    return f"{float(x):.17g}"


def _parse_float(token: str, where: str) -> float:
    try:
        v = float(token)
    except ValueError:
        raise ValidationError("parse", f"{where}: {token!r} is not a number") from None
    if not math.isfinite(v):
        raise ValidationError("finite", f"{where}: non-finite entry {token!r}")
    return v


def parse_matrix(text: str, source: str = "<matrix>") -> np.ndarray:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValidationError("parse", f"{source}: empty matrix file")
    try:
        n = int(lines[0].strip())
    except ValueError:
        raise ValidationError("parse", f"{source}: first line must be the integer dimension") from None
    if n < 1:
        raise ValidationError("parse", f"{source}: dimension must be positive, got {n}")
    rows = lines[1:]
    if len(rows) != n:
        raise ValidationError("parse", f"{source}: expected {n} rows, found {len(rows)}")
    out = np.empty((n, n))
    for i, row in enumerate(rows):
        tokens = row.split()
        if len(tokens) != n:
            raise ValidationError("parse", f"{source}: row {i} has {len(tokens)} entries, expected {n}")
        out[i] = [_parse_float(tok, f"{source} row {i}") for tok in tokens]
    return out


def read_matrix(path) -> np.ndarray:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ValidationError("read", f"cannot read {path}: {exc.strerror}") from None
    return parse_matrix(text, str(path))


def format_matrix(M) -> str:
    M = np.asarray(M, dtype=float)
    lines = [str(M.shape[0])]
    lines += [" ".join(format_number(x) for x in row) for row in M]
    return "\n".join(lines) + "\n"


def write_matrix(path, M) -> None:
    atomic_write(path, format_matrix(M))


def parse_distribution(text: str, source: str = "<distribution>") -> np.ndarray:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if len(lines) != 1:
        raise ValidationError("parse", f"{source}: expected a single line, found {len(lines)}")
    return np.array([_parse_float(tok, source) for tok in lines[0].split()])


def read_distribution(path) -> np.ndarray:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ValidationError("read", f"cannot read {path}: {exc.strerror}") from None
    return parse_distribution(text, str(path))


def format_distribution(v) -> str:
    return " ".join(format_number(x) for x in np.asarray(v, dtype=float)) + "\n"


def curve_csv(curve) -> str:
    """CSV text with header ``T,error`` for an ``(m, 2)`` curve."""
    buf = _io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["T", "error"])
    for T, err in np.asarray(curve, dtype=float).reshape(-1, 2):
        T_txt = str(int(T)) if float(T).is_integer() and abs(T) < 2**53 else format_number(T)
        w.writerow([T_txt, format_number(err)])
    return buf.getvalue()


def atomic_write(path, text: str) -> None:
    """Write via a temp file in the same directory, then rename over the target."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", dir=path.parent)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
