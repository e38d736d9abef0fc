"""Plain-text round-trip format for input matrices and covariance outputs.

Input files start with a header line ``N M``; covariance files start with a
single ``dim`` and carry the dense Hermitian reconstruction.  Each following
line holds one matrix row, entries written as ``re{+|-}imi`` (for example
``1.5-0.25i``) separated by whitespace.  Entries are printed with shortest
round-tripping precision, so values survive the decimal trip unchanged.
"""

from __future__ import annotations

import re
from pathlib import Path

import numpy as np

from .core import CovarianceMatrix, InputMatrix

__all__ = [
    "format_entry",
    "parse_entry",
    "read_input_matrix",
    "write_input_matrix",
    "read_covariance",
    "write_covariance",
]

_NUM = r"(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?"
_ENTRY = re.compile(rf"^([+-]?{_NUM})([+-]{_NUM})i$")


def format_entry(z: complex) -> str:
    real, imag = float(z.real), float(z.imag)
    sign = "-" if imag < 0 else "+"
    return f"{real!r}{sign}{abs(imag)!r}i"


def parse_entry(token: str) -> complex:
    match = _ENTRY.match(token)
    if match is None:
        raise ValueError(f"malformed matrix entry {token!r}")
    return complex(float(match.group(1)), float(match.group(2)))


def _parse_rows(lines: list[str], n: int, m: int, path) -> np.ndarray:
    rows = [line.split() for line in lines if line.strip()]
    if len(rows) != n:
        raise ValueError(f"{path}: expected {n} matrix rows, found {len(rows)}")
    out = np.empty((n, m), dtype=np.complex128)
    for i, tokens in enumerate(rows):
        if len(tokens) != m:
            raise ValueError(f"{path}: row {i + 1} has {len(tokens)} entries, expected {m}")
        for j, token in enumerate(tokens):
            try:
                out[i, j] = parse_entry(token)
            except ValueError as exc:
                raise ValueError(f"{path}: row {i + 1}: {exc}") from None
    return out


def _format_rows(arr: np.ndarray) -> list[str]:
    return [" ".join(format_entry(z) for z in row) for row in arr]


def write_input_matrix(mat: InputMatrix, path) -> None:
    lines = [f"{mat.n} {mat.m}"] + _format_rows(mat.array)
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def read_input_matrix(path) -> InputMatrix:
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    if not lines:
        raise ValueError(f"{path}: empty matrix file")
    header = lines[0].split()
    if len(header) != 2:
        raise ValueError(f"{path}: input header must be 'N M', got {lines[0]!r}")
    try:
        n, m = int(header[0]), int(header[1])
    except ValueError:
        raise ValueError(f"{path}: input header must be 'N M', got {lines[0]!r}") from None
    if n < 1 or m < 1:
        raise ValueError(f"{path}: matrix dimensions must be positive, got {n}x{m}")
    return InputMatrix(_parse_rows(lines[1:], n, m, path))


def write_covariance(cov: CovarianceMatrix, path) -> None:
    lines = [f"{cov.dim}"] + _format_rows(cov.dense())
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def read_covariance(path) -> CovarianceMatrix:
    """Read a covariance file back; the upper triangle is authoritative."""
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    if not lines:
        raise ValueError(f"{path}: empty matrix file")
    header = lines[0].split()
    try:
        (dim,) = (int(tok) for tok in header)
    except ValueError:
        raise ValueError(f"{path}: covariance header must be a single dim, got {lines[0]!r}") from None
    if dim < 1:
        raise ValueError(f"{path}: covariance dim must be positive, got {dim}")
    dense = _parse_rows(lines[1:], dim, dim, path)
    rows, cols = np.triu_indices(dim)
    return CovarianceMatrix(dim, dense[rows, cols])
