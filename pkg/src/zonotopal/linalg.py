"""Exact rational dense linear algebra.

Scalars are :class:`fractions.Fraction`.  Every elimination is delegated to the
integer kernels in :mod:`zonotopal.kernels` after clearing denominators row by
row, which leaves row spaces, ranks and null spaces unchanged.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

from zonotopal import kernels


class ContractError(ValueError):
    """An operation was called outside its precondition."""


class DimensionError(ContractError):
    pass


class SingularMatrixError(ContractError):
    pass


_RATIONAL = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*([+-]?\d+)\s*)?$")


def parse_rational(value) -> Fraction:
    """Parse an int or a ``"p/q"`` string into a Fraction.

    Raises ``ValueError`` on malformed input or a zero denominator.
    """
    if isinstance(value, bool):
        raise ValueError(f"not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str):
        m = _RATIONAL.match(value)
        if not m:
            raise ValueError(f"not a rational: {value!r}")
        num = int(m.group(1))
        den = int(m.group(2)) if m.group(2) is not None else 1
        if den == 0:
            raise ValueError(f"zero denominator in {value!r}")
        return Fraction(num, den)
    raise ValueError(f"not a rational: {value!r}")


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


class Matrix:
    """Immutable dense matrix of Fractions, stored row-major."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Iterable):
        entries = tuple(Fraction(e) for e in entries)
        if len(entries) != rows * cols:
            raise DimensionError(f"expected {rows * cols} entries, got {len(entries)}")
        self.rows = rows
        self.cols = cols
        self.entries = entries

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "Matrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise DimensionError("ragged rows")
        return cls(len(rows), cols, [e for r in rows for e in r])

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], nrows: int | None = None) -> "Matrix":
        columns = [list(c) for c in columns]
        if nrows is None:
            nrows = len(columns[0]) if columns else 0
        return cls.from_rows([[c[i] for c in columns] for i in range(nrows)], cols=len(columns))

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(n, n, [1 if i == j else 0 for i in range(n) for j in range(n)])

    def __getitem__(self, ij) -> Fraction:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> tuple:
        return self.entries[j::self.cols]

    def to_rows(self) -> list[list[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> "Matrix":
        return Matrix.from_rows([self.column(j) for j in range(self.cols)], cols=self.rows)

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.cols != other.rows:
                raise DimensionError("incompatible shapes")
            cols = [other.column(j) for j in range(other.cols)]
            return Matrix.from_rows(
                [[sum((a * b for a, b in zip(self.row(i), c)), Fraction(0)) for c in cols]
                 for i in range(self.rows)],
                cols=other.cols,
            )
        v = list(other)
        if len(v) != self.cols:
            raise DimensionError("incompatible shapes")
        return tuple(sum((a * b for a, b in zip(self.row(i), v)), Fraction(0))
                     for i in range(self.rows))

    def __eq__(self, other):
        return (isinstance(other, Matrix) and self.rows == other.rows
                and self.cols == other.cols and self.entries == other.entries)

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self):
        body = "; ".join(" ".join(format_rational(e) for e in self.row(i)) for i in range(self.rows))
        return f"Matrix({self.rows}x{self.cols}: {body})"


def _as_rows(m) -> list[list[Fraction]]:
    if isinstance(m, Matrix):
        return m.to_rows()
    return [[Fraction(e) for e in row] for row in m]


def _integer_rows(rows: Sequence[Sequence[Fraction]]) -> tuple[list[list[int]], list[int]]:
    """Scale each row by the lcm of its denominators."""
    out, scales = [], []
    for row in rows:
        s = lcm(*(Fraction(e).denominator for e in row)) if row else 1
        out.append([int(Fraction(e) * s) for e in row])
        scales.append(s)
    return out, scales


def determinant(m) -> Fraction:
    rows = _as_rows(m)
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise DimensionError("determinant of a non-square matrix")
    ints, scales = _integer_rows(rows)
    d = Fraction(kernels.bareiss_det(ints))
    for s in scales:
        d /= s
    return d


def rref(m, ncols: int | None = None) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form (nonzero rows only) and pivot columns."""
    rows = _as_rows(m)
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    if not rows:
        return [], []
    ints, _ = _integer_rows(rows)
    red, pivots, d = kernels.ff_rref(ints, ncols)
    return [[Fraction(e, d) for e in red[k]] for k in range(len(pivots))], pivots


def rank(m) -> int:
    rows = _as_rows(m)
    if not rows or not rows[0]:
        return 0
    ints, _ = _integer_rows(rows)
    return len(kernels.ff_rref(ints, len(rows[0]))[1])


def nullspace_basis(m, ncols: int | None = None) -> list[tuple[Fraction, ...]]:
    """Basis of the right null space, one vector per free column.

    The vector for free column f has a 1 in position f, zeros in the other
    free positions and is read off the reduced row echelon form.
    """
    rows = _as_rows(m)
    if ncols is None:
        if not rows:
            raise DimensionError("cannot infer column count of an empty matrix")
        ncols = len(rows[0])
    red, pivots = rref(rows, ncols) if rows else ([], [])
    pivset = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for k, p in enumerate(pivots):
            v[p] = -red[k][f]
        basis.append(tuple(v))
    return basis


def solve(m, rhs: Sequence) -> tuple[Fraction, ...]:
    """Unique solution of ``m x = rhs`` for square invertible ``m``."""
    rows = _as_rows(m)
    n = len(rows)
    if any(len(r) != n for r in rows) or len(rhs) != n:
        raise DimensionError("solve needs a square system")
    aug = [r + [Fraction(b)] for r, b in zip(rows, rhs)]
    red, pivots = rref(aug, n + 1)
    if len(pivots) < n or pivots[:n] != list(range(n)):
        raise SingularMatrixError("singular matrix")
    return tuple(red[k][n] for k in range(n))


def inverse(m) -> Matrix:
    rows = _as_rows(m)
    n = len(rows)
    aug = [r + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(rows)]
    red, pivots = rref(aug, 2 * n)
    if len(pivots) < n or pivots[n - 1] != n - 1:
        raise SingularMatrixError("singular matrix")
    return Matrix.from_rows([r[n:] for r in red], cols=n)


def row_space_key(rows: Sequence[Sequence], ncols: int) -> tuple:
    """Canonical hashable form of a row space (its reduced echelon rows)."""
    red, _ = rref(rows, ncols) if rows else ([], [])
    return tuple(tuple(r) for r in red)


def dot(u: Sequence, v: Sequence) -> Fraction:
    return sum((Fraction(a) * b for a, b in zip(u, v)), Fraction(0))
