"""Exact linear algebra over the rationals.

Every Hilbert-function value computed in this package is the rank of a
catalecticant matrix, and every graded ideal piece is a kernel, so the
whole tool stands on the routines in this module.  Entries are
``fractions.Fraction``; elimination clears denominators row by row and
then runs fraction-free (Bareiss) Gaussian elimination on integers, so
intermediate entries stay minors of the input and nothing is rounded.

Determinism matters for golden output: pivots are chosen as the first
nonzero entry in column order, and kernel bases are the reduced-echelon
ones (one vector per free column, free columns in ascending index).
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass
from fractions import Fraction

Rational = Fraction


class DimensionMismatchError(ValueError):
    """Vectors of unequal length were combined."""


@dataclass(frozen=True)
class QMatrix:
    """Dense row-major matrix of rationals."""

    rows: int
    cols: int
    entries: tuple[Rational, ...]

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raise ValueError("matrix dimensions must be non-negative")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"expected {self.rows * self.cols} entries, got {len(self.entries)}"
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int | Rational]]) -> "QMatrix":
        data = [Fraction(x) for row in rows for x in row]
        nrows = len(rows)
        ncols = len(rows[0]) if rows else 0
        for row in rows:
            if len(row) != ncols:
                raise DimensionMismatchError("rows have unequal lengths")
        return cls(nrows, ncols, tuple(data))

    @classmethod
    def zero(cls, rows: int, cols: int) -> "QMatrix":
        return cls(rows, cols, (Fraction(0),) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "QMatrix":
        ent = [Fraction(0)] * (n * n)
        for i in range(n):
            ent[i * n + i] = Fraction(1)
        return cls(n, n, tuple(ent))

    def at(self, i: int, j: int) -> Rational:
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[Rational, ...]:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def transpose(self) -> "QMatrix":
        ent = [self.at(i, j) for j in range(self.cols) for i in range(self.rows)]
        return QMatrix(self.cols, self.rows, tuple(ent))

    def mul_vec(self, v: Sequence[int | Rational]) -> tuple[Rational, ...]:
        if len(v) != self.cols:
            raise DimensionMismatchError(
                f"vector of length {len(v)} against {self.cols} columns"
            )
        vv = [Fraction(x) for x in v]
        return tuple(
            sum((self.at(i, j) * vv[j] for j in range(self.cols)), Fraction(0))
            for i in range(self.rows)
        )


def _integer_rows(m: QMatrix) -> list[list[int]]:
    """Clear denominators row by row (row scaling preserves rank and kernel)."""
    out = []
    for i in range(m.rows):
        row = m.row(i)
        scale = 1
        for x in row:
            d = x.denominator
            if d != 1:
                g = _gcd(scale, d)
                scale = scale // g * d
        out.append([int(x.numerator * (scale // x.denominator)) for x in row])
    return out


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def _echelon(rows: list[list[int]], cols: int) -> tuple[list[list[int]], list[tuple[int, int]]]:
    """Fraction-free forward elimination (Bareiss).

    Returns the echelon rows and the pivot positions in elimination
    order.  Every intermediate entry is a minor of the input matrix, so
    the integer divisions below are exact.
    """
    rows = [row[:] for row in rows]
    pivots: list[tuple[int, int]] = []
    prev = 1
    r = 0
    nrows = len(rows)
    for c in range(cols):
        if r >= nrows:
            break
        pr = next((i for i in range(r, nrows) if rows[i][c]), None)
        if pr is None:
            continue
        if pr != r:
            rows[r], rows[pr] = rows[pr], rows[r]
        p = rows[r][c]
        top = rows[r]
        for i in range(r + 1, nrows):
            cur = rows[i]
            aic = cur[c]
            if aic == 0 and not any(cur):
                continue
            for j in range(c + 1, cols):
                q, rem = divmod(p * cur[j] - aic * top[j], prev)
                if rem:
                    raise AssertionError("inexact division in fraction-free elimination")
                cur[j] = q
            cur[c] = 0
        pivots.append((r, c))
        prev = p
        r += 1
    return rows, pivots


def rank(m: QMatrix) -> int:
    """Exact rank over the rationals."""
    if m.rows == 0 or m.cols == 0:
        return 0
    _, pivots = _echelon(_integer_rows(m), m.cols)
    return len(pivots)


def kernel_basis(m: QMatrix) -> list[tuple[Rational, ...]]:
    """Reduced-echelon basis of the right kernel.

    One vector per free column, taken in ascending column index; the
    vector for free column ``f`` has a 1 there, 0 at the other free
    columns, and the unique pivot entries solving ``m @ v = 0``.
    """
    if m.cols == 0:
        return []
    if m.rows == 0:
        ech: list[list[int]] = []
        pivots: list[tuple[int, int]] = []
    else:
        ech, pivots = _echelon(_integer_rows(m), m.cols)
    pivot_cols = {c for _, c in pivots}
    basis = []
    for f in range(m.cols):
        if f in pivot_cols:
            continue
        v: list[Rational] = [Fraction(0)] * m.cols
        v[f] = Fraction(1)
        support = [f]
        for r, c in reversed(pivots):
            if c > f:
                continue
            row = ech[r]
            s = Fraction(0)
            for j in support:
                if j > c and row[j]:
                    s += row[j] * v[j]
            if s:
                v[c] = -s / row[c]
                support.append(c)
        basis.append(tuple(v))
    return basis


def row_space_basis(m: QMatrix) -> list[tuple[Rational, ...]]:
    """Canonical (reduced row echelon) basis of the row space."""
    rows = [list(m.row(i)) for i in range(m.rows)]
    r = 0
    pivots = []
    for c in range(m.cols):
        pr = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        p = rows[r][c]
        rows[r] = [x / p for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return [tuple(rows[i]) for i in range(r)]


def span_dim(vectors: Sequence[Sequence[int | Rational]]) -> int:
    """Dimension of the linear span of the given vectors."""
    vectors = list(vectors)
    if not vectors:
        return 0
    n = len(vectors[0])
    for v in vectors:
        if len(v) != n:
            raise DimensionMismatchError("vectors have unequal lengths")
    return rank(QMatrix.from_rows(vectors))


def in_span(v: Sequence[int | Rational], basis: Sequence[Sequence[int | Rational]]) -> bool:
    """True iff ``v`` lies in the span of ``basis``."""
    basis = list(basis)
    if not basis:
        return all(Fraction(x) == 0 for x in v)
    n = len(basis[0])
    if len(v) != n:
        raise DimensionMismatchError("vector length does not match basis")
    for b in basis:
        if len(b) != n:
            raise DimensionMismatchError("vectors have unequal lengths")
    base_rank = span_dim(basis)
    return span_dim(basis + [list(v)]) == base_rank


class SpanBuilder:
    """Incremental echelon form over sparse rational vectors.

    Vectors are mappings from orderable keys (here: exponent tuples) to
    coefficients.  Each stored row is normalized to pivot coefficient 1,
    with the pivot being the largest key present.  Used wherever a span
    grows one vector at a time: derivative closures, ideal pieces, and
    generator counting, where dense elimination would be wasteful.
    """

    def __init__(self) -> None:
        self._rows: dict[object, dict] = {}

    @property
    def dim(self) -> int:
        return len(self._rows)

    def residue(self, vec: Mapping) -> dict:
        v = {k: Fraction(c) for k, c in vec.items() if c}
        while v:
            p = max(v)
            row = self._rows.get(p)
            if row is None:
                return v
            coef = v.pop(p)
            for k, val in row.items():
                if k == p:
                    continue
                nv = v.get(k, Fraction(0)) - coef * val
                if nv:
                    v[k] = nv
                else:
                    v.pop(k, None)
        return v

    def add(self, vec: Mapping) -> bool:
        """Insert ``vec``; returns True iff it enlarged the span."""
        v = self.residue(vec)
        if not v:
            return False
        p = max(v)
        c = v[p]
        self._rows[p] = {k: val / c for k, val in v.items()}
        return True

    def contains(self, vec: Mapping) -> bool:
        return not self.residue(vec)

    def extend(self, vecs: Iterable[Mapping]) -> int:
        added = 0
        for v in vecs:
            if self.add(v):
                added += 1
        return added
