"""Exact rational linear algebra.

Scalars are :class:`fractions.Fraction`.  Matrices are small and dense
(dimension of a Lie algebra at most a few dozen), so a plain list-of-rows
representation is used throughout.
"""
from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

from . import _backend

Rational = Fraction


class DimensionError(ValueError):
    pass


def Q(x) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floats are not accepted; pass an int, Fraction or 'p/q' string")
    return Fraction(x)


def fmt_q(x) -> str:
    """Canonical ``"p/q"`` rendering used in reports and fixtures."""
    x = Q(x)
    return f"{x.numerator}/{x.denominator}"


class QMatrix:
    """Dense matrix with Fraction entries."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Iterable[Iterable], cols: int | None = None):
        ent = [[Q(x) for x in row] for row in entries]
        if cols is None:
            cols = len(ent[0]) if ent else 0
        for row in ent:
            if len(row) != cols:
                raise DimensionError("ragged matrix")
        self.entries = ent
        self.rows = len(ent)
        self.cols = cols

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "QMatrix":
        return cls([[0] * cols for _ in range(rows)], cols)

    @classmethod
    def identity(cls, n: int) -> "QMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], n)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], nrows: int) -> "QMatrix":
        return cls([[c[i] for c in columns] for i in range(nrows)], len(columns))

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other):
        return isinstance(other, QMatrix) and self.cols == other.cols and self.entries == other.entries

    def __repr__(self):
        return f"QMatrix({[[str(x) for x in r] for r in self.entries]})"

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def transpose(self) -> "QMatrix":
        return QMatrix([[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)], self.rows)

    def column(self, j: int) -> list[Fraction]:
        return [r[j] for r in self.entries]

    def __add__(self, other: "QMatrix") -> "QMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionError("shape mismatch")
        return QMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)], self.cols)

    def __sub__(self, other: "QMatrix") -> "QMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionError("shape mismatch")
        return QMatrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)], self.cols)

    def scale(self, c) -> "QMatrix":
        c = Q(c)
        return QMatrix([[c * a for a in r] for r in self.entries], self.cols)

    def __matmul__(self, other: "QMatrix") -> "QMatrix":
        if self.cols != other.rows:
            raise DimensionError("shape mismatch")
        ot = list(zip(*other.entries)) if other.rows else [() for _ in range(other.cols)]
        out = []
        for r in self.entries:
            out.append([sum((a * b for a, b in zip(r, c) if a and b), Fraction(0)) for c in ot])
        return QMatrix(out, other.cols)

    def apply(self, v: Sequence) -> list[Fraction]:
        if len(v) != self.cols:
            raise DimensionError("vector length mismatch")
        return [sum((a * Q(b) for a, b in zip(r, v) if a and b), Fraction(0)) for r in self.entries]

    def trace(self) -> Fraction:
        if not self.is_square:
            raise DimensionError("trace of a non-square matrix")
        return sum((self.entries[i][i] for i in range(self.rows)), Fraction(0))

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.entries for x in r)


def _integer_rows(rows: Sequence[Sequence[Fraction]]) -> list[list[int]]:
    # scale each row independently; row space and kernel are unchanged
    out = []
    for r in rows:
        d = 1
        for x in r:
            d = lcm(d, Q(x).denominator)
        out.append([int(Q(x) * d) for x in r])
    return out


def rank(m: QMatrix) -> int:
    if m.rows == 0 or m.cols == 0:
        return 0
    r, _, _ = _backend.bareiss_echelon(_integer_rows(m.entries), m.cols)
    return r


def kernel_basis(m: QMatrix) -> list[list[Fraction]]:
    """Basis of the null space ``{v : m v = 0}``.

    One vector per free column, with a 1 in that column and zeros in the
    other free columns, so the basis is reproducible.
    """
    n = m.cols
    if m.rows == 0:
        return [[Fraction(int(i == j)) for i in range(n)] for j in range(n)]
    r, pivots, ech = _backend.bareiss_echelon(_integer_rows(m.entries), n)
    free = [j for j in range(n) if j not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for k in range(r - 1, -1, -1):
            row = ech[k]
            pc = pivots[k]
            s = Fraction(0)
            for j in range(pc + 1, n):
                if row[j] and v[j]:
                    s += row[j] * v[j]
            v[pc] = -s / row[pc]
        basis.append(v)
    return basis


def char_poly(m: QMatrix) -> list[Fraction]:
    """Coefficients ``[c_0, ..., c_n]`` of det(t*1 - m), with ``c_n = 1``."""
    if not m.is_square:
        raise DimensionError("char_poly needs a square matrix")
    n = m.rows
    d = 1
    for r in m.entries:
        for x in r:
            d = lcm(d, x.denominator)
    ints = [[int(x * d) for x in r] for r in m.entries]
    coeffs = _backend.berkowitz(ints)
    # det(t - m) = d^-n det(d t - d m)
    return [Fraction(c, d ** (n - i)) for i, c in enumerate(coeffs)]


def poly_eval(coeffs: Sequence[Fraction], x) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


# --- subspace helpers -------------------------------------------------------

def row_space_basis(vectors: Sequence[Sequence]) -> list[list[Fraction]]:
    """Reduced row echelon basis of span(vectors)."""
    vecs = [list(map(Q, v)) for v in vectors]
    if not vecs:
        return []
    n = len(vecs[0])
    rows = [list(v) for v in vecs]
    out = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        pv = rows[r][c]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        r += 1
        if r == len(rows):
            break
    out = [row for row in rows[:r]]
    return out


def span_dim(vectors: Sequence[Sequence]) -> int:
    if not vectors:
        return 0
    return rank(QMatrix(vectors))


def intersect(u: Sequence[Sequence], v: Sequence[Sequence]) -> list[list[Fraction]]:
    """Basis of span(u) ∩ span(v)."""
    if not u or not v:
        return []
    n = len(u[0])
    # solve sum a_i u_i - sum b_j v_j = 0
    cols = [list(map(Q, x)) for x in u] + [[-Q(y) for y in x] for x in v]
    m = QMatrix.from_columns(cols, n)
    out = []
    for k in kernel_basis(m):
        w = [Fraction(0)] * n
        for a, x in zip(k[: len(u)], u):
            if a:
                for i in range(n):
                    w[i] += a * Q(x[i])
        out.append(w)
    return row_space_basis(out)


def in_span(vec: Sequence, basis: Sequence[Sequence]) -> bool:
    if not basis:
        return all(Q(x) == 0 for x in vec)
    return span_dim(list(basis) + [vec]) == span_dim(basis)


def coordinates(vec: Sequence, basis: Sequence[Sequence]) -> list[Fraction]:
    """Coordinates of ``vec`` in ``basis`` (basis assumed independent)."""
    n = len(vec)
    m = QMatrix.from_columns([list(b) for b in basis] + [[-Q(x) for x in vec]], n)
    ker = kernel_basis(m)
    for k in ker:
        if k[-1] != 0:
            return [x / k[-1] for x in k[:-1]]
    raise ValueError("vector not in span")


def vec_add(a, b):
    return [x + y for x, y in zip(a, b)]


def vec_scale(c, a):
    return [c * x for x in a]


def dot(a, b) -> Fraction:
    return sum((x * y for x, y in zip(a, b) if x and y), Fraction(0))
