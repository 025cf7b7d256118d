"""Exact dense matrices and row reduction over a scalar field.

The Matrix class doubles as a coefficient ring for matrix-valued
polynomials: products keep operand order and never assume commutativity.
Multiplication skips zero entries, which matters because almost every
operator matrix in this package is sparse.
"""

from __future__ import annotations

from fractions import Fraction

from .scalars import iszero, to_complex


class Matrix:
    """Immutable exact matrix; entries are Fractions or Gaussian rationals."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, data):
        data = [tuple(row) for row in data]
        self.rows = len(data)
        self.cols = len(data[0]) if data else 0
        if any(len(row) != self.cols for row in data):
            raise ValueError("ragged matrix")
        self.data = tuple(data)

    @staticmethod
    def zeros(rows, cols, zero=Fraction(0)):
        return Matrix([[zero] * cols for _ in range(rows)])

    @staticmethod
    def identity(n, one=Fraction(1)):
        zero = one * 0
        return Matrix([[one if i == j else zero for j in range(n)] for i in range(n)])

    def get(self, i, j):
        return self.data[i][j]

    def __add__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch in matrix addition")
        return Matrix(
            [
                [a + b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.data, other.data)
            ]
        )

    def __sub__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        return Matrix([[-a for a in row] for row in self.data])

    def __mul__(self, other):
        if isinstance(other, Matrix):
            if self.cols != other.rows:
                raise ValueError("shape mismatch in matrix product")
            zero = self.data[0][0] * 0 if self.rows and self.cols else Fraction(0)
            out = [[zero] * other.cols for _ in range(self.rows)]
            for i in range(self.rows):
                row = self.data[i]
                acc = out[i]
                for k in range(self.cols):
                    a = row[k]
                    if iszero(a):
                        continue
                    brow = other.data[k]
                    for j in range(other.cols):
                        b = brow[j]
                        if iszero(b):
                            continue
                        acc[j] = acc[j] + a * b
            return Matrix(out)
        # scalar on the right
        return Matrix([[a * other for a in row] for row in self.data])

    def __rmul__(self, other):
        # scalar on the left
        return Matrix([[other * a for a in row] for row in self.data])

    def __truediv__(self, scalar):
        return Matrix([[a / scalar for a in row] for row in self.data])

    def __eq__(self, other):
        if isinstance(other, Matrix):
            return self.data == other.data
        return NotImplemented

    def __hash__(self):
        return hash(self.data)

    def is_zero(self) -> bool:
        return all(iszero(a) for row in self.data for a in row)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def scalar_of_identity(self):
        """Return c when the matrix equals c*I, else None."""
        if not self.is_square():
            return None
        c = self.data[0][0]
        for i in range(self.rows):
            for j in range(self.cols):
                want_diag = i == j
                a = self.data[i][j]
                if want_diag and a != c:
                    return None
                if not want_diag and not iszero(a):
                    return None
        return c

    def transpose(self):
        return Matrix([[self.data[i][j] for i in range(self.rows)] for j in range(self.cols)])

    def trace(self):
        if not self.is_square():
            raise ValueError("trace of a non-square matrix")
        out = self.data[0][0]
        for i in range(1, self.rows):
            out = out + self.data[i][i]
        return out

    def map(self, fn):
        return Matrix([[fn(a) for a in row] for row in self.data])

    def to_complex_list(self):
        return [[to_complex(a) for a in row] for row in self.data]

    def submatrix(self, row_idx, col_idx):
        return Matrix([[self.data[i][j] for j in col_idx] for i in row_idx])

    def commutator(self, other):
        return self * other - other * self

    def __repr__(self):
        return f"Matrix({[list(r) for r in self.data]!r})"


def rref(rows):
    """Reduced row echelon form; returns (new rows, pivot column list)."""
    rows = [list(r) for r in rows]
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot_row = None
        for i in range(r, len(rows)):
            if not iszero(rows[i][c]):
                pivot_row = i
                break
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        lead = rows[r][c]
        rows[r] = [a / lead for a in rows[r]]
        for i in range(len(rows)):
            if i != r and not iszero(rows[i][c]):
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def nullspace(rows, ncols):
    """Deterministic kernel basis of the linear map given by the rows.

    Basis vectors are the standard RREF solutions, ordered by their free
    column; each is rescaled so its first nonzero coordinate is 1.
    """
    if not rows:
        one = Fraction(1)
        return [
            [one if j == k else one * 0 for j in range(ncols)] for k in range(ncols)
        ]
    red, pivots = rref(rows)
    zero = red[0][0] * 0 if red else Fraction(0)
    one = zero + 1
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        vec = [zero] * ncols
        vec[free] = one
        for r, pc in enumerate(pivots):
            vec[pc] = -red[r][free]
        lead = next((v for v in vec if not iszero(v)), None)
        basis.append([v / lead for v in vec])
    return basis


def solve_unique(rows, rhs):
    """Solve A x = b for full-column-rank A; raises on inconsistency."""
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivots = rref(aug)
    ncols = len(rows[0])
    if ncols in pivots:
        raise ValueError("inconsistent linear system")
    if len(pivots) != ncols:
        raise ValueError("linear system is not full rank")
    sol = [None] * ncols
    for r, pc in enumerate(pivots):
        sol[pc] = red[r][ncols]
    return sol
