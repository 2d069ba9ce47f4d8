"""
Exact rational linear algebra.

Scalars are fractions.Fraction values (always reduced, zero is 0/1). Matrices are
immutable row-major grids of Fractions with an explicit shape, so zero-sized
blocks keep their column count. Elimination works on sparse rows (dict of
column -> value) because the linear systems built for Hom spaces are mostly zeros.
"""

import re
import logging
from fractions import Fraction

import sympy

import errors

logger = logging.getLogger(__name__)

ZERO = Fraction(0)
ONE = Fraction(1)

_SCALAR_PATTERN = re.compile(r'^\s*[+-]?\d+(\s*/\s*\d+)?\s*$')


def to_scalar(value):
    """Coerce an int, Fraction or 'p' / 'p/q' text to a reduced Fraction"""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise errors.ParseError(f"Invalid scalar {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str) and _SCALAR_PATTERN.match(value):
        try:
            return Fraction(value.replace(' ', ''))
        except ZeroDivisionError:
            raise errors.ParseError(f"Invalid scalar {value!r}: zero denominator")
    raise errors.ParseError(f"Invalid scalar {value!r}")


def format_scalar(value):
    """Render a scalar as 'p' or 'p/q'"""
    return str(Fraction(value))


class Matrix:
    """Immutable exact matrix of shape rows x cols"""

    __slots__ = ('rows', 'cols', '_data')

    def __init__(self, rows, cols, data=None):
        self.rows = rows
        self.cols = cols
        if data is None:
            self._data = tuple((ZERO,) * cols for _ in range(rows))
        else:
            grid = tuple(tuple(to_scalar(x) for x in row) for row in data)
            if len(grid) != rows or any(len(row) != cols for row in grid):
                raise errors.DimensionMismatchError(
                    f"Matrix data does not have shape {rows}x{cols}")
            self._data = grid

    @classmethod
    def zeros(cls, rows, cols):
        return cls(rows, cols)

    @classmethod
    def identity(cls, n):
        return cls(n, n, [[ONE if i == j else ZERO for j in range(n)] for i in range(n)])

    @classmethod
    def from_rows(cls, rows, cols=None):
        rows = [list(r) for r in rows]
        if cols is None:
            if not rows:
                raise errors.DimensionMismatchError("Column count needed for an empty matrix")
            cols = len(rows[0])
        return cls(len(rows), cols, rows)

    @classmethod
    def from_columns(cls, columns, rows):
        """Build a rows x len(columns) matrix whose j-th column is columns[j]"""
        columns = [list(c) for c in columns]
        for c in columns:
            if len(c) != rows:
                raise errors.DimensionMismatchError(f"Column of length {len(c)}, expected {rows}")
        return cls(rows, len(columns), [[columns[j][i] for j in range(len(columns))] for i in range(rows)])

    @classmethod
    def from_sparse(cls, rows, cols, entries):
        """Build from a dict {(i, j): value}"""
        grid = [[ZERO] * cols for _ in range(rows)]
        for (i, j), value in entries.items():
            grid[i][j] = value
        return cls(rows, cols, grid)

    @property
    def shape(self):
        return (self.rows, self.cols)

    def __getitem__(self, index):
        i, j = index
        return self._data[i][j]

    def row(self, i):
        return list(self._data[i])

    def column(self, j):
        return [row[j] for row in self._data]

    def to_lists(self):
        return [list(row) for row in self._data]

    def entries(self):
        """Row-major flat list of entries"""
        return [x for row in self._data for x in row]

    def is_zero(self):
        return all(not x for row in self._data for x in row)

    def transpose(self):
        return Matrix(self.cols, self.rows, [[self._data[i][j] for i in range(self.rows)] for j in range(self.cols)])

    @property
    def T(self):
        return self.transpose()

    def apply(self, vector):
        """Matrix-vector product"""
        if len(vector) != self.cols:
            raise errors.DimensionMismatchError(
                f"Vector of length {len(vector)} against {self.rows}x{self.cols} matrix")
        return [sum((a * b for a, b in zip(row, vector) if a and b), ZERO) for row in self._data]

    def __matmul__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.cols != other.rows:
            raise errors.DimensionMismatchError(
                f"Cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        ocols = other.cols
        other_rows = other._data
        out = []
        for row in self._data:
            acc = [ZERO] * ocols
            for k, a in enumerate(row):
                if not a:
                    continue
                orow = other_rows[k]
                for j in range(ocols):
                    b = orow[j]
                    if b:
                        acc[j] += a * b
            out.append(acc)
        return Matrix(self.rows, ocols, out)

    def _check_same_shape(self, other):
        if self.shape != other.shape:
            raise errors.DimensionMismatchError(f"Shape {self.shape} differs from {other.shape}")

    def __add__(self, other):
        self._check_same_shape(other)
        return Matrix(self.rows, self.cols,
                      [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self._data, other._data)])

    def __sub__(self, other):
        self._check_same_shape(other)
        return Matrix(self.rows, self.cols,
                      [[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(self._data, other._data)])

    def __neg__(self):
        return self.scale(-ONE)

    def scale(self, c):
        c = to_scalar(c)
        return Matrix(self.rows, self.cols, [[c * a for a in row] for row in self._data])

    def __mul__(self, c):
        if isinstance(c, Matrix):
            return NotImplemented
        return self.scale(c)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    __hash__ = None

    def submatrix(self, row_indices, col_indices):
        row_indices = list(row_indices)
        col_indices = list(col_indices)
        return Matrix(len(row_indices), len(col_indices),
                      [[self._data[i][j] for j in col_indices] for i in row_indices])

    def to_json(self):
        return [[format_scalar(x) for x in row] for row in self._data]

    @classmethod
    def from_json(cls, rows, shape):
        r, c = shape
        if r == 0 or c == 0:
            if rows not in (None, []) and any(len(row) for row in rows):
                raise errors.DimensionMismatchError(f"Expected an empty {r}x{c} matrix")
            return cls.zeros(r, c)
        if len(rows) != r:
            raise errors.DimensionMismatchError(f"Expected {r} rows, got {len(rows)}")
        return cls(r, c, rows)

    def __repr__(self):
        return f"Matrix({self.rows}x{self.cols}, {self.to_json()})"


def hstack(blocks, rows):
    """Horizontal concatenation of matrices that all have `rows` rows"""
    cols = sum(b.cols for b in blocks)
    grid = [[] for _ in range(rows)]
    for b in blocks:
        if b.rows != rows:
            raise errors.DimensionMismatchError(f"Block has {b.rows} rows, expected {rows}")
        for i in range(rows):
            grid[i].extend(b.row(i))
    return Matrix(rows, cols, grid)


def vstack(blocks, cols):
    """Vertical concatenation of matrices that all have `cols` columns"""
    grid = []
    for b in blocks:
        if b.cols != cols:
            raise errors.DimensionMismatchError(f"Block has {b.cols} columns, expected {cols}")
        grid.extend(b.to_lists())
    return Matrix(len(grid), cols, grid)


def block_diagonal(blocks):
    rows = sum(b.rows for b in blocks)
    cols = sum(b.cols for b in blocks)
    entries = {}
    r0 = c0 = 0
    for b in blocks:
        for i in range(b.rows):
            for j in range(b.cols):
                if b[i, j]:
                    entries[(r0 + i, c0 + j)] = b[i, j]
        r0 += b.rows
        c0 += b.cols
    return Matrix.from_sparse(rows, cols, entries)


def _axpy(target, c, source):
    """target += c * source on sparse rows"""
    for k, v in source.items():
        nv = target.get(k, ZERO) + c * v
        if nv:
            target[k] = nv
        else:
            target.pop(k, None)


def reduce_rows(rows, priority=None):
    """
    Gauss-Jordan elimination over sparse rows.

    Returns {pivot column: row} with every row normalized to 1 at its pivot and
    zero at every other pivot column. The pivot of a new row is the column with
    the smallest priority key (column index by default).
    """
    pivots = {}
    key = priority if priority is not None else (lambda c: c)
    for raw in rows:
        row = {c: v for c, v in raw.items() if v}
        for col in [c for c in row if c in pivots]:
            coeff = row.get(col)
            if coeff:
                _axpy(row, -coeff, pivots[col])
        if not row:
            continue
        col = min(row, key=key)
        inv = ONE / row[col]
        row = {c: v * inv for c, v in row.items()}
        for other in pivots.values():
            coeff = other.get(col)
            if coeff:
                _axpy(other, -coeff, row)
        pivots[col] = row
    return pivots


def sparse_kernel(rows, ncols):
    """Basis of {x : row . x = 0 for every sparse row}"""
    pivots = reduce_rows(rows)
    basis = []
    for free in range(ncols):
        if free in pivots:
            continue
        v = [ZERO] * ncols
        v[free] = ONE
        for p, row in pivots.items():
            c = row.get(free)
            if c:
                v[p] = -c
        basis.append(v)
    return basis


def _sparse_rows(m):
    return [{j: x for j, x in enumerate(m.row(i)) if x} for i in range(m.rows)]


def rref(m):
    """Reduced row echelon form and pivot columns"""
    pivots = reduce_rows(_sparse_rows(m))
    order = sorted(pivots)
    grid = [[pivots[p].get(j, ZERO) for j in range(m.cols)] for p in order]
    return Matrix(len(order), m.cols, grid), order


def rank(m):
    return len(reduce_rows(_sparse_rows(m)))


def kernel_basis(m):
    """Basis of the null space as column vectors"""
    return sparse_kernel(_sparse_rows(m), m.cols)


def image_basis(m):
    """Basis of the column space: the columns of m at pivot positions"""
    pivots = reduce_rows(_sparse_rows(m))
    return [m.column(j) for j in sorted(pivots)]


def left_kernel_basis(m):
    """Basis of {y : y m = 0} as row vectors"""
    return kernel_basis(m.transpose())


def solve(m, b):
    """Some x with m x = b, or None when the system is inconsistent"""
    b = [to_scalar(x) for x in b]
    if len(b) != m.rows:
        raise errors.DimensionMismatchError(f"Right-hand side of length {len(b)} for {m.rows} equations")
    aug = m.cols
    rows = []
    for i in range(m.rows):
        row = {j: x for j, x in enumerate(m.row(i)) if x}
        if b[i]:
            row[aug] = b[i]
        rows.append(row)
    pivots = reduce_rows(rows)
    if aug in pivots:
        return None
    x = [ZERO] * m.cols
    for p, row in pivots.items():
        x[p] = row.get(aug, ZERO)
    return x


def solve_matrix(a, b):
    """Some X with a X = b, or None"""
    if a.rows != b.rows:
        raise errors.DimensionMismatchError(f"Cannot solve {a.rows}x{a.cols} against {b.rows}x{b.cols}")
    columns = []
    for j in range(b.cols):
        x = solve(a, b.column(j))
        if x is None:
            return None
        columns.append(x)
    return Matrix.from_columns(columns, a.cols)


def inverse(m):
    if m.rows != m.cols:
        raise errors.DimensionMismatchError(f"Cannot invert a {m.rows}x{m.cols} matrix")
    if rank(m) != m.rows:
        raise ValueError("Matrix is singular")
    return solve_matrix(m, Matrix.identity(m.rows))


def is_invertible(m):
    return m.rows == m.cols and rank(m) == m.rows


def complement_basis(vectors, dim):
    """Standard basis vectors completing the span of `vectors` to the whole space"""
    pivots = reduce_rows([{j: x for j, x in enumerate(v) if x} for v in vectors])
    basis = []
    for j in range(dim):
        if j not in pivots:
            e = [ZERO] * dim
            e[j] = ONE
            basis.append(e)
    return basis


def matrix_power(m, k):
    result = Matrix.identity(m.rows)
    for _ in range(k):
        result = result @ m
    return result


def minimal_polynomial(m):
    """Monic minimal polynomial of a square matrix, coefficients low degree first"""
    n = m.rows
    powers = [Matrix.identity(n).entries()]
    current = Matrix.identity(n)
    while True:
        current = current @ m
        target = current.entries()
        basis = Matrix.from_columns(powers, n * n)
        x = solve(basis, target)
        if x is not None:
            return [-c for c in x] + [ONE]
        powers.append(target)


def evaluate_polynomial(coeffs, m):
    """Evaluate sum coeffs[i] m^i by Horner's rule"""
    n = m.rows
    result = Matrix.zeros(n, n)
    for c in reversed(coeffs):
        result = result @ m + Matrix.identity(n).scale(c)
    return result


def factor_polynomial(coeffs):
    """Irreducible factors over the rationals as (coefficients low first, multiplicity)"""
    x = sympy.Symbol('x')
    poly = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(coeffs)], x, domain='QQ')
    _, factors = poly.factor_list()
    result = []
    for factor, multiplicity in factors:
        high_first = factor.all_coeffs()
        result.append(([Fraction(int(sympy.Rational(c).p), int(sympy.Rational(c).q)) for c in reversed(high_first)],
                       multiplicity))
    logger.debug(f"Factored degree {len(coeffs) - 1} polynomial into {len(result)} factors")
    return result


def dot(u, v):
    return sum((a * b for a, b in zip(u, v) if a and b), ZERO)
