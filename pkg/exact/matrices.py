"""Immutable dense matrices over Q(i) with exact elimination.

Elimination is division-based Gauss-Jordan. In each column the pivot is the candidate entry whose
largest numerator has the greatest magnitude (ties broken by row order), so every result is
deterministic for a fixed input. Rows are handled as sparse dicts while
eliminating; the coefficient-matching systems built elsewhere are mostly zeros.
"""
import logging

import attrs

from exact.numbers import ONE, ZERO, GaussianRational

logger = logging.getLogger(__name__)


def _coerce_entries(rows):
    return tuple(tuple(GaussianRational.parse(value) for value in row) for row in rows)


@attrs.frozen
class ExactMatrix:
    rows: int
    cols: int
    entries: tuple = attrs.field(converter=_coerce_entries)

    def __attrs_post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError(f"Negative matrix shape {self.rows}x{self.cols}")
        if len(self.entries) != self.rows or any(len(row) != self.cols for row in self.entries):
            raise ValueError(f"Entries do not match the declared shape {self.rows}x{self.cols}")

    @classmethod
    def from_rows(cls, rows, cols=None):
        rows = [list(row) for row in rows]
        if cols is None:
            if not rows:
                raise ValueError("Cannot infer the column count of an empty matrix")
            cols = len(rows[0])
        return cls(len(rows), cols, rows)

    @classmethod
    def zeros(cls, rows, cols):
        return cls(rows, cols, [[ZERO] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, size):
        return cls(size, size, [[ONE if i == j else ZERO for j in range(size)] for i in range(size)])

    def __getitem__(self, index):
        i, j = index
        return self.entries[i][j]

    def row(self, i):
        return self.entries[i]

    def column(self, j):
        return tuple(row[j] for row in self.entries)

    def transpose(self):
        return ExactMatrix(self.cols, self.rows, [self.column(j) for j in range(self.cols)])

    def is_zero(self):
        return not any(value for row in self.entries for value in row)

    def flatten(self):
        """Row-major tuple of entries (the matrix viewed as a vector of the matrix space)."""
        return tuple(value for row in self.entries for value in row)

    def matmul(self, other):
        if self.cols != other.rows:
            raise ValueError(f"Cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        columns = [other.column(j) for j in range(other.cols)]
        return ExactMatrix(self.rows, other.cols, [
            [_dot(row, column) for column in columns] for row in self.entries
        ])

    __matmul__ = matmul

    def apply(self, vector):
        """M @ v for a column vector v."""
        if len(vector) != self.cols:
            raise ValueError(f"Vector of length {len(vector)} does not fit {self.rows}x{self.cols}")
        vector = [GaussianRational.parse(value) for value in vector]
        return tuple(_dot(row, vector) for row in self.entries)

    def submatrix(self, row_indices, col_indices):
        return ExactMatrix(len(row_indices), len(col_indices), [
            [self.entries[i][j] for j in col_indices] for i in row_indices
        ])

    def rref(self):
        """Reduced row-echelon form and the pivot columns."""
        reduced, pivots = _eliminate(self.entries, self.cols, back_substitute=True)
        dense = [[row.get(j, ZERO) for j in range(self.cols)] for row in reduced]
        dense += [[ZERO] * self.cols for _ in range(self.rows - len(dense))]
        return ExactMatrix(self.rows, self.cols, dense), tuple(pivots)

    def rank(self):
        return rank(self)

    def nullspace(self):
        return nullspace(self)

    def inverse(self):
        if self.rows != self.cols:
            raise ValueError(f"Only square matrices are invertible, got {self.rows}x{self.cols}")
        size = self.rows
        augmented = [list(row) + [ONE if i == j else ZERO for j in range(size)]
                     for i, row in enumerate(self.entries)]
        reduced, pivots = _eliminate(augmented, 2 * size, back_substitute=True)
        if pivots[:size] != list(range(size)):
            raise ValueError("Matrix is singular")
        return ExactMatrix(size, size, [
            [row.get(size + j, ZERO) for j in range(size)] for row in reduced
        ])

    def left_inverse(self):
        """S with S @ M = I, for M of full column rank."""
        _, pivots = _eliminate(self.transpose().entries, self.rows, back_substitute=False)
        if len(pivots) != self.cols:
            raise ValueError(f"Matrix has rank {len(pivots)} < {self.cols} columns; no left inverse")
        square_inverse = self.submatrix(pivots, range(self.cols)).inverse()
        result = [[ZERO] * self.rows for _ in range(self.cols)]
        for position, row_index in enumerate(pivots):
            for i in range(self.cols):
                result[i][row_index] = square_inverse[i, position]
        return ExactMatrix(self.cols, self.rows, result)

    def right_inverse(self):
        """T with M @ T = I, for M of full row rank."""
        return self.transpose().left_inverse().transpose()

    def __str__(self):
        return '\n'.join('[' + ', '.join(str(value) for value in row) + ']' for row in self.entries)


def _dot(left, right):
    total = ZERO
    for a, b in zip(left, right):
        if a and b:
            total = total + a * b
    return total


def _axpy(row, pivot_row, factor):
    """row + factor * pivot_row on sparse rows."""
    result = dict(row)
    for j, value in pivot_row.items():
        updated = result.get(j, ZERO) + factor * value
        if updated:
            result[j] = updated
        else:
            result.pop(j, None)
    return result


def _eliminate(rows, ncols, back_substitute):
    """Gauss(-Jordan) elimination with largest-magnitude-numerator pivoting.

    Returns the normalized pivot rows (sparse) and the pivot columns. Ties go to the earliest row.
    """
    remaining = []
    for row in rows:
        sparse = {j: GaussianRational.coerce(value) for j, value in enumerate(row) if value}
        if sparse:
            remaining.append(sparse)
    reduced, pivots = [], []
    for col in range(ncols):
        if not remaining:
            break
        candidates = [index for index, row in enumerate(remaining) if col in row]
        if not candidates:
            continue
        best = max(candidates, key=lambda index: (remaining[index][col].numerator_magnitude(), -index))
        pivot_row = remaining.pop(best)
        scale = pivot_row[col].inverse()
        pivot_row = {j: value * scale for j, value in pivot_row.items()}
        survivors = []
        for row in remaining:
            factor = row.get(col)
            if factor:
                row = _axpy(row, pivot_row, -factor)
            if row:
                survivors.append(row)
        remaining = survivors
        if back_substitute:
            reduced = [_axpy(row, pivot_row, -row[col]) if col in row else row for row in reduced]
        reduced.append(pivot_row)
        pivots.append(col)
    logger.debug(f"Eliminated {len(rows)}x{ncols} system: rank {len(pivots)}")
    return reduced, pivots


def rank(matrix):
    """Exact rank over C."""
    _, pivots = _eliminate(matrix.entries, matrix.cols, back_substitute=False)
    return len(pivots)


def nullspace(matrix):
    """Basis of the right kernel, one vector per free column (that coordinate set to 1)."""
    reduced, pivots = _eliminate(matrix.entries, matrix.cols, back_substitute=True)
    pivot_set = set(pivots)
    basis = []
    for free in range(matrix.cols):
        if free in pivot_set:
            continue
        vector = [ZERO] * matrix.cols
        vector[free] = ONE
        for pivot, row in zip(pivots, reduced):
            value = row.get(free)
            if value:
                vector[pivot] = -value
        basis.append(tuple(vector))
    return basis
