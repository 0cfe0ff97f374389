"""Exact and tolerance-based matrix kernels.

Provides the shared ``Matrix`` container and the elimination primitives the
rest of the package is built on: reduced row echelon form, kernel bases,
fraction-free determinants, streaming minors, and exact squared distances
to spans.  Exact modes (rational, gaussian rational) never round; the
complex-float mode applies a scale-invariant pivot threshold.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from . import fields
from .fields import (
    COMPLEX_FLOAT,
    EXACT_MODES,
    GAUSSIAN,
    RATIONAL,
    FieldModeError,
    GaussianRational,
    abs_sq,
    coerce_scalar,
    conj,
)

DEFAULT_FLOAT_TOL = 1e-10


class Matrix:
    """A d x n matrix over one field mode.

    Entries are coerced on construction; ``tol`` must be 0 in exact modes and
    positive in complex-float mode.  Instances are treated as immutable; all
    operations return new matrices.
    """

    __slots__ = ("field", "rows", "cols", "data", "tol", "_rank")

    def __init__(self, field, data, tol=None):
        if field not in fields.FIELD_MODES:
            raise FieldModeError(f"unknown field mode {field!r}")
        data = [list(row) for row in data]
        if data and any(len(row) != len(data[0]) for row in data):
            raise ValueError("ragged rows")
        self.field = field
        self.rows = len(data)
        self.cols = len(data[0]) if data else 0
        self.data = [[coerce_scalar(x, field) for x in row] for row in data]
        if field == COMPLEX_FLOAT:
            if tol is None:
                tol = DEFAULT_FLOAT_TOL
            if not tol > 0:
                raise ValueError("complex_float matrices need tol > 0")
        else:
            if tol not in (None, 0, 0.0):
                raise ValueError("exact matrices must have tol = 0")
            tol = 0.0
        self.tol = float(tol)
        self._rank = None

    # -- construction helpers -------------------------------------------------

    @classmethod
    def identity(cls, n, field=RATIONAL, tol=None):
        return cls(field, [[1 if i == j else 0 for j in range(n)] for i in range(n)], tol)

    @classmethod
    def from_columns(cls, field, columns, tol=None):
        if not columns:
            raise ValueError("need at least one column")
        d = len(columns[0])
        return cls(field, [[col[i] for col in columns] for i in range(d)], tol)

    # -- basic access ----------------------------------------------------------

    def column(self, j):
        return [self.data[i][j] for i in range(self.rows)]

    def columns(self):
        return [self.column(j) for j in range(self.cols)]

    def row(self, i):
        return list(self.data[i])

    def submatrix(self, row_idx, col_idx):
        return Matrix(
            self.field,
            [[self.data[i][j] for j in col_idx] for i in row_idx],
            self.tol if self.field == COMPLEX_FLOAT else None,
        )

    def column_submatrix(self, col_idx):
        return self.submatrix(range(self.rows), col_idx)

    def transpose(self):
        return Matrix(
            self.field,
            [[self.data[i][j] for i in range(self.rows)] for j in range(self.cols)],
            self.tol if self.field == COMPLEX_FLOAT else None,
        )

    def scale_entry_max(self):
        """Largest entry modulus (float), used for tolerance scaling."""
        m = 0.0
        for row in self.data:
            for x in row:
                v = abs_sq(x, self.field)
                fv = float(v)
                if fv > m:
                    m = fv
        return m ** 0.5

    def is_entry_zero(self, x, scale=None):
        if self.field in EXACT_MODES:
            return not x
        s = self.scale_entry_max() if scale is None else scale
        return abs(x) <= self.tol * max(s, 1e-300)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (
            self.field == other.field
            and self.rows == other.rows
            and self.cols == other.cols
            and self.data == other.data
        )

    def __repr__(self):
        return f"Matrix({self.field!r}, {self.rows}x{self.cols})"

    # -- JSON wire format --------------------------------------------------

    def to_json(self):
        return {
            "field": self.field,
            "rows": self.rows,
            "cols": self.cols,
            "tol": self.tol,
            "data": [
                [fields.scalar_to_json(x, self.field) for x in row] for row in self.data
            ],
        }

    @classmethod
    def from_json(cls, obj):
        field = obj["field"]
        data = [
            [fields.scalar_from_json(v, field) for v in row] for row in obj["data"]
        ]
        m = cls(field, data, obj.get("tol") if field == COMPLEX_FLOAT else None)
        if "rows" in obj and m.rows != obj["rows"]:
            raise ValueError("row count mismatch in matrix JSON")
        if "cols" in obj and m.cols != obj["cols"]:
            raise ValueError("column count mismatch in matrix JSON")
        return m

    # -- numpy bridge (float work only) -------------------------------------

    def to_complex_array(self):
        import numpy as np

        return np.array(
            [[complex(fields.scalar_to_float(x, self.field)) for x in row] for row in self.data],
            dtype=complex,
        )


def _check_same_field(*ms):
    modes = {m.field for m in ms}
    if len(modes) > 1:
        raise FieldModeError(f"mixed field modes: {sorted(modes)}")


# -- integer fast paths --------------------------------------------------------


def as_int_rows(M: Matrix):
    """Rows as plain ints when every entry is an integral rational, else None."""
    if M.field != RATIONAL:
        return None
    out = []
    for row in M.data:
        r = []
        for x in row:
            if x.denominator != 1:
                return None
            r.append(x.numerator)
        out.append(r)
    return out


def int_rank(rows):
    """Rank of an integer matrix by fraction-free elimination."""
    m = [list(r) for r in rows]
    nr = len(m)
    nc = len(m[0]) if nr else 0
    rank = 0
    prev = 1
    for col in range(nc):
        piv = None
        for i in range(rank, nr):
            if m[i][col]:
                piv = i
                break
        if piv is None:
            continue
        if piv != rank:
            m[rank], m[piv] = m[piv], m[rank]
        p = m[rank][col]
        for i in range(rank + 1, nr):
            f = m[i][col]
            if f == 0 and prev == 1:
                continue
            row_i = m[i]
            row_p = m[rank]
            for j in range(col, nc):
                row_i[j] = (row_i[j] * p - f * row_p[j]) // prev
        prev = p
        rank += 1
        if rank == nr:
            break
    return rank


def int_det(rows):
    """Exact determinant of a square integer matrix (Bareiss)."""
    n = len(rows)
    if n == 0:
        return 1
    m = [list(r) for r in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            piv = None
            for i in range(k + 1, n):
                if m[i][k]:
                    piv = i
                    break
            if piv is None:
                return 0
            m[k], m[piv] = m[piv], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


# -- elimination ---------------------------------------------------------------


def rref(M: Matrix):
    """Reduced row echelon form.

    Returns (echelon Matrix, pivot column list, rank).  In float mode a pivot
    is accepted only if its modulus is at least tol times the largest modulus
    remaining in its column at elimination time.
    """
    a = [list(row) for row in M.data]
    nr, nc = M.rows, M.cols
    pivots = []
    r = 0
    for c in range(nc):
        if r >= nr:
            break
        if M.field in EXACT_MODES:
            piv = None
            for i in range(r, nr):
                if a[i][c]:
                    piv = i
                    break
            if piv is None:
                continue
        else:
            col_max = max(abs(a[i][c]) for i in range(nr))
            best, best_mag = None, 0.0
            for i in range(r, nr):
                mag = abs(a[i][c])
                if mag > best_mag:
                    best, best_mag = i, mag
            if best is None or best_mag == 0.0 or best_mag < M.tol * col_max:
                continue
            piv = best
        if piv != r:
            a[r], a[piv] = a[piv], a[r]
        pv = a[r][c]
        a[r] = [x / pv for x in a[r]]
        for i in range(nr):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    ech = Matrix(M.field, a, M.tol if M.field == COMPLEX_FLOAT else None)
    return ech, pivots, len(pivots)


def rank(M: Matrix) -> int:
    if M._rank is None:
        ints = as_int_rows(M)
        if ints is not None:
            M._rank = int_rank(ints)
        else:
            M._rank = rref(M)[2]
    return M._rank


def _normalize_first_nonzero(vec, field, tol=0.0):
    lead = None
    for x in vec:
        if field in EXACT_MODES:
            if x:
                lead = x
                break
        else:
            if abs(x) > tol:
                lead = x
                break
    if lead is None:
        return vec
    return [x / lead for x in vec]


def kernel_basis(M: Matrix):
    """Reduced basis of ker(M): n - rank vectors, first nonzero entry 1."""
    ech, pivots, rk = rref(M)
    free = [c for c in range(M.cols) if c not in pivots]
    basis = []
    for f in free:
        v = [fields.zero(M.field)] * M.cols
        v[f] = fields.one(M.field)
        for r, p in enumerate(pivots):
            v[p] = -ech.data[r][f]
        basis.append(_normalize_first_nonzero(v, M.field, M.tol))
    return basis


def det(M: Matrix):
    """Exact fraction-free determinant (Bareiss) in exact modes.

    Float mode uses Gaussian elimination with partial pivoting.
    """
    if M.rows != M.cols:
        raise ValueError("determinant of a non-square matrix")
    n = M.rows
    if n == 0:
        return fields.one(M.field)
    ints = as_int_rows(M)
    if ints is not None:
        return Fraction(int_det(ints))
    a = [list(row) for row in M.data]
    if M.field in EXACT_MODES:
        sign = 1
        prev = fields.one(M.field)
        for k in range(n - 1):
            if not a[k][k]:
                piv = None
                for i in range(k + 1, n):
                    if a[i][k]:
                        piv = i
                        break
                if piv is None:
                    return fields.zero(M.field)
                a[k], a[piv] = a[piv], a[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev
            prev = a[k][k]
        result = a[n - 1][n - 1]
        return result if sign == 1 else -result
    # complex float: partial pivoting
    d = complex(1.0)
    for k in range(n):
        piv, mag = k, abs(a[k][k])
        for i in range(k + 1, n):
            if abs(a[i][k]) > mag:
                piv, mag = i, abs(a[i][k])
        if mag == 0.0:
            return complex(0.0)
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            d = -d
        d *= a[k][k]
        for i in range(k + 1, n):
            f = a[i][k] / a[k][k]
            for j in range(k, n):
                a[i][j] -= f * a[k][j]
    return d


def all_subdets(M: Matrix, r: int):
    """Stream every r x r minor as (row tuple, column tuple, determinant)."""
    if r > min(M.rows, M.cols):
        raise ValueError("minor size exceeds matrix dimensions")
    ints = as_int_rows(M)
    for rows_sel in itertools.combinations(range(M.rows), r):
        for cols_sel in itertools.combinations(range(M.cols), r):
            if ints is not None:
                val = Fraction(
                    int_det([[ints[i][j] for j in cols_sel] for i in rows_sel])
                )
            else:
                val = det(M.submatrix(rows_sel, cols_sel))
            yield rows_sel, cols_sel, val


def hermitian_dot(u, v, field):
    """<u, v> = sum conj(u_i) v_i."""
    total = fields.zero(field)
    for x, y in zip(u, v):
        total = total + conj(x, field) * y
    return total


def _solve_square_exact(g, w, field):
    """Solve G c = w for Hermitian positive definite G by Gauss-Jordan."""
    n = len(g)
    a = [list(row) + [w[i]] for i, row in enumerate(g)]
    for c in range(n):
        piv = None
        for i in range(c, n):
            if a[i][c]:
                piv = i
                break
        if piv is None:
            raise ZeroDivisionError("singular Gram matrix")
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
        pv = a[c][c]
        a[c] = [x / pv for x in a[c]]
        for i in range(n):
            if i != c and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return [a[i][n] for i in range(n)]


def dist_sq_to_span(v, basis_vectors, field, tol=0.0):
    """Squared Euclidean (Hermitian) distance from v to span(basis_vectors).

    Exact in rational modes via Gram-matrix projection.  An empty basis means
    span = {0}.  Returns a Fraction in exact modes and a float otherwise.
    """
    vv = abs_sq_norm(v, field)
    cols = [b for b in basis_vectors]
    if cols:
        bmat = Matrix.from_columns(field, cols, tol if field == COMPLEX_FLOAT else None)
        _, pivots, _ = rref(bmat)
        cols = [cols[j] for j in pivots]
    if not cols:
        return vv
    g = [[hermitian_dot(bi, bj, field) for bj in cols] for bi in cols]
    w = [hermitian_dot(bi, v, field) for bi in cols]
    c = _solve_square_exact(g, w, field)
    proj_sq = fields.zero(field)
    for wi, ci in zip(w, c):
        proj_sq = proj_sq + conj(wi, field) * ci
    if field == RATIONAL:
        return vv - proj_sq
    if field == GAUSSIAN:
        assert proj_sq.im == 0
        return vv - proj_sq.re
    return vv - proj_sq.real


def abs_sq_norm(v, field):
    """Squared norm of a vector; exact Fraction in exact modes."""
    if field == RATIONAL:
        return sum((x * x for x in v), Fraction(0))
    if field == GAUSSIAN:
        return sum((x.abs_sq() for x in v), Fraction(0))
    return float(sum(x.real * x.real + x.imag * x.imag for x in v))


def mat_vec(M: Matrix, v):
    return [
        sum((M.data[i][j] * v[j] for j in range(M.cols)), fields.zero(M.field))
        for i in range(M.rows)
    ]


def mat_mul(A: Matrix, B: Matrix) -> Matrix:
    _check_same_field(A, B)
    if A.cols != B.rows:
        raise ValueError("dimension mismatch")
    data = [
        [
            sum((A.data[i][k] * B.data[k][j] for k in range(A.cols)), fields.zero(A.field))
            for j in range(B.cols)
        ]
        for i in range(A.rows)
    ]
    tol = A.tol if A.field == COMPLEX_FLOAT else None
    return Matrix(A.field, data, tol)
