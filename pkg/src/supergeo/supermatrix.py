"""Block matrices over a supercommutative ring.

Matrices act on column vectors of *right* coordinates: a vector
``sum_j b_j c_j`` in a free module with homogeneous basis ``b_j`` is stored
as the column ``(c_j)``, and an R-linear map with matrix ``M`` sends it to
``(sum_j M[i][j] c_j)_i``.  With this convention composition of maps is the
plain row-by-column product; all Koszul signs live inside ring
multiplication.
"""

from __future__ import annotations

from typing import Sequence

from .errors import ContextMismatch, NotAUnit, NotInvertible, ShapeMismatch
from .superpoly import Parity, SuperPolynomial, VarTable, invert_unit

__all__ = [
    "SuperMatrix",
    "matmul",
    "inverse",
    "berezinian",
    "kernel_basis",
    "solve_in_span",
]


class SuperMatrix:
    """A ``(p|q) x (r|s)`` matrix.

    The first ``p`` rows (``r`` columns) index even basis vectors and the
    remaining ``q`` rows (``s`` columns) odd ones.
    """

    __slots__ = ("ring", "rows_shape", "cols_shape", "entries")

    def __init__(self, ring: VarTable, entries, rows_shape=None, cols_shape=None):
        rows = []
        for row in entries:
            out = []
            for x in row:
                if not isinstance(x, SuperPolynomial):
                    x = ring.const(x)
                elif x.ring != ring:
                    raise ContextMismatch("matrix entry from a different ring")
                out.append(x)
            rows.append(tuple(out))
        nrows = len(rows)
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ShapeMismatch("ragged matrix")
        if rows_shape is None:
            rows_shape = (nrows, 0)
        if cols_shape is None:
            cols_shape = (ncols, 0)
        if sum(rows_shape) != nrows or sum(cols_shape) != ncols:
            raise ShapeMismatch(f"shape {rows_shape}x{cols_shape} does not fit {nrows}x{ncols}")
        self.ring = ring
        self.rows_shape = tuple(rows_shape)
        self.cols_shape = tuple(cols_shape)
        self.entries = tuple(rows)

    @classmethod
    def identity(cls, ring: VarTable, shape=(1, 1)) -> SuperMatrix:
        n = sum(shape)
        return cls(
            ring,
            [[ring.one() if i == j else ring.zero() for j in range(n)] for i in range(n)],
            shape,
            shape,
        )

    @classmethod
    def zeros(cls, ring: VarTable, rows_shape, cols_shape) -> SuperMatrix:
        return cls(
            ring,
            [[ring.zero()] * sum(cols_shape) for _ in range(sum(rows_shape))],
            rows_shape,
            cols_shape,
        )

    @property
    def nrows(self) -> int:
        return len(self.entries)

    @property
    def ncols(self) -> int:
        return sum(self.cols_shape)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def row_parity(self, i) -> int:
        return 0 if i < self.rows_shape[0] else 1

    def col_parity(self, j) -> int:
        return 0 if j < self.cols_shape[0] else 1

    @property
    def parity(self):
        """EVEN / ODD label, or ``None`` for mixed matrices."""
        label = None
        for i, row in enumerate(self.entries):
            for j, x in enumerate(row):
                if not x:
                    continue
                p = x.parity()
                if p is Parity.MIXED:
                    return None
                want = (p.value + self.row_parity(i) + self.col_parity(j)) % 2
                if label is None:
                    label = want
                elif label != want:
                    return None
        return Parity.EVEN if label in (None, 0) else Parity.ODD

    def is_even(self) -> bool:
        return self.parity is Parity.EVEN and self._all_homogeneous(0)

    def is_odd(self) -> bool:
        return self._all_homogeneous(1)

    def _all_homogeneous(self, label) -> bool:
        for i, row in enumerate(self.entries):
            for j, x in enumerate(row):
                want = (label + self.row_parity(i) + self.col_parity(j)) % 2
                if x and not (x.is_odd() if want else x.is_even()):
                    return False
        return True

    def __eq__(self, other):
        if not isinstance(other, SuperMatrix):
            return NotImplemented
        return (
            self.ring == other.ring
            and self.entries == other.entries
            and self.rows_shape == other.rows_shape
            and self.cols_shape == other.cols_shape
        )

    def __hash__(self):
        return hash((self.ring, self.entries, self.rows_shape, self.cols_shape))

    def __add__(self, other):
        self._check_same_shape(other)
        return SuperMatrix(
            self.ring,
            [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.entries, other.entries)],
            self.rows_shape,
            self.cols_shape,
        )

    def __sub__(self, other):
        self._check_same_shape(other)
        return SuperMatrix(
            self.ring,
            [[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(self.entries, other.entries)],
            self.rows_shape,
            self.cols_shape,
        )

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c) -> SuperMatrix:
        """Multiply every entry by a constant (central) scalar."""
        return SuperMatrix(
            self.ring,
            [[x * c for x in row] for row in self.entries],
            self.rows_shape,
            self.cols_shape,
        )

    def __matmul__(self, other):
        return matmul(self, other)

    def apply(self, vector: Sequence[SuperPolynomial]) -> tuple:
        if len(vector) != self.ncols:
            raise ShapeMismatch("vector length does not match matrix")
        return tuple(_dot(row, vector, self.ring) for row in self.entries)

    def column(self, j) -> tuple:
        return tuple(row[j] for row in self.entries)

    def map_entries(self, fn) -> SuperMatrix:
        return SuperMatrix(
            self.ring,
            [[fn(x) for x in row] for row in self.entries],
            self.rows_shape,
            self.cols_shape,
        )

    def _check_same_shape(self, other):
        if not isinstance(other, SuperMatrix):
            raise TypeError("expected a SuperMatrix")
        if self.ring != other.ring:
            raise ContextMismatch("matrices over different rings")
        if (self.rows_shape, self.cols_shape) != (other.rows_shape, other.cols_shape):
            raise ShapeMismatch("matrix shapes differ")

    def to_strings(self):
        return [[str(x) for x in row] for row in self.entries]

    def __repr__(self):
        return f"SuperMatrix({self.to_strings()}, {self.rows_shape}x{self.cols_shape})"


def _dot(row, vector, ring) -> SuperPolynomial:
    acc = ring.zero()
    for a, b in zip(row, vector):
        if a and b:
            acc = acc + a * b
    return acc


def matmul(A: SuperMatrix, B: SuperMatrix) -> SuperMatrix:
    if A.ring != B.ring:
        raise ContextMismatch("matrices over different rings")
    if A.cols_shape != B.rows_shape:
        raise ShapeMismatch(f"cannot multiply {A.cols_shape} columns into {B.rows_shape} rows")
    cols = [B.column(j) for j in range(B.ncols)]
    return SuperMatrix(
        A.ring,
        [[_dot(row, col, A.ring) for col in cols] for row in A.entries],
        A.rows_shape,
        B.cols_shape,
    )


def _try_invert(x: SuperPolynomial):
    if not x:
        return None
    try:
        return invert_unit(x)
    except NotAUnit:
        return None


def inverse(A: SuperMatrix) -> SuperMatrix:
    """Gauss-Jordan inverse with unit pivots.

    Row operations are left multiplications, so the reduction of ``[A | I]``
    yields ``E`` with ``E A = I``; the right-inverse property is checked
    before returning.
    """
    n = A.nrows
    if n != A.ncols:
        raise ShapeMismatch("only square matrices can be inverted")
    ring = A.ring
    rows = [list(r) for r in A.entries]
    inv = [[ring.one() if i == j else ring.zero() for j in range(n)] for i in range(n)]
    for col in range(n):
        pivot_row = None
        pivot_inv = None
        for r in range(col, n):
            pinv = _try_invert(rows[r][col])
            if pinv is not None:
                pivot_row, pivot_inv = r, pinv
                break
        if pivot_row is None:
            raise NotInvertible(f"no unit pivot in column {col}")
        if pivot_row != col:
            rows[col], rows[pivot_row] = rows[pivot_row], rows[col]
            inv[col], inv[pivot_row] = inv[pivot_row], inv[col]
        rows[col] = [pivot_inv * x for x in rows[col]]
        inv[col] = [pivot_inv * x for x in inv[col]]
        for r in range(n):
            if r == col:
                continue
            factor = rows[r][col]
            if not factor:
                continue
            rows[r] = [x - factor * y for x, y in zip(rows[r], rows[col])]
            inv[r] = [x - factor * y for x, y in zip(inv[r], inv[col])]
    result = SuperMatrix(ring, inv, A.cols_shape, A.rows_shape)
    if matmul(A, result) != SuperMatrix.identity(ring, A.rows_shape):
        raise NotInvertible("left inverse is not a right inverse")
    return result


def berezinian(A: SuperMatrix) -> SuperPolynomial:
    """Ber([[a, b], [c, d]]) = (a - b d^-1 c) d^-1 for an even (1|1) matrix."""
    if A.rows_shape != (1, 1) or A.cols_shape != (1, 1):
        raise ShapeMismatch("Berezinian is implemented for (1|1) matrices only")
    if not A.is_even():
        raise NotInvertible("Berezinian needs an even matrix")
    a, b = A.entries[0]
    c, d = A.entries[1]
    try:
        d_inv = invert_unit(d)
    except NotAUnit as exc:
        raise NotInvertible(str(exc)) from exc
    return (a - b * d_inv * c) * d_inv


def kernel_basis(A: SuperMatrix) -> list:
    """Free basis of ``ker A`` found by unit-pivot elimination.

    Row operations (left multiplication) and column operations (right
    multiplication, recorded in ``E``) reduce ``A`` until every pivot row and
    column holds a single unit; the leftover block must then vanish exactly,
    and the kernel is spanned by the columns of ``E`` at non-pivot
    positions.  If a nonzero non-unit block survives, the kernel is not
    determined by this method and :class:`NotInvertible` is raised.

    Returns a list of ``(vector, parity)`` pairs; a vector is homogeneous
    whenever ``A`` and its entries are.
    """
    ring = A.ring
    m, n = A.nrows, A.ncols
    rows = [list(r) for r in A.entries]
    E = [[ring.one() if i == j else ring.zero() for j in range(n)] for i in range(n)]
    free_rows = set(range(m))
    free_cols = list(range(n))
    pivots = []
    while True:
        found = None
        for c in free_cols:
            for r in sorted(free_rows):
                pinv = _try_invert(rows[r][c])
                if pinv is not None:
                    found = (r, c, pinv)
                    break
            if found:
                break
        if not found:
            break
        r0, c0, pinv = found
        # clear column c0 in other rows
        for r in range(m):
            if r == r0 or not rows[r][c0]:
                continue
            factor = rows[r][c0] * pinv
            rows[r] = [x - factor * y for x, y in zip(rows[r], rows[r0])]
        # clear row r0 in other columns
        for c in range(n):
            if c == c0 or not rows[r0][c]:
                continue
            factor = pinv * rows[r0][c]
            for r in range(m):
                if rows[r][c0]:
                    rows[r][c] = rows[r][c] - rows[r][c0] * factor
            for r in range(n):
                if E[r][c0]:
                    E[r][c] = E[r][c] - E[r][c0] * factor
        free_rows.discard(r0)
        free_cols.remove(c0)
        pivots.append((r0, c0))
    for r in free_rows:
        for c in free_cols:
            if rows[r][c]:
                raise NotInvertible("kernel is not cut out by unit pivots")
    out = []
    for c in free_cols:
        vec = tuple(E[r][c] for r in range(n))
        out.append((vec, _vector_parity(vec, A.cols_shape)))
    return out


def _vector_parity(vec, shape):
    label = None
    for k, x in enumerate(vec):
        if not x:
            continue
        p = x.parity()
        if p is Parity.MIXED:
            return Parity.MIXED
        bit = (p.value + (0 if k < shape[0] else 1)) % 2
        if label is None:
            label = bit
        elif label != bit:
            return Parity.MIXED
    return Parity.EVEN if label in (None, 0) else Parity.ODD


def vector_parity(vec, shape) -> Parity:
    """Parity of ``sum_k b_k vec[k]`` for a basis of the given ``(p|q)`` shape."""
    return _vector_parity(vec, shape)


def solve_in_span(columns: Sequence[Sequence[SuperPolynomial]], target, ring: VarTable):
    """Find right coefficients ``x`` with ``sum_k columns[k] x_k == target``.

    The columns must span a free direct summand: some square submatrix of
    rows must be invertible with unit pivots.  Returns the coefficient tuple,
    or ``None`` if ``target`` is not in the span.
    """
    k = len(columns)
    if k == 0:
        return () if all(not x for x in target) else None
    nrows = len(target)
    from itertools import combinations

    for chosen in combinations(range(nrows), k):
        sub = SuperMatrix(ring, [[columns[j][r] for j in range(k)] for r in chosen])
        try:
            sub_inv = inverse(sub)
        except NotInvertible:
            continue
        coeffs = sub_inv.apply([target[r] for r in chosen])
        full = SuperMatrix(ring, [[columns[j][r] for j in range(k)] for r in range(nrows)])
        if tuple(full.apply(coeffs)) == tuple(target):
            return coeffs
        return None
    raise NotInvertible("columns do not span a free direct summand")
