"""Exact Gaussian elimination over Q(i)."""

from __future__ import annotations

from .scalar import Scalar

__all__ = ["rref", "nullspace"]


def rref(rows, ncols: int):
    """Reduced row echelon form of a dense matrix of Scalars.

    Returns ``(reduced_rows, pivot_columns)``; zero rows are dropped.
    """
    work = [[Scalar.coerce(x) for x in row] for row in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((k for k in range(r, len(work)) if work[k][c]), None)
        if pivot is None:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        inv = work[r][c].inverse()
        work[r] = [x * inv for x in work[r]]
        for k in range(len(work)):
            if k != r and work[k][c]:
                f = work[k][c]
                work[k] = [x - f * y for x, y in zip(work[k], work[r])]
        pivots.append(c)
        r += 1
        if r == len(work):
            break
    return work[:r], pivots


def nullspace(rows, ncols: int):
    """Basis of ``{x : rows x = 0}``, one vector per free column."""
    reduced, pivots = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        vec = [Scalar(0)] * ncols
        vec[f] = Scalar(1)
        for row, p in zip(reduced, pivots):
            vec[p] = -row[f]
        basis.append(vec)
    return basis
