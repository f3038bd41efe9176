"""Exact Gaussian elimination over the parameter field."""

from __future__ import annotations

from .scalars import ParamScalar

Matrix = list  # list[list[ParamScalar]]


def rref(rows: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns.

    Deterministic: the pivot is the first row with a nonzero entry in the
    current column.  All arithmetic is exact field arithmetic.
    """
    mat = [list(row) for row in rows]
    nrows = len(mat)
    ncols = len(mat[0]) if mat else 0
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        pivot_row = None
        for rr in range(r, nrows):
            if not mat[rr][col].is_zero():
                pivot_row = rr
                break
        if pivot_row is None:
            continue
        mat[r], mat[pivot_row] = mat[pivot_row], mat[r]
        inv = mat[r][col].inverse()
        mat[r] = [v * inv for v in mat[r]]
        for rr in range(nrows):
            if rr != r and not mat[rr][col].is_zero():
                factor = mat[rr][col]
                mat[rr] = [a - factor * b for a, b in zip(mat[rr], mat[r])]
        pivots.append(col)
        r += 1
        if r == nrows:
            break
    return mat, pivots


def rank(rows: Matrix) -> int:
    if not rows:
        return 0
    _, pivots = rref(rows)
    return len(pivots)


def kernel_basis(rows: Matrix, ncols: int) -> list[list[ParamScalar]]:
    """Basis of the right kernel {v : M v = 0}, deterministic, one vector per
    free column (free coordinate set to 1)."""
    if not rows:
        return [
            [ParamScalar.from_int(1 if k == free else 0) for k in range(ncols)]
            for free in range(ncols)
        ]
    mat, pivots = rref(rows)
    pivot_set = set(pivots)
    free_cols = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for free in free_cols:
        v = [ParamScalar.zero() for _ in range(ncols)]
        v[free] = ParamScalar.one()
        for r, col in enumerate(pivots):
            v[col] = -mat[r][free]
        basis.append(v)
    return basis
