"""Exact linear solving over Gaussian-rational scalars."""

from __future__ import annotations

from .matrices import SuperMatrix
from .scalars import Scalar


def solve_exact(rows: list[list[Scalar]], rhs: list[Scalar]) -> list[Scalar] | None:
    """Solve A x = b by fraction-free-ish Gaussian elimination.

    Returns one exact solution, or None when the system is inconsistent.
    Free variables, if any, are set to zero.
    """
    m = len(rows)
    n = len(rows[0]) if rows else 0
    aug = [list(row) + [rhs[i]] for i, row in enumerate(rows)]
    pivot_cols: list[int] = []
    r = 0
    for c in range(n):
        pivot = next((i for i in range(r, m) if not aug[i][c].is_zero), None)
        if pivot is None:
            continue
        aug[r], aug[pivot] = aug[pivot], aug[r]
        inv = aug[r][c].inverse()
        aug[r] = [v * inv for v in aug[r]]
        for i in range(m):
            if i != r and not aug[i][c].is_zero:
                f = aug[i][c]
                aug[i] = [v - f * w for v, w in zip(aug[i], aug[r])]
        pivot_cols.append(c)
        r += 1
        if r == m:
            break
    for i in range(r, m):
        if not aug[i][n].is_zero:
            return None
    x = [Scalar.zero()] * n
    for k, c in enumerate(pivot_cols):
        x[c] = aug[k][n]
    return x


def expand_in_basis(target: SuperMatrix, basis: list[SuperMatrix]) -> list[Scalar] | None:
    """Exact coefficients expressing a constant matrix over a matrix basis.

    Every entry must be a scalar multiple of 1 (constant Elements); returns
    None when the target lies outside the span.
    """
    def entry_scalar(e) -> Scalar:
        if e.is_zero:
            return Scalar.zero()
        return e.constant_term()

    dim = target.shape.dim
    rows: list[list[Scalar]] = []
    rhs: list[Scalar] = []
    for i in range(dim):
        for j in range(dim):
            rows.append([entry_scalar(bmat.entries[i][j]) for bmat in basis])
            rhs.append(entry_scalar(target.entries[i][j]))
    sol = solve_exact(rows, rhs)
    if sol is None:
        return None
    # confirm (free algebra entries might hide non-constant parts)
    for i in range(dim):
        for j in range(dim):
            acc = Scalar.zero()
            for coeff, bmat in zip(sol, basis):
                acc = acc + coeff * entry_scalar(bmat.entries[i][j])
            got = entry_scalar(target.entries[i][j])
            if not (acc - got).is_zero:
                return None
            if not target.entries[i][j].soul().is_zero:
                return None
    return sol
