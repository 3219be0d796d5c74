"""Tiny exact linear solver over a coefficient field (Gaussian elimination)."""

from __future__ import annotations

from typing import List, Optional, Tuple

from . import scalars as sc
from .scalars import FieldSpec, Scalar


def solve(
    spec: FieldSpec, rows: List[List[Scalar]], rhs: List[Scalar]
) -> Tuple[Optional[List[Scalar]], int]:
    """Solve A x = b exactly.

    Returns (solution, kernel_dimension); solution is None when inconsistent.
    When the system is underdetermined the returned solution sets all free
    variables to zero.
    """
    m = len(rows)
    n = len(rows[0]) if m else 0
    a = [list(row) + [rhs[i]] for i, row in enumerate(rows)]
    pivot_cols: List[int] = []
    r = 0
    for c in range(n):
        pivot = next((i for i in range(r, m) if not a[i][c].is_zero()), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        inv = sc.inverse(a[r][c])
        a[r] = [sc.mul(v, inv) for v in a[r]]
        for i in range(m):
            if i != r and not a[i][c].is_zero():
                factor = a[i][c]
                a[i] = [sc.sub(a[i][j], sc.mul(factor, a[r][j])) for j in range(n + 1)]
        pivot_cols.append(c)
        r += 1
        if r == m:
            break
    for i in range(r, m):
        if not a[i][n].is_zero():
            return None, n - len(pivot_cols)
    x = [sc.zero(spec) for _ in range(n)]
    for i, c in enumerate(pivot_cols):
        x[c] = a[i][n]
    return x, n - len(pivot_cols)
