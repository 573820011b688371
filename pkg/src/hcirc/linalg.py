"""Small dense linear algebra over exact rationals (and floats, with a tolerance).

Matrices are plain lists of rows. Everything here is sized for circuits with
tens of branches, so clarity wins over speed.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence


def _is_zero(x, tol: float) -> bool:
    return x == 0 if tol == 0 else abs(x) <= tol


def matmul(a: Sequence[Sequence], b: Sequence[Sequence], inner: int | None = None) -> list[list]:
    """Dense product. ``inner`` is needed when ``a`` has no rows to read it from."""
    n = len(a)
    k = len(a[0]) if n else (inner if inner is not None else len(b))
    m = len(b[0]) if len(b) else 0
    if len(b) != k:
        raise ValueError(f"shape mismatch: ({n}x{k}) @ ({len(b)}x{m})")
    return [[sum((a[r][t] * b[t][c] for t in range(k)), 0) for c in range(m)] for r in range(n)]


def matvec(a: Sequence[Sequence], x: Sequence, cols: int | None = None) -> list:
    ncols = len(a[0]) if len(a) else (cols if cols is not None else len(x))
    if len(x) != ncols:
        raise ValueError(f"length mismatch: matrix has {ncols} columns, vector has {len(x)}")
    return [sum((row[j] * x[j] for j in range(ncols)), 0) for row in a]


def transpose(a: Sequence[Sequence], cols: int | None = None) -> list[list]:
    if not a:
        return [[] for _ in range(cols or 0)]
    return [list(col) for col in zip(*a)]


def bareiss_rank(a: Sequence[Sequence[int]]) -> int:
    """Rank of an integer matrix by fraction-free (Bareiss) elimination.

    Every intermediate entry stays an integer, since each division is exact.
    """
    m = [list(map(int, row)) for row in a]
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    rank = 0
    prev = 1
    for col in range(ncols):
        pivot = next((r for r in range(rank, nrows) if m[r][col] != 0), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        p = m[rank][col]
        for r in range(rank + 1, nrows):
            f = m[r][col]
            for c in range(col + 1, ncols):
                m[r][c] = (p * m[r][c] - f * m[rank][c]) // prev
            m[r][col] = 0
        prev = p
        rank += 1
        if rank == nrows:
            break
    return rank


def rational_rank(a: Sequence[Sequence]) -> int:
    """Exact rank of a matrix with integer or Fraction entries.

    Rows are cleared of denominators (which does not change the rank) and
    handed to the integer elimination.
    """
    rows = []
    for row in a:
        fr = [Fraction(x) for x in row]
        lcm = math.lcm(*(x.denominator for x in fr)) if fr else 1
        rows.append([int(x * lcm) for x in fr])
    return bareiss_rank(rows)


def rref(a: Sequence[Sequence], tol: float = 0) -> tuple[list[list], list[int]]:
    """Reduced row echelon form and pivot columns.

    With ``tol == 0`` the entries are converted to Fractions and the result is
    exact; otherwise floats are used with partial pivoting and entries with
    magnitude below ``tol`` are treated as zero.
    """
    conv = Fraction if tol == 0 else float
    m = [[conv(x) for x in row] for row in a]
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        if r == nrows:
            break
        best = max(range(r, nrows), key=lambda i: abs(m[i][col]))
        if _is_zero(m[best][col], tol):
            continue
        m[r], m[best] = m[best], m[r]
        p = m[r][col]
        m[r] = [x / p for x in m[r]]
        for i in range(nrows):
            if i != r and not _is_zero(m[i][col], 0):
                f = m[i][col]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
    return m, pivots


def nullspace(a: Sequence[Sequence], cols: int | None = None) -> list[list[Fraction]]:
    """Exact basis of the right kernel, one vector per free column.

    Each vector carries a 1 at its own free column and 0 at the other free
    columns, so the basis is in reduced echelon form and deterministic.
    """
    ncols = len(a[0]) if len(a) else (cols or 0)
    reduced, pivots = rref(a)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, pc in zip(reduced, pivots):
            v[pc] = -row[f]
        basis.append(v)
    return basis


class InconsistentSystem(ValueError):
    """Raised when ``A x = b`` has no solution."""


def solve_particular(a: Sequence[Sequence], b: Sequence, tol: float = 0,
                     cols: int | None = None) -> list:
    """One solution of ``A x = b`` with every free variable set to zero.

    Raises InconsistentSystem if ``b`` is not in the column space of ``A``.
    """
    ncols = len(a[0]) if len(a) else (cols or 0)
    if len(b) != len(a):
        raise ValueError(f"length mismatch: {len(a)} rows, rhs has {len(b)}")
    aug = [list(row) + [rhs] for row, rhs in zip(a, b)]
    if not aug:
        return [Fraction(0) if tol == 0 else 0.0] * ncols
    reduced, pivots = rref(aug, tol)
    if ncols in pivots:
        raise InconsistentSystem("right-hand side is outside the column space")
    zero = Fraction(0) if tol == 0 else 0.0
    x = [zero] * ncols
    for row, pc in zip(reduced, pivots):
        x[pc] = row[ncols]
    return x


def solve_square(a: Sequence[Sequence], b: Sequence, tol: float = 0) -> list:
    """Solve a nonsingular square system; raises if it turns out singular."""
    n = len(a)
    if any(len(row) != n for row in a):
        raise ValueError("matrix is not square")
    reduced, pivots = rref([list(row) + [rhs] for row, rhs in zip(a, b)], tol)
    if len(pivots) != n or (pivots and pivots[-1] >= n):
        raise ArithmeticError("singular system")
    return [row[n] for row in reduced]
