"""Exact dense linear algebra over Fraction and Gaussian rationals.

Everything here is fraction-free only in spirit: entries are exact field
elements, pivots are chosen by position (lowest index), never by size,
so results are deterministic across runs and backends. Matrices are
lists of row lists and are never mutated in place by public functions.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence, TypeVar

from .errors import DegenerateFormError, PreconditionError, SingularJacobianError
from .rationals import GaussianRational

F = TypeVar("F", Fraction, GaussianRational)
Matrix = list[list[F]]


def _copy(m: Sequence[Sequence[F]]) -> list[list[F]]:
    return [list(row) for row in m]


def _check_rect(m: Sequence[Sequence[F]]) -> tuple[int, int]:
    rows = len(m)
    if rows == 0:
        return 0, 0
    cols = len(m[0])
    if any(len(r) != cols for r in m):
        raise PreconditionError("ragged matrix")
    return rows, cols


def matmul(a: Sequence[Sequence[F]], b: Sequence[Sequence[F]]) -> list[list[F]]:
    ra, ca = _check_rect(a)
    rb, cb = _check_rect(b)
    if ca != rb:
        raise PreconditionError(f"cannot multiply {ra}x{ca} by {rb}x{cb}")
    out = []
    for i in range(ra):
        row = []
        for j in range(cb):
            s = a[i][0] * b[0][j]
            for k in range(1, ca):
                s = s + a[i][k] * b[k][j]
            row.append(s)
        out.append(row)
    return out


def matvec(a: Sequence[Sequence[F]], v: Sequence[F]) -> list[F]:
    return [row[0] for row in matmul(a, [[x] for x in v])]


def transpose(a: Sequence[Sequence[F]]) -> list[list[F]]:
    rows, cols = _check_rect(a)
    return [[a[i][j] for i in range(rows)] for j in range(cols)]


def conjugate_transpose(a: Sequence[Sequence[GaussianRational]]) -> list[list[GaussianRational]]:
    rows, cols = _check_rect(a)
    return [[a[i][j].conjugate() for i in range(rows)] for j in range(cols)]


def identity_matrix(n: int, one: F) -> list[list[F]]:
    zero = one - one
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def solve_linear(a: Sequence[Sequence[F]], b: Sequence[F]) -> list[F]:
    """Solve a x = b exactly; raises SingularJacobianError when singular."""
    n, cols = _check_rect(a)
    if n != cols or n != len(b):
        raise PreconditionError("solve_linear needs a square system")
    m = [list(row) + [b[i]] for i, row in enumerate(a)]
    for k in range(n):
        pivot_row = next((i for i in range(k, n) if m[i][k]), None)
        if pivot_row is None:
            raise SingularJacobianError(f"singular system, no pivot in column {k}")
        if pivot_row != k:
            m[k], m[pivot_row] = m[pivot_row], m[k]
        inv = 1 / m[k][k]
        m[k] = [x * inv for x in m[k]]
        for i in range(n):
            if i != k and m[i][k]:
                f = m[i][k]
                m[i] = [x - f * y for x, y in zip(m[i], m[k])]
    return [m[i][n] for i in range(n)]


def invert_matrix(a: Sequence[Sequence[F]]) -> list[list[F]]:
    """Exact inverse; raises SingularJacobianError when singular."""
    n, cols = _check_rect(a)
    if n != cols:
        raise PreconditionError("only square matrices invert")
    if n == 0:
        return []
    one = _field_one(a)
    ident = identity_matrix(n, one)
    m = [list(row) + ident[i] for i, row in enumerate(a)]
    for k in range(n):
        pivot_row = next((i for i in range(k, n) if m[i][k]), None)
        if pivot_row is None:
            raise SingularJacobianError(f"singular matrix, no pivot in column {k}")
        if pivot_row != k:
            m[k], m[pivot_row] = m[pivot_row], m[k]
        inv = 1 / m[k][k]
        m[k] = [x * inv for x in m[k]]
        for i in range(n):
            if i != k and m[i][k]:
                f = m[i][k]
                m[i] = [x - f * y for x, y in zip(m[i], m[k])]
    return [row[n:] for row in m]


def _field_one(a: Sequence[Sequence[F]]) -> F:
    for row in a:
        for x in row:
            if isinstance(x, GaussianRational):
                return GaussianRational(1)
            return Fraction(1)
    return Fraction(1)


def rank(a: Sequence[Sequence[F]]) -> int:
    rows, cols = _check_rect(a)
    if rows == 0 or cols == 0:
        return 0
    m = _copy(a)
    r = 0
    for c in range(cols):
        pivot_row = next((i for i in range(r, rows) if m[i][c]), None)
        if pivot_row is None:
            continue
        m[r], m[pivot_row] = m[pivot_row], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        r += 1
        if r == rows:
            break
    return r


def symmetric_diagonalize(h: Sequence[Sequence[Fraction]]) -> tuple[list[list[Fraction]], list[Fraction]]:
    """Congruence diagonalization of a symmetric rational matrix.

    Returns (p, d) with p invertible and p^T h p = diag(d). Pivots are
    chosen at the lowest available index: take the current diagonal entry
    if nonzero, else swap in the first later nonzero diagonal entry, else
    shear (add the first column with a nonzero off-diagonal entry in the
    pivot row, plus the matching row) which makes the diagonal entry
    nonzero because the trailing diagonal is all zero at that point.
    """
    n, cols = _check_rect(h)
    if n != cols:
        raise PreconditionError("symmetric_diagonalize needs a square matrix")
    for i in range(n):
        for j in range(i + 1, n):
            if h[i][j] != h[j][i]:
                raise PreconditionError(f"matrix is not symmetric at ({i},{j})")
    m = _copy(h)
    p = identity_matrix(n, Fraction(1))

    def col_op(dst: int, src: int, factor: Fraction) -> None:
        # column dst += factor * column src, matching row op, and p update
        for i in range(n):
            m[i][dst] += factor * m[i][src]
        for j in range(n):
            m[dst][j] += factor * m[src][j]
        for i in range(n):
            p[i][dst] += factor * p[i][src]

    def col_swap(i: int, j: int) -> None:
        for r in range(n):
            m[r][i], m[r][j] = m[r][j], m[r][i]
        m[i], m[j] = m[j], m[i]
        for r in range(n):
            p[r][i], p[r][j] = p[r][j], p[r][i]

    for k in range(n):
        if not m[k][k]:
            swap = next((l for l in range(k + 1, n) if m[l][l]), None)
            if swap is not None:
                col_swap(k, swap)
            else:
                shear = next((l for l in range(k + 1, n) if m[k][l]), None)
                if shear is None:
                    continue  # row and column k are zero on the trailing block
                col_op(k, shear, Fraction(1))
        d = m[k][k]
        for j in range(k + 1, n):
            if m[k][j]:
                col_op(j, k, -m[k][j] / d)
    return p, [m[i][i] for i in range(n)]


def hermitian_signature(m: Sequence[Sequence[GaussianRational]]) -> tuple[int, int, int]:
    """Inertia (positive, negative, zero) of a Hermitian matrix.

    Works through the real symmetric doubling [[re, -im], [im, re]],
    whose inertia is exactly twice that of the Hermitian form.
    """
    n, cols = _check_rect(m)
    if n != cols:
        raise PreconditionError("signature needs a square matrix")
    for i in range(n):
        for j in range(n):
            if m[i][j] != m[j][i].conjugate():
                raise PreconditionError(f"matrix is not Hermitian at ({i},{j})")
    re = [[m[i][j].real for j in range(n)] for i in range(n)]
    im = [[m[i][j].imag for j in range(n)] for i in range(n)]
    big: list[list[Fraction]] = []
    for i in range(n):
        big.append(re[i] + [-x for x in im[i]])
    for i in range(n):
        big.append(im[i] + re[i])
    _, diag = symmetric_diagonalize(big)
    pos = sum(1 for x in diag if x > 0)
    neg = sum(1 for x in diag if x < 0)
    zero = sum(1 for x in diag if x == 0)
    if pos % 2 or neg % 2 or zero % 2:
        raise DegenerateFormError("doubled inertia came out odd; matrix was not Hermitian")
    return pos // 2, neg // 2, zero // 2
