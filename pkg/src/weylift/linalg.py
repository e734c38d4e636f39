"""Small dense matrix helpers over an arbitrary coefficient field.

Matrices are plain lists of rows of raw field values.  Everything here
is at most a few dozen rows, so Gauss-Jordan with first-nonzero pivoting
is plenty.
"""

from __future__ import annotations

from .errors import SingularLinearPart


def identity_matrix(field, n):
    z, o = field.zero(), field.one()
    return [[o if i == j else z for j in range(n)] for i in range(n)]


def zero_matrix(field, rows, cols):
    z = field.zero()
    return [[z for _ in range(cols)] for _ in range(rows)]


def transpose(a):
    return [list(col) for col in zip(*a)]


def mat_mul(field, a, b):
    n, k, m = len(a), len(b), len(b[0])
    out = zero_matrix(field, n, m)
    for i in range(n):
        row = a[i]
        acc = out[i]
        for t in range(k):
            x = row[t]
            if field.is_zero(x):
                continue
            brow = b[t]
            for j in range(m):
                acc[j] = field.add(acc[j], field.mul(x, brow[j]))
    return out


def mat_vec(field, a, v):
    out = []
    for row in a:
        s = field.zero()
        for x, y in zip(row, v):
            s = field.add(s, field.mul(x, y))
        out.append(s)
    return out


def mat_neg(field, a):
    return [[field.neg(x) for x in row] for row in a]


def mat_eq(field, a, b):
    if len(a) != len(b):
        return False
    for ra, rb in zip(a, b):
        if len(ra) != len(rb):
            return False
        for x, y in zip(ra, rb):
            if not field.is_zero(field.sub(x, y)):
                return False
    return True


def mat_inv(field, a):
    n = len(a)
    work = [list(row) + list(idrow) for row, idrow in zip(a, identity_matrix(field, n))]
    for col in range(n):
        pivot = next(
            (r for r in range(col, n) if not field.is_zero(work[r][col])), None
        )
        if pivot is None:
            raise SingularLinearPart("matrix is not invertible")
        work[col], work[pivot] = work[pivot], work[col]
        inv = field.inv(work[col][col])
        work[col] = [field.mul(inv, x) for x in work[col]]
        for r in range(n):
            if r == col or field.is_zero(work[r][col]):
                continue
            factor = work[r][col]
            work[r] = [
                field.sub(x, field.mul(factor, y)) for x, y in zip(work[r], work[col])
            ]
    return [row[n:] for row in work]


def solve_linear(field, a, b):
    """One solution of A x = b, or SingularLinearPart if inconsistent.

    Free columns are set to zero.
    """
    rows, cols = len(a), len(a[0])
    work = [list(row) + [rhs] for row, rhs in zip(a, b)]
    pivots = []
    r = 0
    for col in range(cols):
        pivot = next((i for i in range(r, rows) if not field.is_zero(work[i][col])), None)
        if pivot is None:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        inv = field.inv(work[r][col])
        work[r] = [field.mul(inv, x) for x in work[r]]
        for i in range(rows):
            if i == r or field.is_zero(work[i][col]):
                continue
            f = work[i][col]
            work[i] = [field.sub(x, field.mul(f, y)) for x, y in zip(work[i], work[r])]
        pivots.append(col)
        r += 1
        if r == rows:
            break
    for i in range(r, rows):
        if not field.is_zero(work[i][cols]):
            raise SingularLinearPart("inconsistent linear system")
    x = [field.zero()] * cols
    for i, col in enumerate(pivots):
        x[col] = work[i][cols]
    return x


def omega_matrix_raw(field, flavor):
    """The structure matrix of the paired bracket as raw field values."""
    g = flavor.main_count
    out = zero_matrix(field, g, g)
    for i in range(g):
        for j in range(g):
            w = flavor.omega(i, j)
            if w:
                out[i][j] = field.from_int(w)
    return out


def is_symplectic(field, a, j):
    at = transpose(a)
    return mat_eq(field, mat_mul(field, mat_mul(field, at, j), a), j)


def symplectic_inverse(field, a, j):
    """For paired J with J^2 = -1: A in Sp gives A^(-1) = -J A^T J."""
    at = transpose(a)
    return mat_neg(field, mat_mul(field, mat_mul(field, j, at), j))
