"""Exact Gaussian elimination over any field whose elements support + - * / and == 0.

Matrices are lists of rows. Works for Fraction and NfElem entries alike.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


def _copy(A):
    return [list(r) for r in A]


def _zero_like(x):
    return x * 0


def _one_like(x):
    return x * 0 + 1


def det(A):
    n = len(A)
    if n == 0:
        return Fraction(1)
    M = _copy(A)
    sign = 1
    acc = None
    for c in range(n):
        piv = next((r for r in range(c, n) if M[r][c] != 0), None)
        if piv is None:
            return _zero_like(A[0][0])
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            sign = -sign
        p = M[c][c]
        acc = p if acc is None else acc * p
        inv = 1 / p
        for r in range(c + 1, n):
            f = M[r][c]
            if f != 0:
                f = f * inv
                M[r] = [a - f * b for a, b in zip(M[r], M[c])]
    return acc if sign == 1 else -acc


def rref(A):
    """Reduced row echelon form and pivot columns."""
    M = _copy(A)
    rows = len(M)
    cols = len(M[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = 1 / M[r][c]
        M[r] = [x * inv for x in M[r]]
        for i in range(rows):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return M, pivots


def rank(A) -> int:
    if not A:
        return 0
    return len(rref(A)[1])


def kernel(A) -> list[list]:
    """Basis of the right kernel {v : A v = 0}."""
    R, pivots = rref(A)
    cols = len(A[0])
    zero = _zero_like(A[0][0])
    one = _one_like(A[0][0])
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        v = [zero] * cols
        v[f] = one
        for i, pc in enumerate(pivots):
            v[pc] = -R[i][f]
        basis.append(v)
    return basis


def solve(A, b):
    """One solution x of A x = b, or None when inconsistent."""
    rows = len(A)
    aug = [list(A[i]) + [b[i]] for i in range(rows)]
    R, pivots = rref(aug)
    cols = len(A[0])
    if cols in pivots:
        return None
    zero = _zero_like(A[0][0])
    x = [zero] * cols
    for i, pc in enumerate(pivots):
        x[pc] = R[i][cols]
    return x


def inverse(A):
    n = len(A)
    one = _one_like(A[0][0])
    zero = _zero_like(A[0][0])
    aug = [list(A[i]) + [one if j == i else zero for j in range(n)] for i in range(n)]
    R, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in R]


def matmul(A, B):
    Bt = list(zip(*B))
    return [[sum((a * b for a, b in zip(row, col)), _zero_like(row[0])) for col in Bt] for row in A]


def transpose(A):
    return [list(r) for r in zip(*A)]


def matvec(A, v: Sequence):
    return [sum((a * x for a, x in zip(row, v)), _zero_like(row[0])) for row in A]


def dot(u: Sequence, v: Sequence):
    acc = u[0] * v[0]
    for a, b in zip(u[1:], v[1:]):
        acc = acc + a * b
    return acc


def quad_form(M, v: Sequence):
    """v^T M v."""
    return dot(v, matvec(M, v))
