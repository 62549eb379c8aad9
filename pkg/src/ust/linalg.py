"""Dense linear algebra over exact rationals (Bareiss) with a float fallback.

Exact routines take lists of lists of ``int``/``Fraction`` and never round.
Rational inputs are scaled row-wise to integers first so that the Bareiss
recurrence stays fraction-free; its divisions are then exact integer
divisions.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

import numpy as np

EXACT_VERTEX_LIMIT = 64

Matrix = list[list]


def use_exact(size: int, exact: bool | None) -> bool:
    """Resolve the numeric backend: explicit flag wins, else exact up to 64."""
    if exact is None:
        return size <= EXACT_VERTEX_LIMIT
    return bool(exact)


def _row_to_int(row: Sequence) -> tuple[list[int], int]:
    den = 1
    for x in row:
        if isinstance(x, Fraction):
            den = den * x.denominator // math.gcd(den, x.denominator)
    return [int(x * den) for x in row], den


def bareiss_det(m: Sequence[Sequence]) -> Fraction:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(m)
    if n == 0:
        return Fraction(1)
    a = []
    scale = 1
    for row in m:
        if len(row) != n:
            raise ValueError("matrix is not square")
        r, den = _row_to_int(row)
        a.append(r)
        scale *= den
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        akk = a[k][k]
        rowk = a[k]
        for i in range(k + 1, n):
            rowi = a[i]
            aik = rowi[k]
            for j in range(k + 1, n):
                rowi[j] = (rowi[j] * akk - aik * rowk[j]) // prev
            rowi[k] = 0
        prev = akk
    return Fraction(sign * a[n - 1][n - 1], scale)


def bareiss_solve(m: Sequence[Sequence], rhs: Sequence[Sequence]) -> list[list[Fraction]]:
    """Solve ``m X = rhs`` exactly; ``rhs`` is a list of right-hand-side rows.

    Forward elimination is fraction-free on the augmented integer matrix;
    back substitution runs in Fractions.  Raises on a singular ``m``.
    """
    n = len(m)
    k_rhs = len(rhs[0]) if n else 0
    a = []
    for i in range(n):
        r, _ = _row_to_int(list(m[i]) + list(rhs[i]))
        a.append(r)
    width = n + k_rhs
    prev = 1
    for k in range(n):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    break
            else:
                raise np.linalg.LinAlgError("singular matrix")
        akk = a[k][k]
        rowk = a[k]
        for i in range(k + 1, n):
            rowi = a[i]
            aik = rowi[k]
            for j in range(k + 1, width):
                rowi[j] = (rowi[j] * akk - aik * rowk[j]) // prev
            rowi[k] = 0
        prev = akk
    x = [[Fraction(0)] * k_rhs for _ in range(n)]
    for i in range(n - 1, -1, -1):
        row = a[i]
        piv = row[i]
        for c in range(k_rhs):
            s = Fraction(row[n + c])
            for j in range(i + 1, n):
                if row[j]:
                    s -= row[j] * x[j][c]
            x[i][c] = s / piv
    return x


def det(m: Sequence[Sequence], exact: bool = True):
    if exact:
        return bareiss_det(m)
    if len(m) == 0:
        return 1.0
    return float(np.linalg.det(np.asarray(m, dtype=float)))


def solve(m: Sequence[Sequence], rhs: Sequence[Sequence], exact: bool = True):
    if exact:
        return bareiss_solve(m, rhs)
    return np.linalg.solve(np.asarray(m, dtype=float), np.asarray(rhs, dtype=float)).tolist()


def identity(n: int, exact: bool = True) -> Matrix:
    one, zero = (Fraction(1), Fraction(0)) if exact else (1.0, 0.0)
    return [[one if i == j else zero for j in range(n)] for i in range(n)]
