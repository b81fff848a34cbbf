"""Fraction-free determinants over Q and over polynomial rings."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .poly import Polynomial, exact_divide


def det_fraction(rows: Sequence[Sequence]) -> Fraction:
    """Determinant of a rational matrix by Gaussian elimination."""
    a = [[Fraction(x) for x in r] for r in rows]
    n = len(a)
    sign = 1
    result = Fraction(1)
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][k]), None)
        if piv is None:
            return Fraction(0)
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        p = a[k][k]
        result *= p
        for i in range(k + 1, n):
            if a[i][k]:
                f = a[i][k] / p
                row_k = a[k]
                row_i = a[i]
                for j in range(k + 1, n):
                    if row_k[j]:
                        row_i[j] -= f * row_k[j]
    return sign * result


def det_poly(rows: Sequence[Sequence[Polynomial]], varset=None) -> Polynomial:
    """Bareiss determinant of a square matrix of polynomials."""
    a = [list(r) for r in rows]
    n = len(a)
    if varset is None:
        varset = a[0][0].varset if n else None
    if n == 0:
        return Polynomial.constant(varset, 1)
    sign = 1
    prev = Polynomial.constant(varset, 1)
    for k in range(n - 1):
        if a[k][k].is_zero():
            # sparsest available pivot keeps intermediate swell down
            cands = [i for i in range(k + 1, n) if not a[i][k].is_zero()]
            if not cands:
                return Polynomial.zero(varset)
            piv = min(cands, key=lambda i: len(a[i][k]))
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        p = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = p * a[i][j] - a[i][k] * a[k][j]
                a[i][j] = exact_divide(num, prev) if not prev.is_constant() else num.scale(1 / prev.constant_value())
            a[i][k] = Polynomial.zero(varset)
        prev = p
    d = a[n - 1][n - 1]
    return d if sign > 0 else -d
