"""Parametric test families used across the suite and the CLI.

Each builder returns polynomials over an explicit VarSet; parameters become
variables when left symbolic (pass None) and are substituted when numeric.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .poly import Polynomial, VarSet, parse


def _xs(n: int, stem: str = "x") -> list[str]:
    return [f"{stem}{i}" for i in range(1, n + 1)]


def _param(vs: VarSet, name: str, value):
    if value is None:
        return Polynomial.var(vs, name)
    return Polynomial.constant(vs, Fraction(value))


def _space(n: int, params: dict) -> VarSet:
    return VarSet(_xs(n) + [k for k, v in params.items() if v is None])


def norm_power(n: int, d: int) -> Polynomial:
    """||x||_2^d for even d."""
    vs = VarSet(_xs(n))
    sq = sum((Polynomial.var(vs, x, 2) for x in vs.names), Polynomial.zero(vs))
    return sq ** (d // 2)


def robinson(a=None, b=None) -> Polynomial:
    vs = _space(3, {"a": a, "b": b})
    x = [Polynomial.var(vs, v) for v in _xs(3)]
    A, B = _param(vs, "a", a), _param(vs, "b", b)
    s6 = x[0] ** 6 + x[1] ** 6 + x[2] ** 6
    mixed = (x[0] ** 2 * (x[1] ** 4 + x[2] ** 4) + x[1] ** 2 * (x[2] ** 4 + x[0] ** 4)
             + x[2] ** 2 * (x[0] ** 4 + x[1] ** 4))
    return s6 - A * mixed + B * x[0] ** 2 * x[1] ** 2 * x[2] ** 2


def horn(a=None, b=None) -> Polynomial:
    vs = _space(5, {"a": a, "b": b})
    x = [Polynomial.var(vs, v) for v in _xs(5)]
    A, B = _param(vs, "a", a), _param(vs, "b", b)
    sq = sum((xi ** 2 for xi in x), Polynomial.zero(vs))
    cyc = sum((x[i] ** 2 * x[(i + 1) % 5] ** 2 for i in range(5)), Polynomial.zero(vs))
    quart = sum((xi ** 4 for xi in x), Polynomial.zero(vs))
    return sq ** 2 - A * cyc - B * quart


def biquadratic(a=None, b=None) -> Polynomial:
    """Bi-quadratic form in (x1,x2,x3) x (x4,x5,x6)."""
    vs = _space(6, {"a": a, "b": b})
    x = [Polynomial.var(vs, v) for v in _xs(6)]
    A, B = _param(vs, "a", a), _param(vs, "b", b)
    base = (x[0] ** 2 + x[1] ** 2 + x[2] ** 2) * (x[3] ** 2 + x[4] ** 2 + x[5] ** 2)
    diag = x[0] ** 2 * x[4] ** 2 + x[1] ** 2 * x[5] ** 2 + x[2] ** 2 * x[3] ** 2
    cross = x[0] * x[1] * x[3] * x[4] + x[0] * x[2] * x[3] * x[5] + x[1] * x[2] * x[4] * x[5]
    return base + A * diag + B * cross


def circle_quadratic() -> tuple[Polynomial, Polynomial]:
    """(f, g): x1^2 + a x1 x2 + b x1 + c x2 + d on the unit circle."""
    vs = VarSet(["x1", "x2", "a", "b", "c", "d"])
    return (parse("x1^2 + a*x1*x2 + b*x1 + c*x2 + d", vs), parse("x1^2 + x2^2 - 1", vs))


def circle_quartic() -> tuple[Polynomial, Polynomial]:
    vs = VarSet(["x1", "x2", "a", "b", "c"])
    return (parse("x1^4 + a*x1^3*x2 + b*x1*x2^3 + c", vs), parse("x1^2 + x2^2 - 1", vs))


def ball_quartic() -> tuple[Polynomial, Polynomial]:
    """(f, p): quartic on the unit disc p = 1 - x1^2 - x2^2 >= 0."""
    vs = VarSet(["x1", "x2", "a", "b"])
    f = parse("x1^4 + x2^4 + a*x1^3*x2 + a*x1*x2^3 + b*x1 + b*x2 + 1", vs)
    return f, parse("1 - x1^2 - x2^2", vs)


def copositive_matrix_4(a=None, b=None) -> list[list[Polynomial]]:
    vs = VarSet([k for k, v in {"a": a, "b": b}.items() if v is None])
    A, B = _param(vs, "a", a), _param(vs, "b", b)
    one = Polynomial.constant(vs, 1)
    return [[one, A, -B, B],
            [A, one, -B, -A],
            [-B, -B, one, -A],
            [B, -A, -A, one]]


def copositive_matrix_5(a=None, b=None) -> list[list[Polynomial]]:
    """Circulant pattern; (a, b) = (-2, 0) is the Horn matrix."""
    vs = VarSet([k for k, v in {"a": a, "b": b}.items() if v is None])
    one = Polynomial.constant(vs, 1)
    A, B = one + _param(vs, "a", a), one + _param(vs, "b", b)
    # entry (i, j) depends on the cyclic distance |i - j| mod 5
    by_dist = {0: one, 1: A, 2: B}
    return [[by_dist[min((i - j) % 5, (j - i) % 5)] for j in range(5)] for i in range(5)]


def quadratic_form(A: Sequence[Sequence[Polynomial]], names: Sequence[str] | None = None) -> Polynomial:
    """x^T A x with coefficients in the entries' ring."""
    n = len(A)
    names = list(names) if names is not None else _xs(n)
    base = A[0][0].varset
    vs = VarSet(names + [v for v in base.names if v not in names])
    x = [Polynomial.var(vs, v) for v in names]
    out = Polynomial.zero(vs)
    for i in range(n):
        for j in range(n):
            out = out + A[i][j].embed(vs) * x[i] * x[j]
    return out
