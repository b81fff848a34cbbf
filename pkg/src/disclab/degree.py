"""Degree formulas for discriminants of several forms and multihomogeneous forms."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb, prod
from typing import Sequence

from .errors import (AllDegreesOne, EmptyList, HypersurfaceConditionViolated, IndexOutOfRange,
                     InvalidInput)


@dataclass(frozen=True)
class DiscriminantSpec:
    """Forms f_0..f_m of the given degrees in ``num_vars`` = n+1 variables."""

    num_vars: int
    degrees: tuple

    def __post_init__(self):
        object.__setattr__(self, "degrees", tuple(int(d) for d in self.degrees))
        if not self.degrees:
            raise EmptyList("degree list is empty")
        if any(d < 1 for d in self.degrees):
            raise InvalidInput(f"degrees must be positive: {self.degrees}")
        if len(self.degrees) > self.num_vars:
            raise InvalidInput(f"m+1={len(self.degrees)} forms exceed num_vars={self.num_vars}")

    @property
    def n(self) -> int:
        return self.num_vars - 1

    @property
    def m(self) -> int:
        return len(self.degrees) - 1


@dataclass(frozen=True)
class MultiHomogSpec:
    group_dims: tuple
    group_degrees: tuple

    def __post_init__(self):
        object.__setattr__(self, "group_dims", tuple(int(n) for n in self.group_dims))
        object.__setattr__(self, "group_degrees", tuple(int(d) for d in self.group_degrees))
        if len(self.group_dims) != len(self.group_degrees) or not self.group_dims:
            raise InvalidInput("group_dims and group_degrees must be nonempty and of equal length")

    def hypersurface_condition(self) -> bool:
        r = len(self.group_dims)
        total = sum(self.group_dims) - r
        return all(2 * (n - 1) <= total
                   for n, d in zip(self.group_dims, self.group_degrees) if d == 1)


def complete_symmetric(k: int, a: Sequence[int]) -> int:
    """S_k(a_1..a_t): sum of all degree-k monomials in the a_i."""
    a = list(a)
    if not a:
        raise EmptyList("complete_symmetric needs at least one argument")
    if k < 0:
        raise InvalidInput("k must be nonnegative")
    # h_k(a_1..a_j) = h_k(a_1..a_{j-1}) + a_j h_{k-1}(a_1..a_j)
    h = [1] + [0] * k
    for x in a:
        for j in range(1, k + 1):
            h[j] += x * h[j - 1]
    return h[k]


def _check(spec: DiscriminantSpec):
    if all(d == 1 for d in spec.degrees):
        raise AllDegreesOne("W(1,...,1) is not a hypersurface; degree formula does not apply")


def disc_degree_in_fk(spec: DiscriminantSpec, k: int) -> int:
    """Degree of Delta(f_0..f_m) in the coefficients of f_k."""
    _check(spec)
    if not 0 <= k <= spec.m:
        raise IndexOutOfRange(f"k={k} outside 0..{spec.m}")
    ds = spec.degrees
    others = prod(d for i, d in enumerate(ds) if i != k)
    args = [d - 1 for d in ds] + [ds[k] - 1]
    return others * complete_symmetric(spec.n - spec.m, args)


def disc_total_degree(spec: DiscriminantSpec) -> int:
    _check(spec)
    return sum(disc_degree_in_fk(spec, k) for k in range(spec.m + 1))


def resultant_total_degree(degrees: Sequence[int]) -> int:
    """d_1...d_n * sum(1/d_i)."""
    total = prod(degrees) * sum(Fraction(1, d) for d in degrees)
    return int(total)


def equal_degree_closed_forms(n: int, m: int, d: int) -> tuple[int, int]:
    """(degree in each f_k, total degree) when all m+1 forms have degree d."""
    per = comb(n + 1, m + 1) * d ** m * (d - 1) ** (n - m)
    total = (n + 1) * comb(n, m) * d ** m * (d - 1) ** (n - m)
    return per, total


# --- multihomogeneous ------------------------------------------------------------

class _Series:
    """Truncated multivariate power series over Z, dense in a box."""

    def __init__(self, caps):
        self.caps = tuple(caps)
        self.c: dict = {}

    def mul(self, other):
        out = _Series(self.caps)
        for e1, v1 in self.c.items():
            for e2, v2 in other.c.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                if all(x <= cap for x, cap in zip(e, self.caps)):
                    out.c[e] = out.c.get(e, 0) + v1 * v2
        out.c = {e: v for e, v in out.c.items() if v}
        return out


def _denominator(spec: MultiHomogSpec, caps) -> _Series:
    """prod(1+z_j) - sum_j d_j z_j prod_{i != j}(1+z_i)."""
    r = len(caps)
    s = _Series(caps)
    # prod(1+z_j) has coefficient 1 on every 0/1 exponent vector
    for bits in itertools.product((0, 1), repeat=r):
        if all(b <= cap for b, cap in zip(bits, caps)):
            v = 1 - sum(d for d, b in zip(spec.group_degrees, bits) if b)
            if v:
                s.c[bits] = s.c.get(bits, 0) + v
    return s


def _inverse(p: _Series) -> _Series:
    """1/p for p with constant term 1, by the coefficient recurrence."""
    caps = p.caps
    if p.c.get((0,) * len(caps)) != 1:
        raise ArithmeticError("series must have constant term 1")
    q = _Series(caps)
    order = sorted(itertools.product(*(range(c + 1) for c in caps)), key=sum)
    terms = [(e, v) for e, v in p.c.items() if any(e)]
    for e in order:
        if not any(e):
            q.c[e] = 1
            continue
        acc = 0
        for pe, pv in terms:
            prev = tuple(a - b for a, b in zip(e, pe))
            if all(x >= 0 for x in prev):
                acc -= pv * q.c.get(prev, 0)
        if acc:
            q.c[e] = acc
    return q


def multihomog_disc_degree(spec: MultiHomogSpec) -> int:
    """Coefficient of z^(n-1) in (prod(1+z_j)(1 - sum d_j z_j/(1+z_j)))^(-2)."""
    if not spec.hypersurface_condition():
        raise HypersurfaceConditionViolated(
            f"2(n_i-1) <= sum n - r fails for a linear group in {spec}")
    caps = tuple(n - 1 for n in spec.group_dims)
    inv = _inverse(_denominator(spec, caps))
    sq = inv.mul(inv)
    return sq.c.get(caps, 0)


def multihomog_degree_bruteforce(spec: MultiHomogSpec) -> int:
    """Independent oracle: expand sum_k (k+1) R^k with R = 1 - denominator."""
    caps = tuple(n - 1 for n in spec.group_dims)
    r = len(caps)
    R: dict = {}
    for bits in itertools.product((0, 1), repeat=r):
        if any(bits):
            v = sum(d for d, b in zip(spec.group_degrees, bits) if b) - 1
            if v:
                R[bits] = v
    total = sum(caps)
    result = {(0,) * r: 1}
    power = {(0,) * r: 1}
    for k in range(1, total + 1):
        nxt: dict = {}
        for e1, v1 in power.items():
            for e2, v2 in R.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                if all(x <= c for x, c in zip(e, caps)):
                    nxt[e] = nxt.get(e, 0) + v1 * v2
        power = nxt
        for e, v in power.items():
            result[e] = result.get(e, 0) + (k + 1) * v
    return result.get(caps, 0)
