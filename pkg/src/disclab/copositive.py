"""Copositivity: even forms, support restrictions, principal-minor products, simplex scans."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import DimensionMismatch, DimensionTooLarge, EmptySupport, IndexOutOfRange
from .linalg import det_poly
from .poly import Polynomial, VarSet, parse, to_string
from .scan import (DEFAULT_STARTS, TOL_BAND, CompiledPoly, Membership, _aggregate, _descend,
                   _run_starts, _verdict)

MAX_DIM = 6
EXPAND_DEGREE_LIMIT = 40


def even_substitution(f: Polynomial, wrt: Sequence[str] | None = None) -> Polynomial:
    """q_f(x) = f(x1^2, ..., xn^2)."""
    names = f.varset.names if wrt is None else wrt
    return f.subs({v: Polynomial.var(f.varset, v, 2) for v in names})


def _support_names(f: Polynomial, I: Iterable, wrt: Sequence[str] | None) -> list[str]:
    names = list(f.varset.names if wrt is None else wrt)
    out = []
    for i in I:
        if isinstance(i, str):
            f.varset.index(i)
            out.append(i)
        else:
            if not 0 <= i < len(names):
                raise IndexOutOfRange(f"support index {i} outside 0..{len(names) - 1}")
            out.append(names[i])
    if not out:
        raise EmptySupport("support index set is empty")
    return out


def restrict_support(f: Polynomial, I: Iterable, wrt: Sequence[str] | None = None) -> Polynomial:
    """f_I: set x_j = 0 for j not in I.

    ``I`` holds variable names or 0-based positions in ``wrt`` (default: all
    variables).  The result drops the zeroed variables from its varset.
    """
    names = list(f.varset.names if wrt is None else wrt)
    keep = set(_support_names(f, I, wrt))
    gone = [v for v in names if v not in keep]
    g = f.subs({v: 0 for v in gone})
    return g.embed(f.varset.without(gone))


@dataclass(frozen=True)
class SymMatrixParam:
    """Symmetric n x n matrix with polynomial entries, stored as its upper triangle."""

    n: int
    entries: Mapping[tuple, Polynomial]
    varset: VarSet

    def __post_init__(self):
        if self.n < 1:
            raise DimensionMismatch("matrix dimension must be positive")
        upper = {}
        for (i, j), p in self.entries.items():
            if not (0 <= i < self.n and 0 <= j < self.n):
                raise IndexOutOfRange(f"entry ({i},{j}) outside a {self.n}x{self.n} matrix")
            key = (min(i, j), max(i, j))
            if key in upper and upper[key] != p:
                raise DimensionMismatch(f"entries ({i},{j}) and ({j},{i}) disagree")
            upper[key] = p.embed(self.varset)
        object.__setattr__(self, "entries", upper)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Polynomial]]) -> "SymMatrixParam":
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise DimensionMismatch("matrix is not square")
        vs = rows[0][0].varset
        for i in range(n):
            for j in range(i + 1, n):
                if rows[i][j] != rows[j][i]:
                    raise DimensionMismatch(f"matrix is not symmetric at ({i},{j})")
        return cls(n, {(i, j): rows[i][j] for i in range(n) for j in range(i, n)}, vs)

    @classmethod
    def from_json(cls, data: dict, params: Sequence[str] | None = None) -> "SymMatrixParam":
        """``{"n": k, "entries": {"i,j": "<poly>"}}`` with 1-based indices; missing entries are 0."""
        n = int(data["n"])
        vs = VarSet(params if params is not None else data.get("params", []))
        entries = {}
        for key, text in data["entries"].items():
            i, j = (int(t) - 1 for t in key.split(","))
            entries[(i, j)] = parse(str(text), vs)
        return cls(n, entries, vs)

    def entry(self, i: int, j: int) -> Polynomial:
        return self.entries.get((min(i, j), max(i, j)), Polynomial.zero(self.varset))

    def rows(self) -> list[list[Polynomial]]:
        return [[self.entry(i, j) for j in range(self.n)] for i in range(self.n)]

    def submatrix(self, I: Sequence[int]) -> list[list[Polynomial]]:
        return [[self.entry(i, j) for j in I] for i in I]

    def numeric(self, point: Mapping[str, object] | None = None) -> np.ndarray:
        point = point or {}
        M = np.empty((self.n, self.n))
        for i in range(self.n):
            for j in range(self.n):
                p = self.entry(i, j)
                M[i, j] = float(p.subs(point).constant_value()) if point else float(p.constant_value())
        return M


@dataclass(frozen=True)
class BoundaryPoly:
    factors: tuple        # ((I, det A(I,I)), ...) in subset-bitmask order
    expanded: Polynomial | None
    total_degree: int

    def to_json(self) -> dict:
        return {"factors": [{"I": [i + 1 for i in I], "minor": to_string(p)} for I, p in self.factors],
                "expanded": None if self.expanded is None else to_string(self.expanded),
                "total_degree": self.total_degree}


def principal_minor(A: SymMatrixParam, I: Sequence[int]) -> Polynomial:
    return det_poly(A.submatrix(I), A.varset)


def copositive_boundary_poly(A: SymMatrixParam) -> BoundaryPoly:
    """prod over nonempty I of det A(I,I); expanded only up to total degree 40."""
    if A.n > MAX_DIM:
        raise DimensionTooLarge(f"n = {A.n} exceeds {MAX_DIM} ({2 ** A.n - 1} minors)")
    factors = []
    for mask in range(1, 2 ** A.n):
        I = tuple(i for i in range(A.n) if mask >> i & 1)
        factors.append((I, principal_minor(A, I)))
    if any(p.is_zero() for _, p in factors):
        # an identically vanishing minor: the product is the zero polynomial
        return BoundaryPoly(tuple(factors), Polynomial.zero(A.varset), -1)
    total = sum(p.degree() for _, p in factors)
    expanded = None
    if total <= EXPAND_DEGREE_LIMIT:
        expanded = Polynomial.constant(A.varset, 1)
        for _, p in factors:
            expanded = expanded * p
    return BoundaryPoly(tuple(factors), expanded, total)


class _Simplex:
    """Standard simplex with the projected-gradient direction x - P(x - g)."""

    @staticmethod
    def project(v):
        # sort-based Euclidean projection onto {x >= 0, sum x = 1}
        u = np.sort(v)[::-1]
        css = np.cumsum(u) - 1.0
        k = np.arange(1, len(v) + 1)
        rho = np.nonzero(u - css / k > 0)[0][-1]
        return np.maximum(v - css[rho] / (rho + 1), 0.0)

    def tangent(self, x, g):
        return x - self.project(x - g)

    def sample(self, rng, n):
        return rng.dirichlet(np.ones(n))


def simplex_min(f: Polynomial, starts: int = DEFAULT_STARTS, seed: int = 0, workers: int = 1):
    names = list(f.varset.names)
    cf = CompiledPoly(f, names)
    man = _Simplex()

    def task(i):
        rng = np.random.default_rng([seed, i])
        x, _, conv = _descend(cf, man.sample(rng, len(names)), man)
        return cf(x), x, conv

    return _aggregate(_run_starts(task, starts, workers), names, starts, seed)


def copositive_check(target, tol_band: float = TOL_BAND, starts: int = DEFAULT_STARTS,
                     seed: int = 0, workers: int = 1) -> Membership:
    """Verdict for a numeric symmetric matrix (array-like) or a form, via its simplex minimum."""
    if isinstance(target, Polynomial):
        f = target
    else:
        M = np.asarray(target, dtype=float)
        if M.ndim != 2 or M.shape[0] != M.shape[1]:
            raise DimensionMismatch(f"expected a square matrix, got shape {M.shape}")
        vs = VarSet([f"x{i}" for i in range(1, M.shape[0] + 1)])
        terms = {}
        for i in range(M.shape[0]):
            for j in range(M.shape[0]):
                e = [0] * M.shape[0]
                e[i] += 1
                e[j] += 1
                terms[tuple(e)] = terms.get(tuple(e), 0) + Fraction(float(M[i, j]))
        f = Polynomial(vs, terms)
    rep = simplex_min(f, starts, seed, workers)
    return Membership(_verdict(rep.value, tol_band), rep.value, rep)

