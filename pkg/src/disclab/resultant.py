"""Sylvester and Macaulay resultants, discriminants, and the W(d0..dm) test.

Symbolic results (those still depending on coefficient symbols) are
normalized to coprime integer coefficients with a positive grevlex-leading
coefficient; purely numeric results are returned as computed, since their
value is what callers need.
"""

from __future__ import annotations

import itertools
import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import prod
from typing import Sequence

from .errors import (
    DegenerateSpecialization,
    DegreePreconditionViolated,
    DegreeTooSmall,
    DimensionMismatch,
    InvalidInput,
    NotHomogeneous,
    ZeroInput,
)
from .groebner import TermOrder, buchberger, Ideal
from .linalg import det_poly
from .poly import Polynomial, VarSet

log = logging.getLogger(__name__)

# symbolic Bareiss is used up to this matrix size; larger goes through interpolation
SYMBOLIC_MATRIX_LIMIT = 8


def _normalize(p: Polynomial, normalize: bool) -> Polynomial:
    if normalize and not p.is_constant():
        return p.primitive()
    return p


def sylvester_matrix(f: Polynomial, g: Polynomial, var: str,
                     degrees: tuple[int, int] | None = None) -> list[list[Polynomial]]:
    """Sylvester matrix of f, g viewed as univariate in ``var``.

    ``degrees`` overrides the actual degrees (formal degrees for binary forms
    whose leading coefficient may vanish).
    """
    vs = f.varset.union(g.varset)
    f, g = f.embed(vs), g.embed(vs)
    m = f.degree([var]) if degrees is None else degrees[0]
    n = g.degree([var]) if degrees is None else degrees[1]
    cf = f.coefficients([var])
    cg = g.coefficients([var])
    zero = Polynomial.zero(vs)
    fc = [cf.get((m - k,), zero) for k in range(m + 1)]
    gc = [cg.get((n - k,), zero) for k in range(n + 1)]
    size = m + n
    rows = []
    for i in range(n):
        rows.append([zero] * i + fc + [zero] * (size - m - 1 - i))
    for i in range(m):
        rows.append([zero] * i + gc + [zero] * (size - n - 1 - i))
    return rows


def sylvester_resultant(f: Polynomial, g: Polynomial, var: str,
                        degrees: tuple[int, int] | None = None,
                        normalize: bool = True) -> Polynomial:
    """Res_var(f, g) as the Sylvester determinant."""
    if f.is_zero() or g.is_zero():
        raise ZeroInput("resultant of a zero polynomial")
    vs = f.varset.union(g.varset)
    rows = sylvester_matrix(f, g, var, degrees)
    if not rows:
        return Polynomial.constant(vs, 1)
    return _normalize(det_poly(rows, vs), normalize)


def binary_form_resultant(f: Polynomial, g: Polynomial, x: str, y: str,
                          normalize: bool = True) -> Polynomial:
    """Resultant of two binary forms in (x, y), by dehomogenizing y."""
    for p in (f, g):
        if not p.is_homogeneous([x, y]):
            raise NotHomogeneous(f"{p} is not a form in {x}, {y}")
    df, dg = f.degree([x, y]), g.degree([x, y])
    fd = f.dehomogenize(y, drop=False)
    gd = g.dehomogenize(y, drop=False)
    res = sylvester_resultant(fd, gd, x, degrees=(df, dg), normalize=normalize)
    return res.embed(res.varset.without([x, y]))


# --- Macaulay -----------------------------------------------------------------

def _monomials(n: int, deg: int):
    """Exponent tuples of total degree ``deg`` in n variables, lex-descending."""
    if n == 1:
        yield (deg,)
        return
    for k in range(deg, -1, -1):
        for rest in _monomials(n - 1, deg - k):
            yield (k,) + rest


@dataclass
class MacaulayPair:
    """Numerator matrix and the extraneous-factor minor (row/col index list)."""

    matrix: list
    minor_indices: list
    monomials: list = field(default_factory=list)

    def minor(self):
        idx = self.minor_indices
        return [[self.matrix[i][j] for j in idx] for i in idx]


def macaulay_matrix(forms: Sequence[Polynomial], vars: Sequence[str]) -> MacaulayPair:
    vs = forms[0].varset
    n = len(vars)
    degs = [f.degree(vars) for f in forms]
    D = sum(d - 1 for d in degs) + 1
    mons = list(_monomials(n, D))
    col = {m: j for j, m in enumerate(mons)}
    coeffs = [f.coefficients(vars) for f in forms]
    zero = Polynomial.zero(vs)
    rows = []
    nonreduced = []
    for r, m in enumerate(mons):
        divisible = [i for i in range(n) if m[i] >= degs[i]]
        i = divisible[0]
        if len(divisible) > 1:
            nonreduced.append(r)
        shift = list(m)
        shift[i] -= degs[i]
        row = [zero] * len(mons)
        for e, c in coeffs[i].items():
            row[col[tuple(a + b for a, b in zip(e, shift))]] = c
        rows.append(row)
    return MacaulayPair(rows, nonreduced, mons)


def _macaulay_direct(forms, vars, allow_perturbation=True) -> Polynomial:
    vs = forms[0].varset
    pair = macaulay_matrix(forms, vars)
    den = det_poly(pair.minor(), vs)
    num = det_poly(pair.matrix, vs)
    if not den.is_zero():
        from .poly import exact_divide
        return exact_divide(num, den)
    if not allow_perturbation:
        raise DegenerateSpecialization("Macaulay denominator vanished")
    # Canny's generalized characteristic polynomial: Res(f_i - t x_i^d_i) at t = 0
    t = _fresh_name(vs, "t_")
    vt = vs.union([t])
    T = Polynomial.var(vt, t)
    pert = []
    for f, v in zip(forms, vars):
        d = f.degree(vars)
        pert.append(f.embed(vt) - T * Polynomial.var(vt, v, d))
    pair = macaulay_matrix(pert, vars)
    den = det_poly(pair.minor(), vt)
    num = det_poly(pair.matrix, vt)
    if den.is_zero():
        raise DegenerateSpecialization("perturbed Macaulay denominator vanished")
    from .poly import exact_divide
    q = exact_divide(num, den)
    return q.subs({t: 0}).embed(vs)


def _fresh_name(vs: VarSet, stem: str) -> str:
    k = 0
    while f"{stem}{k}" in vs:
        k += 1
    return f"{stem}{k}"


def _symbol_degree_bounds(forms, vars, symbols):
    degs = [f.degree(vars) for f in forms]
    bounds = {}
    for s in symbols:
        total = 0
        for k, f in enumerate(forms):
            e = max((c.degree([s]) for c in f.coefficients(vars).values()), default=0)
            total += e * prod(d for i, d in enumerate(degs) if i != k)
        bounds[s] = total
    return bounds


def _lagrange(values: list[Polynomial], points: list[int], var: str, vs: VarSet) -> Polynomial:
    X = Polynomial.var(vs, var)
    total = Polynomial.zero(vs)
    for i, (pi, vi) in enumerate(zip(points, values)):
        if vi.is_zero():
            continue
        basis = Polynomial.constant(vs, 1)
        den = Fraction(1)
        for j, pj in enumerate(points):
            if j != i:
                basis = basis * (X - pj)
                den *= pi - pj
        total = total + (vi * basis).scale(1 / den)
    return total


def _macaulay_interpolated(forms, vars, seed=0, retries=5) -> Polynomial:
    vs = forms[0].varset
    symbols = [s for s in vs.names if s not in vars and any(s in f.variables() for f in forms)]
    bounds = _symbol_degree_bounds(forms, vars, symbols)
    rng = random.Random(seed)

    def rec(k, fixed: dict) -> Polynomial:
        if k == len(symbols):
            spec = [f.subs(fixed) for f in forms]
            try:
                return _macaulay_direct(spec, vars, allow_perturbation=False)
            except DegenerateSpecialization:
                return None
        s = symbols[k]
        pts, vals = [], []
        used = set()
        attempts = 0
        while len(pts) < bounds[s] + 1:
            p = rng.randint(-10 * (bounds[s] + 1), 10 * (bounds[s] + 1))
            if p in used:
                continue
            used.add(p)
            v = rec(k + 1, {**fixed, s: p})
            if v is None:
                attempts += 1
                if attempts > retries:
                    raise DegenerateSpecialization(
                        f"Macaulay denominator vanished at {attempts} specializations of {s}")
                continue
            pts.append(p)
            vals.append(v)
        return _lagrange(vals, pts, s, vs)

    try:
        return rec(0, {})
    except DegenerateSpecialization:
        # specializations keep hitting the extraneous factor: perturb instead
        log.info("interpolation degenerate; using perturbed direct evaluation")
        return _macaulay_direct(forms, vars)


def macaulay_resultant(forms: Sequence[Polynomial], vars: Sequence[str] | None = None,
                       normalize: bool = True, seed: int = 0) -> Polynomial:
    """Res(f_1..f_n) for n forms in the n variables ``vars``.

    Other variables of the forms are coefficient symbols.  Small matrices are
    handled by symbolic Bareiss; larger ones by evaluation at seeded random
    integer points and interpolation with the known degree bounds.
    """
    vs = forms[0].varset
    for f in forms[1:]:
        vs = vs.union(f.varset)
    forms = [f.embed(vs) for f in forms]
    vars = list(vars) if vars is not None else list(vs.names)
    if len(forms) != len(vars):
        raise DimensionMismatch(f"{len(forms)} forms in {len(vars)} variables")
    for f in forms:
        if f.is_zero():
            raise ZeroInput("zero form")
        if not f.is_homogeneous(vars):
            raise NotHomogeneous(f"{f} is not homogeneous in {vars}")
        if f.degree(vars) < 1:
            raise NotHomogeneous(f"{f} has degree 0 in {vars}")
    n = len(vars)
    degs = [f.degree(vars) for f in forms]
    size = len(list(_monomials(n, sum(d - 1 for d in degs) + 1)))
    symbolic = any(set(f.variables()) - set(vars) for f in forms)
    if symbolic and size > SYMBOLIC_MATRIX_LIMIT:
        res = _macaulay_interpolated(forms, vars, seed)
    else:
        res = _macaulay_direct(forms, vars)
    return _normalize(res, normalize)


# --- discriminants ---------------------------------------------------------------

def discriminant(f: Polynomial, mode: str = "form", vars: Sequence[str] | None = None,
                 normalize: bool = True) -> Polynomial:
    """Discriminant of a form (or of an affine polynomial via its homogenization).

    Computed as the resultant of the partial derivatives; the constant factor
    relating the two is not determined, so symbolic outputs are normalized to
    their primitive part.
    """
    vars = list(vars) if vars is not None else list(f.varset.names)
    if mode == "affine":
        x0 = _fresh_name(f.varset, "x") if "x0" in f.varset else "x0"
        f = f.homogenize(x0, vars)
        vars = [x0] + vars
    elif mode != "form":
        raise InvalidInput(f"mode must be 'form' or 'affine', got {mode!r}")
    if f.is_zero():
        raise ZeroInput("discriminant of the zero polynomial")
    if not f.is_homogeneous(vars):
        raise NotHomogeneous(f"{f} is not homogeneous in {vars}")
    d = f.degree(vars)
    if d < 2:
        raise DegreeTooSmall(f"degree {d} < 2")
    n = len(vars)
    if n == 1:
        c = f.coefficients(vars).get((d,), Polynomial.zero(f.varset))
        return _normalize(c, normalize)
    grads = [f.diff(v) for v in vars]
    if n == 2:
        if any(g.is_zero() for g in grads):
            return Polynomial.zero(f.varset.without(vars))
        res = binary_form_resultant(grads[0], grads[1], vars[0], vars[1], normalize=False)
    else:
        if any(g.is_zero() for g in grads):
            return Polynomial.zero(f.varset)
        res = macaulay_resultant(grads, vars, normalize=False)
    res = res.embed(res.varset.without([v for v in vars if v in res.varset]))
    return _normalize(res, normalize)


def discriminant_degree(n: int, d: int) -> int:
    """Degree n(d-1)^(n-1) of the discriminant of a form in n variables."""
    return n * (d - 1) ** (n - 1)


# --- W(d0, ..., dm) ----------------------------------------------------------------

def jacobian_minors(forms: Sequence[Polynomial], vars: Sequence[str]) -> list[Polynomial]:
    k = len(forms)
    J = [[f.diff(v) for f in forms] for v in vars]
    out = []
    for rows in itertools.combinations(range(len(vars)), k):
        m = det_poly([J[r] for r in rows], forms[0].varset)
        if not m.is_zero():
            out.append(m)
    return out


def in_discriminantal_variety(forms: Sequence[Polynomial], vars: Sequence[str] | None = None,
                              budget: int | None = None) -> bool:
    """True iff f_0 = ... = f_m = 0 has a projective solution with rank J_f <= m.

    Decided by a grevlex Groebner basis of the forms plus all maximal minors of
    the Jacobian: the projective variety is empty exactly when every variable
    has a pure power among the leading monomials.
    """
    vs = forms[0].varset
    for f in forms[1:]:
        vs = vs.union(f.varset)
    forms = [f.embed(vs) for f in forms]
    vars = list(vars) if vars is not None else list(vs.names)
    if len(forms) > len(vars):
        raise DimensionMismatch(f"m+1={len(forms)} forms but only {len(vars)} variables")
    for f in forms:
        if f.is_zero() or not f.is_homogeneous(vars):
            raise NotHomogeneous(f"{f} is not a nonzero form in {vars}")
        if set(f.variables()) - set(vars):
            raise DegreePreconditionViolated("coefficients must be numeric")
    if all(f.degree(vars) == 1 for f in forms):
        raise DegreePreconditionViolated("all degrees are 1")
    gens = list(forms) + jacobian_minors(forms, vars)
    gb = buchberger(Ideal(gens, TermOrder("grevlex")), budget)
    lms = gb.leading_monomials()
    if any(not any(m) for m in lms):
        return False
    idx = [vs.index(v) for v in vars]
    for i in idx:
        if not any(m[i] > 0 and all(m[j] == 0 for j in idx if j != i) for m in lms):
            return True
    return False
