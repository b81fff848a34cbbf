"""Multistart estimators for minima of polynomials on spheres and semialgebraic sets.

These are heuristics: every value is an upper bound on the true infimum
obtained from the best of several local searches.  Each start draws its
own random stream from ``(seed, index)``, so reports do not depend on the
number of worker threads.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np
from scipy.optimize import minimize

from .constraints import ConstraintSet
from .errors import (DegreeMismatch, FlagMissing, GroupMismatch, InfeasibleStartBudget,
                     NotHomogeneous, NotInterior, VarSetMismatch)
from .poly import Polynomial, VarSet, compile_numeric

DEFAULT_STARTS = 64
TOL_BAND = 1e-4
GTOL = 1e-10
MAX_ITER = 5000
FEAS_TOL = 1e-8
BOX_SCHEDULE = (1.0, 10.0, 100.0, 1000.0)
PENALTY_SCHEDULE = (1e1, 1e3, 1e5, 1e7)


class CompiledPoly:
    """Float evaluation of a polynomial and its gradient at a point."""

    def __init__(self, f: Polynomial, names: Sequence[str] | None = None):
        names = list(f.varset.names if names is None else names)
        self.n = len(names)
        self.E, self.c = compile_numeric(f, names)
        self.maxdeg = int(self.E.max()) if self.E.size else 0
        self.rows = np.arange(self.n)

    def _factors(self, x):
        P = np.power.outer(np.asarray(x, dtype=float), np.arange(self.maxdeg + 1))
        return P[self.rows, self.E]

    def __call__(self, x) -> float:
        if not len(self.c):
            return 0.0
        return float(np.prod(self._factors(x), axis=1) @ self.c)

    value = __call__

    def value_and_grad(self, x):
        x = np.asarray(x, dtype=float)
        if not len(self.c):
            return 0.0, np.zeros(self.n)
        P = np.power.outer(x, np.arange(self.maxdeg + 1))
        A = P[self.rows, self.E]
        val = float(np.prod(A, axis=1) @ self.c)
        D = self.E * P[self.rows, np.maximum(self.E - 1, 0)]
        # products excluding column j via prefix and suffix products
        pre = np.ones_like(A)
        suf = np.ones_like(A)
        pre[:, 1:] = np.cumprod(A[:, :-1], axis=1)
        suf[:, :-1] = np.cumprod(A[:, :0:-1], axis=1)[:, ::-1]
        grad = (self.c[:, None] * D * pre * suf).sum(axis=0)
        return val, grad

    def magnitude(self, x) -> float:
        """Sum of absolute term values; the scale for relative residuals."""
        if not len(self.c):
            return 0.0
        return float(np.abs(np.prod(self._factors(x), axis=1) * self.c).sum())


@dataclass(frozen=True)
class MinReport:
    value: float
    witness: tuple
    variables: tuple
    starts_used: int
    spread: float
    attained: bool
    seed: int
    converged: int

    def to_json(self) -> dict:
        d = asdict(self)
        d["witness"] = list(self.witness)
        d["variables"] = list(self.variables)
        return d


@dataclass(frozen=True)
class Membership:
    verdict: str
    margin: float
    report: MinReport

    def to_json(self) -> dict:
        return {"verdict": self.verdict, "margin": self.margin, "report": self.report.to_json()}


def _verdict(value: float, tol_band: float) -> str:
    if value > tol_band:
        return "Interior"
    if value < -tol_band:
        return "Exterior"
    return "Boundary"


# --- descent on products of spheres --------------------------------------------------

class _Spheres:
    """Product of unit spheres over index blocks, optionally with x[0] >= 0."""

    def __init__(self, blocks: Sequence[slice], hemisphere: bool = False):
        self.blocks = list(blocks)
        self.hemisphere = hemisphere

    def project(self, x):
        x = x.copy()
        if self.hemisphere and x[0] < 0:
            x[0] = 0.0
        for b in self.blocks:
            nrm = np.linalg.norm(x[b])
            if nrm == 0:
                x[b] = 0.0
                x[b.start] = 1.0
            else:
                x[b] /= nrm
        return x

    def tangent(self, x, g):
        t = g.copy()
        for b in self.blocks:
            t[b] -= (g[b] @ x[b]) * x[b]
        if self.hemisphere and x[0] <= 0 and t[0] > 0:
            # moving into x0 < 0 is blocked; drop that component
            t[0] = 0.0
            for b in self.blocks:
                t[b] -= (t[b] @ x[b]) * x[b]
        return t

    def sample(self, rng, n):
        return self.project(rng.standard_normal(n) if not self.hemisphere
                            else np.abs(rng.standard_normal(n)) * np.r_[1.0, rng.choice([-1.0, 1.0], n - 1)])


def _descend(fun, x, manifold: _Spheres, gtol=GTOL, max_iter=MAX_ITER, ftol=1e-15, patience=30):
    """Projected gradient with Armijo backtracking and Barzilai-Borwein trial steps.

    ``fun`` must provide ``value(x)`` and ``value_and_grad(x)``.  Besides the
    gradient test, the search stops once ``patience`` consecutive steps fail
    to lower f by more than ``ftol`` relative to its size; degenerate minima
    otherwise crawl for the full iteration budget.
    """
    fx, g = fun.value_and_grad(x)
    rg = manifold.tangent(x, g)
    step = 1.0 / (1.0 + np.linalg.norm(rg))
    converged = False
    stalled = 0
    for _ in range(max_iter):
        gn = float(np.linalg.norm(rg))
        if gn <= gtol:
            converged = True
            break
        t = step
        while True:
            y = manifold.project(x - t * rg)
            fy = fun.value(y)
            if fy <= fx - 1e-4 * t * gn * gn or t < 1e-18:
                break
            t *= 0.5
        if t < 1e-18:
            # no descent possible at machine precision: numerically stationary
            converged = gn <= 1e-6
            break
        stalled = stalled + 1 if fx - fy <= ftol * (1.0 + abs(fx)) else 0
        fy, gy = fun.value_and_grad(y)
        rgy = manifold.tangent(y, gy)
        s, dy = y - x, rgy - rg
        sy = float(s @ dy)
        step = float(s @ s) / sy if sy > 0 else 2.0 * t
        step = min(max(step, 1e-12), 1e6)
        x, fx, g, rg = y, fy, gy, rgy
        if stalled >= patience:
            converged = float(np.linalg.norm(rg)) <= 1e-6
            break
    return x, fx, converged


def _run_starts(task, starts: int, workers: int):
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            return list(ex.map(task, range(starts)))
    return [task(i) for i in range(starts)]


def _aggregate(results, names, starts_used, seed, attained=True) -> MinReport:
    """results: list of (value, witness, converged) in start order."""
    best = min(range(len(results)), key=lambda i: (results[i][0], i))
    value, witness, _ = results[best]
    conv = [r[0] for r in results if r[2]]
    pool = conv if conv else [r[0] for r in results]
    spread = float(max(pool) - min(pool))
    return MinReport(float(value), tuple(float(v) for v in witness), tuple(names),
                     starts_used, spread, attained, seed, len(conv))


def _require_form(f: Polynomial):
    if not f.is_homogeneous():
        raise NotHomogeneous(f"{f} is not a form")


def _sphere_search(f: Polynomial, blocks, starts, seed, workers, names=None):
    names = list(f.varset.names if names is None else names)
    cf = CompiledPoly(f, names)
    man = _Spheres(blocks)

    def task(i):
        rng = np.random.default_rng([seed, i])
        x, fx, conv = _descend(cf, man.sample(rng, len(names)), man)
        return cf(x), x, conv

    return _aggregate(_run_starts(task, starts, workers), names, starts, seed)


def sphere_min(f: Polynomial, starts: int = DEFAULT_STARTS, seed: int = 0,
               workers: int = 1) -> MinReport:
    """Estimate lambda_min(f) = min of the form f on the unit sphere."""
    _require_form(f)
    return _sphere_search(f, [slice(0, len(f.varset))], starts, seed, workers)


def product_sphere_min(f: Polynomial, group_dims: Sequence[int], starts: int = DEFAULT_STARTS,
                       seed: int = 0, workers: int = 1) -> MinReport:
    """Minimum of f over ||x^(1)|| = ... = ||x^(r)|| = 1, groups taken in varset order."""
    if sum(group_dims) != len(f.varset) or any(n < 1 for n in group_dims):
        raise GroupMismatch(f"group dims {list(group_dims)} do not partition {len(f.varset)} variables")
    bounds = np.cumsum([0] + list(group_dims))
    blocks = [slice(int(a), int(b)) for a, b in zip(bounds[:-1], bounds[1:])]
    degs = None
    for e, _ in f.items():
        d = tuple(sum(e[b]) for b in blocks)
        if degs is None:
            degs = d
        elif d != degs:
            raise GroupMismatch(f"{f} is not multihomogeneous for groups {list(group_dims)}")
    return _sphere_search(f, blocks, starts, seed, workers)


# --- constrained minimization --------------------------------------------------------

class _Problem:
    def __init__(self, f, K: ConstraintSet, names):
        self.names = list(names)
        self.f = CompiledPoly(f, names)
        self.eq = [CompiledPoly(g, names) for g in K.equalities]
        self.ineq = [CompiledPoly(p, names) for p in K.inequalities]

    def penalty(self, mu) -> "_Penalty":
        return _Penalty(self, mu)

    def residual(self, x) -> float:
        r = 0.0
        for c in self.eq:
            r = max(r, abs(c(x)) / (1.0 + c.magnitude(x)))
        for c in self.ineq:
            r = max(r, max(0.0, -c(x)) / (1.0 + c.magnitude(x)))
        return r

    def scipy_constraints(self):
        cons = []
        for c in self.eq:
            cons.append({"type": "eq", "fun": c, "jac": lambda x, c=c: c.value_and_grad(x)[1]})
        for c in self.ineq:
            cons.append({"type": "ineq", "fun": c, "jac": lambda x, c=c: c.value_and_grad(x)[1]})
        return cons


class _Penalty:
    """f + mu * (sum g^2 + sum min(p, 0)^2)."""

    def __init__(self, prob: _Problem, mu: float):
        self.prob, self.mu = prob, mu

    def value(self, x) -> float:
        v = self.prob.f(x)
        for c in self.prob.eq:
            v += self.mu * c(x) ** 2
        for c in self.prob.ineq:
            v += self.mu * min(c(x), 0.0) ** 2
        return v

    def value_and_grad(self, x):
        v, g = self.prob.f.value_and_grad(x)
        for c, ineq in [(c, False) for c in self.prob.eq] + [(c, True) for c in self.prob.ineq]:
            cv, cg = c.value_and_grad(x)
            if ineq and cv >= 0:
                continue
            v += self.mu * cv * cv
            g = g + 2 * self.mu * cv * cg
        return v, g

    __call__ = value_and_grad


def _polish(prob: _Problem, x, bounds, extra_cons=()):
    cons = prob.scipy_constraints() + list(extra_cons)
    res = minimize(lambda z: prob.f.value_and_grad(z), x, jac=True, method="SLSQP",
                   bounds=bounds, constraints=cons, options={"maxiter": 500, "ftol": 1e-15})
    return np.asarray(res.x, dtype=float)


def _restore(prob: _Problem, x, sphere: bool = False, steps: int = 8):
    """Gauss-Newton steps onto equalities and violated inequalities."""
    for _ in range(steps):
        rows, vals = [], []
        for c in prob.eq:
            v, g = c.value_and_grad(x)
            rows.append(g)
            vals.append(v)
        for c in prob.ineq:
            v, g = c.value_and_grad(x)
            if v < 0:
                rows.append(g)
                vals.append(v)
        if sphere:
            rows.append(2 * x)
            vals.append(x @ x - 1.0)
        if not rows or max(abs(v) for v in vals) == 0.0:
            break
        dx = np.linalg.lstsq(np.array(rows), -np.array(vals), rcond=None)[0]
        x = x + dx
        if np.linalg.norm(dx) <= 1e-16 * (1.0 + np.linalg.norm(x)):
            break
    return x


def _fresh(vs: VarSet, stem: str) -> str:
    if stem not in vs:
        return stem
    k = 0
    while f"{stem}_{k}" in vs:
        k += 1
    return f"{stem}_{k}"


def _hemisphere_min(f, K, starts, seed, workers, feas_tol):
    x0 = _fresh(f.varset, "x0")
    fh = f.homogenize(x0)
    Kh = K.homogenize(x0)
    names = list(fh.varset.names)
    n = len(names)
    prob = _Problem(fh, Kh, names)
    man = _Spheres([slice(0, n)], hemisphere=True)
    sphere = {"type": "eq", "fun": lambda z: z @ z - 1.0, "jac": lambda z: 2 * z}
    bounds = [(0.0, 1.0)] + [(-1.0, 1.0)] * (n - 1)

    def task(i):
        rng = np.random.default_rng([seed, i])
        x = man.sample(rng, n)
        if prob.eq or prob.ineq:
            for mu in PENALTY_SCHEDULE:
                x, _, _ = _descend(prob.penalty(mu), x, man, gtol=1e-9, max_iter=500)
            x = man.project(_restore(prob, _polish(prob, x, bounds, [sphere]), sphere=True))
            conv = True
        else:
            x, _, conv = _descend(prob.f, x, man)
        return prob.f(x), x, conv, prob.residual(x)

    results = _run_starts(task, starts, workers)
    ok = [r[:3] for r in results if r[3] <= feas_tol]
    if not ok:
        raise InfeasibleStartBudget(f"no start reached feasibility {feas_tol:g} on the hemisphere")
    return _aggregate(ok, names, starts, seed)


def _box_min(f, K, starts, seed, workers, feas_tol):
    names = list(f.varset.names)
    n = len(names)
    prob = _Problem(f, K, names)
    per_box = []
    for k, R in enumerate(BOX_SCHEDULE):
        bounds = [(-R, R)] * n

        def task(i, R=R, k=k, bounds=bounds):
            rng = np.random.default_rng([seed, k, i])
            d = rng.standard_normal(n)
            r = math.exp(rng.uniform(math.log(0.1), math.log(R)))
            x = np.clip(d / np.linalg.norm(d) * r, -R, R)
            for mu in PENALTY_SCHEDULE if (prob.eq or prob.ineq) else (0.0,):
                res = minimize(prob.penalty(mu), x, jac=True, method="L-BFGS-B", bounds=bounds,
                               options={"maxiter": 2000, "gtol": 1e-12, "ftol": 1e-15})
                x = np.asarray(res.x, dtype=float)
            if prob.eq or prob.ineq:
                x = np.clip(_restore(prob, _polish(prob, x, bounds)), -R, R)
            return prob.f(x), x, True, prob.residual(x)

        results = _run_starts(task, starts, workers)
        ok = [r[:3] for r in results if r[3] <= feas_tol]
        if ok:
            per_box.append((R, _aggregate(ok, names, starts, seed)))
        if K.compact and ok:
            rep = per_box[-1][1]
            if max(abs(v) for v in rep.witness) < 0.9 * R:
                break
    if not per_box:
        raise InfeasibleStartBudget(f"no start reached feasibility {feas_tol:g} in any box")
    R, best = min(per_box, key=lambda t: t[1].value)
    # a continuous f attains its minimum on a compact K, wherever the box edge is
    drifting = not K.compact and max(abs(v) for v in best.witness) >= 0.95 * R
    return MinReport(best.value, best.witness, best.variables,
                     starts * len(per_box), best.spread, not drifting, seed, best.converged)


def constrained_min(f: Polynomial, K: ConstraintSet | None = None, homogenized: bool = False,
                    starts: int = DEFAULT_STARTS, seed: int = 0, workers: int = 1,
                    feas_tol: float = FEAS_TOL) -> MinReport:
    """Estimate inf of f on K, or of f^h on the hemisphere {||x~|| = 1, x0 >= 0} ∩ K^h.

    Affine searches grow a box through BOX_SCHEDULE; if the best point sits
    on the boundary of the largest box the infimum is reported as not
    attained.
    """
    K = K or ConstraintSet()
    K.check_varset(f.varset)
    if homogenized:
        return _hemisphere_min(f, K, starts, seed, workers, feas_tol)
    return _box_min(f, K, starts, seed, workers, feas_tol)


def classify(f: Polynomial, K: ConstraintSet | None = None, tol_band: float = TOL_BAND,
             starts: int = DEFAULT_STARTS, seed: int = 0, workers: int = 1) -> Membership:
    """Interior / Boundary / Exterior verdict for f in P_d(K).

    A form on all of R^n is judged by its sphere minimum.  Otherwise K must be
    flagged compact (affine minimum) or closed at infinity (hemisphere minimum).
    """
    K = K or ConstraintSet()
    if K.is_empty and f.is_homogeneous():
        rep = sphere_min(f, starts, seed, workers)
    elif K.compact:
        rep = constrained_min(f, K, False, starts, seed, workers)
    elif K.closed_at_infinity:
        rep = constrained_min(f, K, True, starts, seed, workers)
    else:
        raise FlagMissing("K must be flagged compact or closed_at_infinity")
    return Membership(_verdict(rep.value, tol_band), rep.value, rep)


def barrier_value(f: Polynomial, starts: int = DEFAULT_STARTS, seed: int = 0,
                  tol_band: float = TOL_BAND) -> float:
    """-log lambda_min(f); values inside the classification band count as boundary."""
    rep = sphere_min(f, starts, seed)
    if rep.value <= tol_band:
        raise NotInterior(f"lambda_min = {rep.value:.3g} is not positive beyond {tol_band:g}")
    return -math.log(rep.value)


@dataclass(frozen=True)
class ConcavityReport:
    thetas: tuple
    lhs: tuple
    rhs: tuple
    worst_violation: float
    holds: bool


def concavity_probe(f1: Polynomial, f2: Polynomial, num_thetas: int = 11,
                    starts: int = DEFAULT_STARTS, seed: int = 0, tol: float = 1e-6,
                    workers: int = 1) -> ConcavityReport:
    """Check lambda_min(t f1 + (1-t) f2) >= t lambda_min(f1) + (1-t) lambda_min(f2)."""
    if f1.varset != f2.varset:
        raise VarSetMismatch(f"{f1.varset} != {f2.varset}")
    _require_form(f1)
    _require_form(f2)
    if f1.degree() != f2.degree():
        raise DegreeMismatch(f"degrees {f1.degree()} and {f2.degree()} differ")
    l1 = sphere_min(f1, starts, seed, workers).value
    l2 = sphere_min(f2, starts, seed, workers).value
    thetas = [Fraction(k, num_thetas + 1) for k in range(1, num_thetas + 1)]
    lhs, rhs = [], []
    for t in thetas:
        lhs.append(sphere_min(f1.scale(t) + f2.scale(1 - t), starts, seed, workers).value)
        rhs.append(float(t) * l1 + (1 - float(t)) * l2)
    worst = max(r - l for l, r in zip(lhs, rhs))
    return ConcavityReport(tuple(float(t) for t in thetas), tuple(lhs), tuple(rhs), worst, worst <= tol)
