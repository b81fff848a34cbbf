"""Critical and KKT systems of parametric families and their eliminations."""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

from .constraints import ConstraintSet
from .errors import (IndexOutOfRange, InvalidInput, NotHomogeneous,
                     TooManyActive, VariableCollision)
from .groebner import eliminate
from .poly import Polynomial, VarSet, parse, to_string

MODES = ("critical", "kkt", "active_subset")


@dataclass(frozen=True)
class FamilySpec:
    """f(x; p) together with a constraint set K on x.

    ``xvars`` are the optimization variables and ``params`` the family
    parameters; both live in ``f.varset`` and must be disjoint.
    """

    f: Polynomial
    xvars: tuple
    params: tuple
    constraints: ConstraintSet = field(default_factory=ConstraintSet)
    mode: str = "critical"
    dehomog_var: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "xvars", tuple(self.xvars))
        object.__setattr__(self, "params", tuple(self.params))
        if self.mode not in MODES:
            raise InvalidInput(f"unknown mode {self.mode!r}; expected one of {MODES}")
        if set(self.xvars) & set(self.params):
            raise VariableCollision(f"x variables and parameters overlap: "
                                    f"{sorted(set(self.xvars) & set(self.params))}")
        for v in self.xvars + self.params:
            self.f.varset.index(v)
        self.constraints.check_varset(self.f.varset)
        if self.dehomog_var is not None and self.dehomog_var not in self.xvars:
            raise IndexOutOfRange(f"dehomog_var {self.dehomog_var!r} is not an x variable")


@dataclass
class LocusResult:
    label: str
    active: tuple
    generators: list
    system: list

    @property
    def zero_ideal(self) -> bool:
        return not self.generators

    @property
    def unit_ideal(self) -> bool:
        return len(self.generators) == 1 and self.generators[0].is_constant()

    def to_json(self) -> dict:
        return {"label": self.label, "active": list(self.active),
                "generators": [to_string(g) for g in self.generators],
                "zero_ideal": self.zero_ideal, "unit_ideal": self.unit_ideal}


def critical_system(family: FamilySpec, dehomog_var: str | None = None) -> list[Polynomial]:
    """{g, dg/dx_i} with g = f|_{dehomog_var = 1}.

    Without a dehomogenizing variable f is treated as affine and the
    system is {f, grad_x f}.
    """
    f = family.f
    var = dehomog_var if dehomog_var is not None else family.dehomog_var
    if var is None:
        return [f] + f.gradient(family.xvars)
    if not f.is_homogeneous(family.xvars):
        raise NotHomogeneous(f"f is not a form in {family.xvars}")
    g = f.dehomogenize(var)
    rest = [x for x in family.xvars if x != var]
    return [g] + g.gradient(rest)


def _multiplier_names(vs: VarSet, k: int) -> list[str]:
    names, i = [], 1
    while len(names) < k:
        cand = f"l{i}"
        if cand not in vs:
            names.append(cand)
        i += 1
    return names


def kkt_system(family: FamilySpec, active: Sequence[int] = ()) -> list[Polynomial]:
    """grad f + sum l_i grad c_i = 0, f = 0, c_i = 0 over equalities and active inequalities.

    ``active`` holds 0-based indices into ``family.constraints.inequalities``.
    Multipliers l1, l2, ... are placed after the x variables and before the
    parameters.
    """
    K = family.constraints
    active = tuple(sorted(set(active)))
    for i in active:
        if not 0 <= i < len(K.inequalities):
            raise IndexOutOfRange(f"inequality index {i} outside 0..{len(K.inequalities) - 1}")
    n, m = len(family.xvars), len(K.equalities)
    if len(active) > n - m:
        raise TooManyActive(f"{len(active)} active inequalities exceed n - m = {n - m}")
    cons = list(K.equalities) + [K.inequalities[i] for i in active]
    old = family.f.varset
    lams = _multiplier_names(old, len(cons))
    others = [v for v in old.names if v not in family.xvars]
    vs = VarSet(list(family.xvars) + lams + others)
    f = family.f.embed(vs)
    cons = [c.embed(vs) for c in cons]
    L = [Polynomial.var(vs, l) for l in lams]
    eqs = []
    for x in family.xvars:
        e = f.diff(x)
        for lam, c in zip(L, cons):
            e = e + lam * c.diff(x)
        eqs.append(e)
    return eqs + [f] + cons


def admissible_subsets(family: FamilySpec) -> list[tuple]:
    """Subsets of inequality indices of size <= n - m, by size then lexicographically."""
    t = len(family.constraints.inequalities)
    cap = len(family.xvars) - len(family.constraints.equalities)
    return [s for k in range(min(t, cap) + 1) for s in itertools.combinations(range(t), k)]


def _eliminate_system(args):
    label, active, system, params, budget = args
    drop = [v for v in system[0].varset.names if v not in params]
    gens = eliminate(system, drop, budget=budget)
    return LocusResult(label, active, gens, system)


def _systems(family: FamilySpec):
    if family.mode == "critical":
        yield "critical", (), critical_system(family)
    elif family.mode == "kkt":
        active = tuple(range(len(family.constraints.inequalities)))
        yield "kkt", active, kkt_system(family, active)
    else:
        for s in admissible_subsets(family):
            yield "active" + "".join(f"_{i}" for i in s), s, kkt_system(family, s)


def discriminantal_locus(family: FamilySpec, budget: int | None = None,
                         workers: int = 1) -> list[LocusResult]:
    """Eliminate x (and multipliers) from each system of the family.

    One result per system, ordered by subset index.  An empty generator
    list is the zero elimination ideal; ``[1]`` means the locus is empty.
    """
    jobs = [(label, active, system, family.params, budget)
            for label, active, system in _systems(family)]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            return list(ex.map(_eliminate_system, jobs))
    return [_eliminate_system(j) for j in jobs]


def family_from_job(job: dict) -> FamilySpec:
    """Build a FamilySpec from the JSON job schema."""
    try:
        xvars = list(job["vars"])
        params = list(job.get("params", []))
        text = job["f"]
    except KeyError as e:
        raise InvalidInput(f"job is missing field {e.args[0]!r}") from None
    # elimination always runs under the block order; the field is validated only
    if job.get("order", "block") not in ("lex", "grevlex", "block"):
        raise InvalidInput(f"unknown term order {job['order']!r}")
    vs = VarSet(xvars + params)
    K = ConstraintSet([parse(s, vs) for s in job.get("equalities", [])],
                      [parse(s, vs) for s in job.get("inequalities", [])])
    return FamilySpec(parse(text, vs), xvars, params, K,
                      mode=job.get("mode", "critical"), dehomog_var=job.get("dehomog_var"))
