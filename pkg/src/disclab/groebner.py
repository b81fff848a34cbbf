"""Buchberger's algorithm, normal forms and elimination ideals.

The engine works on integer-coefficient polynomials (content cleared,
fraction-free reduction) stored as ``{exponent tuple: int}`` dicts.  Pairs
are selected by the sugar strategy and pruned with the Gebauer-Moeller
update (both Buchberger criteria).  Results are converted back to
:class:`~disclab.poly.Polynomial` with monic leading coefficient.
"""

from __future__ import annotations

import heapq
import logging
import math
import os
from dataclasses import dataclass
from fractions import Fraction
from operator import le
from typing import Sequence

from .errors import BudgetExceeded, EmptyList, InvalidInput, NotGroebner
from .poly import Polynomial, VarSet

log = logging.getLogger(__name__)

DEFAULT_BUDGET = 200_000


def default_budget() -> int:
    env = os.environ.get("DISCLAB_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


@dataclass(frozen=True)
class TermOrder:
    """Monomial order: ``lex``, ``grevlex`` or ``block``.

    ``block`` puts the variables in ``eliminate`` strictly above the others,
    with grevlex inside each block.
    """

    kind: str = "grevlex"
    eliminate: tuple = ()

    def __post_init__(self):
        if self.kind not in ("lex", "grevlex", "block"):
            raise InvalidInput(f"unknown term order {self.kind!r}")
        object.__setattr__(self, "eliminate", tuple(self.eliminate))

    @classmethod
    def block(cls, eliminate: Sequence[str]) -> "TermOrder":
        return cls("block", tuple(eliminate))

    def key(self, varset: VarSet):
        """Flat integer-tuple key; larger key <=> larger monomial."""
        if self.kind == "lex":
            return tuple
        if self.kind == "grevlex":
            def grevlex(e):
                return (sum(e),) + tuple(-x for x in reversed(e))
            return grevlex
        hi = [varset.index(v) for v in self.eliminate]
        lo = [i for i in range(len(varset)) if i not in set(hi)]
        hi_r = hi[::-1]
        lo_r = lo[::-1]

        def block(e):
            return ((sum(e[i] for i in hi),) + tuple(-e[i] for i in hi_r)
                    + (sum(e[i] for i in lo),) + tuple(-e[i] for i in lo_r))
        return block


class _Engine:
    """Mutable state of one Groebner computation (integer coefficients)."""

    def __init__(self, nvars, key, budget):
        self.n = nvars
        self.key = key
        self.budget = budget
        self.steps = 0
        self.polys: list[list] = []    # sorted [(exps, coeff)], primitive
        self.sugar: list[int] = []
        self.basis: list[int] = []     # indices of current (minimal-lead) basis

    # helpers -----------------------------------------------------------
    def negkey(self, e):
        return tuple(-k for k in self.key(e))

    def to_sorted(self, d: dict):
        return sorted(d.items(), key=lambda t: self.key(t[0]), reverse=True)

    def find_reducer(self, e, among):
        for i in among:
            lm = self.polys[i][0][0]
            if all(map(le, lm, e)):
                return i
        return None

    def reduce(self, h: dict, sugar: int, among, full=True):
        """Fraction-free normal form of ``h`` (dict, modified in place)."""
        heap = [(self.negkey(e), e) for e in h]
        heapq.heapify(heap)
        rem: dict = {}
        while heap:
            _, e = heapq.heappop(heap)
            c = h.get(e)
            if c is None:
                continue
            r = self.find_reducer(e, among)
            if r is None:
                rem[e] = c
                del h[e]
                if not full:
                    break
                continue
            self.steps += 1
            if self.steps > self.budget:
                raise BudgetExceeded(f"reduction budget {self.budget} exceeded", self.steps)
            g = self.polys[r]
            lm, a = g[0]
            gg = math.gcd(a, c)
            mh, mg = a // gg, c // gg
            if mh != 1:
                for k in h:
                    h[k] *= mh
                for k in rem:
                    rem[k] *= mh
            shift = tuple(x - y for x, y in zip(e, lm))
            sugar = max(sugar, sum(shift) + self.sugar[r])
            del h[e]
            for ge, gc in g[1:]:
                ne = tuple(x + y for x, y in zip(ge, shift))
                v = h.get(ne)
                if v is None:
                    h[ne] = -mg * gc
                    heapq.heappush(heap, (self.negkey(ne), ne))
                else:
                    v -= mg * gc
                    if v:
                        h[ne] = v
                    else:
                        del h[ne]
        rem.update(h)
        return rem, sugar

    def primitive(self, d: dict):
        terms = self.to_sorted(d)
        g = 0
        for _, c in terms:
            g = math.gcd(g, c)
            if g == 1:
                break
        if terms[0][1] < 0:
            g = -g
        return [(e, c // g) for e, c in terms]

    def add(self, terms, sugar):
        self.polys.append(terms)
        self.sugar.append(sugar)
        return len(self.polys) - 1

    # pairs ---------------------------------------------------------------
    def lcm(self, i, j):
        return tuple(map(max, self.polys[i][0][0], self.polys[j][0][0]))

    def spoly(self, i, j):
        f, g = self.polys[i], self.polys[j]
        (lf, cf), (lg, cg) = f[0], g[0]
        L = tuple(map(max, lf, lg))
        sf = tuple(x - y for x, y in zip(L, lf))
        sg = tuple(x - y for x, y in zip(L, lg))
        gg = math.gcd(cf, cg)
        mf, mg = cg // gg, cf // gg
        h: dict = {}
        for e, c in f[1:]:
            ne = tuple(x + y for x, y in zip(e, sf))
            h[ne] = h.get(ne, 0) + mf * c
        for e, c in g[1:]:
            ne = tuple(x + y for x, y in zip(e, sg))
            v = h.get(ne, 0) - mg * c
            if v:
                h[ne] = v
            else:
                h.pop(ne, None)
        sugar = max(self.sugar[i] + sum(sf), self.sugar[j] + sum(sg))
        return h, sugar

    def run(self, gens: list[dict]):
        pairs: dict = {}
        heap: list = []
        counter = 0

        def push(i, j):
            nonlocal counter
            L = self.lcm(i, j)
            s = max(self.sugar[i] + sum(L) - sum(self.polys[i][0][0]),
                    self.sugar[j] + sum(L) - sum(self.polys[j][0][0]))
            pairs[(i, j)] = True
            heapq.heappush(heap, (s, self.key(L), counter, i, j))
            counter += 1

        def update(h):
            lh = self.polys[h][0][0]
            C = list(self.basis)
            D: list = []
            lcms = {g: tuple(map(max, lh, self.polys[g][0][0])) for g in C}
            while C:
                g1 = C.pop()
                l1 = lcms[g1]
                disjoint = all(x == 0 or y == 0 for x, y in zip(lh, self.polys[g1][0][0]))
                if disjoint or not any(all(map(le, lcms[g2], l1)) for g2 in C + D):
                    D.append(g1)
            E = [g for g in D
                 if not all(x == 0 or y == 0 for x, y in zip(lh, self.polys[g][0][0]))]
            for (i, j) in list(pairs):
                L = self.lcm(i, j)
                if all(map(le, lh, L)) and self.lcm(i, h) != L and self.lcm(h, j) != L:
                    del pairs[(i, j)]
            for g in E:
                push(g, h)
            self.basis = [g for g in self.basis
                          if not all(map(le, lh, self.polys[g][0][0]))] + [h]

        for d in gens:
            if not d:
                continue
            # inter-reduce inputs against the growing basis, as ordinary pairs would
            red, s = self.reduce(dict(d), max(sum(e) for e in d), self.basis)
            if not red:
                continue
            h = self.add(self.primitive(red), s)
            update(h)
        while heap:
            _, _, _, i, j = heapq.heappop(heap)
            if pairs.pop((i, j), None) is None:
                continue
            h, s = self.spoly(i, j)
            if not h:
                continue
            red, s = self.reduce(h, s, self.basis)
            if not red:
                continue
            k = self.add(self.primitive(red), s)
            update(k)
        return self.interreduce()

    def interreduce(self):
        basis = sorted(self.basis, key=lambda i: self.key(self.polys[i][0][0]))
        out = []
        for i in basis:
            others = [j for j in basis if j != i]
            red, _ = self.reduce(dict(self.polys[i]), self.sugar[i], others)
            out.append(self.primitive(red))
        return out


def _to_int_dict(p: Polynomial) -> dict:
    den = 1
    for _, c in p.items():
        den = den * c.denominator // math.gcd(den, c.denominator)
    return {e: int(c * den) for e, c in p.items()}


class Ideal:
    """Generators plus term order; ``is_groebner`` marks a reduced basis."""

    def __init__(self, generators: Sequence[Polynomial], order: TermOrder | None = None,
                 is_groebner: bool = False, steps: int = 0):
        gens = [g for g in generators]
        if not gens:
            raise EmptyList("ideal needs at least one generator")
        vs = gens[0].varset
        for g in gens[1:]:
            if g.varset != vs:
                vs = vs.union(g.varset)
        self.varset = vs
        self.generators = [g.embed(vs) for g in gens]
        self.order = order or TermOrder()
        self.is_groebner = is_groebner
        self.steps = steps

    def __repr__(self):
        state = "groebner" if self.is_groebner else "raw"
        return f"Ideal({[str(g) for g in self.generators]}, {self.order.kind}, {state})"

    def leading_monomials(self):
        key = self.order.key(self.varset)
        return [max((e for e, _ in g.items()), key=key) for g in self.generators if g]

    def is_unit(self) -> bool:
        return self.is_groebner and any(g.is_constant() and g for g in self.generators)


def buchberger(ideal: Ideal, budget: int | None = None) -> Ideal:
    """Reduced Groebner basis of ``ideal`` under ``ideal.order``."""
    budget = default_budget() if budget is None else budget
    vs = ideal.varset
    key = ideal.order.key(vs)
    eng = _Engine(len(vs), key, budget)
    gens = [_to_int_dict(g) for g in ideal.generators if g]
    # smallest generators first keeps early reductions cheap
    gens.sort(key=lambda d: (max(key(e) for e in d), len(d)))
    if not gens:
        return Ideal([Polynomial.zero(vs)], ideal.order, True)
    basis = eng.run(gens)
    log.debug("buchberger: %d elements, %d reduction steps", len(basis), eng.steps)
    polys = [Polynomial(vs, {e: Fraction(c, t[0][1]) for e, c in t}) for t in basis]
    polys.sort(key=lambda p: key(max((e for e, _ in p.items()), key=key)))
    return Ideal(polys, ideal.order, True, eng.steps)


def groebner(gens: Sequence[Polynomial], order: TermOrder | str = "grevlex",
             budget: int | None = None) -> Ideal:
    if isinstance(order, str):
        order = TermOrder(order)
    return buchberger(Ideal(gens, order), budget)


def normal_form(f: Polynomial, basis: Ideal) -> Polynomial:
    """Remainder of ``f`` modulo a Groebner basis (zero iff f is in the ideal)."""
    if not basis.is_groebner:
        raise NotGroebner("normal_form needs an ideal in groebner state")
    vs = basis.varset.union(f.varset)
    f = f.embed(vs)
    gens = [g.embed(vs) for g in basis.generators if g]
    if f.is_zero():
        return f
    return _nf_rational(f, gens, basis.order.key(vs))


def _nf_rational(f: Polynomial, gens: list[Polynomial], key) -> Polynomial:
    """Exact rational remainder (the fraction-free one is only defined up to a unit)."""
    leads = []
    for g in gens:
        lm = max((e for e, _ in g.items()), key=key)
        leads.append((lm, g.terms[lm], g))
    h = dict(f.items())
    rem = {}
    while h:
        e = max(h, key=key)
        c = h.pop(e)
        for lm, lc, g in leads:
            if all(map(le, lm, e)):
                q = c / lc
                shift = tuple(x - y for x, y in zip(e, lm))
                for ge, gc in g.items():
                    if ge == lm:
                        continue
                    ne = tuple(x + y for x, y in zip(ge, shift))
                    v = h.get(ne, 0) - q * gc
                    if v:
                        h[ne] = v
                    else:
                        h.pop(ne, None)
                break
        else:
            rem[e] = c
    return Polynomial(f.varset, rem)


def eliminate(gens: Sequence[Polynomial], drop: Sequence[str], budget: int | None = None,
              return_basis: bool = False):
    """Generators of the elimination ideal <gens> ∩ Q[vars \\ drop].

    Uses a block order with the dropped variables on top.  The result lives
    in the varset without ``drop``; ``[]`` means the elimination ideal is
    zero, ``[1]`` that it is the unit ideal.
    """
    ideal = Ideal(gens, TermOrder.block(drop))
    for v in drop:
        ideal.varset.index(v)
    gb = buchberger(ideal, budget)
    dropset = set(drop)
    kept = ideal.varset.without(dropset)
    out = []
    for g in gb.generators:
        if g and not (set(g.variables()) & dropset):
            out.append(g.embed(kept).primitive())
    if return_basis:
        return out, gb
    return out
