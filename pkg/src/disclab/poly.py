"""Sparse multivariate polynomials with exact rational coefficients.

A :class:`Polynomial` is an immutable map from dense exponent tuples (one
slot per variable of its :class:`VarSet`) to nonzero :class:`Fraction`
coefficients.  Parameters such as ``a, b`` and multipliers ``l1, l2`` are
ordinary ring variables; viewing a polynomial "with coefficients in the
parameters" is done with :meth:`Polynomial.coefficients`.

Terms are kept sorted by descending graded-reverse-lex order so that
printing is deterministic.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import total_ordering
from numbers import Rational
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import (
    MissingCoordinate,
    PolySyntaxError,
    UnknownVariable,
    VariableCollision,
    VarSetMismatch,
)


@total_ordering
class _NegInf:
    """Degree of the zero polynomial.

    Compares below every integer; any arithmetic on it raises.
    """

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __eq__(self, other):
        return other is self

    def __lt__(self, other):
        return other is not self

    def __hash__(self):
        return hash("disclab.NEG_INF")

    def __repr__(self):
        return "NEG_INF"

    def _no_arith(self, *_):
        raise TypeError("degree of the zero polynomial does not support arithmetic")

    __add__ = __radd__ = __sub__ = __rsub__ = __mul__ = __rmul__ = _no_arith
    __int__ = __index__ = _no_arith


NEG_INF = _NegInf()


class VarSet:
    """Ordered, duplicate-free tuple of variable names."""

    __slots__ = ("names", "_index")

    def __init__(self, names: Iterable[str]):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise VariableCollision(f"duplicate variable names in {names}")
        for n in names:
            if not _IDENT.fullmatch(n):
                raise PolySyntaxError("invalid variable name", n, 0)
        self.names = names
        self._index = {n: i for i, n in enumerate(names)}

    def __len__(self):
        return len(self.names)

    def __iter__(self):
        return iter(self.names)

    def __contains__(self, name):
        return name in self._index

    def __eq__(self, other):
        return isinstance(other, VarSet) and self.names == other.names

    def __hash__(self):
        return hash(self.names)

    def __repr__(self):
        return f"VarSet({list(self.names)})"

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise UnknownVariable(f"unknown variable {name!r}; declared {list(self.names)}") from None

    def union(self, other: "VarSet | Iterable[str]") -> "VarSet":
        extra = [n for n in other if n not in self._index]
        return VarSet(self.names + tuple(extra))

    def without(self, names: Iterable[str]) -> "VarSet":
        drop = set(names)
        return VarSet(n for n in self.names if n not in drop)


def grevlex_key(exps):
    """Sort key: larger key means larger monomial in graded-reverse-lex."""
    return (sum(exps), tuple(-e for e in reversed(exps)))


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, Rational):
        return Fraction(c.numerator, c.denominator)
    if isinstance(c, str):
        return Fraction(c)
    raise TypeError(f"exact coefficient expected, got {type(c).__name__}")


class Polynomial:
    __slots__ = ("varset", "_terms", "_hash")

    def __init__(self, varset: VarSet, terms: Mapping[tuple, object] | None = None, *, _trusted=False):
        self.varset = varset
        self._hash = None
        if _trusted:
            items = terms.items()
        else:
            n = len(varset)
            items = []
            for e, c in (terms or {}).items():
                e = tuple(int(x) for x in e)
                if len(e) != n or any(x < 0 for x in e):
                    raise ValueError(f"bad exponent tuple {e} for {varset}")
                c = _as_fraction(c)
                if c:
                    items.append((e, c))
        self._terms = dict(sorted(items, key=lambda t: grevlex_key(t[0]), reverse=True))

    # construction -------------------------------------------------------
    @classmethod
    def _make(cls, varset, acc: dict):
        return cls(varset, {e: c for e, c in acc.items() if c}, _trusted=True)

    @classmethod
    def zero(cls, varset: VarSet) -> "Polynomial":
        return cls(varset, {}, _trusted=True)

    @classmethod
    def constant(cls, varset: VarSet, c) -> "Polynomial":
        c = _as_fraction(c)
        return cls(varset, {(0,) * len(varset): c} if c else {}, _trusted=True)

    @classmethod
    def var(cls, varset: VarSet, name: str, power: int = 1) -> "Polynomial":
        e = [0] * len(varset)
        e[varset.index(name)] = power
        return cls(varset, {tuple(e): Fraction(1)}, _trusted=True)

    # basic protocol ------------------------------------------------------
    @property
    def terms(self) -> dict:
        """Copy of the term map (exponent tuple -> Fraction)."""
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.varset == other.varset and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == Polynomial.constant(self.varset, other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.varset, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self):
        return f"Polynomial({str(self)!r}, vars={list(self.varset.names)})"

    def __str__(self):
        return to_string(self)

    # arithmetic ----------------------------------------------------------
    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.varset != self.varset:
                raise VarSetMismatch(f"{self.varset} vs {other.varset}")
            return other
        return Polynomial.constant(self.varset, other)

    def __add__(self, other):
        other = self._coerce(other)
        acc = dict(self._terms)
        for e, c in other._terms.items():
            acc[e] = acc.get(e, 0) + c
        return Polynomial._make(self.varset, acc)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.varset, {e: -c for e, c in self._terms.items()}, _trusted=True)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return self.scale(other)
        other = self._coerce(other)
        acc: dict = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                acc[e] = acc.get(e, 0) + c1 * c2
        return Polynomial._make(self.varset, acc)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only nonnegative integer powers")
        result = Polynomial.constant(self.varset, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def scale(self, c) -> "Polynomial":
        c = _as_fraction(c)
        if not c:
            return Polynomial.zero(self.varset)
        return Polynomial(self.varset, {e: v * c for e, v in self._terms.items()}, _trusted=True)

    def __truediv__(self, c):
        return self.scale(1 / _as_fraction(c))

    # degree / structure --------------------------------------------------
    def _mask(self, wrt):
        if wrt is None:
            return list(range(len(self.varset)))
        return [self.varset.index(v) for v in wrt]

    def degree(self, wrt: Sequence[str] | None = None):
        """Total degree (optionally only in the variables ``wrt``); NEG_INF for 0."""
        if not self._terms:
            return NEG_INF
        idx = self._mask(wrt)
        return max(sum(e[i] for i in idx) for e in self._terms)

    def degree_in(self, var: str):
        return self.degree([var])

    def is_homogeneous(self, wrt: Sequence[str] | None = None) -> bool:
        idx = self._mask(wrt)
        return len({sum(e[i] for i in idx) for e in self._terms}) <= 1

    def is_constant(self) -> bool:
        return all(not any(e) for e in self._terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return next(iter(self._terms.values()), Fraction(0))

    def variables(self) -> list[str]:
        used = set()
        for e in self._terms:
            used.update(i for i, x in enumerate(e) if x)
        return [self.varset.names[i] for i in sorted(used)]

    def leading_term(self):
        """(exponents, coefficient) of the grevlex-largest term."""
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        return next(iter(self._terms.items()))

    # calculus / substitution -------------------------------------------
    def diff(self, var: str) -> "Polynomial":
        i = self.varset.index(var)
        acc = {}
        for e, c in self._terms.items():
            if e[i]:
                ne = e[:i] + (e[i] - 1,) + e[i + 1:]
                acc[ne] = c * e[i]
        return Polynomial._make(self.varset, acc)

    def gradient(self, wrt: Sequence[str] | None = None) -> list["Polynomial"]:
        names = self.varset.names if wrt is None else wrt
        return [self.diff(v) for v in names]

    def embed(self, varset: VarSet) -> "Polynomial":
        """Re-index into a varset containing every variable this polynomial uses."""
        if varset == self.varset:
            return self
        used = self.variables()
        for v in used:
            varset.index(v)
        pos = [varset.index(v) if v in varset else None for v in self.varset.names]
        n = len(varset)
        acc = {}
        for e, c in self._terms.items():
            ne = [0] * n
            for i, x in enumerate(e):
                if x:
                    ne[pos[i]] = x
            acc[tuple(ne)] = c
        return Polynomial(varset, acc, _trusted=True)

    def subs(self, mapping: Mapping[str, object]) -> "Polynomial":
        """Substitute polynomials or numbers for variables (simultaneously)."""
        idx = {self.varset.index(k): (v if isinstance(v, Polynomial) else
                                      Polynomial.constant(self.varset, v)).embed(self.varset)
               for k, v in mapping.items()}
        if not idx:
            return self
        powers: dict = {}

        def power(i, k):
            key = (i, k)
            if key not in powers:
                powers[key] = idx[i] ** k
            return powers[key]

        acc: dict = {}
        for e, c in self._terms.items():
            keep = tuple(0 if i in idx else x for i, x in enumerate(e))
            part = Polynomial(self.varset, {keep: c}, _trusted=True)
            for i, x in enumerate(e):
                if x and i in idx:
                    part = part * power(i, x)
            for pe, pc in part._terms.items():
                acc[pe] = acc.get(pe, 0) + pc
        return Polynomial._make(self.varset, acc)

    def homogenize(self, newvar: str, wrt: Sequence[str] | None = None) -> "Polynomial":
        """Return x0^d f(x/x0) in the varset (newvar, *old vars).

        ``wrt`` restricts homogenization to the listed variables so that
        parameters keep their role as coefficients.
        """
        if newvar in self.varset:
            raise VariableCollision(f"{newvar!r} already in {self.varset}")
        vs = VarSet((newvar,) + self.varset.names)
        if not self._terms:
            return Polynomial.zero(vs)
        idx = self._mask(wrt)
        d = self.degree(wrt)
        acc = {}
        for e, c in self._terms.items():
            acc[(d - sum(e[i] for i in idx),) + e] = c
        return Polynomial(vs, acc, _trusted=True)

    def dehomogenize(self, var: str, drop: bool = True) -> "Polynomial":
        """Set ``var`` = 1; with ``drop`` the variable is removed from the varset."""
        i = self.varset.index(var)
        acc: dict = {}
        for e, c in self._terms.items():
            ne = e[:i] + (0,) + e[i + 1:]
            acc[ne] = acc.get(ne, 0) + c
        p = Polynomial._make(self.varset, acc)
        return p.embed(self.varset.without([var])) if drop else p

    def coefficients(self, wrt: Sequence[str]) -> dict[tuple, "Polynomial"]:
        """View as a polynomial in ``wrt`` with polynomial coefficients in the rest."""
        idx = self._mask(wrt)
        out: dict = {}
        for e, c in self._terms.items():
            key = tuple(e[i] for i in idx)
            rest = list(e)
            for i in idx:
                rest[i] = 0
            out.setdefault(key, {})[tuple(rest)] = c
        return {k: Polynomial(self.varset, v, _trusted=True) for k, v in out.items()}

    # normalization ---------------------------------------------------------
    def content(self) -> Fraction:
        """Positive rational c with self/c having coprime integer coefficients."""
        if not self._terms:
            return Fraction(0)
        num = 0
        den = 1
        for c in self._terms.values():
            num = math.gcd(num, c.numerator)
            den = den * c.denominator // math.gcd(den, c.denominator)
        return Fraction(num, den)

    def primitive(self) -> "Polynomial":
        """Coprime integer coefficients, grevlex-leading coefficient positive."""
        if not self._terms:
            return self
        c = self.content()
        if next(iter(self._terms.values())) < 0:
            c = -c
        return self.scale(1 / c)

    def monic(self) -> "Polynomial":
        if not self._terms:
            return self
        return self.scale(1 / next(iter(self._terms.values())))

    # evaluation ------------------------------------------------------------
    def __call__(self, *args, **kwargs):
        if kwargs:
            return evaluate(self, kwargs)
        if len(args) == 1 and isinstance(args[0], (Mapping, list, tuple, np.ndarray)):
            return evaluate(self, args[0])
        return evaluate(self, args)

    def compile(self, names: Sequence[str] | None = None):
        """Return (exponent matrix, float coefficients) over ``names``."""
        return compile_numeric(self, names)


_IDENT = re.compile(r"[^\W\d]\w*")
_INT = re.compile(r"\d+")


class _Parser:
    def __init__(self, text: str, vars: VarSet):
        self.text = text
        self.vars = vars
        self.pos = 0

    def error(self, msg):
        raise PolySyntaxError(msg, self.text, self.pos)

    def ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def integer(self):
        self.ws()
        m = _INT.match(self.text, self.pos)
        if not m:
            self.error("integer expected")
        self.pos = m.end()
        return int(m.group())

    def factor(self, exps):
        self.ws()
        m = _IDENT.match(self.text, self.pos)
        if not m:
            self.error("variable expected")
        name = m.group()
        if name not in self.vars:
            raise UnknownVariable(f"unknown variable {name!r} at position {self.pos} in {self.text!r}")
        self.pos = m.end()
        k = 1
        if self.peek() == "^":
            self.pos += 1
            k = self.integer()
            if k <= 0:
                self.error("positive exponent expected")
        exps[self.vars.index(name)] += k

    def term(self, sign):
        exps = [0] * len(self.vars)
        coeff = Fraction(sign)
        ch = self.peek()
        if ch.isdigit():
            num = self.integer()
            den = 1
            if self.peek() == "/":
                self.pos += 1
                den = self.integer()
                if den == 0:
                    self.error("zero denominator")
            coeff *= Fraction(num, den)
            if self.peek() != "*":
                return tuple(exps), coeff
            self.pos += 1
        self.factor(exps)
        while self.peek() == "*":
            self.pos += 1
            self.factor(exps)
        return tuple(exps), coeff

    def parse(self) -> Polynomial:
        acc: dict = {}
        sign = 1
        if self.peek() in "+-" and self.peek():
            sign = -1 if self.peek() == "-" else 1
            self.pos += 1
        if not self.peek():
            self.error("empty polynomial")
        while True:
            e, c = self.term(sign)
            acc[e] = acc.get(e, 0) + c
            ch = self.peek()
            if not ch:
                break
            if ch not in "+-":
                self.error("'+' or '-' expected")
            sign = -1 if ch == "-" else 1
            self.pos += 1
        return Polynomial._make(self.vars, acc)


def parse(text: str, vars: VarSet | Sequence[str]) -> Polynomial:
    """Parse ``text`` in the term grammar ``[sign] [rational "*"] factor ("*" factor)*``."""
    if not isinstance(vars, VarSet):
        vars = VarSet(vars)
    return _Parser(text, vars).parse()


def _format_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def to_string(p: Polynomial) -> str:
    if not p._terms:
        return "0"
    parts = []
    for k, (e, c) in enumerate(p._terms.items()):
        factors = []
        for name, x in zip(p.varset.names, e):
            if x == 1:
                factors.append(name)
            elif x:
                factors.append(f"{name}^{x}")
        mag = abs(c)
        if not factors:
            body = _format_coeff(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = _format_coeff(mag) + "*" + "*".join(factors)
        if k == 0:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append((" - " if c < 0 else " + ") + body)
    return "".join(parts)


def _point_values(p: Polynomial, pt) -> list:
    names = p.varset.names
    if isinstance(pt, Mapping):
        vals = []
        used = set(p.variables())
        for n in names:
            if n in pt:
                vals.append(pt[n])
            elif n in used:
                raise MissingCoordinate(f"no value for {n!r}")
            else:
                vals.append(0)
        return vals
    vals = list(pt)
    if len(vals) != len(names):
        raise MissingCoordinate(f"point has {len(vals)} coordinates, {len(names)} variables declared")
    return vals


def evaluate(f: Polynomial, pt):
    """Evaluate at a point (mapping name -> value or full coordinate sequence).

    Exact (Fraction) when every coordinate is an int/Fraction, float otherwise.
    """
    vals = _point_values(f, pt)
    exact = all(isinstance(v, (int, Fraction)) and not isinstance(v, bool) for v in vals)
    if exact:
        total = Fraction(0)
        for e, c in f._terms.items():
            t = c
            for v, x in zip(vals, e):
                if x:
                    t *= v ** x
            total += t
        return total
    fv = [float(v) for v in vals]
    total = 0.0
    for e, c in f._terms.items():
        t = float(c)
        for v, x in zip(fv, e):
            if x:
                t *= v ** x
        total += t
    return total


def compile_numeric(f: Polynomial, names: Sequence[str] | None = None):
    names = list(f.varset.names if names is None else names)
    g = f.embed(VarSet(names)) if tuple(names) != f.varset.names else f
    if not g._terms:
        return np.zeros((0, len(names)), dtype=np.int64), np.zeros(0)
    E = np.array(list(g._terms.keys()), dtype=np.int64).reshape(len(g), len(names))
    c = np.array([float(v) for v in g._terms.values()])
    return E, c


def exact_divide(f: Polynomial, g: Polynomial) -> Polynomial:
    """Quotient f/g; raises ValueError if g does not divide f exactly."""
    g = f._coerce(g)
    if g.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    # lex order: max() over exponent tuples
    glead = max(g._terms)
    gc = g._terms[glead]
    rem = dict(f._terms)
    quot = {}
    while rem:
        m = max(rem)
        c = rem[m]
        shift = tuple(a - b for a, b in zip(m, glead))
        if any(s < 0 for s in shift):
            raise ValueError(f"{g} does not divide {f}")
        q = c / gc
        quot[shift] = q
        for e, v in g._terms.items():
            ne = tuple(a + b for a, b in zip(e, shift))
            nv = rem.get(ne, 0) - q * v
            if nv:
                rem[ne] = nv
            else:
                rem.pop(ne, None)
    return Polynomial(f.varset, quot)


def polys(text: Iterable[str], vars) -> list[Polynomial]:
    return [parse(t, vars) for t in text]


def common_varset(*ps: Polynomial) -> VarSet:
    vs = ps[0].varset
    for p in ps[1:]:
        vs = vs.union(p.varset)
    return vs
