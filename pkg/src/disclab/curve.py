"""Sign grids and zero-level segments of a polynomial in two parameters."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

import numpy as np

from .errors import WrongArity
from .poly import Polynomial

_EPS = float(np.finfo(float).eps)


@dataclass
class CurveGrid:
    names: tuple
    a_values: np.ndarray      # cell-center coordinates, length resolution
    b_values: np.ndarray
    values: np.ndarray        # phi at centers, shape (len(b), len(a))
    sign: np.ndarray          # int8, same shape
    segments: list            # [((a0, b0), (a1, b1)), ...]
    window: tuple             # ((a_lo, a_hi), (b_lo, b_hi))

    @property
    def resolution(self) -> tuple:
        return len(self.a_values), len(self.b_values)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["a", "b", "sign"])
        for j, b in enumerate(self.b_values):
            for i, a in enumerate(self.a_values):
                w.writerow([repr(float(a)), repr(float(b)), int(self.sign[j, i])])
        return buf.getvalue()

    def to_svg(self, size: int = 512) -> str:
        (alo, ahi), (blo, bhi) = self.window
        sx = size / (ahi - alo)
        sy = size / (bhi - blo)
        parts = []
        for (a0, b0), (a1, b1) in self.segments:
            parts.append(f"M{(a0 - alo) * sx:.3f},{(bhi - b0) * sy:.3f}"
                         f"L{(a1 - alo) * sx:.3f},{(bhi - b1) * sy:.3f}")
        path = "".join(parts)
        return (f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
                f'viewBox="0 0 {size} {size}">\n'
                f'<rect width="{size}" height="{size}" fill="white" stroke="black"/>\n'
                f'<path d="{path}" fill="none" stroke="black" stroke-width="1"/>\n</svg>\n')

    def components(self) -> int:
        """Connected components of the segment graph (shared endpoints join)."""
        parent: dict = {}

        def find(p):
            while parent[p] != p:
                parent[p] = parent[parent[p]]
                p = parent[p]
            return p

        for s, t in self.segments:
            s, t = _key(s), _key(t)
            parent.setdefault(s, s)
            parent.setdefault(t, t)
            rs, rt = find(s), find(t)
            if rs != rt:
                parent[rs] = rt
        return len({find(p) for p in parent})


def _key(p):
    return (round(p[0], 12), round(p[1], 12))


def _grid_values(phi: Polynomial, names, A, B):
    ia, ib = phi.varset.index(names[0]), phi.varset.index(names[1])
    vals = np.zeros_like(A)
    mag = np.zeros_like(A)
    for e, c in phi.items():
        t = float(c) * A ** e[ia] * B ** e[ib]
        vals += t
        mag += np.abs(t)
    return vals, mag


def _exact_sign(phi: Polynomial, names):
    """sign(phi(a, b)) in integer arithmetic over the common denominator of a and b."""
    ia, ib = phi.varset.index(names[0]), phi.varset.index(names[1])
    den = 1
    for _, c in phi.items():
        den = den * c.denominator // gcd(den, c.denominator)
    terms = [(e[ia], e[ib], int(c * den)) for e, c in phi.items()]
    deg = phi.degree()

    def sign(a: Fraction, b: Fraction) -> int:
        D = a.denominator * b.denominator // gcd(a.denominator, b.denominator)
        pa, pb = a.numerator * (D // a.denominator), b.numerator * (D // b.denominator)
        v = sum(c * pa ** i * pb ** k * D ** (deg - i - k) for i, k, c in terms)
        return (v > 0) - (v < 0)

    return sign


def curve_trace(phi: Polynomial, ranges: Sequence[Sequence[float]] = ((-2, 2), (-2, 2)),
                resolution: int | Sequence[int] = 256) -> CurveGrid:
    """Evaluate phi at cell centers and extract sign-change segments by marching squares.

    Signs are those of phi at the exact (rational) cell centers: cells whose
    float value is within rounding distance of zero are re-evaluated exactly.
    """
    names = tuple(phi.varset.names)
    if len(names) != 2:
        raise WrongArity(f"curve_trace needs exactly 2 parameters, got {list(names)}")
    na, nb = (resolution, resolution) if isinstance(resolution, int) else tuple(resolution)
    (alo, ahi), (blo, bhi) = ranges
    fa = [Fraction(alo) + (Fraction(ahi) - Fraction(alo)) * (2 * i + 1) / (2 * na) for i in range(na)]
    fb = [Fraction(blo) + (Fraction(bhi) - Fraction(blo)) * (2 * j + 1) / (2 * nb) for j in range(nb)]
    av = np.array([float(x) for x in fa])
    bv = np.array([float(x) for x in fb])
    A, B = np.meshgrid(av, bv)
    vals, mag = _grid_values(phi, names, A, B)
    sign = np.sign(vals).astype(np.int8)
    exact = _exact_sign(phi, names)
    # forward error of the float sum is below (deg + terms + 2) * eps * magnitude
    band = 2 * (phi.degree() + len(phi) + 2) * _EPS
    for j, i in zip(*np.nonzero(np.abs(vals) <= band * mag)):
        # float centers are exact binary fractions, so this is the sign of phi there
        sign[j, i] = exact(Fraction(float(fa[i])), Fraction(float(fb[j])))
    window = ((float(alo), float(ahi)), (float(blo), float(bhi)))
    return CurveGrid(names, av, bv, vals, sign, _march(av, bv, vals, sign), window)


def _crossing(p0, p1, v0, v1):
    t = 0.5 if v0 == v1 else v0 / (v0 - v1)
    t = min(max(t, 0.0), 1.0)
    return (p0[0] + t * (p1[0] - p0[0]), p0[1] + t * (p1[1] - p0[1]))


def _march(av, bv, vals, sign):
    """Marching squares over the lattice of centers; zero counts as positive."""
    pos = sign >= 0
    segs = []
    for j in range(len(bv) - 1):
        for i in range(len(av) - 1):
            corners = [(i, j), (i + 1, j), (i + 1, j + 1), (i, j + 1)]
            flags = [pos[c[1], c[0]] for c in corners]
            if all(flags) or not any(flags):
                continue
            pts = []
            for k in range(4):
                c0, c1 = corners[k], corners[(k + 1) % 4]
                if flags[k] != flags[(k + 1) % 4]:
                    pts.append(_crossing((av[c0[0]], bv[c0[1]]), (av[c1[0]], bv[c1[1]]),
                                         vals[c0[1], c0[0]], vals[c1[1], c1[0]]))
            if len(pts) == 2:
                segs.append((pts[0], pts[1]))
            else:
                # saddle: pair crossings using the value at the square's center
                mid = vals[j, i] + vals[j, i + 1] + vals[j + 1, i] + vals[j + 1, i + 1]
                if (mid >= 0) == flags[0]:
                    # corners 0 and 2 connect through the center; cut off 1 and 3
                    segs += [(pts[0], pts[1]), (pts[2], pts[3])]
                else:
                    segs += [(pts[0], pts[3]), (pts[1], pts[2])]
    return segs
