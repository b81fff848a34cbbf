import csv
import io
from fractions import Fraction

import numpy as np
import pytest

from disclab import families
from disclab.copositive import SymMatrixParam, copositive_boundary_poly
from disclab.curve import curve_trace
from disclab.errors import WrongArity
from disclab.poly import VarSet, evaluate, parse
from goldens import COPOSITIVE_4_PHI

AB = VarSet(["a", "b"])


def endpoints(grid):
    return np.array([p for seg in grid.segments for p in seg])


def test_circle():
    grid = curve_trace(parse("a^2+b^2-1", AB), ((-2, 2), (-2, 2)), 256)
    cell = 4 / 256
    r = np.hypot(*endpoints(grid).T)
    assert np.max(np.abs(r - 1)) < 2 * cell
    assert grid.components() == 1


def test_diagonal():
    grid = curve_trace(parse("a-b", AB), ((-2, 2), (-2, 2)), 64)
    pts = endpoints(grid)
    assert np.max(np.abs(pts[:, 0] - pts[:, 1])) < 4 / 64
    assert grid.components() == 1


@pytest.mark.parametrize("text", ["a-b", "a^3-3*a*b^2-1/2", "a^2*b-b^3+1/3*a"])
def test_sign_is_exact_at_centers(text):
    phi = parse(text, AB)
    grid = curve_trace(phi, ((-1, 1), (-1, 1)), (24, 20))
    for j, b in enumerate(grid.b_values):
        for i, a in enumerate(grid.a_values):
            v = evaluate(phi, (Fraction(float(a)), Fraction(float(b))))
            assert grid.sign[j, i] == (v > 0) - (v < 0)


def test_copositive_four_curve_topology():
    bp = copositive_boundary_poly(SymMatrixParam.from_rows(families.copositive_matrix_4()))
    grid = curve_trace(bp.expanded, ((-2, 2), (-2, 2)), 256)
    linear_in_window = [t for t, _ in COPOSITIVE_4_PHI if parse(t, AB).degree() == 1]
    assert grid.components() >= len(linear_in_window) == 4


def test_outputs():
    grid = curve_trace(parse("a^2+b^2-1", AB), ((-2, 2), (-2, 2)), 16)
    rows = list(csv.reader(io.StringIO(grid.to_csv())))
    assert rows[0] == ["a", "b", "sign"]
    assert len(rows) == 1 + 16 * 16
    assert {r[2] for r in rows[1:]} == {"-1", "1"}
    svg = grid.to_svg()
    assert svg.startswith("<svg") and svg.count("M") == len(grid.segments)


def test_wrong_arity():
    with pytest.raises(WrongArity):
        curve_trace(parse("a+b+c", ["a", "b", "c"]))
