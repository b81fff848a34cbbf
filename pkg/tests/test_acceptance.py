"""Acceptance suite: one test and one PASS/FAIL line per criterion."""

import random
import time
from fractions import Fraction

import numpy as np

from disclab import families
from disclab.constraints import ConstraintSet
from disclab.copositive import (SymMatrixParam, copositive_boundary_poly, copositive_check,
                                even_substitution, restrict_support)
from disclab.degree import (DiscriminantSpec, MultiHomogSpec, disc_degree_in_fk, disc_total_degree,
                            equal_degree_closed_forms, multihomog_degree_bruteforce,
                            multihomog_disc_degree, resultant_total_degree)
from disclab.errors import BudgetExceeded
from disclab.groebner import eliminate, groebner, normal_form
from disclab.locus import FamilySpec, discriminantal_locus
from disclab.poly import Polynomial, VarSet, evaluate, parse, to_string
from disclab.resultant import binary_form_resultant, discriminant
from disclab.scan import classify, concavity_probe, constrained_min, sphere_min
from test_groebner import s_polynomial
from goldens import (CIRCLE_QUADRATIC_PHI, CIRCLE_QUARTIC_PHI, COPOSITIVE_4_PHI, COPOSITIVE_4_SIGN,
                     CUBIC_DISC, QUADRATIC_RES, QUARTIC_DISC)

X = ["x1", "x2"]
AB = VarSet(["a", "b"])


class Criterion:
    """Collects named checks, times the block, and prints one summary line."""

    def __init__(self, capsys, number, title, limit):
        self.capsys, self.number, self.title, self.limit = capsys, number, title, limit
        self.failed = []

    def check(self, name, ok):
        if not ok:
            self.failed.append(name)

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        elapsed = time.perf_counter() - self.t0
        if exc_type is not None:
            self.failed.append(f"raised {exc_type.__name__}: {exc}")
        if elapsed > self.limit:
            self.failed.append(f"took {elapsed:.1f}s > {self.limit}s")
        verdict = "PASS" if not self.failed else "FAIL"
        with self.capsys.disabled():
            print(f"\n[criterion {self.number:2d}] {verdict}  {self.title}  ({elapsed:.2f}s)"
                  + ("" if not self.failed else f"  failed: {'; '.join(self.failed)}"))
        if exc_type is None:
            assert not self.failed, self.failed
        return False


def up_to_sign(p, golden, names):
    q = parse(golden, names)
    return to_string(p) in (to_string(q), to_string(q.scale(-1)))


def constant_ratio(p, q, names, seed, points=20):
    rng = random.Random(seed)
    ratios, used = set(), 0
    while used < points:
        pt = {v: Fraction(rng.randint(-30, 30), rng.randint(1, 9)) for v in names}
        a, b = evaluate(p, pt), evaluate(q, pt)
        if a and b:
            ratios.add(a / b)
            used += 1
    return len(ratios) == 1


def test_criterion_01_binary_cubic(capsys):
    with Criterion(capsys, 1, "binary cubic discriminant", 1) as c:
        vs = VarSet(X + list("abcd"))
        d = discriminant(parse("a*x1^3+b*x1^2*x2+c*x1*x2^2+d*x2^3", vs), vars=X)
        c.check("golden", up_to_sign(d, CUBIC_DISC, list("abcd")))


def test_criterion_02_binary_quartic(capsys):
    with Criterion(capsys, 2, "binary quartic discriminant", 5) as c:
        vs = VarSet(X + list("abcde"))
        d = discriminant(parse("a*x1^4+b*x1^3*x2+c*x1^2*x2^2+d*x1*x2^3+e*x2^4", vs), vars=X)
        c.check("golden", up_to_sign(d, QUARTIC_DISC, list("abcde")))
        c.check("zero at (1,0,2,0,1)", evaluate(d, (1, 0, 2, 0, 1)) == 0)


def test_criterion_03_quadratic_resultant(capsys):
    with Criterion(capsys, 3, "binary quadratic resultant", 1) as c:
        vs = VarSet(X + list("abcdef"))
        r = binary_form_resultant(parse("a*x1^2+b*x1*x2+c*x2^2", vs),
                                  parse("d*x1^2+e*x1*x2+f*x2^2", vs), "x1", "x2")
        c.check("golden", up_to_sign(r, QUADRATIC_RES, list("abcdef")))


def test_criterion_04_degree_calculus(capsys):
    with Criterion(capsys, 4, "degree calculus", 1) as c:
        for num_vars, d, want in [(3, 3, 12), (3, 4, 27), (2, 4, 6)]:
            c.check(f"single form {num_vars},{d}", disc_total_degree(DiscriminantSpec(num_vars, [d])) == want)
        rng = random.Random(4)
        for _ in range(20):
            k = rng.randint(1, 5)
            ds = [rng.randint(1, 4) for _ in range(k)]
            if all(x == 1 for x in ds):
                ds[-1] = 3
            c.check(f"square {ds}", disc_total_degree(DiscriminantSpec(k, ds)) == resultant_total_degree(ds))
        for n in range(1, 7):
            for m in range(n + 1):
                for d in range(2, 5):
                    spec = DiscriminantSpec(n + 1, [d] * (m + 1))
                    per, total = equal_degree_closed_forms(n, m, d)
                    c.check(f"equal {n},{m},{d}", disc_total_degree(spec) == total
                            and all(disc_degree_in_fk(spec, k) == per for k in range(m + 1)))


def test_criterion_05_multihomogeneous(capsys):
    with Criterion(capsys, 5, "multihomogeneous degree", 5) as c:
        for n in range(2, 7):
            for d in range(2, 6):
                c.check(f"r=1 {n},{d}", multihomog_disc_degree(MultiHomogSpec([n], [d])) == n * (d - 1) ** (n - 1))
        c.check("(2,2,1,1)", multihomog_disc_degree(MultiHomogSpec([2, 2], [1, 1])) == 2)
        specs = [MultiHomogSpec([3, 3], [2, 2])]
        rng = random.Random(5)
        while len(specs) < 10:
            r = rng.randint(1, 3)
            s = MultiHomogSpec([rng.randint(1, 4) for _ in range(r)], [rng.randint(1, 3) for _ in range(r)])
            if s.hypersurface_condition():
                specs.append(s)
        for s in specs:
            c.check(f"oracle {s}", multihomog_disc_degree(s) == multihomog_degree_bruteforce(s))
        c.check("(3,3,2,2) = 129", multihomog_disc_degree(specs[0]) == 129)


def _circle_locus(text, params):
    vs = VarSet(X + params)
    fam = FamilySpec(parse(text, vs), X, params, ConstraintSet([parse("x1^2+x2^2-1", vs)]), mode="kkt")
    (res,) = discriminantal_locus(fam)
    return res.generators


def test_criterion_06_elimination_goldens(capsys):
    with Criterion(capsys, 6, "elimination goldens (circle quadratic, circle quartic)", 900) as c:
        t0 = time.perf_counter()
        try:
            gens = _circle_locus("x1^2 + a*x1*x2 + b*x1 + c*x2 + d", list("abcd"))
            c.check("one generator", len(gens) == 1)
            c.check("degree 6", gens[0].degree() == 6)
            c.check("ratio", constant_ratio(gens[0], parse(CIRCLE_QUADRATIC_PHI, gens[0].varset),
                                            list("abcd"), 6))
        except BudgetExceeded as e:
            c.check(f"circle quadratic budget: {e}", False)
        c.check("circle quadratic < 5 min", time.perf_counter() - t0 < 300)
        t0 = time.perf_counter()
        try:
            gens = _circle_locus("x1^4 + a*x1^3*x2 + b*x1*x2^3 + c", list("abc"))
            c.check("one generator (quartic)", len(gens) == 1)
            c.check("ratio (quartic)", constant_ratio(gens[0], parse(CIRCLE_QUARTIC_PHI, gens[0].varset),
                                                      list("abc"), 7))
        except BudgetExceeded as e:
            c.check(f"circle quartic budget: {e}", False)
        c.check("circle quartic < 10 min", time.perf_counter() - t0 < 600)


def test_criterion_07_discriminant_via_elimination(capsys):
    with Criterion(capsys, 7, "discriminant via elimination", 1) as c:
        vs = VarSet(["x", "b", "c"])
        (res,) = discriminantal_locus(FamilySpec(parse("x^2+b*x+c", vs), ["x"], ["b", "c"]))
        c.check("b^2-4c", len(res.generators) == 1 and up_to_sign(res.generators[0], "b^2-4*c", ["b", "c"]))


def test_criterion_08_scan_pinned_values(capsys):
    with Criterion(capsys, 8, "scan pinned values", 150) as c:
        def timed(name, fn):
            t0 = time.perf_counter()
            out = fn()
            c.check(f"{name} < 30s", time.perf_counter() - t0 < 30)
            return out
        v = timed("norm", lambda: sphere_min(families.norm_power(2, 4), seed=0).value)
        c.check("||x||^4 = 1", abs(v - 1) <= 1e-8)
        v = timed("quartic sum", lambda: sphere_min(parse("x1^4+x2^4", X), seed=0).value)
        c.check("x1^4+x2^4 = 1/2", abs(v - 0.5) <= 1e-8)
        m = timed("robinson", lambda: classify(families.robinson(1, 3), seed=0))
        c.check("Robinson", abs(m.margin) <= 1e-4 and m.verdict == "Boundary")
        m = timed("horn", lambda: classify(families.horn(4, 0), seed=0))
        c.check("Horn", abs(m.margin) <= 1e-4 and m.verdict == "Boundary")
        xy = VarSet(X)
        K = ConstraintSet([parse("x1^3-x1^2*x2-1", xy)])
        rep = timed("hemisphere", lambda: constrained_min(parse("x1-x2+1", xy), K, True, 64, 0))
        c.check("homogenized <= -1+1e-4", rep.value <= -1 + 1e-4)


def test_criterion_09_superadditivity(capsys):
    with Criterion(capsys, 9, "lambda_min superadditivity on 100 pairs", 120) as c:
        rng = random.Random(9)
        vs = VarSet(X)

        def form():
            return Polynomial(vs, {(k, 4 - k): Fraction(rng.randint(-20, 20), 10) for k in range(5)})

        for i in range(100):
            rep = concavity_probe(form(), form(), num_thetas=11, starts=32, seed=i, tol=1e-6)
            c.check(f"pair {i}", rep.holds)


def test_criterion_10_copositive(capsys):
    with Criterion(capsys, 10, "copositive boundary and checks", 120) as c:
        bp = copositive_boundary_poly(SymMatrixParam.from_rows(families.copositive_matrix_4()))
        rng = random.Random(10)
        ratios, used = set(), 0
        while used < 20:
            pt = {"a": Fraction(rng.randint(-40, 40), rng.randint(1, 12)),
                  "b": Fraction(rng.randint(-40, 40), rng.randint(1, 12))}
            want = Fraction(COPOSITIVE_4_SIGN)
            for text, k in COPOSITIVE_4_PHI:
                want *= evaluate(parse(text, AB), pt) ** k
            if want:
                ratios.add(evaluate(bp.expanded, pt) / want)
                used += 1
        c.check("4x4 ratio is 1", ratios == {1})
        for a, verdict in [(-1.1, "Exterior"), (-1.0, "Boundary"), (-0.9, "Interior")]:
            c.check(f"2x2 a={a}", copositive_check([[1, a], [a, 1]]).verdict == verdict)
        horn = SymMatrixParam.from_rows(families.copositive_matrix_5(-2, 0)).numeric()
        c.check("Horn matrix", copositive_check(horn).verdict == "Boundary")
        xy = VarSet(X)
        for _ in range(30):
            a, b, cc = (rng.randint(-2, 2) for _ in range(3))
            f = Polynomial(xy, {(2, 0): a, (1, 1): b, (0, 2): cc})
            if f.is_zero():
                continue
            left = discriminant(even_substitution(f)).is_zero()
            right = any(g.is_zero() or discriminant(g).is_zero()
                        for g in (restrict_support(f, I) for I in (["x1"], ["x2"], X)))
            c.check(f"n=2 equivalence {a},{b},{cc}", left == right)


def test_criterion_11_property_suites(capsys):
    with Criterion(capsys, 11, "headless property suites on fixed seeds", 300) as c:
        rng = random.Random(11)
        vs = VarSet(["x0", "x1", "x2"])

        def rand_poly(deg, homogeneous=False):
            terms = {}
            for e in np.ndindex(deg + 1, deg + 1, deg + 1):
                if (sum(e) == deg if homogeneous else sum(e) <= deg) and rng.random() < 0.4:
                    terms[tuple(int(k) for k in e)] = rng.randint(-5, 5)
            return Polynomial(vs, terms)

        for i in range(20):
            d = rng.randint(1, 5)
            F = rand_poly(d, homogeneous=True)
            euler = Polynomial.zero(vs)
            for v in vs.names:
                euler = euler + Polynomial.var(vs, v) * F.diff(v)
            c.check(f"euler {i}", euler == F.scale(d))
            f, g, h = rand_poly(3), rand_poly(3), rand_poly(2)
            c.check(f"ring {i}", (f + g) * h == f * h + g * h and (f * g) * h == f * (g * h)
                    and (f - f).is_zero())
        for i in range(10):
            gens = [rand_poly(2) for _ in range(3)]
            gens = [g for g in gens if g] or [Polynomial.var(vs, "x0")]
            gb = groebner(gens, "grevlex")
            basis = [g for g in gb.generators if g]
            c.check(f"s-polynomials {i}", all(
                normal_form(s_polynomial(p, q, gb.order), gb).is_zero()
                for k, p in enumerate(basis) for q in basis[k + 1:]))
            c.check(f"membership {i}", all(normal_form(g, gb).is_zero() for g in gens))
            out, full = eliminate(gens, ["x0"], return_basis=True)
            c.check(f"containment {i}", all("x0" not in p.varset and normal_form(p.embed(full.varset), full).is_zero()
                                            for p in out))
        f = families.horn(4, 0)
        reps = [sphere_min(f, starts=16, seed=2, workers=w) for w in (1, 3)]
        c.check("determinism across threads", reps[0] == reps[1])
