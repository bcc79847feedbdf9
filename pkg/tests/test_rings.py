import itertools
import random
from fractions import Fraction

import pytest
import sympy

from ringstab.rings import (
    Ideal,
    RadicalInconclusive,
    RingSpec,
    SpecMismatch,
    UnsupportedRing,
    exact_divide,
    gcd,
    ideal_contains_one,
    ideal_equals,
    ideal_membership,
    ideal_product,
    ideal_quotient,
    ideal_sum,
    is_nonzerodivisor,
    is_unit,
    principal,
    radical_membership,
    squarefree_part,
)
from ringstab.rings import groebner as G
from ringstab.rings import poly as P
from ringstab.parser import parse_element

from helpers import QQ, from_sympy, rand_elem, rand_nonzero, rand_poly, sym_vars, to_sympy

ZZ = RingSpec.integers()
ZS = RingSpec.quadratic()
QX = RingSpec.polynomial("x")
QXY = RingSpec.polynomial("x", "y")
CUSP = RingSpec.cuspidal()
ALL = [ZZ, QQ, ZS, QX, QXY, CUSP]


def e(spec, text):
    return parse_element(spec, text)


def ideal(spec, *texts):
    return Ideal(spec, [e(spec, t) for t in texts])


# specs and arithmetic ---------------------------------------------------


def test_spec_invariants():
    with pytest.raises(ValueError):
        RingSpec.polynomial()
    with pytest.raises(ValueError):
        RingSpec.polynomial("x", "x")
    assert CUSP.variables == ("u", "v")


def test_arithmetic_examples():
    assert ZS.quad(1, 1) * ZS.quad(1, -1) == ZS.from_int(6)
    assert (e(QXY, "x") * QXY.zero()).is_zero()
    u, v = CUSP.var("u"), CUSP.var("v")
    assert (u * u * u - v * v).is_zero()


def test_spec_mismatch():
    with pytest.raises(SpecMismatch):
        QX.one() + QXY.one()


@pytest.mark.parametrize("spec", ALL, ids=str)
def test_domain_property(spec):
    rng = random.Random(1)
    for _ in range(1000):
        a, b = rand_nonzero(rng, spec), rand_nonzero(rng, spec)
        assert not (a * b).is_zero()
        assert is_nonzerodivisor(a)


def test_units():
    assert not is_unit(ZS.from_int(2)) and is_nonzerodivisor(ZS.from_int(2))
    assert is_unit(QQ.coerce(Fraction(3, 4)))
    assert not is_unit(ZS.quad(1, 1))
    assert is_unit(ZS.from_int(-1)) and is_unit(ZZ.from_int(-1))
    assert is_unit(e(QX, "3/2")) and not is_unit(e(QX, "x"))


def test_exact_divide_examples():
    assert exact_divide(ZS.from_int(6), ZS.quad(1, 1)) == ZS.quad(1, -1)
    assert exact_divide(e(QXY, "x^2*y"), e(QXY, "x")) == e(QXY, "x*y")
    assert exact_divide(ZS.quad(1, 1), ZS.from_int(2)) is None
    assert exact_divide(e(CUSP, "v^2"), e(CUSP, "u^2")) == e(CUSP, "u")
    assert exact_divide(e(CUSP, "u"), e(CUSP, "v")) is None
    with pytest.raises(ZeroDivisionError):
        exact_divide(ZZ.one(), ZZ.zero())


@pytest.mark.parametrize("spec", ALL, ids=str)
def test_exact_divide_round_trip(spec):
    rng = random.Random(2)
    for _ in range(150):
        a, b = rand_elem(rng, spec), rand_nonzero(rng, spec)
        prod = a * b
        assert exact_divide(prod, b) == a
        c = rand_elem(rng, spec)
        q = exact_divide(c, b)
        if q is not None:
            assert q * b == c


def test_exact_divide_brute_force_integers():
    for a in range(-30, 31):
        for b in range(1, 12):
            q = exact_divide(ZZ.from_int(a), ZZ.from_int(b))
            assert (q is not None) == (a % b == 0)
            if q is not None:
                assert q * ZZ.from_int(b) == ZZ.from_int(a)


# gcd / squarefree ------------------------------------------------------------


def test_gcd_examples():
    assert gcd(e(QXY, "x^2"), e(QXY, "x*y")) == e(QXY, "x")
    assert gcd(QXY.zero(), e(QXY, "2*x+2")) == e(QXY, "x+1")
    assert gcd(e(QX, "x+1"), e(QX, "x-1")) == QX.one()
    assert gcd(ZZ.from_int(-12), ZZ.from_int(18)) == ZZ.from_int(6)
    with pytest.raises(UnsupportedRing):
        gcd(ZS.from_int(2), ZS.quad(1, 1))
    with pytest.raises(UnsupportedRing):
        gcd(CUSP.one(), CUSP.one())


@pytest.mark.parametrize("spec", [QX, QXY], ids=str)
def test_gcd_against_sympy(spec):
    rng = random.Random(3)
    gens = sym_vars(spec)
    for _ in range(60):
        common = rand_poly(rng, spec, terms=2, deg=1)
        a = rand_poly(rng, spec) * common
        b = rand_poly(rng, spec) * common
        if a.is_zero() or b.is_zero():
            continue
        g = gcd(a, b)
        assert exact_divide(a, g) is not None and exact_divide(b, g) is not None
        expected = sympy.gcd(to_sympy(a, spec), to_sympy(b, spec), *gens)
        ratio = sympy.simplify(to_sympy(g, spec) / expected)
        assert ratio.is_number and ratio != 0
        if not common.is_zero():
            assert exact_divide(g, common) is not None


def test_gcd_divided_by_common_divisors_from_pool():
    rng = random.Random(4)
    pool = [e(QXY, t) for t in ("x", "y", "x+y", "x-1", "y^2+x", "x*y+1")]
    for _ in range(80):
        fa = rng.sample(pool, 3)
        fb = rng.sample(pool, 3)
        a = fa[0] * fa[1] * fa[2]
        b = fb[0] * fb[1] * fb[2]
        g = gcd(a, b)
        for f in pool:
            if f in fa and f in fb:
                assert exact_divide(g, f) is not None


def test_squarefree_examples():
    assert squarefree_part(e(QXY, "x^2*y")) == e(QXY, "x*y")
    assert squarefree_part(ZZ.from_int(12)) == ZZ.from_int(6)
    f = e(QXY, "x^2+y")
    assert squarefree_part(f) == f
    with pytest.raises(UnsupportedRing):
        squarefree_part(ZS.from_int(4))
    with pytest.raises(ValueError):
        squarefree_part(ZZ.zero())


def test_squarefree_against_sympy():
    rng = random.Random(5)
    x, y = sym_vars(QXY)
    for _ in range(40):
        f = rand_poly(rng, QXY, deg=1) ** 2 * rand_poly(rng, QXY, deg=1)
        if f.is_zero():
            continue
        expr = to_sympy(f, QXY)
        _, factors = sympy.factor_list(expr, x, y)
        rad = sympy.Integer(1)
        for fac, _ in factors:
            rad *= fac
        got = to_sympy(squarefree_part(f), QXY)
        ratio = sympy.simplify(got / rad)
        assert ratio.is_number and ratio != 0


# Groebner bases ------------------------------------------------------------------


def _monic_set(polys, spec):
    out = set()
    for f in polys:
        if f:
            out.add(tuple(sorted(P.monic(f).items())))
    return out


def test_groebner_against_sympy():
    rng = random.Random(6)
    x, y = sym_vars(QXY)
    for _ in range(40):
        gens = [rand_poly(rng, QXY, terms=3, deg=2) for _ in range(rng.randint(2, 3))]
        gens = [g for g in gens if not g.is_zero()]
        if not gens:
            continue
        ours = Ideal(QXY, gens).canonical().basis
        theirs = sympy.groebner([to_sympy(g, QXY) for g in gens], x, y, order="grevlex")
        expected = [from_sympy(t, QXY).payload for t in theirs.exprs]
        assert _monic_set(ours, QXY) == _monic_set(expected, QXY)


def test_membership_cofactors_reconstruct():
    rng = random.Random(7)
    for spec in (ZZ, QQ, ZS, QX, QXY, CUSP):
        for _ in range(40):
            gens = [rand_elem(rng, spec) for _ in range(rng.randint(1, 3))]
            a = Ideal(spec, gens)
            f = sum((rand_elem(rng, spec) * g for g in gens), spec.zero())
            ok, cof = ideal_membership(f, a, with_cofactors=True)
            assert ok
            assert sum((c * g for c, g in zip(cof, gens)), spec.zero()) == f


def test_groebner_tracked_cofactors():
    gens = [e(QXY, "x^2-y"), e(QXY, "x*y-1")]
    gb = G.groebner([g.payload for g in gens], 2, track=True)
    for g, row in zip(gb.basis, gb.rows):
        total = {}
        for c, h in zip(row, gens):
            total = P.add(total, P.mul(c, h.payload))
        assert total == g


def test_membership_examples():
    assert not ideal(ZS, "2", "1+s").contains_one()
    ok, cof = ideal_contains_one(ideal(QX, "x", "1-x"))
    assert ok and [str(c) for c in cof] == ["1", "1"]
    assert not ideal_membership(e(QXY, "y"), ideal(QXY, "x"))
    # evaluation certificate: y(0, 1) = 1 while x(0, 1) = 0
    assert to_sympy(e(QXY, "y"), QXY).subs({"x": 0, "y": 1}) == 1


def test_membership_cusp_adjoins_relation():
    assert ideal(CUSP, "u").contains(e(CUSP, "v^2"))
    assert not ideal(CUSP, "u").contains(e(CUSP, "v"))


def test_canonical_basis_generates_same_ideal():
    rng = random.Random(8)
    for spec in ALL:
        for _ in range(25):
            a = Ideal(spec, [rand_elem(rng, spec) for _ in range(rng.randint(1, 3))])
            b = Ideal(spec, a.canonical_basis())
            assert ideal_equals(a, b)


# sum, product, quotient ----------------------------------------------------------


def test_sum_and_product_examples():
    s = ideal_sum([ideal(ZS, "2"), ideal(ZS, "1+s")])
    assert [str(g) for g in s.canonical_basis()] == ["2", "1+s"]
    a = ideal(QXY, "x", "y^2")
    assert ideal_equals(ideal_sum([a, Ideal(QXY, [QXY.zero()])]), a)
    assert ideal_equals(ideal_product(ideal(QXY, "x"), ideal(QXY, "y")), ideal(QXY, "x*y"))


def test_quotient_examples():
    q = ideal_quotient(ideal(ZS, "2"), ideal(ZS, "2", "1+s"))
    assert ideal_equals(q, ideal(ZS, "2", "1+s"))
    q = ideal_quotient(ideal(QXY, "x"), ideal(QXY, "x", "y"))
    assert ideal_equals(q, ideal(QXY, "x"))
    a = ideal(QXY, "x^2", "x*y")
    assert ideal_quotient(a, a).contains_one()
    assert ideal_quotient(a, Ideal(QXY, [QXY.zero()])).contains_one()


def test_quotient_polynomial_definition():
    rng = random.Random(9)
    for spec in (QX, QXY, CUSP):
        for _ in range(15):
            a = Ideal(spec, [rand_nonzero(rng, spec) for _ in range(2)])
            b = Ideal(spec, [rand_nonzero(rng, spec) for _ in range(2)])
            q = ideal_quotient(a, b)
            for f in q.generators:
                for g in b.generators:
                    assert a.contains(f * g)
            # a is always inside (a : b)
            for g in a.generators:
                assert q.contains(g)


def _brute_quotient_member(f, a, b):
    return all(a.contains(f * g) for g in b.generators)


def test_quotient_brute_force_integers():
    rng = random.Random(10)
    for _ in range(60):
        a = Ideal(ZZ, [ZZ.from_int(rng.randint(-10, 10)) for _ in range(2)])
        b = Ideal(ZZ, [ZZ.from_int(rng.randint(-10, 10)) for _ in range(2)])
        q = ideal_quotient(a, b)
        for f in q.generators:
            assert _brute_quotient_member(f, a, b)
        for k in range(-40, 41):
            f = ZZ.from_int(k)
            assert q.contains(f) == _brute_quotient_member(f, a, b)


def test_quotient_brute_force_quadratic():
    rng = random.Random(11)
    for _ in range(25):
        a = Ideal(ZS, [rand_nonzero(rng, ZS, 10) for _ in range(2)])
        b = Ideal(ZS, [rand_nonzero(rng, ZS, 10) for _ in range(2)])
        q = ideal_quotient(a, b)
        for f in q.generators:
            assert _brute_quotient_member(f, a, b)
        for x, y in itertools.product(range(-6, 7), repeat=2):
            f = ZS.quad(x, y)
            assert q.contains(f) == _brute_quotient_member(f, a, b)


def test_dedekind_projectivity_sanity():
    rng = random.Random(12)
    for _ in range(50):
        a1, a2 = rand_nonzero(rng, ZS, 10), rand_nonzero(rng, ZS, 10)
        a = Ideal(ZS, [a1, a2])
        total = ideal_sum([ideal_quotient(principal(a1), a), ideal_quotient(principal(a2), a)])
        assert total.contains_one()


# radicals ---------------------------------------------------------------------


def test_radical_examples():
    assert radical_membership(e(QXY, "x"), ideal(QXY, "x^2"))
    assert not radical_membership(e(QXY, "y"), ideal(QXY, "x"))
    a = ideal_product(ideal(ZS, "2"), ideal_product(ideal(ZS, "3", "1+s"), ideal(ZS, "3", "1+s")))
    assert radical_membership(ZS.quad(1, 1), a)
    assert not radical_membership(ZS.quad(1, 1), ideal(ZS, "3"))
    assert radical_membership(ZZ.from_int(6), ideal(ZZ, "12"))
    assert not radical_membership(ZZ.from_int(2), ideal(ZZ, "12"))
    assert radical_membership(e(CUSP, "v"), ideal(CUSP, "u"))


def test_radical_inconclusive_below_certified_exponent():
    with pytest.raises(RadicalInconclusive):
        radical_membership(ZS.quad(1, 1), ideal(ZS, "2"), bound=1)
    assert radical_membership(ZS.quad(1, 1), ideal(ZS, "2"), bound=2)


def test_radical_quadratic_matches_power_search():
    rng = random.Random(13)
    for _ in range(40):
        a = Ideal(ZS, [rand_nonzero(rng, ZS, 6) for _ in range(2)])
        f = rand_nonzero(rng, ZS, 6)
        power, expected = f, False
        for _ in range(24):
            if a.contains(power):
                expected = True
                break
            power = power * f
        assert radical_membership(f, a, bound=24) == expected
