import random
from fractions import Fraction

from psbstrat import (
    ParamPolynomial,
    Polynomial,
    make_block,
    make_deglex,
    make_valuation_compatible,
    parse_polynomial,
    taylor_shift,
)
from psbstrat.parampoly import flat_to_param, param_polynomial_str, param_to_flat

VO = make_valuation_compatible(2)
YO = make_deglex(2, prefer_high=True)
X2 = ("x1", "x2")
Y2 = ("y1", "y2")


def _x(text):
    return parse_polynomial(text, X2, VO)


def _y(text):
    return parse_polynomial(text, Y2, YO)


def test_shift_cusp_expansion():
    pp = taylor_shift(_x("x1^2+x2^3"))
    assert pp.coeff((0, 0)) == _y("y1^2+y2^3")
    assert pp.coeff((1, 0)) == _y("2*y1")
    assert pp.coeff((0, 1)) == _y("3*y2^2")
    assert pp.coeff((2, 0)) == _y("1")
    assert pp.coeff((0, 2)) == _y("3*y2")
    assert pp.coeff((0, 3)) == _y("1")
    assert len(pp.terms) == 6


def test_shift_constant_and_univariate_cube():
    c = taylor_shift(Polynomial.constant(VO, Fraction(5)))
    assert c.coeff((0, 0)) == Polynomial.constant(YO, 5)
    assert len(c.terms) == 1
    vo1 = make_valuation_compatible(1)
    cube = taylor_shift(parse_polynomial("x1^3", ("x1",), vo1))
    yo1 = cube.y_order
    y1 = ("y1",)
    assert cube.coeff((0,)) == parse_polynomial("y1^3", y1, yo1)
    assert cube.coeff((1,)) == parse_polynomial("3*y1^2", y1, yo1)
    assert cube.coeff((2,)) == parse_polynomial("3*y1", y1, yo1)
    assert cube.coeff((3,)) == parse_polynomial("1", y1, yo1)


def test_shift_evaluations():
    rng = random.Random(3)
    for _ in range(40):
        d = {}
        for _ in range(rng.randrange(1, 5)):
            e = (rng.randrange(4), rng.randrange(4))
            d[e] = Fraction(rng.randrange(-5, 6))
        f = Polynomial.from_dict(VO, d)
        pp = taylor_shift(f)
        # y = 0 recovers f
        assert pp.specialize((0, 0)) == f
        # x = 0 gives f(y): evaluate both at a random point
        pt = (Fraction(rng.randrange(-3, 4)), Fraction(rng.randrange(-3, 4)))
        assert pp.coeff((0, 0)).evaluate(pt) == f.evaluate(pt)
        # full two-point check: pp(x, y) = f(x + y)
        xpt = (Fraction(rng.randrange(-3, 4)), Fraction(rng.randrange(-3, 4)))
        lhs = pp.specialize(pt).evaluate(xpt)
        rhs = f.evaluate(tuple(a + b for a, b in zip(xpt, pt)))
        assert lhs == rhs


def test_flat_roundtrip():
    rng = random.Random(11)
    block = make_block(VO, YO)
    for _ in range(40):
        d = {}
        for _ in range(rng.randrange(1, 5)):
            e = tuple(rng.randrange(3) for _ in range(4))
            d[e] = Fraction(rng.randrange(-5, 6))
        flat = Polynomial.from_dict(block, d)
        pp = flat_to_param(flat, 2, VO, YO)
        assert param_to_flat(pp) == flat


def test_param_arithmetic_and_primitive():
    pp = taylor_shift(_x("x1^2+x2^3"))
    q = pp.scale(Fraction(6, 4))
    prim, content = q.primitive()
    assert content == Fraction(3, 2)
    assert prim == pp
    assert (pp - pp).is_zero()
    prod = pp * ParamPolynomial.constant(VO, YO, Fraction(2))
    assert prod.coeff((1, 0)) == _y("4*y1")


def test_param_str_roundtrips():
    pp = taylor_shift(_x("x1^2-1/2*x2^3"))
    s = param_polynomial_str(pp)
    flat_order = make_block(VO, YO)
    parsed = parse_polynomial(s, X2 + Y2, flat_order)
    assert flat_to_param(parsed, 2, VO, YO) == pp
