import random
from fractions import Fraction

from psbstrat import (
    ParamIdeal,
    Polynomial,
    lead_mod,
    make_block,
    make_deglex,
    make_valuation_compatible,
    modified_standard,
    parse_polynomial,
    psb_mod,
    psb_mod_prime,
    taylor_shift,
)
from psbstrat.groebner import normal_form, groebner_basis
from psbstrat.hilbert import Staircase
from psbstrat.poly import leading_data

XY = ("x1", "x2", "y1", "y2")


def _flat(text, order, names=XY):
    return parse_polynomial(text, names, order)


def test_pairs_when_second_family_trivial():
    dl_x = make_deglex(2)
    dl_y = make_deglex(2, prefer_high=True)
    block = make_block(dl_x, dl_y)
    g = _flat("x1^2+y1*x2", block)
    out = modified_standard([g], [], 2, dl_x, dl_y)
    assert all(pb.g_tilde == pb.g for pb in out)


def test_two_coprime_generators():
    dl_x = make_deglex(1)
    dl_y = make_deglex(1)
    block = make_block(dl_x, dl_y)
    names = ("x1", "y1")
    g1 = parse_polynomial("x1", names, block)
    g2 = parse_polynomial("y1", names, block)
    out = modified_standard([g1], [g2], 1, dl_x, dl_y)
    tilde = {pb.g_tilde for pb in out}
    assert tilde == {g1, g2}
    pairs = {(pb.g_tilde, pb.g) for pb in out}
    assert (g1, g1) in pairs
    assert (g2, Polynomial.zero(block)) in pairs


def test_pairing_invariants_certified():
    # companion in the first ideal, difference in the second, equivalence of
    # membership in the second ideal
    vo = make_valuation_compatible(2)
    yo = make_deglex(2, prefer_high=True)
    block = make_block(vo, yo)
    pp = taylor_shift(parse_polynomial("x1^2+x2^3", ("x1", "x2"), vo), yo)
    from psbstrat.parampoly import param_to_flat

    flat_g = param_to_flat(pp)
    q = _flat("y1^2+y2^3", block)
    out = modified_standard([flat_g], [q], 2, vo, yo)
    # membership checks against global reference bases
    dl_flat = make_deglex(4)
    gb1 = groebner_basis([flat_g.with_order(dl_flat)], dl_flat)
    gb2 = groebner_basis([q.with_order(dl_flat)], dl_flat)
    for pb in out:
        if not pb.g.is_zero():
            assert normal_form(pb.g.with_order(dl_flat), gb1).is_zero()
        diff = (pb.g_tilde - pb.g).with_order(dl_flat)
        if not diff.is_zero():
            assert normal_form(diff, gb2).is_zero()
        in2_tilde = normal_form(pb.g_tilde.with_order(dl_flat), gb2).is_zero()
        in2_pair = normal_form(pb.g.with_order(dl_flat), gb2).is_zero()
        assert in2_tilde == in2_pair


def test_block_lead_decomposition():
    rng = random.Random(51)
    vo = make_valuation_compatible(2)
    yo = make_deglex(2, prefer_high=True)
    block = make_block(vo, yo)
    for _ in range(100):
        d = {}
        for _ in range(rng.randrange(1, 6)):
            e = tuple(rng.randrange(3) for _ in range(4))
            d[e] = Fraction(rng.randrange(-4, 5))
        p = Polynomial.from_dict(block, d)
        if p.is_zero():
            continue
        full = leading_data(p).exp
        # x part is the x-order lead of the x projection
        xbest = max({e[:2] for e in p.support()}, key=vo.sort_key)
        assert full[:2] == xbest
        ys = [e[2:] for e in p.support() if e[:2] == xbest]
        assert full[2:] == max(ys, key=yo.sort_key)


def test_prime_route_guard_and_agreement_on_zero_ideal():
    pp = taylor_shift(
        parse_polynomial("x1^2+x2^3", ("x1", "x2"), make_valuation_compatible(2))
    )
    yo = pp.y_order
    Qz = ParamIdeal.zero(yo)
    inside = pp.scale(parse_polynomial("y1", ("y1", "y2"), yo))
    Qpt = ParamIdeal(
        [parse_polynomial(t, ("y1", "y2"), yo) for t in ("y1", "y2")], yo
    )
    assert psb_mod_prime([inside], Qpt) == ((), ())
    b1, h1 = psb_mod([pp], Qz)
    b2, h2 = psb_mod_prime([pp], Qz)
    s1 = Staircase.from_exponents(2, [lead_mod(g, Qz).exp for g in b1])
    s2 = Staircase.from_exponents(2, [lead_mod(g, Qz).exp for g in b2])
    assert s1 == s2


def test_cross_engine_staircases_cusp_strata():
    pp = taylor_shift(
        parse_polynomial("x1^2+x2^3", ("x1", "x2"), make_valuation_compatible(2))
    )
    yo = pp.y_order
    for q_texts in ((), ("y1^2+y2^3",), ("y1", "y2")):
        Q = ParamIdeal([parse_polynomial(t, ("y1", "y2"), yo) for t in q_texts], yo)
        b1, _ = psb_mod([pp], Q)
        b2, _ = psb_mod_prime([pp], Q)
        s1 = Staircase.from_exponents(2, [lead_mod(g, Q).exp for g in b1])
        s2 = Staircase.from_exponents(2, [lead_mod(g, Q).exp for g in b2])
        assert s1 == s2


def test_cross_engine_staircases_random_global():
    # with a global order on x both engines compute classical data
    rng = random.Random(57)
    dlx = make_deglex(2)
    yo = make_deglex(1)
    names = ("x1", "x2", "y1")
    block = make_block(dlx, yo)
    from psbstrat.parampoly import flat_to_param

    for _ in range(10):
        texts = []
        d = {}
        for _ in range(2):
            dd = {}
            for _ in range(rng.randrange(1, 4)):
                e = (rng.randrange(3), rng.randrange(3), rng.randrange(2))
                dd[e] = Fraction(rng.randrange(-3, 4))
            p = Polynomial.from_dict(block, dd)
            if not p.is_zero():
                texts.append(p)
        if not texts:
            continue
        gens = [flat_to_param(p, 2, dlx, yo) for p in texts]
        Q = ParamIdeal([parse_polynomial("y1^2-2", ("y1",), yo)], yo)
        from psbstrat.mora import in_extension

        gens = [g for g in gens if not in_extension(g, Q)]
        if not gens:
            continue
        b1, _ = psb_mod(gens, Q)
        b2, _ = psb_mod_prime(gens, Q)
        s1 = Staircase.from_exponents(2, [lead_mod(g, Q).exp for g in b1])
        s2 = Staircase.from_exponents(2, [lead_mod(g, Q).exp for g in b2])
        assert s1 == s2
