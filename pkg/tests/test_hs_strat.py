import random
import warnings
from fractions import Fraction

import pytest

from psbstrat import (
    EngineError,
    Polynomial,
    hs_at_point,
    hs_function,
    hs_stratify,
    make_valuation_compatible,
    parse_polynomial,
)
from psbstrat.hs_strat import sample_stratum_points

from conftest import build_inputs

X2 = ("x1", "x2")
VO2 = make_valuation_compatible(2)


def test_unit_input():
    one = parse_polynomial("1", X2, VO2)
    res = hs_stratify([one], r_max=5)
    assert len(res.strata) == 1
    h = res.strata[0]
    assert h.staircase.generators == ((0, 0),)
    assert h.hs_values == (0,) * 6


def test_zero_input_rejected():
    with pytest.raises(EngineError):
        hs_stratify([Polynomial.zero(VO2)])


def test_cusp_merged_strata(cusp_result):
    res = cusp_result
    assert len(res.strata) == 3
    by_stair = {h.staircase.generators: h for h in res.strata}
    assert set(by_stair) == {((0, 0),), ((0, 1),), ((2, 0),)}
    assert by_stair[((0, 0),)].hs_values == (0,) * 9
    assert by_stair[((0, 1),)].hs_values == tuple(r + 1 for r in range(9))
    assert by_stair[((2, 0),)].hs_values == (1,) + tuple(2 * r + 1 for r in range(1, 9))
    assert res.raw.vanishing_ideal.is_unit_ideal()


def test_quartic_staircases(quartic_mixed_result, quartic_node_result):
    got = {h.staircase.generators for h in quartic_mixed_result.strata}
    assert got == {
        ((0, 0, 0),),
        ((0, 0, 1),),
        ((2, 1, 0),),
        ((0, 4, 0),),
    }
    got2 = {h.staircase.generators for h in quartic_node_result.strata}
    assert got2 == {
        ((0, 0, 0),),
        ((0, 0, 1),),
        ((1, 1, 0),),
        ((1, 1, 1),),
    }


def test_hs_at_point_examples():
    f = parse_polynomial("x1^2+x2^3", X2, VO2)
    assert hs_at_point([f], (1, 0)) == (0,) * 9
    assert hs_at_point([f], (0, 0)) == (1,) + tuple(2 * r + 1 for r in range(1, 9))
    assert hs_at_point([f], (1, -1)) == tuple(r + 1 for r in range(9))


def test_hs_at_point_respects_rmax():
    f = parse_polynomial("x1^2+x2^3", X2, VO2)
    assert hs_at_point([f], (0, 0), r_max=3) == (1, 3, 5, 7)


def test_oracle_equivalence_per_stratum(all_fixture_results):
    for name, res in all_fixture_results.items():
        _, _, _, polys = build_inputs(name)
        for h in res.strata:
            for st in h.regions:
                with warnings.catch_warnings():
                    warnings.simplefilter("ignore")
                    pts = sample_stratum_points(st, count=3, seed=101)
                for pt in pts:
                    assert hs_at_point(polys, pt) == h.hs_values, (name, pt)


def test_covering_and_unique_merged_assignment(all_fixture_results):
    rng = random.Random(107)
    for name, res in all_fixture_results.items():
        n = len(res.strata[0].staircase.generators[0])
        for _ in range(60):
            pt = tuple(Fraction(rng.randrange(-5, 6)) for _ in range(n))
            owners = [
                h
                for h in res.strata
                if any(st.contains_point(pt) for st in h.regions)
            ]
            assert len(owners) == 1, (name, pt)


def test_upper_semicontinuity_spot_check(all_fixture_results):
    # special strata dominate the generic one pointwise in r
    for res in all_fixture_results.values():
        generic = next(
            h for h in res.strata if h.staircase.generators == (tuple([0] * len(h.staircase.generators[0])),)
        )
        for h in res.strata:
            assert all(a >= b for a, b in zip(h.hs_values, generic.hs_values))


def test_stability_threshold_agreement(all_fixture_results):
    for res in all_fixture_results.values():
        for h in res.strata:
            poly = h.hs_polynomial
            t = poly.stability_threshold
            for r in range(t, t + 4):
                assert poly(r) == hs_function(h.staircase, r)


def test_merge_by_equal_function():
    # two smooth branches produce the same counting function through
    # different staircase generators; they end up in one stratum
    f = parse_polynomial("x1*x2", X2, VO2)
    res = hs_stratify([f], r_max=6)
    stairs = [h.staircase.generators for h in res.strata]
    # one merged stratum carries both axis staircases through its regions
    axes = [h for h in res.strata if h.staircase.generators in (((0, 1),), ((1, 0),))]
    if len(axes) == 1:
        regions = axes[0].regions
        region_stairs = {st.staircase.generators for st in regions}
        assert len(region_stairs) >= 1
    # the counting values on the axis stratum are r+1
    for h in axes:
        assert h.hs_values == tuple(r + 1 for r in range(7))
