"""From generators in x to the stratification of affine space on which the
local Hilbert-Samuel function is constant.

Pipeline: shift every generator by fresh parameters (one per main
variable), stratify parameter space under a valuation-compatible order,
then attach counting data to each stratum staircase and merge strata whose
counting functions coincide.  A direct per-point oracle (specialize, then
compute a classical standard basis over the rationals) is provided for
cross-checking.
"""
from __future__ import annotations

import random
import warnings
from dataclasses import dataclass
from fractions import Fraction

from .errors import EngineError
from .hilbert import NumericalPolynomial, Staircase, affine_hilbert_poly, hs_function
from .mora import lead_mod, psb_mod
from .orders import MonomialOrder, make_deglex
from .param_ring import ParamIdeal, default_param_order
from .parampoly import ParamPolynomial, taylor_shift
from .poly import Polynomial
from .stratify import StratificationResult, Stratum, strat_exp1, strat_exp2


@dataclass(frozen=True)
class HSStratum:
    """Regions of affine space sharing one Hilbert-Samuel function."""

    staircase: Staircase
    regions: tuple[Stratum, ...]
    hs_values: tuple[int, ...]
    hs_polynomial: NumericalPolynomial


@dataclass
class HSResult:
    strata: tuple[HSStratum, ...]
    raw: StratificationResult
    r_max: int

    def region_lines(self, names) -> list[str]:
        from .stratify import render_lines

        return render_lines(self.raw, names)


def _shift_inputs(F, y_order: MonomialOrder) -> tuple[ParamPolynomial, ...]:
    return tuple(taylor_shift(f, y_order) for f in F if not f.is_zero())


def hs_stratify(
    F,
    r_max: int = 8,
    engine: str = "modified",
    variant: str = "exp2",
    y_order: MonomialOrder | None = None,
) -> HSResult:
    """Stratify affine space by the local Hilbert-Samuel function of <F>.

    F must contain a nonzero polynomial; the parameter-space cover is then
    exact (the vanishing ideal comes out as the unit ideal, which is
    asserted).  Strata with equal staircases are merged, and a second pass
    merges distinct staircases whose counting functions agree.
    """
    F = [f for f in F if not f.is_zero()]
    if not F:
        raise EngineError("input must contain a nonzero polynomial")
    n = F[0].nvars
    if y_order is None:
        y_order = default_param_order(n)
    shifted = _shift_inputs(F, y_order)
    runner = strat_exp2 if variant == "exp2" else strat_exp1
    raw = runner(shifted, y_order=y_order, engine=engine)
    if not raw.vanishing_ideal.is_unit_ideal():
        raise EngineError("nonzero input produced a proper vanishing ideal")

    by_stair: dict = {}
    order_of_keys: list = []
    for st in raw.canonical_strata():
        key = st.staircase.generators
        if key not in by_stair:
            by_stair[key] = []
            order_of_keys.append(key)
        by_stair[key].append(st)

    prelim: list[HSStratum] = []
    for key in order_of_keys:
        regions = tuple(by_stair[key])
        stair = regions[0].staircase
        values = tuple(hs_function(stair, r) for r in range(r_max + 1))
        poly = affine_hilbert_poly(stair)
        prelim.append(HSStratum(stair, regions, values, poly))

    # second merge pass: same counting function, possibly different staircases
    def same_function(a: HSStratum, b: HSStratum) -> bool:
        if a.hs_polynomial.coefficients != b.hs_polynomial.coefficients:
            return False
        probe = max(
            a.hs_polynomial.stability_threshold, b.hs_polynomial.stability_threshold
        )
        return all(
            hs_function(a.staircase, r) == hs_function(b.staircase, r)
            for r in range(probe + 1)
        )

    merged: list[HSStratum] = []
    for hstr in prelim:
        hit = next((i for i, other in enumerate(merged) if same_function(other, hstr)), None)
        if hit is None:
            merged.append(hstr)
        else:
            keep = merged[hit]
            merged[hit] = HSStratum(
                keep.staircase,
                keep.regions + hstr.regions,
                keep.hs_values,
                keep.hs_polynomial,
            )
    return HSResult(tuple(merged), raw, r_max)


def hs_at_point(F, x0, r_max: int = 8) -> tuple[int, ...]:
    """Hilbert-Samuel values of <F> at the rational point x0, directly.

    Shifts the generators to the point, computes a classical standard basis
    under the valuation-compatible order over the rationals, and counts
    lattice points under the resulting staircase.
    """
    F = [f for f in F if not f.is_zero()]
    if not F:
        raise EngineError("input must contain a nonzero polynomial")
    n = F[0].nvars
    x0 = tuple(Fraction(v) if not isinstance(v, Fraction) else v for v in x0)
    if len(x0) != n:
        raise EngineError("point length does not match the variable count")
    y_order = default_param_order(n)
    specialized = []
    for f in F:
        pp = taylor_shift(f, y_order)
        sp = pp.specialize(x0)
        if not sp.is_zero():
            specialized.append(sp)
    stair = classical_staircase(specialized)
    return tuple(hs_function(stair, r) for r in range(r_max + 1))


def classical_staircase(polys) -> Staircase:
    """Staircase of the ideal generated by rational-coefficient polynomials
    in x under their stored order, via the parameter-free engine."""
    if not polys:
        raise EngineError("no nonzero polynomials to work with")
    x_order = polys[0].order
    y0 = make_deglex(0)
    Q0 = ParamIdeal.zero(y0)
    params = [
        ParamPolynomial.from_dict(x_order, y0, {e: Polynomial.constant(y0, c) for e, c in p.terms})
        for p in polys
    ]
    basis, _ = psb_mod(params, Q0)
    exps = [lead_mod(g, Q0).exp for g in basis]
    return Staircase.from_exponents(x_order.nvars, exps)


# ----- rational point search ----------------------------------------------------
def _rational_roots(coeffs: list[Fraction]) -> list[Fraction]:
    """All rational roots of a univariate polynomial given by ascending coefficients."""
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    if not coeffs:
        return []
    roots = []
    low = 0
    while low < len(coeffs) and coeffs[low] == 0:
        low += 1
    if low > 0:
        roots.append(Fraction(0))
        coeffs = coeffs[low:]
    if not coeffs or len(coeffs) == 1:
        return roots
    den = 1
    for c in coeffs:
        den = den * c.denominator // __import__("math").gcd(den, c.denominator)
    ints = [int(c * den) for c in coeffs]
    a0, alead = abs(ints[0]), abs(ints[-1])

    def divisors(v):
        out = []
        d = 1
        while d * d <= v:
            if v % d == 0:
                out.append(d)
                out.append(v // d)
            d += 1
        return sorted(set(out))

    if a0 == 0:
        return roots
    for p in divisors(a0):
        for q in divisors(alead):
            for cand in (Fraction(p, q), Fraction(-p, q)):
                val = Fraction(0)
                power = Fraction(1)
                for c in ints:
                    val += c * power
                    power *= cand
                if val == 0 and cand not in roots:
                    roots.append(cand)
    return roots


def _univar_coeffs(p: Polynomial, var: int) -> list[Fraction]:
    deg = max((e[var] for e, _ in p.terms), default=-1)
    out = [Fraction(0)] * (deg + 1)
    for e, c in p.terms:
        if any(v != 0 for i, v in enumerate(e) if i != var):
            raise ValueError("not univariate")
        out[e[var]] += c
    return out


def sample_stratum_points(
    st: Stratum, count: int = 3, seed: int = 0, attempts: int = 120
) -> list[tuple[Fraction, ...]]:
    """Rational points of V(Q) minus V(prod h), found by randomized search.

    Strategy per attempt: eliminate variables that appear linearly with a
    constant coefficient, then either fill free variables at random, solve a
    single univariate generator exactly, or intersect with a random rational
    line and keep rational parameter values.  On persistent failure a
    warning is emitted and fewer (possibly zero) points are returned.
    """
    rng = random.Random(seed)
    m = st.Q.nvars
    found: list[tuple[Fraction, ...]] = []

    def acceptable(point) -> bool:
        return st.contains_point(point) and point not in found

    def small(nonzero=False) -> Fraction:
        while True:
            v = Fraction(rng.randint(-9, 9))
            if not nonzero or v != 0:
                return v

    order = st.Q.order
    for _ in range(attempts):
        if len(found) >= count:
            break
        gens = [g for g in st.Q.groebner]
        assign: dict[int, Polynomial] = {}
        # symbolic elimination of constant-coefficient linear variables
        progress = True
        while progress and gens:
            progress = False
            for g in gens:
                for v in range(m):
                    dv = max((e[v] for e, _ in g.terms), default=0)
                    if dv != 1:
                        continue
                    coeff_terms = [
                        (tuple(0 if i == v else x for i, x in enumerate(e)), c)
                        for e, c in g.terms
                        if e[v] == 1
                    ]
                    if len(coeff_terms) != 1 or any(coeff_terms[0][0]):
                        continue
                    c = coeff_terms[0][1]
                    rest = Polynomial.from_dict(
                        order, {e: k for e, k in g.terms if e[v] == 0}
                    )
                    expr = rest * Fraction(-1, 1) * (1 / c)
                    assign[v] = expr
                    gens = [h.substitute(v, expr) for h in gens if h is not g]
                    gens = [h for h in gens if not h.is_zero()]
                    for w in list(assign):
                        assign[w] = assign[w].substitute(v, expr)
                    progress = True
                    break
                if progress:
                    break
        candidate = None
        free_vars = [v for v in range(m) if v not in assign]
        if not gens:
            point = {v: small() for v in free_vars}
            candidate = point
        elif len(gens) >= 1:
            g0 = gens[0]
            used = [v for v in free_vars if any(e[v] for e, _ in g0.terms)]
            if len(used) == 1:
                roots = _rational_roots(_univar_coeffs(g0, used[0]))
                if roots:
                    point = {v: small() for v in free_vars if v != used[0]}
                    point[used[0]] = rng.choice(roots)
                    candidate = point
            elif used:
                solve_var = rng.choice(used)
                point = {v: small(nonzero=True) for v in free_vars if v != solve_var}
                sub = g0
                for v, val in point.items():
                    sub = sub.substitute(v, val)
                try:
                    roots = _rational_roots(_univar_coeffs(sub, solve_var))
                except ValueError:
                    roots = []
                if roots:
                    point[solve_var] = rng.choice(roots)
                    candidate = point
                elif len(used) >= 2:
                    # random rational line through the origin
                    direction = {v: small(nonzero=True) for v in used}
                    acc: dict = {}
                    for e, c in g0.terms:
                        tdeg = sum(e[v] for v in used)
                        scale = c
                        for v in used:
                            scale *= direction[v] ** e[v]
                        acc[tdeg] = acc.get(tdeg, Fraction(0)) + scale
                    coeffs = [acc.get(i, Fraction(0)) for i in range(max(acc) + 1)]
                    roots = [t for t in _rational_roots(coeffs) if t != 0]
                    if roots:
                        t = rng.choice(roots)
                        point = {v: small() for v in free_vars if v not in used}
                        for v in used:
                            point[v] = t * direction[v]
                        candidate = point
        if candidate is None:
            continue
        # back-substitute the eliminated variables
        full = [Fraction(0)] * m
        for v in range(m):
            if v in candidate:
                full[v] = candidate[v]
        for v, expr in assign.items():
            e = expr
            for w, val in candidate.items():
                e = e.substitute(w, val)
            if not e.is_constant():
                break
            full[v] = e.constant_value()
        else:
            pt = tuple(full)
            if all(g.evaluate(pt) == 0 for g in st.Q.groebner) and acceptable(pt):
                found.append(pt)
    if len(found) < count:
        warnings.warn(
            f"found only {len(found)} of {count} rational points on a stratum",
            stacklevel=2,
        )
    return found
