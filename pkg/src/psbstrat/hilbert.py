"""Staircases, their counting functions, and the explicit bound formulas.

A staircase is an upward-closed subset of N^n given by its minimal
generators.  Its counting function at r is the number of lattice points of
total degree at most r lying outside the staircase; the closed polynomial
form comes from inclusion-exclusion over subsets of generators and is exact
once r reaches n times the maximal generator degree.
"""
from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .errors import SizeCapExceeded

DEFAULT_SUBSET_CAP = 20
DEFAULT_HF_CAP = 20000


def binomial(a: int, b: int) -> int:
    """C(a, b) with the convention that out-of-range arguments give zero."""
    if b < 0 or a < b:
        return 0
    return math.comb(a, b)


@dataclass(frozen=True)
class Staircase:
    """Upward-closed subset of N^n by its minimal generating antichain."""

    nvars: int
    generators: tuple[tuple[int, ...], ...]

    @classmethod
    def from_exponents(cls, nvars: int, exponents) -> "Staircase":
        exps = sorted(set(tuple(int(v) for v in e) for e in exponents))
        minimal = []
        for e in exps:
            if not any(all(g[i] <= e[i] for i in range(nvars)) for g in minimal if g != e):
                minimal.append(e)
        # one more sweep: an earlier element may dominate a later one lexicographically
        minimal = [
            e
            for e in minimal
            if not any(o != e and all(o[i] <= e[i] for i in range(nvars)) for o in minimal)
        ]
        return cls(nvars, tuple(sorted(minimal)))

    def contains(self, exp) -> bool:
        return any(all(g[i] <= exp[i] for i in range(self.nvars)) for g in self.generators)

    def max_degree(self) -> int:
        """Largest total degree among the minimal generators (0 when empty)."""
        return max((sum(g) for g in self.generators), default=0)

    def __str__(self):
        return "<" + ", ".join("(" + ",".join(map(str, g)) + ")" for g in self.generators) + ">"


def _iterate_simplex(n: int, r: int):
    """All exponent vectors in N^n of total degree at most r."""
    if n == 0:
        yield ()
        return
    for lead in range(r + 1):
        for rest in _iterate_simplex(n - 1, r - lead):
            yield (lead,) + rest


def hs_function(E: Staircase, r: int) -> int:
    """Count of exponents of degree <= r outside the staircase, by enumeration."""
    if r < 0:
        return 0
    return sum(1 for e in _iterate_simplex(E.nvars, r) if not E.contains(e))


def hilbert_function_increment(E: Staircase, r: int) -> int:
    """First difference of the counting function (degree-r slice only)."""
    return hs_function(E, r) - hs_function(E, r - 1)


@dataclass(frozen=True)
class NumericalPolynomial:
    """Univariate rational-coefficient polynomial taking integer values on N."""

    coefficients: tuple[Fraction, ...]  # ascending powers
    stability_threshold: int

    def __call__(self, r: int) -> int:
        total = Fraction(0)
        p = Fraction(1)
        for c in self.coefficients:
            total += c * p
            p *= r
        if total.denominator != 1:
            raise ArithmeticError(f"non-integer value {total} at r={r}")
        return int(total)

    def degree(self) -> int:
        d = -1
        for i, c in enumerate(self.coefficients):
            if c != 0:
                d = i
        return d


def _binomial_poly_shifted(n: int, shift: int) -> list[Fraction]:
    """Coefficients of r -> C(r + shift, n) as a polynomial, ascending powers."""
    # product (r + shift) (r + shift - 1) ... (r + shift - n + 1) / n!
    coeffs = [Fraction(1)]
    for k in range(n):
        c = shift - k
        coeffs = [Fraction(0)] + coeffs  # multiply by r
        for i in range(len(coeffs) - 1):
            coeffs[i] += c * coeffs[i + 1]
    fact = math.factorial(n)
    return [c / fact for c in coeffs]


def _subset_cap() -> int:
    return int(os.environ.get("PSBSTRAT_SUBSET_CAP", DEFAULT_SUBSET_CAP))


def affine_hilbert_poly(E: Staircase, cap: int | None = None) -> NumericalPolynomial:
    """Closed polynomial form of the counting function via inclusion-exclusion.

    Each subset of generators contributes C(r + n - e, n) with e the degree
    of the subset's componentwise maximum; the alternating sum equals the
    counting function for every r >= n * (max generator degree).
    """
    n = E.nvars
    q = len(E.generators)
    if cap is None:
        cap = _subset_cap()
    if q > cap:
        raise SizeCapExceeded(f"{q} generators exceed the subset-enumeration cap {cap}")
    coeffs = [Fraction(0)] * (n + 1)
    base = _binomial_poly_shifted(n, n)
    for i, c in enumerate(base):
        coeffs[i] += c
    for k in range(1, q + 1):
        sign = -1 if k % 2 == 1 else 1
        for subset in combinations(E.generators, k):
            lcm = tuple(max(g[i] for g in subset) for i in range(n))
            e = sum(lcm)
            part = _binomial_poly_shifted(n, n - e)
            for i, c in enumerate(part):
                coeffs[i] += sign * c
    threshold = n * E.max_degree()
    return NumericalPolynomial(tuple(coeffs), threshold)


def degree_bound(n: int, d: int) -> int:
    """The closed-form degree bound 2*((d^2+2d)/2)^(2^(n-1)).

    The exact value is rational; for odd d and n >= 2 it is a half-integer,
    in which case the integer floor is returned (degrees are integers, so
    the floor bounds them just as well).
    """
    if n < 1 or d < 1:
        raise ValueError("arguments must be positive")
    value = 2 * Fraction(d * d + 2 * d, 2) ** (2 ** (n - 1))
    if value.denominator == 1:
        return int(value)
    return int(value.numerator // value.denominator)


def _hf_cap() -> int:
    return int(os.environ.get("PSBSTRAT_HF_CAP", DEFAULT_HF_CAP))


def hs_count_bounds(n: int, d: int, cap: int | None = None) -> tuple[int, int]:
    """Counts of attainable counting polynomials and counting functions.

    The first value is C(n*D + n, n) with D the degree bound.  The second
    multiplies it by prod_{k=0..n*D} (1 + C(k+n-1, n-1)) and is guarded by a
    cap on n*D because the product grows enormous.
    """
    if n < 1 or d < 1:
        raise ValueError("arguments must be positive")
    D = degree_bound(n, d)
    hp = binomial(n * D + n, n)
    if cap is None:
        cap = _hf_cap()
    if n * D > cap:
        raise SizeCapExceeded(f"n*D = {n * D} exceeds the product cap {cap}")
    hf = hp
    for k in range(n * D + 1):
        hf *= 1 + binomial(k + n - 1, n - 1)
    return hp, hf
