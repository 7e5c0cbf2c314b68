"""Polynomials in main variables x whose coefficients are polynomials in
parameters y over the rationals.

A term pairs an x-exponent with a coefficient polynomial; terms are sorted
strictly descending under the x-order.  The parameter count may be zero,
in which case coefficients are plain rationals wrapped as constants.
"""
from __future__ import annotations

import math
from fractions import Fraction

from .errors import DimensionMismatch, UndefinedLead
from .orders import MonomialOrder, make_block, make_deglex
from .poly import Exponent, Polynomial, add_exponents


def _as_coeff(c, y_order: MonomialOrder) -> Polynomial:
    if isinstance(c, Polynomial):
        if c.order != y_order:
            return c.with_order(y_order)
        return c
    return Polynomial.constant(y_order, c)


class ParamPolynomial:
    """Sparse element of (Q[y])[x]."""

    __slots__ = ("x_order", "y_order", "terms", "_token")

    def __init__(self, x_order, y_order, terms):
        self.x_order = x_order
        self.y_order = y_order
        self.terms = terms  # tuple[(x-exponent, Polynomial in y)], descending
        self._token = None

    # ----- construction -------------------------------------------------
    @classmethod
    def from_dict(cls, x_order: MonomialOrder, y_order: MonomialOrder, d: dict) -> "ParamPolynomial":
        items = []
        for exp, c in d.items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != x_order.nvars:
                raise DimensionMismatch("x-exponent length mismatch")
            c = _as_coeff(c, y_order)
            if not c.is_zero():
                items.append((exp, c))
        items.sort(key=lambda t: x_order.sort_key(t[0]), reverse=True)
        return cls(x_order, y_order, tuple(items))

    @classmethod
    def zero(cls, x_order, y_order) -> "ParamPolynomial":
        return cls(x_order, y_order, ())

    @classmethod
    def constant(cls, x_order, y_order, c) -> "ParamPolynomial":
        c = _as_coeff(c, y_order)
        if c.is_zero():
            return cls.zero(x_order, y_order)
        return cls(x_order, y_order, (((0,) * x_order.nvars, c),))

    # ----- queries --------------------------------------------------------
    @property
    def nx(self) -> int:
        return self.x_order.nvars

    @property
    def ny(self) -> int:
        return self.y_order.nvars

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, exp: Exponent) -> Polynomial:
        for e, c in self.terms:
            if e == exp:
                return c
        return Polynomial.zero(self.y_order)

    def lead(self) -> tuple[Exponent, Polynomial]:
        if not self.terms:
            raise UndefinedLead("zero polynomial has no leading term")
        return self.terms[0]

    def x_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e, _ in self.terms)

    def token(self):
        if self._token is None:
            self._token = (
                self.nx,
                self.ny,
                tuple(sorted((e, c.token()) for e, c in self.terms)),
            )
        return self._token

    # ----- arithmetic ------------------------------------------------------
    def _check(self, other: "ParamPolynomial"):
        if self.x_order != other.x_order or self.y_order != other.y_order:
            raise DimensionMismatch("operands carry different ring contexts")

    def __add__(self, other: "ParamPolynomial") -> "ParamPolynomial":
        self._check(other)
        key = self.x_order.sort_key
        a, b = self.terms, other.terms
        i = j = 0
        out = []
        while i < len(a) and j < len(b):
            ea, eb = a[i][0], b[j][0]
            if ea == eb:
                c = a[i][1] + b[j][1]
                if not c.is_zero():
                    out.append((ea, c))
                i += 1
                j += 1
            elif key(ea) > key(eb):
                out.append(a[i])
                i += 1
            else:
                out.append(b[j])
                j += 1
        out.extend(a[i:])
        out.extend(b[j:])
        return ParamPolynomial(self.x_order, self.y_order, tuple(out))

    def __neg__(self):
        return ParamPolynomial(self.x_order, self.y_order, tuple((e, -c) for e, c in self.terms))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other: "ParamPolynomial") -> "ParamPolynomial":
        self._check(other)
        acc: dict = {}
        for ea, ca in self.terms:
            for eb, cb in other.terms:
                e = add_exponents(ea, eb)
                prev = acc.get(e)
                acc[e] = ca * cb if prev is None else prev + ca * cb
        return ParamPolynomial.from_dict(self.x_order, self.y_order, acc)

    def scale(self, c) -> "ParamPolynomial":
        """Multiply by a parameter-ring element or rational."""
        c = _as_coeff(c, self.y_order)
        if c.is_zero():
            return ParamPolynomial.zero(self.x_order, self.y_order)
        acc: dict = {}
        for e, k in self.terms:
            acc[e] = k * c
        return ParamPolynomial.from_dict(self.x_order, self.y_order, acc)

    def mul_term(self, exp: Exponent, c) -> "ParamPolynomial":
        """Multiply by c(y) * x^exp."""
        c = _as_coeff(c, self.y_order)
        if c.is_zero():
            return ParamPolynomial.zero(self.x_order, self.y_order)
        exp = tuple(exp)
        acc: dict = {}
        for e, k in self.terms:
            acc[add_exponents(e, exp)] = k * c
        return ParamPolynomial.from_dict(self.x_order, self.y_order, acc)

    # ----- transformations --------------------------------------------------
    def specialize(self, point) -> Polynomial:
        """Evaluate every coefficient at the given parameter point."""
        point = tuple(Fraction(p) if not isinstance(p, Fraction) else p for p in point)
        acc: dict = {}
        for e, c in self.terms:
            v = c.evaluate(point)
            if v != 0:
                acc[e] = v
        return Polynomial.from_dict(self.x_order, acc)

    def content(self) -> Fraction:
        num = 0
        den = 1
        for _, c in self.terms:
            for _, k in c.terms:
                num = math.gcd(num, abs(k.numerator))
                den = den * k.denominator // math.gcd(den, k.denominator)
        return Fraction(num, den) if num else Fraction(1)

    def primitive(self) -> tuple["ParamPolynomial", Fraction]:
        """Scale to integral content-free form with positive leading sign."""
        if self.is_zero():
            return self, Fraction(1)
        c = self.content()
        lead_c = self.terms[0][1]
        if lead_c.terms[0][1] < 0:
            c = -c
        return self.scale(Fraction(1, 1) / c), c

    def __eq__(self, other):
        if not isinstance(other, ParamPolynomial):
            return NotImplemented
        return self.token() == other.token()

    def __hash__(self):
        return hash(self.token())

    def __repr__(self):
        return f"ParamPolynomial({param_polynomial_str(self)})"


def param_polynomial_str(pp: ParamPolynomial, xnames=None, ynames=None) -> str:
    """Flat string in the shared grammar (mixed x and y factors)."""
    from .textio import default_names, polynomial_str

    xnames = xnames or default_names("x", pp.nx)
    ynames = ynames or default_names("y", pp.ny)
    flat = param_to_flat(pp)
    return polynomial_str(flat, tuple(xnames) + tuple(ynames))


# ----- flat conversions -------------------------------------------------------
def block_order_for(pp_or_x: MonomialOrder, y_order: MonomialOrder) -> MonomialOrder:
    return make_block(pp_or_x, y_order)


def param_to_flat(pp: ParamPolynomial, flat_order: MonomialOrder | None = None) -> Polynomial:
    """Flatten into Q[x, y] under the block order (x-order, y-order)."""
    if flat_order is None:
        if pp.ny:
            flat_order = make_block(pp.x_order, pp.y_order)
        else:
            flat_order = pp.x_order
    acc: dict = {}
    for xe, c in pp.terms:
        for ye, k in c.terms:
            acc[xe + ye] = k
    return Polynomial.from_dict(flat_order, acc)


def flat_to_param(p: Polynomial, nx: int, x_order: MonomialOrder, y_order: MonomialOrder) -> ParamPolynomial:
    acc: dict = {}
    for e, c in p.terms:
        xe, ye = e[:nx], e[nx:]
        sub = acc.setdefault(xe, {})
        sub[ye] = sub.get(ye, Fraction(0)) + c
    d = {xe: Polynomial.from_dict(y_order, sub) for xe, sub in acc.items()}
    return ParamPolynomial.from_dict(x_order, y_order, d)


# ----- the shift x -> x + y ---------------------------------------------------
def taylor_shift(f: Polynomial, y_order: MonomialOrder | None = None) -> ParamPolynomial:
    """Expand f(x + y) exactly with one fresh parameter per main variable."""
    n = f.nvars
    if y_order is None:
        y_order = make_deglex(n, prefer_high=True)
    if y_order.nvars != n:
        raise DimensionMismatch("need exactly one parameter per main variable")
    acc: dict = {}
    for exp, c in f.terms:
        # expand prod_i (x_i + y_i)^{e_i} term by term
        parts: list[tuple[tuple[int, ...], int]] = [((), 1)]
        for i, e in enumerate(exp):
            new_parts = []
            for k in range(e + 1):
                b = math.comb(e, k)
                for prefix, mult in parts:
                    new_parts.append((prefix + (k,), mult * b))
            parts = new_parts
        for xexp, mult in parts:
            yexp = tuple(a - b for a, b in zip(exp, xexp))
            sub = acc.setdefault(xexp, {})
            sub[yexp] = sub.get(yexp, Fraction(0)) + c * mult
    d = {xe: Polynomial.from_dict(y_order, sub) for xe, sub in acc.items()}
    return ParamPolynomial.from_dict(f.order, y_order, d)
