"""Exact sparse multivariate polynomials over the rationals.

Terms are stored sorted strictly descending under the polynomial's active
monomial order, so leading-data queries are O(1) and addition is a merge.
Values are immutable; every operation returns a fresh polynomial.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DegreeError, DimensionMismatch, ExponentOverflow, UndefinedLead
from .orders import MonomialOrder, make_homogenizing

_MAX_EXP = 2**31 - 1

Exponent = tuple[int, ...]


def add_exponents(a: Exponent, b: Exponent) -> Exponent:
    """Componentwise sum with a machine-width overflow guard."""
    out = tuple(map(int.__add__, a, b))
    if out and max(out) > _MAX_EXP:
        raise ExponentOverflow("exponent exceeds the machine-width bound")
    return out


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    raise TypeError(f"coefficient of unsupported type {type(c)!r}")


class Polynomial:
    """Sparse polynomial with Fraction coefficients under a fixed order."""

    __slots__ = ("order", "terms", "_token")

    def __init__(self, order: MonomialOrder, terms: tuple[tuple[Exponent, Fraction], ...]):
        # internal constructor: terms assumed canonical (sorted descending, nonzero)
        self.order = order
        self.terms = terms
        self._token = None

    # ----- construction -------------------------------------------------
    @classmethod
    def from_dict(cls, order: MonomialOrder, d: dict) -> "Polynomial":
        items = []
        for exp, c in d.items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != order.nvars:
                raise DimensionMismatch("exponent length does not match variable count")
            if any(e < 0 for e in exp):
                raise ValueError("negative exponent")
            c = _as_fraction(c)
            if c != 0:
                items.append((exp, c))
        items.sort(key=lambda t: order.sort_key(t[0]), reverse=True)
        return cls(order, tuple(items))

    @classmethod
    def zero(cls, order: MonomialOrder) -> "Polynomial":
        return cls(order, ())

    @classmethod
    def constant(cls, order: MonomialOrder, c) -> "Polynomial":
        c = _as_fraction(c)
        if c == 0:
            return cls.zero(order)
        return cls(order, (((0,) * order.nvars, c),))

    @classmethod
    def variable(cls, order: MonomialOrder, i: int, power: int = 1) -> "Polynomial":
        exp = tuple(power if j == i else 0 for j in range(order.nvars))
        return cls(order, ((exp, Fraction(1)),))

    # ----- basic queries -------------------------------------------------
    @property
    def nvars(self) -> int:
        return self.order.nvars

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(self.terms[0][0]))

    def constant_value(self) -> Fraction:
        if self.is_zero():
            return Fraction(0)
        if not self.is_constant():
            raise ValueError("not a constant polynomial")
        return self.terms[0][1]

    def lead(self) -> tuple[Exponent, Fraction]:
        if not self.terms:
            raise UndefinedLead("zero polynomial has no leading term")
        return self.terms[0]

    def coeff(self, exp: Exponent) -> Fraction:
        for e, c in self.terms:
            if e == exp:
                return c
        return Fraction(0)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e, _ in self.terms)

    def support(self) -> tuple[Exponent, ...]:
        return tuple(e for e, _ in self.terms)

    def token(self):
        """Order-independent canonical key (hashing, dedup, stable sorts)."""
        if self._token is None:
            self._token = (self.nvars, tuple(sorted(self.terms)))
        return self._token

    # ----- arithmetic ----------------------------------------------------
    def _check_compatible(self, other: "Polynomial"):
        if self.order != other.order:
            raise DimensionMismatch("operands carry different orders")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(self.order, other)
        self._check_compatible(other)
        key = self.order.sort_key
        a, b = self.terms, other.terms
        i = j = 0
        out = []
        while i < len(a) and j < len(b):
            ea, eb = a[i][0], b[j][0]
            if ea == eb:
                c = a[i][1] + b[j][1]
                if c != 0:
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
        return Polynomial(self.order, tuple(out))

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.order, tuple((e, -c) for e, c in self.terms))

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(self.order, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = _as_fraction(other)
            if c == 0:
                return Polynomial.zero(self.order)
            return Polynomial(self.order, tuple((e, k * c) for e, k in self.terms))
        self._check_compatible(other)
        acc: dict = {}
        for ea, ca in self.terms:
            for eb, cb in other.terms:
                e = add_exponents(ea, eb)
                acc[e] = acc.get(e, Fraction(0)) + ca * cb
        return Polynomial.from_dict(self.order, acc)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = Polynomial.constant(self.order, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def mul_term(self, exp: Exponent, c) -> "Polynomial":
        """Multiply by the single term c * x^exp; preserves sortedness."""
        c = _as_fraction(c)
        if c == 0:
            return Polynomial.zero(self.order)
        exp = tuple(exp)
        if not any(exp):
            return Polynomial(self.order, tuple((e, k * c) for e, k in self.terms))
        out = []
        for e, k in self.terms:
            ne = tuple(map(int.__add__, e, exp))
            out.append((ne, k * c))
        if out and max(max(e) for e, _ in out) > _MAX_EXP:
            raise ExponentOverflow("exponent exceeds the machine-width bound")
        return Polynomial(self.order, tuple(out))

    # ----- transformations -----------------------------------------------
    def with_order(self, order: MonomialOrder) -> "Polynomial":
        if order == self.order:
            return self
        if order.nvars != self.nvars:
            raise DimensionMismatch("new order has a different variable count")
        items = sorted(self.terms, key=lambda t: order.sort_key(t[0]), reverse=True)
        return Polynomial(order, tuple(items))

    def map_exponents(self, fn, order: MonomialOrder) -> "Polynomial":
        acc: dict = {}
        for e, c in self.terms:
            ne = fn(e)
            acc[ne] = acc.get(ne, Fraction(0)) + c
        return Polynomial.from_dict(order, acc)

    def derivative(self, i: int) -> "Polynomial":
        acc: dict = {}
        for e, c in self.terms:
            if e[i] > 0:
                ne = tuple(v - 1 if j == i else v for j, v in enumerate(e))
                acc[ne] = acc.get(ne, Fraction(0)) + c * e[i]
        return Polynomial.from_dict(self.order, acc)

    def evaluate(self, point) -> Fraction:
        point = tuple(_as_fraction(p) for p in point)
        if len(point) != self.nvars:
            raise DimensionMismatch("point length does not match variable count")
        total = Fraction(0)
        for e, c in self.terms:
            v = c
            for p, k in zip(point, e):
                if k:
                    v *= p**k
            total += v
        return total

    def substitute(self, i: int, value) -> "Polynomial":
        """Substitute variable i by a Fraction or a Polynomial in the same ring."""
        if isinstance(value, (int, Fraction)):
            value = Polynomial.constant(self.order, value)
        self._check_compatible(value)
        out = Polynomial.zero(self.order)
        for e, c in self.terms:
            base = tuple(0 if j == i else v for j, v in enumerate(e))
            term = Polynomial(self.order, ((base, c),))
            out = out + term * value ** e[i]
        return out

    # ----- normalization ------------------------------------------------
    def content(self) -> Fraction:
        """Positive rational c with self/c integral and integer-content-free."""
        if not self.terms:
            return Fraction(1)
        num = 0
        den = 1
        for _, c in self.terms:
            num = math.gcd(num, abs(c.numerator))
            den = den * c.denominator // math.gcd(den, c.denominator)
        return Fraction(num, den)

    def primitive(self) -> tuple["Polynomial", Fraction]:
        """Integral, content-free, positive-lead scalar multiple plus the factor removed."""
        if self.is_zero():
            return self, Fraction(1)
        c = self.content()
        if self.terms[0][1] < 0:
            c = -c
        return self * (1 / c), c

    # ----- dunder housekeeping -------------------------------------------
    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.constant_value() == other
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.token() == other.token()

    def __hash__(self):
        return hash(self.token())

    def __repr__(self):
        from .textio import polynomial_str, default_names

        return f"Polynomial({polynomial_str(self, default_names('v', self.nvars))})"


# ----- leading data -------------------------------------------------------
@dataclass(frozen=True)
class LeadData:
    """Leading exponent and coefficient of a nonzero polynomial."""

    exp: Exponent
    coeff: Fraction

    def term(self, order: MonomialOrder) -> Polynomial:
        return Polynomial(order, ((self.exp, Fraction(1)),))

    def monomial(self, order: MonomialOrder) -> Polynomial:
        return Polynomial(order, ((self.exp, self.coeff),))


def leading_data(f: Polynomial, order: MonomialOrder | None = None) -> LeadData:
    """Maximal term of ``f`` under ``order`` (defaults to the stored order)."""
    if f.is_zero():
        raise UndefinedLead("zero polynomial has no leading data")
    if order is None or order == f.order:
        e, c = f.terms[0]
    else:
        e, c = max(f.terms, key=lambda t: order.sort_key(t[0]))
    return LeadData(e, c)


def s_polynomial(f: Polynomial, g: Polynomial, order: MonomialOrder | None = None) -> Polynomial:
    """Leading-term cancelling combination lc(g) x^(γ-α) f - lc(f) x^(γ-β) g."""
    if order is not None:
        f = f.with_order(order)
        g = g.with_order(order)
    (alpha, cf) = leading_data(f).exp, leading_data(f).coeff
    (beta, cg) = leading_data(g).exp, leading_data(g).coeff
    gamma = tuple(max(a, b) for a, b in zip(alpha, beta))
    left = f.mul_term(tuple(c - a for c, a in zip(gamma, alpha)), cg)
    right = g.mul_term(tuple(c - b for c, b in zip(gamma, beta)), cf)
    return left - right


# ----- homogenization ------------------------------------------------------
def homogenize(
    f: Polynomial,
    hom_order: MonomialOrder | None = None,
    target_degree: int | None = None,
) -> Polynomial:
    """Pad every term with a power of one fresh last variable up to ``target_degree``."""
    if f.is_zero():
        raise UndefinedLead("cannot homogenize the zero polynomial")
    d = f.degree()
    if target_degree is not None:
        if target_degree < d:
            raise DegreeError("target degree is below the degree of the polynomial")
        d = target_degree
    if hom_order is None:
        hom_order = make_homogenizing(f.order)
    acc = {e + (d - sum(e),): c for e, c in f.terms}
    return Polynomial.from_dict(hom_order, acc)


def dehomogenize(f: Polynomial, x_order: MonomialOrder) -> Polynomial:
    """Set the last variable to one and drop it."""
    acc: dict = {}
    for e, c in f.terms:
        ne = e[:-1]
        acc[ne] = acc.get(ne, Fraction(0)) + c
    return Polynomial.from_dict(x_order, acc)


def is_homogeneous(f: Polynomial) -> bool:
    degs = {sum(e) for e, _ in f.terms}
    return len(degs) <= 1


# ----- gcd / squarefree machinery ------------------------------------------
# Plain-dict polynomial helpers (exponent tuple -> Fraction), order-free.


def _d_from_poly(p: Polynomial) -> dict:
    return dict(p.terms)


def _d_is_zero(d: dict) -> bool:
    return not d


def _d_mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            v = out.get(e, Fraction(0)) + ca * cb
            if v:
                out[e] = v
            elif e in out:
                del out[e]
    return out


def _d_sub(a: dict, b: dict) -> dict:
    out = dict(a)
    for e, c in b.items():
        v = out.get(e, Fraction(0)) - c
        if v:
            out[e] = v
        elif e in out:
            del out[e]
    return out


def _d_primitive(d: dict) -> dict:
    if not d:
        return d
    num = 0
    den = 1
    for c in d.values():
        num = math.gcd(num, abs(c.numerator))
        den = den * c.denominator // math.gcd(den, c.denominator)
    scale = Fraction(den, num)
    lead = min(d)  # deterministic sign anchor
    if d[lead] < 0:
        scale = -scale
    return {e: c * scale for e, c in d.items()}


def _d_degree_in(d: dict, v: int) -> int:
    return max((e[v] for e in d), default=-1)


def _split_by_var(d: dict, v: int) -> dict[int, dict]:
    out: dict[int, dict] = {}
    for e, c in d.items():
        k = e[v]
        base = tuple(0 if i == v else x for i, x in enumerate(e))
        out.setdefault(k, {})[base] = c
    return out


def _join_by_var(coeffs: dict[int, dict], v: int) -> dict:
    out: dict = {}
    for k, sub in coeffs.items():
        for e, c in sub.items():
            ne = tuple(k if i == v else x for i, x in enumerate(e))
            out[ne] = c
    return out


def _d_gcd(a: dict, b: dict) -> dict:
    """Primitive positive gcd of two dict-polynomials (up to rational factors)."""
    if _d_is_zero(a):
        return _d_primitive(b)
    if _d_is_zero(b):
        return _d_primitive(a)
    nvars = len(next(iter(a)))
    used = [v for v in range(nvars) if _d_degree_in(a, v) > 0 or _d_degree_in(b, v) > 0]
    if not used:
        return {(0,) * nvars: Fraction(1)}
    v = used[-1]
    fa, fb = _split_by_var(a, v), _split_by_var(b, v)
    ca = _d_coeff_gcd(fa)
    cb = _d_coeff_gcd(fb)
    cont = _d_gcd(ca, cb)
    pa = _d_exact_div_map(fa, ca)
    pb = _d_exact_div_map(fb, cb)
    # primitive pseudo-remainder sequence in the main variable v
    while True:
        if max(pa) < max(pb):
            pa, pb = pb, pa
        r = _map_prem(pa, pb)
        if _d_is_zero_map(r):
            return _d_primitive(_d_mul(cont, _join_by_var(pb, v)))
        if max(r) == 0:
            return _d_primitive(cont)
        pa = pb
        pb = _d_exact_div_map(r, _d_coeff_gcd(r))


def _map_prem(pa: dict[int, dict], pb: dict[int, dict]) -> dict[int, dict]:
    """Pseudo-remainder of univariate-in-main-variable maps (deg pa >= deg pb)."""
    db = max(pb)
    lcb = pb[db]
    r = pa
    while not _d_is_zero_map(r) and max(r) >= db:
        dr = max(r)
        lcr = r[dr]
        r = _map_sub(_map_scale(r, lcb), _map_shift_mul(pb, dr - db, lcr))
    return r


def _d_is_zero_map(m: dict[int, dict]) -> bool:
    return not m or all(_d_is_zero(s) for s in m.values())


def _map_scale(m: dict[int, dict], c: dict) -> dict[int, dict]:
    return {k: _d_mul(s, c) for k, s in m.items() if not _d_is_zero(s)}


def _map_shift_mul(m: dict[int, dict], shift: int, c: dict) -> dict[int, dict]:
    return {k + shift: _d_mul(s, c) for k, s in m.items() if not _d_is_zero(s)}


def _map_sub(a: dict[int, dict], b: dict[int, dict]) -> dict[int, dict]:
    out = {k: dict(v) for k, v in a.items()}
    for k, s in b.items():
        out[k] = _d_sub(out.get(k, {}), s)
    return {k: v for k, v in out.items() if not _d_is_zero(v)}


def _d_coeff_gcd(m: dict[int, dict]) -> dict:
    g: dict = {}
    for sub in m.values():
        g = _d_gcd(g, sub)
    return g


def _d_exact_div_map(m: dict[int, dict], d: dict) -> dict[int, dict]:
    return {k: _d_exact_div(s, d) for k, s in m.items() if not _d_is_zero(s)}


def _d_exact_div(a: dict, d: dict) -> dict:
    """Exact division a / d; raises if the division leaves a remainder."""
    if _d_is_zero(a):
        return {}
    lead = max(d)
    lc = d[lead]
    out: dict = {}
    rem = dict(a)
    guard = 0
    while rem:
        guard += 1
        if guard > 10000:
            raise ArithmeticError("exact division did not terminate")
        e = max(rem)
        q = tuple(x - y for x, y in zip(e, lead))
        if any(v < 0 for v in q):
            raise ArithmeticError("inexact polynomial division")
        c = rem[e] / lc
        out[q] = out.get(q, Fraction(0)) + c
        rem = _d_sub(rem, _d_mul({q: c}, d))
    return out


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Primitive positive gcd over the rationals."""
    d = _d_gcd(_d_from_poly(a), _d_from_poly(b))
    return Polynomial.from_dict(a.order if not a.is_zero() else b.order, d)


def exact_divide(a: Polynomial, d: Polynomial) -> Polynomial:
    out = _d_exact_div(_d_from_poly(a), _d_from_poly(d))
    return Polynomial.from_dict(a.order, out)


def squarefree_part(p: Polynomial) -> Polynomial:
    """Product of the distinct irreducible factors of ``p`` (characteristic zero)."""
    if p.is_zero():
        return p
    q, _ = p.primitive()
    if q.is_constant():
        return Polynomial.constant(p.order, 1)
    g = Polynomial.zero(p.order)
    for i in range(p.nvars):
        g = poly_gcd(g, q.derivative(i))
    g = poly_gcd(g, q)
    if g.is_constant():
        sf = q
    else:
        sf = exact_divide(q, g)
    sf, _ = sf.primitive()
    return sf
