"""Ideal arithmetic in the parameter ring Q[y].

Provides reduced Groebner bases under a global order, normal forms of
coefficients, membership, radical membership via one extra variable, and
intersection of ideals by elimination.  Bases are cached per canonical
generator set because the stratification loop queries the same ideal many
times.
"""
from __future__ import annotations

from .errors import EngineError
from .groebner import groebner_basis, normal_form
from .orders import MonomialOrder, make_deglex
from .poly import Polynomial

_GB_CACHE: dict = {}


def _canonical_gens(gens, order: MonomialOrder) -> tuple[Polynomial, ...]:
    out = []
    seen = set()
    for g in gens:
        g = g.with_order(order)
        if g.is_zero():
            continue
        g, _ = g.primitive()
        if g.token() in seen:
            continue
        seen.add(g.token())
        out.append(g)
    out.sort(key=lambda p: (order.sort_key(p.lead()[0]), p.token()))
    return tuple(out)


class ParamIdeal:
    """A finitely generated ideal of Q[y] with a cached reduced basis."""

    __slots__ = ("order", "generators", "_key", "_nf_cache")

    def __init__(self, generators, order: MonomialOrder | None = None):
        generators = tuple(generators)
        if order is None:
            if not generators:
                raise EngineError("order required for an ideal with no generators")
            order = generators[0].order
        if not order.is_global:
            raise EngineError("parameter-ring order must be global")
        self.order = order
        self.generators = _canonical_gens(generators, order)
        self._key = (self.order.rows, tuple(g.token() for g in self.generators))
        self._nf_cache: dict = {}

    @classmethod
    def zero(cls, order: MonomialOrder) -> "ParamIdeal":
        return cls((), order)

    @property
    def nvars(self) -> int:
        return self.order.nvars

    @property
    def groebner(self) -> tuple[Polynomial, ...]:
        cached = _GB_CACHE.get(self._key)
        if cached is None:
            cached = groebner_basis(self.generators, self.order)
            _GB_CACHE[self._key] = cached
        return cached

    def key(self):
        return (self.order.rows, tuple(g.token() for g in self.groebner))

    def normal_form(self, c: Polynomial) -> Polynomial:
        c = c.with_order(self.order)
        tok = c.token()
        hit = self._nf_cache.get(tok)
        if hit is None:
            hit = normal_form(c, self.groebner)
            self._nf_cache[tok] = hit
        return hit

    def contains(self, c: Polynomial) -> bool:
        return self.normal_form(c).is_zero()

    def is_zero_ideal(self) -> bool:
        return not self.groebner

    def is_unit_ideal(self) -> bool:
        gb = self.groebner
        return bool(gb) and gb[0].is_constant()

    def plus(self, extra) -> "ParamIdeal":
        return ParamIdeal(self.groebner + tuple(extra), self.order)

    def __eq__(self, other):
        return isinstance(other, ParamIdeal) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"ParamIdeal({len(self.generators)} gens, {self.nvars} vars)"


def groebner_y(Q: ParamIdeal) -> tuple[Polynomial, ...]:
    """Reduced basis of Q under its global order; canonical and unique."""
    return Q.groebner


def coeff_normal_form(c: Polynomial, Q: ParamIdeal) -> Polynomial:
    """Unique remainder of c modulo Q; zero exactly on members."""
    return Q.normal_form(c)


def is_member(c: Polynomial, Q: ParamIdeal) -> bool:
    return Q.contains(c)


def _extend(p: Polynomial, order_ext: MonomialOrder) -> Polynomial:
    return p.map_exponents(lambda e: e + (0,), order_ext)


def _t_last_order(y_order: MonomialOrder) -> MonomialOrder:
    """Order on (y, t) that eliminates the last variable t."""
    m = y_order.nvars
    rows = [(0,) * m + (1,)]
    rows += [row + (0,) for row in y_order.rows]
    return MonomialOrder(rows)


def in_radical(h: Polynomial, Q: ParamIdeal) -> bool:
    """True iff some power of h lies in Q.

    Decided without computing the radical: adjoin t, ask whether
    1 lies in Q + <1 - t*h>.
    """
    h = h.with_order(Q.order)
    if Q.contains(h):
        return True
    if h.is_constant():
        return False  # nonzero rational constant, and h not in Q
    ext = _t_last_order(Q.order)
    m = Q.nvars
    gens = [_extend(g, ext) for g in Q.groebner]
    t = Polynomial.variable(ext, m)
    gens.append(Polynomial.constant(ext, 1) - t * _extend(h, ext))
    gb = groebner_basis(gens, ext)
    return any(g.is_constant() for g in gb)


def ideal_intersect(A: ParamIdeal, B: ParamIdeal) -> ParamIdeal:
    """Generators of A ∩ B obtained by eliminating t from t*A + (1-t)*B."""
    if A.order != B.order:
        raise EngineError("ideals live in different parameter rings")
    if A.is_unit_ideal():
        return B
    if B.is_unit_ideal():
        return A
    if A.is_zero_ideal() or B.is_zero_ideal():
        return ParamIdeal.zero(A.order)
    ext = _t_last_order(A.order)
    m = A.nvars
    t = Polynomial.variable(ext, m)
    one = Polynomial.constant(ext, 1)
    gens = [t * _extend(g, ext) for g in A.groebner]
    gens += [(one - t) * _extend(g, ext) for g in B.groebner]
    gb = groebner_basis(gens, ext)
    kept = [g for g in gb if all(e[m] == 0 for e, _ in g.terms)]
    inter = [g.map_exponents(lambda e: e[:m], A.order) for g in kept]
    return ParamIdeal(inter, A.order)


def default_param_order(m: int) -> MonomialOrder:
    """The calibrated default order on parameters (ties prefer higher index)."""
    return make_deglex(m, prefer_high=True)
