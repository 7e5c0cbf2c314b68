"""Local/mixed-order division and completion for parametric polynomials,
working modulo an ideal of the parameter ring.

Leading data ignores terms whose coefficient reduces to zero modulo the
ideal Q.  Division multiplies through by leading coefficients instead of
dividing (coefficients live in a ring, not a field) and follows the
ecart-driven divisor-augmentation discipline, so it terminates for any
monomial order on the main variables.  Every division is certified by an
exact identity u*f = sum a_g*g + q + r that tests re-expand verbatim.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import EngineError, UndefinedLead
from .param_ring import ParamIdeal
from .parampoly import ParamPolynomial
from .poly import Exponent, Polynomial

_STEP_GUARD = 200000


# ----- leading data modulo Q -------------------------------------------------
@dataclass(frozen=True)
class ModQLead:
    """Leading exponent, stored coefficient and ecart after reduction modulo Q."""

    exp: Exponent
    coeff: Polynomial  # the coefficient as stored in the polynomial (not its remainder)
    ecart: int


def reduced_terms(f: ParamPolynomial, Q: ParamIdeal):
    """Terms of f surviving coefficient reduction modulo Q, with remainders."""
    out = []
    for e, c in f.terms:
        r = Q.normal_form(c)
        if not r.is_zero():
            out.append((e, c, r))
    return out


def in_extension(f: ParamPolynomial, Q: ParamIdeal) -> bool:
    """True iff every coefficient of f lies in Q."""
    return all(Q.normal_form(c).is_zero() for _, c in f.terms)


def lead_mod(f: ParamPolynomial, Q: ParamIdeal) -> ModQLead | None:
    """Leading data of f modulo Q, or None when f lies in the extension ideal."""
    surv = reduced_terms(f, Q)
    if not surv:
        return None
    exp, coeff, _ = surv[0]
    deg = max(sum(e) for e, _, _ in surv)
    return ModQLead(exp, coeff, deg - sum(exp))


def ecart_mod(f: ParamPolynomial, Q: ParamIdeal) -> int:
    ld = lead_mod(f, Q)
    if ld is None:
        raise UndefinedLead("polynomial lies in the extension ideal")
    return ld.ecart


def s_poly_mod(f: ParamPolynomial, g: ParamPolynomial, Q: ParamIdeal) -> ParamPolynomial:
    """lc_mod(g) x^(γ-α) f - lc_mod(f) x^(γ-β) g with γ the componentwise max."""
    lf, lg = lead_mod(f, Q), lead_mod(g, Q)
    if lf is None or lg is None:
        raise UndefinedLead("S-combination requires operands outside the extension ideal")
    gamma = tuple(max(a, b) for a, b in zip(lf.exp, lg.exp))
    left = f.mul_term(tuple(c - a for c, a in zip(gamma, lf.exp)), lg.coeff)
    right = g.mul_term(tuple(c - b for c, b in zip(gamma, lg.exp)), lf.coeff)
    return left - right


# ----- certified division -----------------------------------------------------
@dataclass
class DivisionCertificate:
    """Exact witness u*f = sum quotients[i]*divisors[i] + q_part + remainder."""

    unit: ParamPolynomial
    divisors: tuple[ParamPolynomial, ...]
    quotients: tuple[ParamPolynomial, ...]
    q_part: ParamPolynomial
    remainder: ParamPolynomial
    divisor_powers: tuple[int, ...]  # how often each divisor's lead coefficient scaled u

    def identity_residual(self, f: ParamPolynomial) -> ParamPolynomial:
        total = self.unit * f
        for a, g in zip(self.quotients, self.divisors):
            total = total - a * g
        return total - self.q_part - self.remainder

    def verify(self, f: ParamPolynomial, Q: ParamIdeal) -> bool:
        """Exact identity, q-part inside the extension, and u a unit modulo Q."""
        if not self.identity_residual(f).is_zero():
            return False
        if not in_extension(self.q_part, Q):
            return False
        lu = lead_mod(self.unit, Q)
        if lu is None or any(lu.exp):
            return False
        # leading representation condition: nothing may exceed the reduced image
        target = self.unit * f - self.remainder
        tl = lead_mod(target, Q)
        for a, g in zip(self.quotients, self.divisors):
            if a.is_zero():
                continue
            la = lead_mod(a * g, Q)
            if la is None:
                continue
            if tl is None or f.x_order.compare(tl.exp, la.exp) < 0:
                return False
        return True


class _Tracked:
    """A polynomial together with its exact representation u*f + sum b_j g_j."""

    __slots__ = ("poly", "unit", "coeffs")

    def __init__(self, poly, unit, coeffs):
        self.poly = poly
        self.unit = unit
        self.coeffs = coeffs


def _combine(ht: _Tracked, gt: _Tracked, c_g: Polynomial, c_h: Polynomial, shift) -> _Tracked:
    """c_g * h - c_h x^shift * g performed on polynomial and representation alike."""
    poly = ht.poly.scale(c_g) - gt.poly.mul_term(shift, c_h)
    unit = ht.unit.scale(c_g) - gt.unit.mul_term(shift, c_h)
    coeffs = tuple(
        a.scale(c_g) - b.mul_term(shift, c_h) for a, b in zip(ht.coeffs, gt.coeffs)
    )
    return _Tracked(poly, unit, coeffs)


def _rescale(t: _Tracked, factor: Fraction) -> _Tracked:
    return _Tracked(
        t.poly.scale(factor),
        t.unit.scale(factor),
        tuple(a.scale(factor) for a in t.coeffs),
    )


def nf_mora_mod(
    f: ParamPolynomial, G, Q: ParamIdeal
) -> tuple[ParamPolynomial, DivisionCertificate]:
    """Ecart-driven pseudo normal form of f by G modulo Q, with certificate.

    The remainder either lies in the extension ideal or has a leading
    exponent outside every divisor's leading-exponent cone.  Divisor choice:
    minimal ecart, then smaller leading exponent, then insertion order.
    """
    G = tuple(G)
    x_order = f.x_order
    zero = ParamPolynomial.zero(f.x_order, f.y_order)
    one = ParamPolynomial.constant(f.x_order, f.y_order, 1)

    base = []
    for j, g in enumerate(G):
        coeffs = tuple(one if i == j else zero for i in range(len(G)))
        base.append(_Tracked(g, zero, coeffs))
    h = _Tracked(f, one, tuple(zero for _ in G))

    T: list[_Tracked] = list(base)
    powers = [0] * len(G)

    steps = 0
    while True:
        steps += 1
        if steps > _STEP_GUARD:
            raise EngineError("division failed to terminate within the step guard")
        lh = lead_mod(h.poly, Q)
        if lh is None:
            break
        candidates = []
        for idx, t in enumerate(T):
            lt = lead_mod(t.poly, Q)
            if lt is None:
                continue
            if all(a <= b for a, b in zip(lt.exp, lh.exp)):
                candidates.append((lt.ecart, x_order.sort_key(lt.exp), idx, lt))
        if not candidates:
            break
        candidates.sort(key=lambda c: (c[0], c[1], c[2]))
        ecart_g, _, idx, lg = candidates[0]
        if ecart_g > lh.ecart:
            T.append(_Tracked(h.poly, h.unit, h.coeffs))
        shift = tuple(a - b for a, b in zip(lh.exp, lg.exp))
        g = T[idx]
        if idx < len(G):
            powers[idx] += 1
        h = _combine(h, g, lg.coeff, lh.coeff, shift)
        content = h.poly.content()
        lead_sign = 1
        if not h.poly.is_zero() and h.poly.terms[0][1].terms[0][1] < 0:
            lead_sign = -1
        if content != 1 or lead_sign < 0:
            h = _rescale(h, Fraction(1) / (content * lead_sign))

    remainder = h.poly
    # every step is an exact combination, so the residual q-part is zero
    cert = DivisionCertificate(
        unit=h.unit,
        divisors=G,
        quotients=tuple(-a for a in h.coeffs),
        q_part=ParamPolynomial.zero(f.x_order, f.y_order),
        remainder=remainder,
        divisor_powers=tuple(powers),
    )
    return remainder, cert


# ----- completion ---------------------------------------------------------------
def standard_mod(G, Q: ParamIdeal, track: bool = False):
    """Complete G to a set whose pairwise S-combinations reduce into the extension.

    Elements of G lying in the extension ideal are carried through untouched
    (they never serve as divisors and spawn no pairs).  New elements arise as
    normal forms of S-combinations; anything reducing into the extension is
    recorded on a side ledger instead of the basis.  With ``track``, exact
    representations of every output element over the input set are returned.
    """
    G = tuple(G)
    if not G:
        return () if not track else ((), ())
    x_order = G[0].x_order
    y_order = G[0].y_order
    zero = ParamPolynomial.zero(x_order, y_order)
    one = ParamPolynomial.constant(x_order, y_order, 1)

    basis: list[ParamPolynomial] = []
    reps: list[tuple[ParamPolynomial, ...]] = []
    leads: list[ModQLead | None] = []
    for j, g in enumerate(G):
        basis.append(g)
        reps.append(tuple(one if i == j else zero for i in range(len(G))))
        leads.append(lead_mod(g, Q))

    pairs = []
    seq = 0
    live = [i for i in range(len(basis)) if leads[i] is not None]
    for a in range(len(live)):
        for b in range(a):
            pairs.append((live[b], live[a], seq))
            seq += 1

    def gamma(i, j):
        return tuple(max(a, b) for a, b in zip(leads[i].exp, leads[j].exp))

    guard = 0
    while pairs:
        guard += 1
        if guard > 20000:
            raise EngineError("completion failed to terminate within the pair guard")
        pairs.sort(key=lambda t: (x_order.sort_key(gamma(t[0], t[1])), t[2]))
        i, j, _ = pairs.pop(0)
        s = s_poly_mod(basis[i], basis[j], Q)
        s_rep = tuple(
            a.mul_term(
                tuple(c - d for c, d in zip(gamma(i, j), leads[i].exp)), leads[j].coeff
            )
            - b.mul_term(
                tuple(c - d for c, d in zip(gamma(i, j), leads[j].exp)), leads[i].coeff
            )
            for a, b in zip(reps[i], reps[j])
        )
        divisors = [basis[k] for k in range(len(basis)) if leads[k] is not None]
        div_idx = [k for k in range(len(basis)) if leads[k] is not None]
        r, cert = nf_mora_mod(s, divisors, Q)
        if in_extension(r, Q):
            continue
        # r = u*s - sum quotients_k * divisor_k  (q_part stays in the extension)
        new_rep = tuple(cert.unit * a for a in s_rep)
        for qk, k in zip(cert.quotients, div_idx):
            if qk.is_zero():
                continue
            new_rep = tuple(a - qk * b for a, b in zip(new_rep, reps[k]))
        r_n, factor = r.primitive()
        new_rep = tuple(a.scale(Fraction(1) / factor) for a in new_rep)
        basis.append(r_n)
        reps.append(new_rep)
        leads.append(lead_mod(r_n, Q))
        k = len(basis) - 1
        for t in range(k):
            if leads[t] is not None:
                pairs.append((t, k, seq))
                seq += 1

    if track:
        return tuple(basis), tuple(reps)
    return tuple(basis)


def psb_mod(G, Q: ParamIdeal) -> tuple[tuple[ParamPolynomial, ...], tuple[Polynomial, ...]]:
    """Basis-with-leading-coefficients pair for the ideal generated by G, modulo Q.

    Returns (empty, empty) when every generator already lies in the
    extension ideal.  Otherwise the basis omits extension members and the
    second component collects each element's leading coefficient modulo Q,
    content-normalized, every one with a nonzero remainder modulo Q.
    """
    G = [g for g in G if not g.is_zero()]
    if not G or all(in_extension(g, Q) for g in G):
        return (), ()
    normalized = []
    for g in G:
        gn, _ = g.primitive()
        normalized.append(gn)
    completed = standard_mod(normalized, Q)
    out = []
    lcs = []
    seen = set()
    for g in completed:
        ld = lead_mod(g, Q)
        if ld is None:
            continue
        if g.token() in seen:
            continue
        seen.add(g.token())
        out.append(g)
        c, _ = ld.coeff.primitive()
        lcs.append(c)
    return tuple(out), tuple(lcs)
