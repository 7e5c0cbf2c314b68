"""Completion that tracks paired representatives through a block order.

Working in the flat ring Q[x, y] under the block order (x-order, y-order),
each basis element is carried together with a companion built from the same
division quotients; companions stay inside the ideal generated by the first
input family while element-minus-companion stays inside the second.  When
the x-order is not global, inputs are homogenized in the x-variables with
one fresh variable so that the block order becomes global, and both
components are dehomogenized at the end.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import EngineError
from .groebner import normal_form
from .orders import MonomialOrder, make_block, make_homogenizing
from .param_ring import ParamIdeal
from .parampoly import ParamPolynomial, flat_to_param, param_to_flat
from .poly import Polynomial, s_polynomial


@dataclass(frozen=True)
class PairedBasisElement:
    """A basis element of the sum ideal and its companion in the first ideal."""

    g_tilde: Polynomial
    g: Polynomial


def _tail_interreduce(elements: list[list[Polynomial]]) -> None:
    """Reduce every element's tail by all leading terms, keeping heads fixed.

    Mutates the [tilde, pair] entries in place; quotients are mirrored onto
    the companions so the pairing invariants survive.
    """
    for _round in range(50):
        changed = False
        for i, entry in enumerate(elements):
            tilde = entry[0]
            le, lc = tilde.lead()
            head = Polynomial(tilde.order, ((le, lc),))
            tail = tilde - head
            if tail.is_zero():
                continue
            r, quots = normal_form(tail, [e[0] for e in elements], with_quotients=True)
            if all(q.is_zero() for q in quots):
                continue
            new_tilde = head + r
            new_pair = entry[1]
            for q, other in zip(quots, elements):
                if not q.is_zero():
                    new_pair = new_pair - q * other[1]
            entry[0] = new_tilde
            entry[1] = new_pair
            changed = True
        if not changed:
            return
    raise EngineError("tail interreduction failed to stabilize")


def _normalize_entry(tilde: Polynomial, pair: Polynomial) -> tuple[Polynomial, Polynomial]:
    tilde_n, factor = tilde.primitive()
    if factor == 0:
        return tilde, pair
    return tilde_n, pair * (Fraction(1) / factor)


def _completion(seeds: list[tuple[Polynomial, Polynomial]], order: MonomialOrder):
    """Buchberger loop on the tilde components with mirrored companions."""
    elements: list[list[Polynomial]] = []
    for tilde, pair in seeds:
        if tilde.is_zero():
            continue
        tilde, pair = _normalize_entry(tilde, pair)
        elements.append([tilde, pair])
    import heapq

    def make_pair(i, j, seq):
        gamma = tuple(
            max(x, y) for x, y in zip(elements[i][0].lead()[0], elements[j][0].lead()[0])
        )
        return (order.sort_key(gamma), seq, i, j)

    pairs = []
    seq = 0
    for i in range(len(elements)):
        for j in range(i):
            pairs.append(make_pair(j, i, seq))
            seq += 1
    heapq.heapify(pairs)

    guard = 0
    while pairs:
        guard += 1
        if guard > 50000:
            raise EngineError("paired completion failed to terminate within the guard")
        _, _, i, j = heapq.heappop(pairs)
        fi, fj = elements[i], elements[j]
        (ei, ci), (ej, cj) = fi[0].lead(), fj[0].lead()
        gamma = tuple(max(x, y) for x, y in zip(ei, ej))
        if gamma == tuple(a + b for a, b in zip(ei, ej)):
            continue  # coprime leading terms reduce to zero
        s = s_polynomial(fi[0], fj[0])
        s_pair = fi[1].mul_term(tuple(g - e for g, e in zip(gamma, ei)), cj) - fj[1].mul_term(
            tuple(g - e for g, e in zip(gamma, ej)), ci
        )
        r, quots = normal_form(s, [e[0] for e in elements], with_quotients=True)
        if r.is_zero():
            continue
        r_pair = s_pair
        for q, other in zip(quots, elements):
            if not q.is_zero():
                r_pair = r_pair - q * other[1]
        r, r_pair = _normalize_entry(r, r_pair)
        elements.append([r, r_pair])
        k = len(elements) - 1
        for t in range(k):
            heapq.heappush(pairs, make_pair(t, k, seq))
            seq += 1

    elements = _minimalize(elements)
    _tail_interreduce(elements)
    for entry in elements:
        entry[0], entry[1] = _normalize_entry(entry[0], entry[1])
    return elements


def _minimalize(elements: list[list[Polynomial]]) -> list[list[Polynomial]]:
    """Keep only elements whose leading term no other kept lead divides.

    A minimal subset with the same leading-term cone is still a standard
    basis; earlier elements win ties so the result is deterministic.
    """
    by_lead = sorted(
        range(len(elements)),
        key=lambda i: (sum(elements[i][0].lead()[0]), i),
    )
    kept: list[int] = []
    for i in by_lead:
        li = elements[i][0].lead()[0]
        if not any(
            all(a <= b for a, b in zip(elements[j][0].lead()[0], li)) for j in kept
        ):
            kept.append(i)
    kept.sort()
    return [elements[i] for i in kept]


def modified_standard(
    G1,
    G2,
    nx: int,
    x_order: MonomialOrder,
    y_order: MonomialOrder,
) -> tuple[PairedBasisElement, ...]:
    """Standard basis of <G1 ∪ G2> under the block order, with companions.

    Inputs are flat polynomials in Q[x, y] (the first nx variables are x).
    Seeds pair every G1 element with itself and every G2 element with zero;
    companions of new elements are the same combinations applied to the
    companion column, so each companion lies in <G1> and differs from its
    element by a member of <G2>.
    """
    block = make_block(x_order, y_order)
    local = not x_order.is_global
    if local:
        hom_x = make_homogenizing(x_order)
        work_order = make_block(hom_x, y_order)
    else:
        work_order = block

    def lift(p: Polynomial, xdeg: int | None = None) -> Polynomial:
        p = p.with_order(block)
        if not local:
            return p.with_order(work_order)
        if p.is_zero():
            return Polynomial.zero(work_order)
        d = xdeg if xdeg is not None else max(sum(e[:nx]) for e, _ in p.terms)
        acc = {}
        for e, c in p.terms:
            xe, ye = e[:nx], e[nx:]
            acc[xe + (d - sum(xe),) + ye] = c
        return Polynomial.from_dict(work_order, acc)

    def drop(p: Polynomial) -> Polynomial:
        if not local:
            return p.with_order(block)
        acc: dict = {}
        for e, c in p.terms:
            ne = e[:nx] + e[nx + 1 :]
            acc[ne] = acc.get(ne, Fraction(0)) + c
        return Polynomial.from_dict(block, acc)

    seeds = []
    for g in G1:
        if g.is_zero():
            continue
        lg = lift(g)
        seeds.append((lg, lg))
    for q in G2:
        if q.is_zero():
            continue
        seeds.append((lift(q), Polynomial.zero(work_order)))

    elements = _completion(seeds, work_order)
    out = []
    for tilde, pair in elements:
        out.append(PairedBasisElement(drop(tilde), drop(pair)))
    return tuple(out)


def psb_mod_prime(
    G, Q: ParamIdeal
) -> tuple[tuple[ParamPolynomial, ...], tuple[Polynomial, ...]]:
    """Pseudo standard basis modulo Q through the paired-companion route.

    Same contract as the ecart-engine variant: (empty, empty) when all of G
    lies in the extension ideal, otherwise the companion polynomials that
    stay outside the extension, with their leading coefficients modulo Q.
    """
    from .mora import in_extension, lead_mod

    G = [g for g in G if not g.is_zero()]
    if not G or all(in_extension(g, Q) for g in G):
        return (), ()
    x_order = G[0].x_order
    y_order = G[0].y_order
    nx = x_order.nvars
    flat_G1 = [param_to_flat(g) for g in G]
    flat_G2 = [
        q.map_exponents(lambda e: (0,) * nx + e, make_block(x_order, y_order))
        for q in Q.groebner
    ]
    paired = modified_standard(flat_G1, flat_G2, nx, x_order, y_order)
    out = []
    lcs = []
    seen = set()
    for pb in paired:
        if pb.g.is_zero():
            continue
        g = flat_to_param(pb.g, nx, x_order, y_order)
        gn, _ = g.primitive()
        if gn.token() in seen:
            continue
        if in_extension(gn, Q):
            continue
        seen.add(gn.token())
        ld = lead_mod(gn, Q)
        out.append(gn)
        c, _ = ld.coeff.primitive()
        lcs.append(c)
    return tuple(out), tuple(lcs)
