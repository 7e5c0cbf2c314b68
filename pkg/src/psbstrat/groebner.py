"""Classical Buchberger completion for global orders over the rationals.

Used for parameter-ring ideal arithmetic and for the paired-representative
engine; deliberately plain (normal pair selection plus the product
criterion), which is ample at the input sizes this package targets.
"""
from __future__ import annotations

import heapq
from fractions import Fraction

from .errors import EngineError
from .orders import MonomialOrder
from .poly import Polynomial, s_polynomial


def _divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def normal_form(p: Polynomial, basis, with_quotients: bool = False):
    """Full reduction of ``p`` by ``basis`` under p's (global) order.

    With ``with_quotients`` also returns q_i with p = sum q_i b_i + r.
    Works on a mutable exponent map with a lazily-pruned heap of candidate
    leading exponents; every new exponent a reduction step introduces lies
    strictly below the cancelled one, so exponents settled into the
    remainder never reappear.
    """
    order = p.order
    key = order.sort_key
    quots: list[dict] | None = [{} for _ in basis] if with_quotients else None
    leads = [b.terms[0] for b in basis]
    work: dict = dict(p.terms)
    heap = [(tuple(-v for v in key(e)), e) for e in work]
    heapq.heapify(heap)
    rem: dict = {}
    while heap:
        _, exp = heapq.heappop(heap)
        c = work.get(exp)
        if not c:
            continue
        hit = None
        for i, (le, lc) in enumerate(leads):
            ok = True
            for a, b in zip(le, exp):
                if a > b:
                    ok = False
                    break
            if ok:
                hit = (i, le, lc)
                break
        if hit is None:
            rem[exp] = c
            del work[exp]
            continue
        i, le, lc = hit
        shift = tuple(a - b for a, b in zip(exp, le))
        factor = c / lc
        if with_quotients:
            quots[i][shift] = quots[i].get(shift, Fraction(0)) + factor
        del work[exp]
        for be, bc in basis[i].terms[1:]:
            ne = tuple(a + b for a, b in zip(be, shift))
            prev = work.get(ne)
            if prev is None:
                work[ne] = -factor * bc
                heapq.heappush(heap, (tuple(-v for v in key(ne)), ne))
            else:
                nv = prev - factor * bc
                if nv:
                    work[ne] = nv
                else:
                    del work[ne]
    r = Polynomial.from_dict(order, rem)
    if with_quotients:
        return r, [Polynomial.from_dict(order, q) for q in quots]
    return r


def buchberger(gens, order: MonomialOrder) -> list[Polynomial]:
    """Completion returning a (non-reduced) basis; requires a global order."""
    if not order.is_global:
        raise EngineError("Buchberger completion requires a global order")
    basis = [g.with_order(order) for g in gens if not g.is_zero()]
    if not basis:
        return []

    def make_pair(i, j, seq):
        gamma = tuple(max(a, b) for a, b in zip(basis[i].lead()[0], basis[j].lead()[0]))
        return (order.sort_key(gamma), seq, i, j)

    pairs = []
    seq = 0
    for i in range(len(basis)):
        for j in range(i):
            pairs.append(make_pair(j, i, seq))
            seq += 1
    heapq.heapify(pairs)

    guard = 0
    while pairs:
        guard += 1
        if guard > 100000:
            raise EngineError("completion failed to terminate within the step guard")
        _, _, i, j = heapq.heappop(pairs)
        ei, ej = basis[i].lead()[0], basis[j].lead()[0]
        gamma = tuple(max(a, b) for a, b in zip(ei, ej))
        if gamma == tuple(a + b for a, b in zip(ei, ej)):
            continue  # product criterion: coprime leading terms
        s = s_polynomial(basis[i], basis[j])
        r = normal_form(s, basis)
        if not r.is_zero():
            r, _ = r.primitive()
            basis.append(r)
            k = len(basis) - 1
            for t in range(k):
                heapq.heappush(pairs, make_pair(t, k, seq))
                seq += 1
    return basis


def minimalize(basis) -> list[Polynomial]:
    """Drop elements whose leading term another element's leading term divides."""
    out = []
    items = sorted(basis, key=lambda b: (b.order.sort_key(b.lead()[0]), b.token()))
    for b in items:
        if not any(_divides(o.lead()[0], b.lead()[0]) for o in out):
            out.append(b)
    return out


def interreduce(basis) -> list[Polynomial]:
    """Tail-reduce every element against the others; canonical scaling."""
    out = list(basis)
    changed = True
    rounds = 0
    while changed:
        changed = False
        rounds += 1
        if rounds > 100:
            raise EngineError("interreduction failed to stabilize")
        for i in range(len(out)):
            others = out[:i] + out[i + 1 :]
            r = normal_form(out[i], others)
            if r.is_zero():
                continue
            r, _ = r.primitive()
            if r != out[i]:
                out[i] = r
                changed = True
    return [b for b in out if not b.is_zero()]


def groebner_basis(gens, order: MonomialOrder) -> tuple[Polynomial, ...]:
    """Reduced basis, made integral, content-free and lead-positive; canonical."""
    basis = buchberger(gens, order)
    basis = interreduce(minimalize(basis))
    basis.sort(key=lambda b: order.sort_key(b.lead()[0]))
    return tuple(basis)
