"""Stratification of parameter space by constant leading-exponent sets.

A worklist of parameter-ring ideals starts at the zero ideal.  For each
ideal Q either the input still contributes outside the extension ideal, in
which case a stratum (Q, h-factors, basis) is recorded and one branch
Q + <factor> is enqueued per leading-coefficient factor, or every input
coefficient lies in Q, in which case Q is intersected into the vanishing
ideal.  The pruned variant suppresses strata that are empty as
constructible sets (factor product inside the radical) but still enqueues
every branch: a branch whose factor lies in the radical does not shrink the
variety, yet strictly grows the ideal, and dropping it would leave the
deeper special loci uncovered.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import EngineError
from .hilbert import Staircase
from .mora import lead_mod, psb_mod
from .modified import psb_mod_prime
from .orders import MonomialOrder
from .param_ring import ParamIdeal, in_radical, is_member
from .parampoly import ParamPolynomial
from .poly import Polynomial, squarefree_part


@dataclass(frozen=True)
class Stratum:
    """A constructible set V(Q) minus V(prod h_factors) with its basis data."""

    Q: ParamIdeal
    h_factors: tuple[Polynomial, ...]
    basis: tuple[ParamPolynomial, ...]
    exponents: tuple[tuple[int, ...], ...]
    staircase: Staircase

    def h_product(self) -> Polynomial:
        out = Polynomial.constant(self.Q.order, 1)
        for f in self.h_factors:
            out = out * f
        return out

    def contains_point(self, point) -> bool:
        """Membership of a rational parameter point in the constructible set."""
        if any(g.evaluate(point) != 0 for g in self.Q.groebner):
            return False
        return self.h_product().evaluate(point) != 0

    def canonical_key(self):
        return (
            tuple(g.token() for g in self.Q.groebner),
            tuple(sorted(f.token() for f in self.h_factors)),
            self.staircase.generators,
        )


@dataclass
class StratificationResult:
    strata: tuple[Stratum, ...]
    vanishing_ideal: ParamIdeal
    x_order: MonomialOrder
    y_order: MonomialOrder
    branch_count: int

    def canonical_strata(self) -> tuple[Stratum, ...]:
        """Duplicates merged, sorted by (ideal basis, factors, staircase)."""
        seen = {}
        for st in self.strata:
            seen.setdefault(st.canonical_key(), st)
        return tuple(seen[k] for k in sorted(seen))


def _canonical_factors(lcs, Q: ParamIdeal) -> tuple[Polynomial, ...]:
    """Squarefree, content-free, sign-normalized factors of the leading
    coefficients reduced modulo Q; units dropped, duplicates merged."""
    out = []
    seen = set()
    for c in lcs:
        r = Q.normal_form(c)
        if r.is_zero():
            raise EngineError("leading coefficient reduced to zero modulo the stratum ideal")
        if r.is_constant():
            continue
        f = squarefree_part(r)
        if f.is_constant():
            continue
        if f.token() in seen:
            continue
        seen.add(f.token())
        out.append(f)
    out.sort(key=lambda p: (Q.order.sort_key(p.lead()[0]), p.token()))
    return tuple(out)


_RADICAL_CACHE: dict = {}


def _curate_basis(basis, lcs, Q: ParamIdeal):
    """Trim a computed basis to the elements the stratum actually needs.

    Keeps elements whose leading exponent is a minimal staircase generator
    (any subset covering the staircase is still a basis of the same
    leading-exponent set), then removes elements dominated by another:
    same-or-dividing exponent and a lead coefficient that vanishes on no
    less of V(Q), strictly more in one direction so the relation is a
    strict partial order.  Dropping such elements only enlarges the
    certified constructible set.
    """
    exps = [lead_mod(g, Q).exp for g in basis]
    stair = Staircase.from_exponents(len(exps[0]), exps)
    keep = [i for i, e in enumerate(exps) if e in stair.generators]
    nfs = {i: Q.normal_form(lcs[i]) for i in keep}

    # identical (exponent, reduced coefficient) entries are plain duplicates
    seen: dict = {}
    uniq = []
    for i in keep:
        key = (exps[i], nfs[i].token())
        if key not in seen:
            seen[key] = i
            uniq.append(i)
    keep = uniq

    def vanishes_within(i, j) -> bool:
        # does lc_i vanish wherever both Q and lc_j vanish?
        ck = (nfs[i].token(), nfs[j].token(), Q.key())
        hit = _RADICAL_CACHE.get(ck)
        if hit is None:
            hit = in_radical(nfs[i], Q.plus((nfs[j],)))
            _RADICAL_CACHE[ck] = hit
        return hit

    def dominated(i, j) -> bool:
        if i == j:
            return False
        if not all(a <= b for a, b in zip(exps[j], exps[i])):
            return False
        return vanishes_within(i, j) and not vanishes_within(j, i)

    kept = [i for i in keep if not any(dominated(i, j) for j in keep)]
    return [basis[i] for i in kept], [lcs[i] for i in kept]


def _branch_factors(factors) -> list[Polynomial]:
    """Split each stored factor into variable parts and the cofactor.

    A factor equal to (prod y_i^{e_i}) * rest branches as the separate
    variables and rest; the union of their zero sets is exactly the factor's
    zero set, so the cover is unchanged while branch ideals stay small.
    """
    out = []
    seen = set()
    for f in factors:
        m = f.nvars
        mins = [min(e[i] for e, _ in f.terms) for i in range(m)]
        pieces = []
        for i, mn in enumerate(mins):
            if mn > 0:
                pieces.append(Polynomial.variable(f.order, i))
        strip = f.map_exponents(
            lambda e: tuple(v - mn for v, mn in zip(e, mins)), f.order
        )
        strip, _ = strip.primitive()
        if not strip.is_constant():
            pieces.append(strip)
        if not pieces:
            pieces = [f]
        for p in pieces:
            if p.token() not in seen:
                seen.add(p.token())
                out.append(p)
    return out


def _engine_fn(engine: str):
    if engine == "mora":
        return psb_mod
    if engine == "modified":
        return psb_mod_prime
    raise ValueError(f"unknown engine {engine!r}")


def _run(G, y_order: MonomialOrder, engine: str, prune: bool) -> StratificationResult:
    G = tuple(G)
    if not G:
        raise EngineError("empty generator set")
    x_order = G[0].x_order
    compute = _engine_fn(engine)

    unit_ideal = ParamIdeal((Polynomial.constant(y_order, 1),), y_order)
    vanishing = unit_ideal
    strata: list[Stratum] = []
    queue: list[ParamIdeal] = [ParamIdeal.zero(y_order)]
    seen_ideals = {queue[0].key()}
    branch_count = 0

    from .param_ring import ideal_intersect

    while queue:
        Q = queue.pop(0)
        branch_count += 1
        if branch_count > 10000:
            raise EngineError("stratification failed to terminate within the branch guard")
        basis, lcs = compute(G, Q)
        if not basis:
            vanishing = ideal_intersect(vanishing, Q)
            continue
        basis, lcs = _curate_basis(basis, lcs, Q)
        factors = _canonical_factors(lcs, Q)
        exps = tuple(lead_mod(g, Q).exp for g in basis)
        stair = Staircase.from_exponents(x_order.nvars, exps)
        stratum = Stratum(Q, factors, tuple(basis), exps, stair)
        emit = True
        if prune and factors:
            emit = not in_radical(stratum.h_product(), Q)
        if emit:
            strata.append(stratum)
        for f in _branch_factors(factors):
            if is_member(f, Q):
                raise EngineError("branch factor fails the strict-growth check")
            nxt = Q.plus((f,))
            key = nxt.key()
            if key in seen_ideals:
                continue
            seen_ideals.add(key)
            queue.append(nxt)

    return StratificationResult(tuple(strata), vanishing, x_order, y_order, branch_count)


def strat_exp1(G, y_order: MonomialOrder | None = None, engine: str = "mora") -> StratificationResult:
    """Full stratification; every computed triple is emitted, including
    triples that are empty as constructible sets."""
    if y_order is None:
        y_order = G[0].y_order
    return _run(G, y_order, engine, prune=False)


def strat_exp2(G, y_order: MonomialOrder | None = None, engine: str = "mora") -> StratificationResult:
    """Stratification with empty constructible sets suppressed via radical
    membership of the factor product; covering is preserved because all
    branches are still explored."""
    if y_order is None:
        y_order = G[0].y_order
    return _run(G, y_order, engine, prune=True)


def comprehensive_basis(result: StratificationResult) -> tuple[ParamPolynomial, ...]:
    """Union of all strata bases, deduplicated canonically.

    Specializes to a standard basis at every parameter point where the
    input ideal does not collapse to zero.
    """
    seen = {}
    for st in result.strata:
        for g in st.basis:
            gn, _ = g.primitive()
            seen.setdefault(gn.token(), gn)
    return tuple(seen[k] for k in sorted(seen))


# ----- program-style text rendering -------------------------------------------
def render_stratum_line(st: Stratum, ynames) -> str:
    """One-line record [[exps],[ideal],[factors]] in the program output style."""
    from .textio import polynomial_str

    exps = ",".join("(1)*<<" + ",".join(map(str, e)) + ">>" for e in st.exponents)
    if st.Q.is_zero_ideal():
        qpart = "0"
    else:
        qpart = ",".join(polynomial_str(g, ynames) for g in st.Q.groebner)
    if st.h_factors:
        hpart = ",".join(polynomial_str(f, ynames) for f in st.h_factors)
    else:
        hpart = "1"
    return f"[[{exps}],[{qpart}],[{hpart}]]"


def render_lines(result: StratificationResult, ynames) -> list[str]:
    return [render_stratum_line(st, ynames) for st in result.canonical_strata()]


def stratum_record(st: Stratum, ynames, xnames=None) -> dict:
    """Structured record with the documented field names."""
    from .parampoly import param_polynomial_str
    from .textio import default_names, polynomial_str

    xnames = xnames or default_names("x", st.staircase.nvars)
    return {
        "staircase_generators": [list(e) for e in st.staircase.generators],
        "Q_generators": [polynomial_str(g, ynames) for g in st.Q.groebner],
        "h_factors": [polynomial_str(f, ynames) for f in st.h_factors],
        "basis": [param_polynomial_str(g, xnames, ynames) for g in st.basis],
    }
