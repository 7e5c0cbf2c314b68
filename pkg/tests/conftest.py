from __future__ import annotations

import re
from pathlib import Path

import pytest

from psbstrat import (
    ParamIdeal,
    default_names,
    hs_stratify,
    make_valuation_compatible,
    parse_polynomial,
    squarefree_part,
)

GOLDEN_DIR = Path(__file__).parent / "golden"

FIXTURE_POLYS = {
    "cusp": (2, ["x1^2+x2^3"]),
    "quartic_mixed": (3, ["x1^4+x2^4+x3*x1^2*x2"]),
    "quartic_node": (3, ["x1^4+x2^4+x3*x1*x2"]),
    "pair": (3, ["x1-x2", "x1*(x2^2+x3^3)"]),
}


def build_inputs(name):
    n, texts = FIXTURE_POLYS[name]
    order = make_valuation_compatible(n)
    names = default_names("x", n)
    polys = [parse_polynomial(t, names, order) for t in texts]
    return n, order, names, polys


@pytest.fixture(scope="session")
def cusp_result():
    _, _, _, polys = build_inputs("cusp")
    return hs_stratify(polys, r_max=8)


@pytest.fixture(scope="session")
def quartic_mixed_result():
    _, _, _, polys = build_inputs("quartic_mixed")
    return hs_stratify(polys, r_max=8)


@pytest.fixture(scope="session")
def quartic_node_result():
    _, _, _, polys = build_inputs("quartic_node")
    return hs_stratify(polys, r_max=8)


@pytest.fixture(scope="session")
def pair_result():
    _, _, _, polys = build_inputs("pair")
    return hs_stratify(polys, r_max=8)


@pytest.fixture(scope="session")
def all_fixture_results(cusp_result, quartic_mixed_result, quartic_node_result, pair_result):
    return {
        "cusp": cusp_result,
        "quartic_mixed": quartic_mixed_result,
        "quartic_node": quartic_node_result,
        "pair": pair_result,
    }


# ----- golden file handling ---------------------------------------------------
_LINE_RE = re.compile(r"\[\[(.*?)\],\[(.*?)\],\[(.*?)\]\]")
_EXP_RE = re.compile(r"\(1\)\*<<([0-9,]*)>>")


def parse_golden(name: str, n: int):
    """Parse a transcribed program-output file into raw (exps, Q, H) triples."""
    text = GOLDEN_DIR.joinpath(name + ".txt").read_text().strip()
    body = text.strip()
    if body.startswith("[[["):
        body = body[1:-1]
    lines = []
    for m in _LINE_RE.finditer(body):
        exps = [
            tuple(int(v) for v in g.split(",")) for g in _EXP_RE.findall(m.group(1))
        ]
        q_part = m.group(2)
        h_part = m.group(3)
        lines.append((exps, _split_tops(q_part), _split_tops(h_part)))
    return lines


def _split_tops(text: str):
    return [chunk for chunk in text.split(",") if chunk]


def canonical_triple(exps, q_texts, h_texts, n, y_order):
    """Canonical comparable key for a stratum from either side.

    Staircase generators are minimized, the ideal is replaced by its reduced
    basis, and factor entries by the squarefree part of their remainder
    modulo the ideal, units dropped.
    """
    from psbstrat import Staircase

    names = default_names("x", n)  # golden files use the x names for parameters
    qpolys = []
    for t in q_texts:
        p = parse_polynomial(t, names, y_order)
        if not p.is_zero():
            qpolys.append(p)
    Q = ParamIdeal(qpolys, y_order)
    factors = set()
    for t in h_texts:
        p = parse_polynomial(t, names, y_order)
        r = Q.normal_form(p)
        if r.is_zero() or r.is_constant():
            continue
        f = squarefree_part(r)
        if not f.is_constant():
            factors.add(f.token())
    stair = Staircase.from_exponents(n, exps)
    return (
        tuple(g.token() for g in Q.groebner),
        tuple(sorted(factors)),
        stair.generators,
    )


def stratum_triple(st):
    """Same canonical key computed from an engine stratum."""
    return (
        tuple(g.token() for g in st.Q.groebner),
        tuple(sorted(f.token() for f in st.h_factors)),
        st.staircase.generators,
    )
