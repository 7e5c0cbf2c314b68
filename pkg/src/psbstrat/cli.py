"""Command-line surface.

Subcommands: sb (classical standard/Groebner basis), psbmod (parametric
basis modulo an ideal of the parameter ring), stratify, hs-strat, hs-at,
bounds.  Flags beat config-file entries, which beat defaults.  Exit codes:
0 success, 2 parse error, 3 engine error, 4 size-cap error.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction

from .errors import EngineError, ParseError, SizeCapExceeded
from .hilbert import degree_bound, hs_count_bounds
from .hs_strat import HSResult, hs_at_point, hs_stratify
from .mora import lead_mod, psb_mod
from .modified import psb_mod_prime
from .orders import MonomialOrder, make_deglex, make_valuation_compatible
from .param_ring import ParamIdeal
from .parampoly import ParamPolynomial, flat_to_param, param_polynomial_str, taylor_shift
from .poly import Polynomial
from .stratify import comprehensive_basis, render_lines, strat_exp1, strat_exp2, stratum_record
from .textio import default_names, parse_polynomial, polynomial_str
from .groebner import groebner_basis
from .orders import make_block


@dataclass
class JobSpec:
    """Validated description of one CLI invocation."""

    command: str
    variables: tuple[str, ...] = ()
    parameters: tuple[str, ...] = ()
    order_spec: str = "valcomp"
    param_order_spec: str = "deglex-hi"
    engine: str = "modified"
    variant: str = "exp2"
    input_polynomials: tuple[str, ...] = ()
    q_generators: tuple[str, ...] = ()
    output_format: str = "text"
    r_max: int = 8
    shift: bool = False
    point: tuple[Fraction, ...] = ()
    n: int = 0
    d: int = 0
    comprehensive: bool = False


def _names_from(value: str | None, count: int | None, prefix: str) -> tuple[str, ...]:
    if value:
        names = tuple(s.strip() for s in value.split(",") if s.strip())
        if names:
            return names
    if count:
        return default_names(prefix, count)
    return ()


def _build_order(spec: str, n: int) -> MonomialOrder:
    if spec.startswith("matrix:"):
        rows = json.loads(spec[len("matrix:") :])
        return MonomialOrder(rows)
    if spec == "deglex":
        return make_deglex(n)
    if spec in ("deglex-hi", "deglex_high"):
        return make_deglex(n, prefer_high=True)
    if spec in ("valcomp", "valuation-compatible", "valuation_compatible"):
        return make_valuation_compatible(n)
    raise ParseError(f"unknown order spec {spec!r}")


def _fractions_csv(text: str) -> tuple[Fraction, ...]:
    out = []
    for chunk in text.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        out.append(Fraction(chunk))
    return tuple(out)


def _argparser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="psbstrat", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, params=True):
        p.add_argument("-n", "--nvars", type=int, help="number of main variables")
        p.add_argument("--vars", help="comma-separated main variable names")
        if params:
            p.add_argument("-m", "--nparams", type=int, help="number of parameters")
            p.add_argument("--params", help="comma-separated parameter names")
            p.add_argument("--param-order", dest="param_order")
        p.add_argument("--order", help="order on main variables")
        p.add_argument("--format", choices=("text", "json"), dest="output_format")
        p.add_argument("--config", help="JSON config file; flags take precedence")

    p = sub.add_parser("sb", help="standard or Groebner basis over the rationals")
    common(p, params=False)
    p.add_argument("polys", nargs="+")

    p = sub.add_parser("psbmod", help="parametric basis modulo a parameter ideal")
    common(p)
    p.add_argument("polys", nargs="+")
    p.add_argument("--q", help="comma-separated generators of the parameter ideal")
    p.add_argument("--shift", action="store_true", help="inputs are in x only; shift x -> x+y")
    p.add_argument("--engine", choices=("mora", "modified"))

    p = sub.add_parser("stratify", help="stratify parameter space by leading exponents")
    common(p)
    p.add_argument("polys", nargs="+")
    p.add_argument("--engine", choices=("mora", "modified"))
    p.add_argument("--variant", choices=("exp1", "exp2"))
    p.add_argument("--shift", action="store_true")
    p.add_argument("--comprehensive", action="store_true", help="also print the union basis")

    p = sub.add_parser("hs-strat", help="stratify affine space by the local counting function")
    common(p, params=False)
    p.add_argument("polys", nargs="+")
    p.add_argument("--engine", choices=("mora", "modified"))
    p.add_argument("--variant", choices=("exp1", "exp2"))
    p.add_argument("--rmax", type=int)

    p = sub.add_parser("hs-at", help="counting values of an ideal at one rational point")
    common(p, params=False)
    p.add_argument("polys", nargs="+")
    p.add_argument("--point", required=True, help="comma-separated rational coordinates")
    p.add_argument("--rmax", type=int)

    p = sub.add_parser("bounds", help="degree and counting bounds as exact integers")
    p.add_argument("-n", "--nvars", type=int, required=True)
    p.add_argument("-d", "--degree", type=int, required=True)
    p.add_argument("--format", choices=("text", "json"), dest="output_format")
    p.add_argument("--config", help="JSON config file; flags take precedence")

    return ap


def parse_job(argv, config: dict | None = None) -> JobSpec:
    """Parse arguments (plus optional config mapping) into a validated JobSpec."""
    ns = _argparser().parse_args(argv)
    cfg = dict(config or {})
    if getattr(ns, "config", None):
        with open(ns.config, "r", encoding="utf-8") as fh:
            file_cfg = json.load(fh)
        for k, v in file_cfg.items():
            cfg.setdefault(k, v)

    def pick(attr, default, cfg_key=None):
        v = getattr(ns, attr, None)
        if v is not None and v is not False:
            return v
        if (cfg_key or attr) in cfg:
            return cfg[cfg_key or attr]
        return default

    command = ns.command
    spec = JobSpec(command=command)
    spec.output_format = pick("output_format", "text")

    if command == "bounds":
        spec.n = ns.nvars
        spec.d = ns.degree
        if spec.n < 1 or spec.d < 1:
            raise ParseError("bounds requires positive -n and -d")
        return spec

    polys = tuple(ns.polys)
    nvars = pick("nvars", None)
    varnames = _names_from(pick("vars", None), nvars, "x")
    if not varnames:
        raise ParseError("main variables undeclared: pass -n or --vars")
    spec.variables = varnames
    n = len(varnames)
    spec.order_spec = pick("order", "valcomp" if command in ("hs-strat", "hs-at") else None) or (
        "deglex" if command == "sb" else "valcomp"
    )
    spec.input_polynomials = polys
    spec.r_max = int(pick("rmax", 8))
    if spec.r_max < 0:
        raise ParseError("--rmax must be non-negative")

    if command in ("hs-strat", "hs-at"):
        spec.parameters = default_names("y", n)
        spec.engine = pick("engine", "modified")
        spec.variant = pick("variant", "exp2")
        if command == "hs-at":
            spec.point = _fractions_csv(ns.point)
            if len(spec.point) != n:
                raise ParseError(
                    f"point has {len(spec.point)} coordinates for {n} variables"
                )
        return spec

    if command == "sb":
        spec.parameters = ()
        return spec

    # psbmod / stratify
    spec.shift = bool(pick("shift", False))
    spec.engine = pick("engine", "mora" if command == "stratify" else "modified")
    spec.variant = pick("variant", "exp2")
    spec.comprehensive = bool(getattr(ns, "comprehensive", False))
    if spec.shift:
        spec.parameters = default_names("y", n)
    else:
        nparams = pick("nparams", None)
        spec.parameters = _names_from(pick("params", None), nparams, "y")
        if not spec.parameters and command == "stratify":
            raise ParseError("stratify requires parameters: pass -m/--params or --shift")
    spec.param_order_spec = pick("param_order", "deglex-hi")
    q = pick("q", None)
    if q:
        spec.q_generators = tuple(s.strip() for s in q.split(",") if s.strip())
    return spec


def _parse_inputs(spec: JobSpec):
    n = len(spec.variables)
    m = len(spec.parameters)
    x_order = _build_order(spec.order_spec, n)
    y_order = _build_order(spec.param_order_spec, m) if m else make_deglex(0)
    if spec.shift:
        plain = [parse_polynomial(s, spec.variables, x_order) for s in spec.input_polynomials]
        gens = [taylor_shift(f, y_order) for f in plain]
    else:
        names = spec.variables + spec.parameters
        flat_order = make_block(x_order, y_order) if m else x_order
        flats = [parse_polynomial(s, names, flat_order) for s in spec.input_polynomials]
        gens = [flat_to_param(p, n, x_order, y_order) for p in flats]
    qgens = [parse_polynomial(s, spec.parameters, y_order) for s in spec.q_generators]
    return x_order, y_order, gens, ParamIdeal(qgens, y_order)


def run_job(spec: JobSpec) -> tuple[int, str]:
    """Execute a JobSpec; deterministic output for a fixed spec."""
    if spec.command == "bounds":
        if hasattr(sys, "set_int_max_str_digits"):
            # counts are printed as full decimal strings, never truncated
            sys.set_int_max_str_digits(2_000_000)
        D = degree_bound(spec.n, spec.d)
        hp, hf = hs_count_bounds(spec.n, spec.d)
        if spec.output_format == "json":
            return 0, json.dumps(
                {"degree_bound": str(D), "hp_count": str(hp), "hf_count": str(hf)},
                sort_keys=True,
            )
        return 0, f"degree_bound = {D}\nhp_count = {hp}\nhf_count = {hf}"

    if spec.command == "sb":
        n = len(spec.variables)
        x_order = _build_order(spec.order_spec, n)
        polys = [parse_polynomial(s, spec.variables, x_order) for s in spec.input_polynomials]
        if x_order.is_global:
            basis = groebner_basis(polys, x_order)
        else:
            from .mora import psb_mod as _psb

            y0 = make_deglex(0)
            params = [
                ParamPolynomial.from_dict(
                    x_order, y0, {e: Polynomial.constant(y0, c) for e, c in p.terms}
                )
                for p in polys
                if not p.is_zero()
            ]
            b, _ = _psb(params, ParamIdeal.zero(y0))
            basis = [pp.specialize(()) for pp in b]
        out_polys = [polynomial_str(b, spec.variables) for b in basis]
        exps = [list(b.lead()[0]) for b in basis]
        if spec.output_format == "json":
            return 0, json.dumps(
                {"basis": out_polys, "leading_exponents": exps}, sort_keys=True
            )
        return 0, "\n".join(out_polys)

    x_order, y_order, gens, Q = _parse_inputs(spec)

    if spec.command == "psbmod":
        fn = psb_mod if spec.engine == "mora" else psb_mod_prime
        basis, lcs = fn(gens, Q)
        records = {
            "basis": [param_polynomial_str(g, spec.variables, spec.parameters) for g in basis],
            "lead_coefficients": [polynomial_str(c, spec.parameters) for c in lcs],
            "leading_exponents": [list(lead_mod(g, Q).exp) for g in basis],
            "in_ideal": not basis,
        }
        if spec.output_format == "json":
            return 0, json.dumps(records, sort_keys=True)
        if not basis:
            return 0, "all generators lie in the extension of the parameter ideal"
        lines = [
            f"g{i + 1}: {b}   lead exp {e}   lead coeff {c}"
            for i, (b, e, c) in enumerate(
                zip(records["basis"], records["leading_exponents"], records["lead_coefficients"])
            )
        ]
        return 0, "\n".join(lines)

    if spec.command == "stratify":
        runner = strat_exp2 if spec.variant == "exp2" else strat_exp1
        result = runner(gens, y_order=y_order, engine=spec.engine)
        strata = result.canonical_strata()
        records = {
            "strata": [stratum_record(st, spec.parameters, spec.variables) for st in strata],
            "vanishing_ideal": [
                polynomial_str(g, spec.parameters) for g in result.vanishing_ideal.groebner
            ],
        }
        if spec.comprehensive:
            records["comprehensive_basis"] = [
                param_polynomial_str(g, spec.variables, spec.parameters)
                for g in comprehensive_basis(result)
            ]
        if spec.output_format == "json":
            return 0, json.dumps(records, sort_keys=True)
        lines = render_lines(result, spec.parameters)
        lines.append(
            "vanishing ideal: ["
            + ",".join(polynomial_str(g, spec.parameters) for g in result.vanishing_ideal.groebner)
            + "]"
        )
        if spec.comprehensive:
            lines.append("comprehensive basis:")
            lines.extend(records["comprehensive_basis"])
        return 0, "\n".join(lines)

    if spec.command == "hs-strat":
        n = len(spec.variables)
        x_order = _build_order(spec.order_spec, n)
        polys = [parse_polynomial(s, spec.variables, x_order) for s in spec.input_polynomials]
        res = hs_stratify(polys, r_max=spec.r_max, engine=spec.engine, variant=spec.variant)
        return 0, _format_hs(res, spec)

    if spec.command == "hs-at":
        n = len(spec.variables)
        x_order = _build_order(spec.order_spec, n)
        polys = [parse_polynomial(s, spec.variables, x_order) for s in spec.input_polynomials]
        values = hs_at_point(polys, spec.point, r_max=spec.r_max)
        if spec.output_format == "json":
            return 0, json.dumps({"values": list(values)}, sort_keys=True)
        return 0, " ".join(map(str, values))

    raise EngineError(f"unhandled command {spec.command!r}")


def _format_hs(res: HSResult, spec: JobSpec) -> str:
    # the parameter space is the original affine space: render with x names
    display = spec.variables
    if spec.output_format == "json":
        payload = {
            "regions": [
                stratum_record(st, display, spec.variables)
                for st in res.raw.canonical_strata()
            ],
            "merged": [
                {
                    "staircase_generators": [list(g) for g in h.staircase.generators],
                    "hs_values": list(h.hs_values),
                    "hs_polynomial": [str(c) for c in h.hs_polynomial.coefficients],
                    "stability_threshold": h.hs_polynomial.stability_threshold,
                    "regions": [
                        stratum_record(st, display, spec.variables) for st in h.regions
                    ],
                }
                for h in res.strata
            ],
            "r_max": res.r_max,
        }
        return json.dumps(payload, sort_keys=True)
    lines = list(res.region_lines(display))
    lines.append("")
    for i, h in enumerate(res.strata):
        gens = ",".join("(" + ",".join(map(str, g)) + ")" for g in h.staircase.generators)
        vals = " ".join(map(str, h.hs_values))
        poly = " + ".join(
            f"{c}*r^{k}" if k else f"{c}"
            for k, c in enumerate(h.hs_polynomial.coefficients)
            if c != 0
        ) or "0"
        lines.append(f"stratum {i + 1}: staircase <{gens}>")
        lines.append(f"  values r=0..{res.r_max}: {vals}")
        lines.append(f"  polynomial: {poly} (exact for r >= {h.hs_polynomial.stability_threshold})")
        for st in h.regions:
            from .stratify import render_stratum_line

            lines.append("  region " + render_stratum_line(st, display))
    return "\n".join(lines)


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        spec = parse_job(argv)
        code, output = run_job(spec)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except SizeCapExceeded as exc:
        print(f"size cap exceeded: {exc}", file=sys.stderr)
        return 4
    except EngineError as exc:
        print(f"engine error: {exc}", file=sys.stderr)
        return 3
    print(output)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
