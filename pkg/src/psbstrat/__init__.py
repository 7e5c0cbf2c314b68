"""Exact parametric standard bases and Hilbert-Samuel stratifications over Q."""

from .errors import (
    DegreeError,
    DimensionMismatch,
    EngineError,
    ExponentOverflow,
    ParseError,
    RankDeficientOrder,
    SizeCapExceeded,
    UndefinedLead,
)
from .hilbert import (
    NumericalPolynomial,
    Staircase,
    affine_hilbert_poly,
    binomial,
    degree_bound,
    hilbert_function_increment,
    hs_count_bounds,
    hs_function,
)
from .hs_strat import (
    HSResult,
    HSStratum,
    classical_staircase,
    hs_at_point,
    hs_stratify,
    sample_stratum_points,
)
from .modified import PairedBasisElement, modified_standard, psb_mod_prime
from .mora import (
    DivisionCertificate,
    ModQLead,
    in_extension,
    lead_mod,
    nf_mora_mod,
    psb_mod,
    s_poly_mod,
    standard_mod,
)
from .orders import (
    MonomialOrder,
    compare_monomials,
    make_block,
    make_deglex,
    make_homogenizing,
    make_order,
    make_valuation_compatible,
)
from .param_ring import (
    ParamIdeal,
    coeff_normal_form,
    default_param_order,
    groebner_y,
    ideal_intersect,
    in_radical,
    is_member,
)
from .parampoly import ParamPolynomial, flat_to_param, param_to_flat, taylor_shift
from .poly import (
    LeadData,
    Polynomial,
    dehomogenize,
    homogenize,
    is_homogeneous,
    leading_data,
    poly_gcd,
    s_polynomial,
    squarefree_part,
)
from .stratify import (
    StratificationResult,
    Stratum,
    comprehensive_basis,
    strat_exp1,
    strat_exp2,
)
from .textio import default_names, parse_polynomial, polynomial_str

__version__ = "0.1.0"
