"""Exact construction and verification of symmetric four-directional pseudo-spline subdivision schemes."""

from .analysis import (
    DegreeReport,
    InvalidSchemeError,
    SupportInfo,
    SupportOctagon,
    analyze,
    check_convergence_necessary,
    check_interpolatory,
    check_symmetry,
    cubic_example_check,
    generation_degree,
    predicted_support,
    reproduction_degree,
    support_of,
)
from .engine import GridFunction, WindowExhaustedError, basic_limit, reproduce_empirically, subdivide_step
from .laurent import BivariateLaurent, DomainError, UnivariateLaurent, lift
from .mask import MaskMatrix, symbol_to_mask
from .symbols import (
    SchemeSymbol,
    UnsupportedParametersError,
    coefficient,
    make_b,
    make_box_symbol,
    make_d,
    make_delta,
    make_e,
    make_example_amu,
    make_fourdir_box,
    make_interpolatory,
    make_pi_power,
    make_pseudospline,
    make_sigma,
    make_tensor_pseudospline,
    make_univariate_pseudospline,
    make_univariate_pseudospline_alt,
    make_variant,
)

__version__ = "0.1.0"
