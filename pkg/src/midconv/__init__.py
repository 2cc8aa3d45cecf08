"""Middle-convolution calculus for spectral types of Fuchsian systems."""

from .spectype import (
    SpectralType,
    SpectralTypeError,
    canonicalize,
    dominance_leq,
    gcd_of,
    idx,
    parse,
    pidx,
    scale_add,
    to_text,
    unit_at,
)
from .rootlattice import (
    RootClass,
    RootVector,
    classify_root,
    inner,
    reflect,
    reflect_by,
    root_of,
    star_norm,
    tuple_of,
)
from .paramform import ParamForm
from .katz import (
    Classification,
    ReductionTrace,
    Scheme,
    Verdict,
    WellDefinednessViolation,
    classify,
    d_ell,
    ds_existence,
    nilpotent_realizable,
    partial_ell,
    partial_max,
    reduce,
    reflect_by_rigid,
    special_family,
)
from .enumeration import EnumerationReport, count_table, enumerate_basic, enumerate_rigid
from .linalg import RationalMatrix
from .matrixmc import (
    MatrixTuple,
    addition,
    centralizer_dim,
    check_mc_assumptions,
    construct_rigid,
    convolution,
    middle_convolution,
    normal_form,
    orbit_dims,
    spectral_data_of,
)
from .connection import (
    GammaFormula,
    RiemannScheme,
    connection_formula,
    evaluate,
    fuchs_value,
    rigid_decompositions,
    series_limit_oracle,
)
from .diagram import render_diagram, render_dot

__version__ = "0.1.0"
