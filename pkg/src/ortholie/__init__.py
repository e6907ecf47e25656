"""Hermite, Laguerre and Legendre bases as representations of h(1) and su(1,1)."""

from .coherent import (
    CoherentParameter,
    coherent_closed_form,
    coherent_coefficients,
    coherent_eval,
    hyperboloid_to_disk,
    tail_bound,
)
from .families import (
    FAMILIES,
    HERMITE,
    LAGUERRE,
    LEGENDRE,
    FamilyTag,
    GridSamples,
    eval_basis,
    eval_basis_derivative,
    eval_raw,
    get_family,
)
from .ladder import (
    CoefficientVector,
    LadderOperator,
    apply,
    basis_vector,
    casimir_apply,
    commutator_defect,
    differential_ladder_eval,
    ode_residual,
)
from .quadrature import QuadratureRule, gauss_rule
from .transform import analyze, analyze_samples, parseval_residual, synthesize

__version__ = "0.1.0"
