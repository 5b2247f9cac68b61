"""Exact decomposition of metapolynomials and projection of their circuits.

Metapolynomials are polynomials in the coefficients c_mu of a homogeneous
degree-d polynomial in k variables.  This package decomposes them into
weight, isotypic, highest-weight and tableau components, all in exact
rational arithmetic, and rewrites arithmetic circuits computing a
metapolynomial into circuits computing any such projection.
"""

from .action import (
    GroupElement,
    act_group_on_meta,
    act_group_on_poly,
    act_on_meta,
    act_on_poly,
    random_basis_change,
)
from .circuit import (
    Circuit,
    CircuitBuilder,
    Gate,
    TransformStats,
    eliminate_dead,
    eval_numeric,
    eval_symbolic,
    size,
    transform,
    transform_plan,
)
from .errors import (
    BudgetError,
    CircuitError,
    DimensionCapError,
    FormatError,
    IsotypicaError,
    NotNormalizedError,
    ParseError,
    SeparationError,
)
from .meta import (
    MetaPolynomial,
    Polynomial,
    evaluate,
    homogenize_meta,
    homogenize_poly,
    meta_add,
    meta_mul,
)
from .oracle import ActionMatrix, BruteDecomposition, brute_decompose, build_action_matrix, eigenprojection
from .projectors import (
    ProjectorFactor,
    ProjectorPlan,
    apply_plan,
    occurring_types,
    plan_gz,
    plan_hwv,
    plan_isotypic,
    plan_weight,
)
from .rep import (
    GTPattern,
    Tableau,
    enumerate_partitions,
    enumerate_tableaux,
    enumerate_weights,
    isotypic_multiplicities,
    kostka_number,
    pattern_to_tableau,
    tableau_to_pattern,
    weight_component,
    weight_dimensions,
    weight_of,
    weights_of,
)
from .uea import (
    UeaElement,
    apply,
    casimir,
    casimir_gz,
    central_character,
    default_basis_order,
    is_normalized,
    pbw_normalize,
)

__version__ = "0.1.0"
