"""Multivariate Meixner polynomials, their bispectral difference operators,
and exact verification of their orthogonality, duality and eigenvalue identities."""

from .algebra import (
    Polynomial,
    TruncatedSeries,
    format_rational,
    multi_indices,
    pochhammer,
    poly_eval,
    poly_shift,
    series_mul,
    series_negative_power,
)
from .operators import (
    DifferenceOperator,
    MissingGridPoint,
    apply_on_grid,
    apply_symbolic,
    build_degree_operator,
    build_variable_operator,
    verify_bispectrality,
    verify_commutativity,
)
from .orthogonality import (
    InnerProductResult,
    NoConvergence,
    PreconditionViolated,
    inner_product,
    norm_closed_form,
    verify_orthogonality,
    weight,
)
from .parameters import (
    BadParameter,
    DegenerateStep,
    MeixnerPoint,
    NotInParameterSet,
    ZeroDenominator,
    ZeroParameter,
    family_geometric,
    family_triangular,
    from_weights,
    involution,
    make_point,
    parameter_report,
    validate,
)
from .polynomials import (
    MeixnerSpec,
    duality_check,
    evaluate,
    generating_coefficients,
    hypergeometric_polynomial,
    tabulate,
)
from .report import VerificationReport

__version__ = "0.1.0"
