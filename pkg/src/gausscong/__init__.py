"""Exact toolkit for Gauss congruences of multivariate rational functions.

The package expands rational functions as Laurent series at vertices of
the denominator's Newton polytope, verifies Gauss congruences and
supercongruences on the coefficients, and implements exact constructive
and decision procedures (log-derivative determinants, the univariate
classification, linear and mostly-linear denominator classifications,
toroidal and univariate substitutions, face restriction).
"""

from .algebra import (
    LaurentPolynomial,
    PartialFractions,
    RationalFunction,
    UnivariateFactorization,
    VariableCountMismatch,
    ZeroDenominator,
    factor_univariate,
    multiply,
    normalize,
    partial_fractions,
)
from .polytope import Face, GradingForm, NewtonPolytope, faces, grading_form, newton_polytope, polytope_contains
from .series import (
    OutOfTruncation,
    ProductFactorization,
    TruncatedLaurentSeries,
    apply_up,
    expand_at_vertex,
    product_factorization,
)
from .gauss import (
    GaussCheckConfig,
    GaussReport,
    check_gauss,
    check_integer_power_congruence,
    excluded_primes,
    p_adic_valuation,
)
from .theory import (
    MintonDecomposition,
    MintonVerdict,
    MostlyLinearVerdict,
    ToroidalMap,
    classify_degree2,
    classify_linear,
    classify_mostly_linear,
    log_det_construct,
    minton_decide,
    qdet_construct,
    restrict_face,
    substitute_multivariate,
    substitute_univariate,
    toroidal_substitute,
)

__version__ = "0.1.0"
