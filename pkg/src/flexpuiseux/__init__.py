"""Puiseux branch expansions and higher-order flexes of frameworks."""

__version__ = "0.1.0"

from .exact_poly import (
    Polynomial,
    PolynomialSyntaxError,
    UnboundVariableError,
    evaluate,
    parse_polynomial,
    partial_derivative,
    resultant,
    shift,
)
from .puiseux import (
    AtLeast,
    BranchParam,
    CurveNotThroughOriginError,
    PuiseuxConfig,
    PuiseuxSeries,
    YAxisComponentError,
    compose,
    expand_branches,
    newton_polygon,
    puiseux_expand,
)
from .spacecurve import (
    AmbiguousLiftError,
    NoConsistentLiftError,
    ProjectionError,
    SpaceBranch,
    branch_order,
    lift_branches,
    project,
)
from .flexlab import (
    INF,
    AnalysisConfig,
    ConstraintSystem,
    DegreeBoundError,
    FlexClass,
    FlexReport,
    Framework,
    FrameworkError,
    analyze,
    build_constraints,
    classify_branch,
    intersection_multiplicity,
    local_multiplicity,
    pencil_ideal,
    real_flex,
    removal_ideal,
)
