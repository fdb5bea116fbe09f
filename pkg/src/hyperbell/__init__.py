"""Exact computation of iterated set partitions and their counting sequences.

The package enumerates the m-fold iterated partition sets of an n-set,
computes the higher-order Bell numbers that count them and the
higher-order Stirling numbers that refine the count by outer
cardinality, and cross-checks every result through four independent
routes: triangle recurrences, powers of the Stirling matrix, exponential
generating functions with exact rational coefficients, and literal
enumeration of the nested structures.
"""

from .exact import binomial, compositions, factorial, multinomial
from .triangles import (
    BellTable,
    Fault,
    FiniteDifferenceReport,
    IdentityReport,
    Triangle,
    average_cardinality,
    bell,
    bell_table,
    finite_difference_check,
    higher_stirling,
    identity_triangle,
    stirling2_triangle,
    verify_identity,
)
from .egf import (
    IntegralityError,
    Series,
    bell_egf,
    bell_from_egf,
    series_compose,
    series_exp,
    stirling_egf,
    stirling_from_egf,
)
from .enumerator import (
    Census,
    EnumerationBudgetError,
    InvalidPartitionError,
    NestedPartition,
    canonical_serialize,
    census,
    iterate_partitions,
    parse_nested,
    partitions_of,
    verify_distinct_children,
)

__version__ = "0.1.0"

__all__ = [
    "factorial",
    "binomial",
    "multinomial",
    "compositions",
    "Triangle",
    "BellTable",
    "Fault",
    "FiniteDifferenceReport",
    "IdentityReport",
    "stirling2_triangle",
    "identity_triangle",
    "higher_stirling",
    "bell",
    "bell_table",
    "verify_identity",
    "finite_difference_check",
    "average_cardinality",
    "Series",
    "IntegralityError",
    "series_exp",
    "series_compose",
    "bell_egf",
    "bell_from_egf",
    "stirling_egf",
    "stirling_from_egf",
    "NestedPartition",
    "Census",
    "EnumerationBudgetError",
    "InvalidPartitionError",
    "partitions_of",
    "iterate_partitions",
    "canonical_serialize",
    "parse_nested",
    "census",
    "verify_distinct_children",
    "__version__",
]
