# qaffine/yangian/__init__.py

from .compare import compare_suites, print_rational_suite
from .degenerate import (RationalRelation, RationalSuite, RationalTerm, degenerate_coefficient,
                         degenerate_suite, rational_suite)
from .linear import LinearFactorProduct, LinearForm

__all__ = [
    'LinearForm',
    'LinearFactorProduct',
    'RationalTerm',
    'RationalRelation',
    'RationalSuite',
    'degenerate_coefficient',
    'degenerate_suite',
    'rational_suite',
    'compare_suites',
    'print_rational_suite',
]
