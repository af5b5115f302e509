# qaffine/relations/__init__.py

from .builtin import builtin_suites, load_builtin
from .evaluator import RelationEvaluator
from .model import Relation, RelationSuite, Term
from .mutation import mutate_relation, mutate_suite
from .parser import parse_relation, parse_suite, parse_suites
from .printer import format_suite

__all__ = [
    'RelationSuite',
    'Relation',
    'Term',
    'parse_suite',
    'parse_suites',
    'parse_relation',
    'format_suite',
    'RelationEvaluator',
    'builtin_suites',
    'load_builtin',
    'mutate_relation',
    'mutate_suite',
]
