# qaffine/relations/builtin.py

"""
Built-in relation suites, shipped as text files next to this module.
"""

from functools import lru_cache
from pathlib import Path
from typing import List, Tuple
import logging

from qaffine.relations.model import RelationSuite
from qaffine.relations.parser import SuiteParser

logger = logging.getLogger(__name__)

SUITE_DIR = Path(__file__).parent / "suites"

TRIGONOMETRIC_SUITES: Tuple[str, ...] = (
    "k-commutation",
    "k-x-exchange",
    "x-x-exchange",
    "x-anticommutators",
    "k-x-combined",
    "x-x-combined",
    "x-anticommutator-combined",
    "drinfeld",
)
RATIONAL_SUITES: Tuple[str, ...] = ("yangian",)

# Relations of x-anticommutators that state the same identity with z and w exchanged.
RECAST_PAIR = ("x1m-x2p", "x1m-x2p-recast")


@lru_cache(maxsize=None)
def load_builtin(name: str) -> RelationSuite:
    """
    Loads one built-in suite by name.

    Raises:
        KeyError: If no built-in suite has that name.
    """
    if name not in TRIGONOMETRIC_SUITES + RATIONAL_SUITES:
        logger.error(f"Unknown built-in suite '{name}'.")
        raise KeyError(f"no built-in suite named '{name}'")
    path = SUITE_DIR / f"{name}.txt"
    suites = SuiteParser().parse_file(path)
    if len(suites) != 1 or suites[0].name != name:
        raise ValueError(f"{path} must hold exactly the suite '{name}'")
    logger.debug(f"Loaded built-in suite '{name}' with {len(suites[0])} relations.")
    return suites[0]


def builtin_suites() -> List[RelationSuite]:
    """The trigonometric suites, evaluated at c = 0."""
    return [load_builtin(name) for name in TRIGONOMETRIC_SUITES]


def rational_suites() -> List[RelationSuite]:
    return [load_builtin(name) for name in RATIONAL_SUITES]


def select_suites(names=None) -> List[RelationSuite]:
    """
    Built-in trigonometric suites filtered by name, in the built-in order.

    Raises:
        KeyError: For a name that is not a trigonometric built-in suite.
    """
    if not names:
        return builtin_suites()
    unknown = [n for n in names if n not in TRIGONOMETRIC_SUITES]
    if unknown:
        raise KeyError(f"unknown suites: {', '.join(unknown)}")
    return [load_builtin(n) for n in TRIGONOMETRIC_SUITES if n in names]
