# qaffine/cli/config.py

"""
Run Configuration Module for qaffine

RunConfig is the validated set of options of one command-line run. Flags
given on the command line win over the values of the Configuration store
(defaults, JSON file, QAFFINE_* environment variables).
"""

from dataclasses import dataclass
from typing import Optional, Tuple
import logging

from qaffine.core.exceptions import ConfigurationError
from qaffine.utils.configuration import Configuration

logger = logging.getLogger(__name__)

COMMANDS = ("verify-r", "verify-rll", "verify-gauss", "verify-suites", "degenerate", "gauss-print")
FORMATS = ("json", "text")
MIN_CUTOFF = 2


@dataclass(frozen=True)
class RunConfig:
    command: str
    cutoff: int = 8
    suites: Tuple[str, ...] = ()
    rmatrix_path: Optional[str] = None
    format: str = "text"
    seed: int = 0
    compare: bool = False
    suite_file: Optional[str] = None
    mutations: bool = False

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ConfigurationError(f"unknown command '{self.command}'")
        if self.cutoff < MIN_CUTOFF:
            raise ConfigurationError(f"cutoff must be at least {MIN_CUTOFF}, got {self.cutoff}")
        if self.format not in FORMATS:
            raise ConfigurationError(f"format must be one of {', '.join(FORMATS)}, got '{self.format}'")

    @classmethod
    def from_configuration(cls, args) -> "RunConfig":
        """
        Merges parsed command-line arguments over the Configuration store.

        Args:
            args: An argparse namespace; options left at None fall back to
                the configuration.

        Raises:
            ConfigurationError: If a merged value is invalid.
        """
        def pick(name: str, key: str):
            value = getattr(args, name, None)
            return Configuration.get(key) if value is None else value

        suites = getattr(args, "suite", None) or ""
        names = tuple(n.strip() for n in suites.split(",") if n.strip())
        try:
            cutoff = int(pick("cutoff", "cutoff"))
            seed = int(pick("seed", "seed"))
        except (TypeError, ValueError) as e:
            logger.error(f"Invalid numeric option: {e}")
            raise ConfigurationError(f"invalid numeric option: {e}") from e
        config = cls(
            command=args.command,
            cutoff=cutoff,
            suites=names,
            rmatrix_path=getattr(args, "rmatrix", None),
            format=str(pick("format", "format")),
            seed=seed,
            compare=bool(getattr(args, "compare", False)),
            suite_file=getattr(args, "suite_file", None),
            mutations=bool(getattr(args, "mutations", False)),
        )
        logger.debug(f"Run configuration: {config}")
        return config
