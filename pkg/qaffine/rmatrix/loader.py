# qaffine/rmatrix/loader.py

"""
R-Matrix Loader Module for qaffine

This module provides the RMatrixLoader class, which reads and writes
R-matrices as JSON documents:

    {"name": ..., "dim": 3, "grading": [0, 1, 0], "variables": ["z", "w"],
     "entries": [[[num, den], ...], ...]}

``entries`` is the full (dim^2) x (dim^2) array; ``num`` and ``den`` are
Laurent polynomials in canonical text form (see qaffine.kernel.mpoly).
"""

import json
import logging
import os
from typing import Any, Dict, List

from qaffine.core.exceptions import RMatrixFormatError
from qaffine.graded.matrix import GradedMatrix, Grading
from qaffine.kernel.mpoly import VARIABLES, parse_mpoly
from qaffine.kernel.ratexpr import RatExpr
from qaffine.rmatrix.builder import RMatrixSpec

# Configure the logger for this module
logger = logging.getLogger(__name__)


class RMatrixLoader:
    """
    Loads and saves R-matrices, validating documents before use.
    """

    def load(self, source: str) -> RMatrixSpec:
        """
        Loads an R-matrix from a JSON file.

        Args:
            source (str): Path to the JSON document.

        Returns:
            RMatrixSpec: The parsed R-matrix.

        Raises:
            RMatrixFormatError: If the file is missing or malformed.
        """
        logger.debug(f"Loading R-matrix from '{source}'.")
        if not os.path.exists(source):
            logger.error(f"R-matrix file '{source}' not found.")
            raise RMatrixFormatError(f"R-matrix file '{source}' not found")
        try:
            with open(source, 'r', encoding='utf-8') as f:
                document = json.load(f)
        except (OSError, json.JSONDecodeError) as e:
            logger.error(f"Error reading R-matrix file '{source}': {e}", exc_info=True)
            raise RMatrixFormatError(f"cannot read '{source}': {e}") from e
        spec = self.from_dict(document)
        logger.info(f"R-matrix '{spec.name}' loaded from '{source}'.")
        return spec

    def from_dict(self, document: Dict[str, Any]) -> RMatrixSpec:
        """
        Parses a decoded JSON document.

        Raises:
            RMatrixFormatError: On missing fields, wrong shapes, unknown
                variables or zero denominators.
        """
        if not isinstance(document, dict):
            raise RMatrixFormatError("R-matrix document must be a JSON object")
        dim = document.get('dim')
        parities = document.get('grading')
        rows = document.get('entries')
        variables = tuple(document.get('variables', ['z', 'w']))
        name = document.get('name', 'external')
        if not isinstance(dim, int) or dim <= 0:
            raise RMatrixFormatError("'dim' must be a positive integer")
        if not isinstance(parities, list) or len(parities) != dim:
            raise RMatrixFormatError(f"'grading' must list {dim} parities")
        if len(variables) != 2 or any(v not in VARIABLES for v in variables):
            raise RMatrixFormatError(f"'variables' must name two of {', '.join(VARIABLES)}")
        size = dim * dim
        if not isinstance(rows, list) or len(rows) != size or any(
                not isinstance(row, list) or len(row) != size for row in rows):
            raise RMatrixFormatError(f"'entries' must be a {size}x{size} array")
        try:
            grading = Grading(tuple(parities))
        except ValueError as e:
            raise RMatrixFormatError(str(e)) from e
        entries = {}
        for i, row in enumerate(rows):
            for j, cell in enumerate(row):
                entries[(i, j)] = self._parse_entry(cell, i, j)
        matrix = GradedMatrix(size, grading.tensor(grading), entries)
        return RMatrixSpec(matrix, variables, name, grading)

    def _parse_entry(self, cell: Any, i: int, j: int) -> RatExpr:
        if isinstance(cell, (int, str)):
            cell = [str(cell), "1"]
        if not isinstance(cell, list) or len(cell) != 2:
            raise RMatrixFormatError(f"entry ({i}, {j}) must be [num, den]")
        try:
            num = parse_mpoly(str(cell[0]))
            den = parse_mpoly(str(cell[1]))
        except ValueError as e:
            raise RMatrixFormatError(f"entry ({i}, {j}): {e}") from e
        if den.is_zero():
            raise RMatrixFormatError(f"entry ({i}, {j}) has a zero denominator")
        return RatExpr(num, den)

    def to_dict(self, spec: RMatrixSpec) -> Dict[str, Any]:
        size = spec.matrix.dim
        rows: List[List[List[str]]] = []
        for i in range(size):
            row = []
            for j in range(size):
                value = spec.matrix[(i, j)]
                row.append([str(value.num), str(value.den)])
            rows.append(row)
        return {
            'name': spec.name,
            'dim': spec.dim,
            'grading': list(spec.grading.parities),
            'variables': list(spec.variables),
            'entries': rows,
        }

    def save(self, spec: RMatrixSpec, target: str) -> None:
        """
        Writes an R-matrix to a JSON file.

        Args:
            spec (RMatrixSpec): The matrix to save.
            target (str): Destination path.
        """
        with open(target, 'w', encoding='utf-8') as f:
            json.dump(self.to_dict(spec), f, indent=2, sort_keys=True)
        logger.info(f"R-matrix '{spec.name}' saved to '{target}'.")
