#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Planar algebra errors

Every failure the library reports is a PlanarAlgebraError carrying a short
machine-readable code. The command line turns these into error JSON.
"""

from typing import Any, Dict, Optional


class PlanarAlgebraError(Exception):
    """Base class for all library errors."""

    code = "planar_algebra_error"

    def __init__(self, message: str, **details: Any):
        super().__init__(message)
        self.message = message
        self.details = details

    def to_dict(self) -> Dict[str, Any]:
        """Machine-readable form used by the command line."""
        payload: Dict[str, Any] = {"error": self.code, "message": self.message}
        if self.details:
            payload["details"] = {k: str(v) for k, v in self.details.items()}
        return payload


class DivisionByZero(PlanarAlgebraError):
    code = "division_by_zero"


class PoleAtRootOfUnity(PlanarAlgebraError):
    code = "pole_at_root_of_unity"


class NotInTruncation(PlanarAlgebraError):
    """A diagram lies outside Y(N)."""

    code = "not_in_truncation"


class InvalidCellAddition(PlanarAlgebraError):
    code = "invalid_cell_addition"


class RepeatedPole(PlanarAlgebraError):
    code = "repeated_pole"


class StrandMismatch(PlanarAlgebraError):
    code = "strand_mismatch"


class VanishingQuantumInteger(PlanarAlgebraError):
    code = "vanishing_quantum_integer"


class DegenerateNormalization(PlanarAlgebraError):
    code = "degenerate_normalization"


class MalformedLink(PlanarAlgebraError):
    code = "malformed_link"


class NonPlanarWiring(PlanarAlgebraError):
    code = "non_planar_wiring"


class RankDeficiencyUnexpected(PlanarAlgebraError):
    code = "rank_deficiency_unexpected"


class BlockSplitFailure(PlanarAlgebraError):
    code = "block_split_failure"


class CertificationInconclusive(PlanarAlgebraError):
    code = "certification_inconclusive"


class InvalidParams(PlanarAlgebraError):
    code = "invalid_params"


class DivisibilityViolated(PlanarAlgebraError):
    code = "divisibility_violated"


class DslSyntaxError(PlanarAlgebraError):
    """Word DSL parse failure at a character position."""

    code = "syntax_error"

    def __init__(self, message: str, position: Optional[int] = None, **details: Any):
        super().__init__(f"{message} at position {position}" if position is not None else message,
                         position=position, **details)
        self.position = position


class IndexOutOfRange(PlanarAlgebraError):
    code = "index_out_of_range"
