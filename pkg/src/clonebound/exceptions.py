#!/usr/bin/env python
# -*- coding: utf-8 -*-
#
# @Author: José Sánchez-Gallego (gallegoj@uw.edu)
# @Date: 2025-02-03
# @Filename: exceptions.py
# @License: BSD 3-clause (http://www.opensource.org/licenses/BSD-3-Clause)

from __future__ import annotations

import enum
from dataclasses import dataclass

from typing import Any


__all__ = [
    "ErrorData",
    "ErrorCodesBase",
    "ErrorCodes",
    "create_error_codes",
    "CloneBoundError",
    "NotHermitian",
    "NotPositive",
    "BadTrace",
    "NotNormalized",
    "AlphaOutOfRange",
    "AngleOutOfRange",
    "AngleOrderViolation",
    "DimensionCapExceeded",
    "DimensionMismatch",
    "IncompleteKraus",
    "NotUnitary",
    "DegeneratePair",
    "BadProbabilities",
    "BadScenario",
    "TooManyStates",
    "PerfectCloningRegime",
    "BadCounts",
    "RegisterTooLarge",
    "ParseError",
    "InvariantViolation",
]


@dataclass(frozen=True)
class ErrorData:
    code: int
    exit_status: int = 2
    description: str = ""


class ErrorCodesBase(enum.Enum):
    """Enumeration of error codes"""

    @classmethod
    def get_error_code(cls, error_code: int):
        """Returns the :obj:`.ErrorCodes` that matches the ``error_code`` value."""

        for error in cls:
            if error.value.code == error_code:
                return error

        raise ValueError(f"Error code {error_code} not found.")


def create_error_codes(
    error_codes: dict[str, tuple | list | ErrorData],
    name: str = "ErrorCodes",
    include_unknown: bool = True,
) -> Any:
    """Creates an enumeration of error codes."""

    error_codes_enum: dict[str, ErrorData] = {}
    for error_name, error_data in error_codes.items():
        if not isinstance(error_data, ErrorData):
            error_data = ErrorData(*error_data)
        error_codes_enum[error_name.upper()] = error_data

    if include_unknown and "UNKNOWN" not in error_codes_enum:
        error_codes_enum["UNKNOWN"] = ErrorData(9999, 2, "Unknown error")

    return ErrorCodesBase(name, error_codes_enum)


ErrorCodes = create_error_codes(
    {
        "NOT_HERMITIAN": (100, 2, "Matrix is not Hermitian"),
        "NOT_POSITIVE": (101, 2, "Matrix has a negative eigenvalue"),
        "BAD_TRACE": (102, 2, "Density operator does not have unit trace"),
        "NOT_NORMALIZED": (103, 2, "State vector is not normalised"),
        "DIMENSION_MISMATCH": (110, 2, "Operator dimensions do not match"),
        "DIMENSION_CAP_EXCEEDED": (111, 2, "Dimension above the configured cap"),
        "INCOMPLETE_KRAUS": (112, 2, "Kraus operators are not complete"),
        "NOT_UNITARY": (113, 2, "Gate matrix is not unitary"),
        "ALPHA_OUT_OF_RANGE": (120, 2, "State angle outside of its range"),
        "ANGLE_OUT_OF_RANGE": (121, 2, "Angle outside of its range"),
        "ANGLE_ORDER_VIOLATION": (122, 2, "Angles are in the wrong order"),
        "DEGENERATE_PAIR": (130, 2, "Pair of identical ideal outputs"),
        "BAD_PROBABILITIES": (131, 2, "Invalid probabilities"),
        "BAD_SCENARIO": (132, 2, "Invalid cloning scenario"),
        "TOO_MANY_STATES": (140, 2, "Too many states for the requested method"),
        "PERFECT_CLONING_REGIME": (150, 2, "Parameters allow perfect cloning"),
        "BAD_COUNTS": (151, 2, "Invalid numbers of originals and copies"),
        "REGISTER_TOO_LARGE": (152, 2, "Register above the statevector cap"),
        "PARSE_ERROR": (200, 1, "Malformed input"),
        "INVARIANT_VIOLATION": (201, 2, "Invariant violation"),
    }
)


class CloneBoundError(Exception):
    """Base ``clonebound`` exception.

    Each subclass is associated with one of the :obj:`.ErrorCodes`, which also
    determines the exit status of the command line interface.

    """

    error_code: ErrorCodesBase = ErrorCodes.UNKNOWN

    def __init__(
        self,
        message: str = "",
        error_code: ErrorCodesBase | int | None = None,
    ):
        if isinstance(error_code, int):
            self.error_code = ErrorCodes.get_error_code(error_code)
        elif error_code is not None:
            self.error_code = error_code

        self.message = message or self.error_code.value.description

        super().__init__(self.message)

    @property
    def exit_status(self) -> int:
        """The exit status associated with this error."""

        return self.error_code.value.exit_status


class NotHermitian(CloneBoundError):
    error_code = ErrorCodes.NOT_HERMITIAN


class NotPositive(CloneBoundError):
    error_code = ErrorCodes.NOT_POSITIVE


class BadTrace(CloneBoundError):
    error_code = ErrorCodes.BAD_TRACE


class NotNormalized(CloneBoundError):
    error_code = ErrorCodes.NOT_NORMALIZED


class DimensionMismatch(CloneBoundError):
    error_code = ErrorCodes.DIMENSION_MISMATCH


class DimensionCapExceeded(CloneBoundError):
    error_code = ErrorCodes.DIMENSION_CAP_EXCEEDED


class IncompleteKraus(CloneBoundError):
    error_code = ErrorCodes.INCOMPLETE_KRAUS


class NotUnitary(CloneBoundError):
    error_code = ErrorCodes.NOT_UNITARY


class AngleOutOfRange(CloneBoundError):
    error_code = ErrorCodes.ANGLE_OUT_OF_RANGE


class AlphaOutOfRange(AngleOutOfRange):
    error_code = ErrorCodes.ALPHA_OUT_OF_RANGE


class AngleOrderViolation(CloneBoundError):
    error_code = ErrorCodes.ANGLE_ORDER_VIOLATION


class DegeneratePair(CloneBoundError):
    error_code = ErrorCodes.DEGENERATE_PAIR


class BadProbabilities(CloneBoundError):
    error_code = ErrorCodes.BAD_PROBABILITIES


class BadScenario(CloneBoundError):
    error_code = ErrorCodes.BAD_SCENARIO


class TooManyStates(CloneBoundError):
    error_code = ErrorCodes.TOO_MANY_STATES


class PerfectCloningRegime(CloneBoundError):
    error_code = ErrorCodes.PERFECT_CLONING_REGIME


class BadCounts(CloneBoundError):
    error_code = ErrorCodes.BAD_COUNTS


class RegisterTooLarge(CloneBoundError):
    error_code = ErrorCodes.REGISTER_TOO_LARGE


class ParseError(CloneBoundError):
    error_code = ErrorCodes.PARSE_ERROR


class InvariantViolation(CloneBoundError):
    error_code = ErrorCodes.INVARIANT_VIOLATION
