#!/usr/bin/env python
# -*- coding: utf-8 -*-
#
# @Author: José Sánchez-Gallego (gallegoj@uw.edu)
# @Date: 2025-02-03
# @Filename: utils.py
# @License: BSD 3-clause (http://www.opensource.org/licenses/BSD-3-Clause)

from __future__ import annotations

import os
from dataclasses import dataclass, fields, replace

from typing import Any

from clonebound import config
from clonebound.exceptions import InvariantViolation


__all__ = [
    "Tolerances",
    "Limits",
    "get_tolerances",
    "get_limits",
    "parse_tolerance_overrides",
    "get_exception_data",
]


#: Environment variable with comma-separated ``key=value`` tolerance overrides.
TOLERANCE_ENV_VAR = "CLONEBOUND_TOL"


@dataclass(frozen=True)
class Tolerances:
    """Numerical tolerances shared by the library, the tests, and the CLI."""

    hermitian: float = 1e-10
    positivity: float = 1e-10
    trace: float = 1e-9
    pure_norm: float = 1e-12
    kraus: float = 1e-9
    unitary: float = 1e-10
    probability: float = 1e-9
    angle: float = 1e-12
    dedupe: float = 1e-9
    property: float = 1e-9
    saturation: float = 1e-8


@dataclass(frozen=True)
class Limits:
    """Size caps for explicit matrices, registers, and enumerations."""

    max_dimension: int = 2**14
    max_register_qubits: int = 20
    max_simplex_states: int = 8
    max_grid_states: int = 4


def parse_tolerance_overrides(value: str | None) -> dict[str, float]:
    """Parses a ``key=value,key=value`` string of tolerance overrides."""

    if value is None or value.strip() == "":
        return {}

    valid = {field.name for field in fields(Tolerances)}

    overrides: dict[str, float] = {}
    for item in value.split(","):
        if item.strip() == "":
            continue

        key, sep, raw = item.partition("=")
        key = key.strip()

        if sep == "" or key not in valid:
            raise InvariantViolation(f"Invalid tolerance override {item!r}.")

        try:
            overrides[key] = float(raw)
        except ValueError:
            raise InvariantViolation(f"Invalid tolerance value in {item!r}.")

        if overrides[key] < 0:
            raise InvariantViolation(f"Tolerance {key!r} cannot be negative.")

    return overrides


def get_tolerances(overrides: dict[str, float] | None = None) -> Tolerances:
    """Returns the active tolerances.

    Values come from the ``tolerances`` section of the configuration, then from
    ``$CLONEBOUND_TOL`` and finally from ``overrides``.

    """

    configured = config.get("tolerances", None) or {}
    valid = {field.name for field in fields(Tolerances)}

    tolerances = Tolerances(
        **{key: float(val) for key, val in configured.items() if key in valid}
    )

    tolerances = replace(
        tolerances,
        **parse_tolerance_overrides(os.environ.get(TOLERANCE_ENV_VAR)),
    )

    if overrides:
        tolerances = replace(tolerances, **overrides)

    return tolerances


def get_limits() -> Limits:
    """Returns the configured size limits."""

    configured = config.get("limits", None) or {}
    valid = {field.name for field in fields(Limits)}

    return Limits(**{key: int(val) for key, val in configured.items() if key in valid})


def get_exception_data(exception: Exception | None, traceback_frame: int = 0):
    """Returns a dictionary with information about an exception."""

    if exception is None:
        return None

    if not isinstance(exception, Exception):
        return None

    filename: str | None = None
    lineno: int | None = None
    if exception.__traceback__ is not None:
        tb = exception.__traceback__
        for _ in range(traceback_frame):
            t_next = tb.tb_next
            if t_next is None:
                break
            tb = t_next

        filename = tb.tb_frame.f_code.co_filename if tb else None
        lineno = tb.tb_lineno if tb else None

    exception_data: dict[str, Any] = {
        "module": exception.__class__.__module__,
        "type": exception.__class__.__name__,
        "message": str(exception),
        "filename": filename,
        "lineno": lineno,
    }

    return exception_data
