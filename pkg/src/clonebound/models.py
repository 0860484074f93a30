#!/usr/bin/env python
# -*- coding: utf-8 -*-
#
# @Author: José Sánchez-Gallego (gallegoj@uw.edu)
# @Date: 2025-02-04
# @Filename: models.py
# @License: BSD 3-clause (http://www.opensource.org/licenses/BSD-3-Clause)

from __future__ import annotations

import pathlib

from typing import Annotated, TypeVar

from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator
from typing_extensions import Self

from clonebound.exceptions import ParseError


__all__ = [
    "MatrixModel",
    "ScenarioModel",
    "ProgramModel",
    "SweepModel",
    "load_model",
]


T = TypeVar("T", bound=BaseModel)


class MatrixModel(BaseModel):
    """A complex square matrix as ``{"dim": n, "re": [[...]], "im": [[...]]}``.

    ``im`` can be omitted for real matrices.

    """

    model_config = ConfigDict(frozen=True, allow_inf_nan=False)

    dim: Annotated[int, Field(ge=1)]
    re: list[list[float]]
    im: list[list[float]] | None = None

    @model_validator(mode="after")
    def check_shape(self) -> Self:
        for name, part in (("re", self.re), ("im", self.im)):
            if part is None:
                continue
            if len(part) != self.dim or any(len(row) != self.dim for row in part):
                raise ValueError(f"{name!r} must be a {self.dim}x{self.dim} array.")

        return self


class ScenarioModel(BaseModel):
    """JSON description of a cloning scenario."""

    model_config = ConfigDict(frozen=True, populate_by_name=True, allow_inf_nan=False)

    states: list[MatrixModel]
    priors: list[float]
    ancillas: list[MatrixModel] | None = None
    N: Annotated[int, Field(ge=1)]
    L: Annotated[int, Field(ge=2)]


class ProgramModel(BaseModel):
    """JSON description of a sine-sum minimisation program.

    ``pair_bounds`` is a list of ``[j, k, a_jk]`` triplets with zero-based
    indices. Pairs that are not listed have ``a_jk = 0``.

    """

    model_config = ConfigDict(frozen=True, allow_inf_nan=False)

    m: Annotated[int, Field(ge=2)]
    pair_bounds: list[tuple[int, int, float]]
    weights: list[float]


class SweepModel(BaseModel):
    """A parameter sweep, parsed from ``name:start:stop:steps``."""

    model_config = ConfigDict(frozen=True)

    name: str
    start: float
    stop: float
    steps: Annotated[int, Field(ge=2)]

    @classmethod
    def from_string(cls, value: str) -> SweepModel:
        """Parses a sweep definition of the form ``name:start:stop:steps``."""

        parts = value.split(":")
        if len(parts) != 4:
            raise ParseError(f"Invalid sweep {value!r}. Use name:start:stop:steps.")

        name, start, stop, steps = parts

        try:
            return cls(
                name=name.strip().replace("-", "_"),
                start=float(start),
                stop=float(stop),
                steps=int(steps),
            )
        except (ValueError, ValidationError) as err:
            raise ParseError(f"Invalid sweep {value!r}: {err}")


def load_model(model: type[T], path: str | pathlib.Path) -> T:
    """Reads and validates a JSON file, raising :obj:`.ParseError` on failure."""

    path = pathlib.Path(path)

    try:
        text = path.read_text()
    except OSError as err:
        raise ParseError(f"Cannot read {path!s}: {err}")

    try:
        return model.model_validate_json(text)
    except ValidationError as err:
        raise ParseError(f"Invalid {model.__name__} in {path!s}: {err}")
