#!/usr/bin/env python
# -*- coding: utf-8 -*-
#
# @Author: José Sánchez-Gallego (gallegoj@uw.edu)
# @Date: 2025-02-08
# @Filename: strategies.py
# @License: BSD 3-clause (http://www.opensource.org/licenses/BSD-3-Clause)

"""Hypothesis strategies for states, measurements and channels."""

from __future__ import annotations

import numpy
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from clonebound.qstate import DensityOperator, make_channel, make_density


__all__ = ["complex_matrices", "density_operators", "povm_effects", "channels"]


def complex_matrices(rows: int, cols: int):
    """Complex matrices with every entry drawn independently."""

    parts = arrays(
        float,
        (2, rows, cols),
        elements=st.floats(-1, 1, allow_nan=False, allow_infinity=False),
        fill=st.nothing(),
    )

    return parts.map(lambda pp: pp[0] + 1j * pp[1])


@st.composite
def density_operators(draw, dim: int | None = None) -> DensityOperator:
    """Pure states or full-rank states mixed with the identity."""

    dim = dim or draw(st.integers(2, 4))

    if draw(st.booleans()):
        vector = draw(complex_matrices(dim, 1))[:, 0]
        norm = numpy.linalg.norm(vector)
        if norm < 1e-3:
            vector = numpy.eye(dim)[0]
        else:
            vector = vector / norm
        return make_density(numpy.outer(vector, vector.conj()))

    gg = draw(complex_matrices(dim, dim))
    matrix = gg @ gg.conj().T

    trace = numpy.trace(matrix).real
    matrix = numpy.eye(dim) / dim if trace < 1e-6 else matrix / trace

    mix = draw(st.floats(0.01, 0.9))

    return make_density((1 - mix) * matrix + mix * numpy.eye(dim) / dim)


@st.composite
def povm_effects(draw, dim: int) -> numpy.ndarray:
    """Effects ``0 <= A <= I``, either rank one or with a random spectrum."""

    qq, _ = numpy.linalg.qr(draw(complex_matrices(dim, dim)))

    if draw(st.booleans()):
        return numpy.outer(qq[:, 0], qq[:, 0].conj())

    spectrum = draw(arrays(float, dim, elements=st.floats(0, 1), fill=st.nothing()))

    return (qq * spectrum) @ qq.conj().T


@st.composite
def channels(draw, dim: int):
    """Channels from up to four Kraus operators ``G_i S^{-1/2}``.

    The first operator is a multiple of the identity so ``S = sum G_i^† G_i`` is
    well conditioned.

    """

    n_random = draw(st.integers(0, 3))

    ops = [0.5 * numpy.eye(dim)]
    ops += [draw(complex_matrices(dim, dim)) for _ in range(n_random)]

    total = sum(op.conj().T @ op for op in ops)
    eigenvalues, eigenvectors = numpy.linalg.eigh(total)

    inv_sqrt = (eigenvectors / numpy.sqrt(eigenvalues)) @ eigenvectors.conj().T

    return make_channel([op @ inv_sqrt for op in ops])

