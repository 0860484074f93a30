#!/usr/bin/env python
# -*- coding: utf-8 -*-
#
# @Author: José Sánchez-Gallego (gallegoj@uw.edu)
# @Date: 2025-02-04
# @Filename: qstate.py
# @License: BSD 3-clause (http://www.opensource.org/licenses/BSD-3-Clause)

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, reduce

from typing import Literal, Sequence

import numpy
import numpy.typing as npt
import scipy.linalg

from clonebound import log
from clonebound.exceptions import (
    AlphaOutOfRange,
    BadTrace,
    DimensionCapExceeded,
    DimensionMismatch,
    IncompleteKraus,
    InvariantViolation,
    NotHermitian,
    NotNormalized,
    NotPositive,
)
from clonebound.models import MatrixModel
from clonebound.utils import Limits, Tolerances, get_limits, get_tolerances


__all__ = [
    "DensityOperator",
    "PureState",
    "Channel",
    "MetricReport",
    "make_density",
    "pure_state",
    "pure_to_density",
    "real_qubit_state",
    "product_state",
    "tensor_power",
    "fidelity",
    "metrics",
    "angle_between",
    "make_channel",
    "apply_channel",
    "identity_channel",
    "partial_trace_channel",
    "povm_probabilities",
    "matrix_to_json",
    "matrix_from_json",
]


Sign = Literal["+", "-"] | int
ComplexArray = npt.NDArray[numpy.complex128]


def _readonly(array: npt.ArrayLike) -> ComplexArray:
    """Returns a read-only complex copy of ``array``."""

    out = numpy.array(array, dtype=numpy.complex128)
    out.setflags(write=False)

    return out


def _psd_sqrt(eigenvalues: numpy.ndarray, eigenvectors: numpy.ndarray):
    """Square root of a PSD matrix from its Hermitian eigendecomposition.

    Eigenvalues at the level of the eigensolver round-off are set to zero before
    taking the square root, otherwise they would contribute ``O(sqrt(eps))``
    terms to any trace norm computed from the result.

    """

    noise = 10 * eigenvalues.size * numpy.finfo(float).eps
    noise *= max(float(numpy.max(numpy.abs(eigenvalues), initial=0.0)), 1.0)

    roots = numpy.sqrt(numpy.where(eigenvalues > noise, eigenvalues, 0.0))

    return (eigenvectors * roots) @ eigenvectors.conj().T


@dataclass(frozen=True, eq=False)
class DensityOperator:
    """A validated density operator.

    Instances should be created with :obj:`.make_density`, which checks that the
    matrix is Hermitian, positive semidefinite and has unit trace.

    """

    matrix: ComplexArray = field(repr=False)

    @property
    def dim(self) -> int:
        return int(self.matrix.shape[0])

    @cached_property
    def _eigh(self) -> tuple[numpy.ndarray, numpy.ndarray]:
        eigenvalues, eigenvectors = numpy.linalg.eigh(self.matrix)
        return numpy.clip(eigenvalues, 0.0, None), eigenvectors

    @property
    def eigenvalues(self) -> numpy.ndarray:
        """The eigenvalues of the operator, in ascending order."""

        return self._eigh[0]

    @cached_property
    def sqrt(self) -> ComplexArray:
        """The unique positive square root of the operator."""

        return _readonly(_psd_sqrt(*self._eigh))

    def __repr__(self):
        return f"<DensityOperator (dim={self.dim})>"


@dataclass(frozen=True, eq=False)
class PureState:
    """A normalised state vector."""

    vector: ComplexArray = field(repr=False)

    @property
    def dim(self) -> int:
        return int(self.vector.shape[0])

    def to_density(self) -> DensityOperator:
        """Returns the projector :math:`|\\psi\\rangle\\langle\\psi|`."""

        return DensityOperator(_readonly(numpy.outer(self.vector, self.vector.conj())))

    def __repr__(self):
        return f"<PureState (dim={self.dim})>"


@dataclass(frozen=True, eq=False)
class Channel:
    """A quantum channel in operator-sum form."""

    kraus_ops: tuple[ComplexArray, ...] = field(repr=False)

    @property
    def dim_in(self) -> int:
        return int(self.kraus_ops[0].shape[1])

    @property
    def dim_out(self) -> int:
        return int(self.kraus_ops[0].shape[0])

    def __repr__(self):
        return (
            f"<Channel (dim_in={self.dim_in}, dim_out={self.dim_out}, "
            f"n_kraus={len(self.kraus_ops)})>"
        )


@dataclass(frozen=True)
class MetricReport:
    """Fidelity-based distances between two states."""

    fidelity: float
    angle: float
    sine_distance: float
    bures_metric: float


def make_density(
    matrix: npt.ArrayLike,
    tolerances: Tolerances | None = None,
) -> DensityOperator:
    """Validates a matrix and returns a :obj:`.DensityOperator`.

    Parameters
    ----------
    matrix
        A square complex matrix.
    tolerances
        The tolerances to use. Defaults to :obj:`.get_tolerances`.

    Returns
    -------
    density
        The density operator. Eigenvalues in ``[-positivity, 0)`` are clamped to
        zero and the matrix is reassembled from its eigendecomposition.

    Raises
    ------
    InvariantViolation
        If the matrix has NaN or infinite entries.
    NotHermitian
        If ``max |A - A^†|`` is larger than the ``hermitian`` tolerance.
    NotPositive
        If an eigenvalue is below ``-positivity``.
    BadTrace
        If the trace differs from one by more than the ``trace`` tolerance.

    """

    tol = tolerances or get_tolerances()

    array = numpy.asarray(matrix, dtype=numpy.complex128)
    if array.ndim != 2 or array.shape[0] != array.shape[1] or array.shape[0] < 1:
        raise DimensionMismatch(f"Expected a square matrix, got shape {array.shape}.")

    if not numpy.isfinite(array).all():
        raise InvariantViolation("The matrix has non-finite entries.")

    if numpy.max(numpy.abs(array - array.conj().T)) > tol.hermitian:
        raise NotHermitian()

    array = (array + array.conj().T) / 2

    trace = numpy.trace(array).real
    if abs(trace - 1) > tol.trace:
        raise BadTrace(f"Trace is {trace:.12g}.")

    eigenvalues, eigenvectors = numpy.linalg.eigh(array)
    if eigenvalues[0] < -tol.positivity:
        raise NotPositive(f"Minimum eigenvalue is {eigenvalues[0]:.3g}.")

    if eigenvalues[0] < 0:
        message = f"Clamping eigenvalues down to {eigenvalues[0]:.3g} to zero."
        if -eigenvalues[0] > 10 * array.shape[0] * numpy.finfo(float).eps:
            log.warning(message)
        else:
            log.debug(message)
        eigenvalues = numpy.clip(eigenvalues, 0.0, None)
        array = (eigenvectors * eigenvalues) @ eigenvectors.conj().T

    return DensityOperator(_readonly(array))


def pure_state(
    vector: npt.ArrayLike,
    tolerances: Tolerances | None = None,
) -> PureState:
    """Validates a state vector and returns a :obj:`.PureState`."""

    tol = tolerances or get_tolerances()

    array = numpy.asarray(vector, dtype=numpy.complex128).reshape(-1)
    if array.size < 1:
        raise DimensionMismatch("Empty state vector.")

    norm = numpy.linalg.norm(array)
    if abs(norm - 1) > tol.pure_norm:
        raise NotNormalized(f"State vector norm is {norm:.15g}.")

    return PureState(_readonly(array))


def _parse_sign(sign: Sign) -> int:
    if sign in ("+", 1, +1):
        return 1
    elif sign in ("-", -1):
        return -1

    raise ValueError(f"Invalid sign {sign!r}.")


def pure_to_density(psi: PureState) -> DensityOperator:
    """Returns the density operator of a pure state."""

    return psi.to_density()


def real_qubit_state(
    alpha: float,
    sign: Sign = "+",
    tolerances: Tolerances | None = None,
) -> PureState:
    """Returns :math:`\\cos\\alpha|0\\rangle \\pm \\sin\\alpha|1\\rangle`.

    Parameters
    ----------
    alpha
        The angle, in radians, in :math:`[0, \\pi/4]`. The overlap of the two
        states with the same ``alpha`` is :math:`\\cos 2\\alpha`.
    sign
        ``"+"`` or ``"-"`` (or ``1``/``-1``).

    """

    tol = tolerances or get_tolerances()

    if not (-tol.angle <= alpha <= numpy.pi / 4 + tol.angle):
        raise AlphaOutOfRange(f"alpha={alpha!r} is not in [0, pi/4].")

    alpha = float(numpy.clip(alpha, 0.0, numpy.pi / 4))
    vector = [numpy.cos(alpha), _parse_sign(sign) * numpy.sin(alpha)]

    return PureState(_readonly(vector))


def product_state(states: Sequence[PureState | npt.ArrayLike]) -> PureState:
    """Returns the product of ``states`` on a register.

    The first state occupies register position 0, which is the least significant
    position of the basis index.

    """

    vectors = [
        state.vector if isinstance(state, PureState) else numpy.asarray(state)
        for state in states
    ]

    # numpy.kron puts its first argument on the most significant index.
    return PureState(_readonly(reduce(numpy.kron, reversed(vectors))))


def tensor_power(
    rho: DensityOperator,
    k: int,
    limits: Limits | None = None,
) -> DensityOperator:
    """Returns the ``k``-fold tensor product of ``rho`` with itself.

    Raises
    ------
    DimensionCapExceeded
        If ``rho.dim ** k`` is larger than the ``max_dimension`` limit.

    """

    if k < 1:
        raise ValueError("k must be a positive integer.")

    max_dimension = (limits or get_limits()).max_dimension
    if rho.dim**k > max_dimension:
        raise DimensionCapExceeded(
            f"Dimension {rho.dim}^{k} is larger than the cap {max_dimension}."
        )

    if k == 1:
        return rho

    return DensityOperator(_readonly(reduce(numpy.kron, [rho.matrix] * k)))


def _check_dims(omega: DensityOperator, sigma: DensityOperator):
    if omega.dim != sigma.dim:
        raise DimensionMismatch(f"Dimensions {omega.dim} and {sigma.dim} differ.")


def fidelity(omega: DensityOperator, sigma: DensityOperator) -> float:
    """Returns the fidelity :math:`(\\mathrm{Tr}|\\sqrt\\omega\\sqrt\\sigma|)^2`.

    The trace norm is computed as the sum of singular values and the result is
    clamped to :math:`[0, 1]`.

    """

    _check_dims(omega, sigma)

    singular = scipy.linalg.svdvals(omega.sqrt @ sigma.sqrt)

    return float(numpy.clip(numpy.sum(singular) ** 2, 0.0, 1.0))


def metrics(omega: DensityOperator, sigma: DensityOperator) -> MetricReport:
    """Returns the fidelity, Bures angle, sine distance and Bures metric."""

    fid = fidelity(omega, sigma)
    root = float(numpy.clip(numpy.sqrt(fid), 0.0, 1.0))

    angle = float(numpy.arccos(root))

    return MetricReport(
        fidelity=fid,
        angle=angle,
        sine_distance=float(numpy.sin(angle)),
        bures_metric=float(numpy.sqrt(max(2.0 - 2.0 * root, 0.0))),
    )


def angle_between(psi: PureState | npt.ArrayLike, phi: PureState | npt.ArrayLike):
    """Returns the Bures angle between two pure states.

    Computed as ``atan2(|phi - <psi|phi> psi|, |<psi|phi>|)``, which keeps full
    precision for nearly identical states.

    """

    u = psi.vector if isinstance(psi, PureState) else numpy.asarray(psi)
    v = phi.vector if isinstance(phi, PureState) else numpy.asarray(phi)

    if u.shape != v.shape:
        raise DimensionMismatch(f"Dimensions {u.shape} and {v.shape} differ.")

    overlap = numpy.vdot(u, v)
    residual = numpy.linalg.norm(v - overlap * u)

    return float(numpy.arctan2(residual, numpy.abs(overlap)))


def make_channel(
    kraus_ops: Sequence[npt.ArrayLike],
    tolerances: Tolerances | None = None,
) -> Channel:
    """Validates a list of Kraus operators and returns a :obj:`.Channel`.

    Raises
    ------
    IncompleteKraus
        If :math:`\\sum_i K_i^\\dagger K_i` differs from the identity by more than
        the ``kraus`` tolerance.

    """

    tol = tolerances or get_tolerances()

    if len(kraus_ops) == 0:
        raise IncompleteKraus("At least one Kraus operator is required.")

    ops = tuple(_readonly(op) for op in kraus_ops)

    shape = ops[0].shape
    if any(op.ndim != 2 or op.shape != shape for op in ops):
        raise DimensionMismatch("All Kraus operators must have the same shape.")

    completeness = sum(op.conj().T @ op for op in ops)
    if numpy.max(numpy.abs(completeness - numpy.eye(shape[1]))) > tol.kraus:
        raise IncompleteKraus()

    return Channel(ops)


def apply_channel(ch: Channel, rho: DensityOperator) -> DensityOperator:
    """Returns :math:`\\sum_i K_i \\rho K_i^\\dagger`."""

    if ch.dim_in != rho.dim:
        raise DimensionMismatch(
            f"Channel input dimension {ch.dim_in} does not match {rho.dim}."
        )

    output = sum(op @ rho.matrix @ op.conj().T for op in ch.kraus_ops)

    return make_density(output)


def identity_channel(dim: int) -> Channel:
    """The identity channel on a ``dim``-dimensional system."""

    return Channel((_readonly(numpy.eye(dim)),))


def partial_trace_channel(keep_dim: int, discard_dim: int) -> Channel:
    """The channel that traces out the second factor of a bipartite system."""

    identity = numpy.eye(keep_dim)
    basis = numpy.eye(discard_dim)

    return Channel(
        tuple(
            _readonly(numpy.kron(identity, basis[ii][None, :]))
            for ii in range(discard_dim)
        )
    )


def povm_probabilities(
    rho: DensityOperator,
    effects: Sequence[npt.ArrayLike],
    tolerances: Tolerances | None = None,
) -> list[float]:
    """Returns the outcome probabilities :math:`\\mathrm{Tr}(A_\\mu\\rho)`.

    Raises
    ------
    InvariantViolation
        If the effects are not Hermitian, not between zero and the identity, or
        do not add up to the identity.

    """

    tol = tolerances or get_tolerances()

    matrices = [numpy.asarray(effect, dtype=numpy.complex128) for effect in effects]
    if any(matrix.shape != (rho.dim, rho.dim) for matrix in matrices):
        raise DimensionMismatch("POVM effects must match the state dimension.")

    for matrix in matrices:
        if numpy.max(numpy.abs(matrix - matrix.conj().T)) > tol.hermitian:
            raise InvariantViolation("POVM effects must be Hermitian.")

        eigenvalues = numpy.linalg.eigvalsh(matrix)
        if eigenvalues[0] < -tol.positivity or eigenvalues[-1] > 1 + tol.positivity:
            raise InvariantViolation("POVM effects must satisfy 0 <= A <= I.")

    if numpy.max(numpy.abs(sum(matrices) - numpy.eye(rho.dim))) > tol.kraus:
        raise InvariantViolation("POVM effects do not add up to the identity.")

    return [float(numpy.trace(matrix @ rho.matrix).real) for matrix in matrices]


def matrix_to_json(matrix: npt.ArrayLike) -> dict:
    """Serialises a square matrix as ``{"dim": n, "re": [[...]], "im": [[...]]}``."""

    array = numpy.asarray(matrix, dtype=numpy.complex128)

    return MatrixModel(
        dim=array.shape[0],
        re=array.real.tolist(),
        im=array.imag.tolist(),
    ).model_dump()


def matrix_from_json(data: MatrixModel | dict) -> ComplexArray:
    """Deserialises a matrix written by :obj:`.matrix_to_json`."""

    model = data if isinstance(data, MatrixModel) else MatrixModel.model_validate(data)

    array = numpy.array(model.re, dtype=numpy.complex128)
    if model.im is not None:
        array = array + 1j * numpy.array(model.im, dtype=float)

    return array
