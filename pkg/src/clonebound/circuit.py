#!/usr/bin/env python
# -*- coding: utf-8 -*-
#
# @Author: José Sánchez-Gallego (gallegoj@uw.edu)
# @Date: 2025-02-06
# @Filename: circuit.py
# @License: BSD 3-clause (http://www.opensource.org/licenses/BSD-3-Clause)

from __future__ import annotations

import math
from dataclasses import dataclass, field

from typing import Any, Collection

import numpy
import numpy.typing as npt

from clonebound import log
from clonebound.bounds import (
    CloningScenario,
    absolute_error,
    global_fidelity,
    pair_angles,
    relative_error_from_deviations,
    two_state_bound,
)
from clonebound.exceptions import (
    AlphaOutOfRange,
    AngleOrderViolation,
    AngleOutOfRange,
    BadCounts,
    BadProbabilities,
    InvariantViolation,
    NotUnitary,
    PerfectCloningRegime,
    RegisterTooLarge,
)
from clonebound.qstate import PureState, product_state, real_qubit_state
from clonebound.utils import Limits, Tolerances, get_limits, get_tolerances


__all__ = [
    "GateSpec",
    "CircuitPlan",
    "CloneRunReport",
    "d_gate",
    "turned_gate",
    "t_gate",
    "t_coefficients",
    "alpha_sequence",
    "build_circuit",
    "initial_state",
    "simulate",
    "simulate_and_verify",
]


QUARTER_PI = math.pi / 4

SWAP = numpy.array(
    [
        [1, 0, 0, 0],
        [0, 0, 1, 0],
        [0, 1, 0, 0],
        [0, 0, 0, 1],
    ],
    dtype=numpy.complex128,
)


@dataclass(frozen=True, eq=False)
class GateSpec:
    """A one- or two-qubit gate acting on register positions.

    For two-qubit gates the first target corresponds to the most significant
    factor of ``unitary``.

    """

    unitary: numpy.ndarray = field(repr=False)
    targets: tuple[int, ...]
    name: str = ""
    params: dict[str, float] = field(default_factory=dict)
    stage: int = 0
    tolerances: Tolerances = field(default_factory=get_tolerances, repr=False)

    def __post_init__(self):
        targets = tuple(int(tt) for tt in self.targets)
        object.__setattr__(self, "targets", targets)

        if len(targets) not in (1, 2) or len(set(targets)) != len(targets):
            raise InvariantViolation(f"Invalid gate targets {targets}.")

        if any(tt < 0 for tt in targets):
            raise InvariantViolation(f"Invalid gate targets {targets}.")

        unitary = numpy.array(self.unitary, dtype=numpy.complex128)
        size = 2 ** len(targets)
        if unitary.shape != (size, size):
            raise InvariantViolation(f"Gate matrix must be {size}x{size}.")

        tol = self.tolerances.unitary
        if numpy.max(numpy.abs(unitary.conj().T @ unitary - numpy.eye(size))) > tol:
            raise NotUnitary(f"Gate {self.name!r} is not unitary.")

        unitary.setflags(write=False)
        object.__setattr__(self, "unitary", unitary)

    def on(self, *targets: int, stage: int | None = None) -> GateSpec:
        """Returns a copy of the gate acting on different positions."""

        return GateSpec(
            self.unitary,
            targets,
            name=self.name,
            params=dict(self.params),
            stage=self.stage if stage is None else stage,
            tolerances=self.tolerances,
        )

    def to_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "params": dict(self.params),
            "targets": list(self.targets),
            "stage": self.stage,
        }


@dataclass(frozen=True)
class CircuitPlan:
    """The cloning circuit for two real qubit states.

    Register position 0 is the ancilla, positions ``1..N`` hold the originals and
    ``N+1..L`` the blank qubits.

    """

    num_qubits: int
    gates: tuple[GateSpec, ...]
    alpha0: float
    theta: float
    N: int
    L: int
    alpha_seq: tuple[float, ...]
    theta1: float

    @property
    def M(self) -> int:
        return self.L - self.N

    def to_dict(self) -> dict[str, Any]:
        return {
            "num_qubits": self.num_qubits,
            "alpha0": self.alpha0,
            "theta": self.theta,
            "N": self.N,
            "L": self.L,
            "alpha_seq": list(self.alpha_seq),
            "theta1": self.theta1,
            "gates": [gate.to_dict() for gate in self.gates],
        }


@dataclass(frozen=True)
class CloneRunReport:
    """Results of running both inputs through a :obj:`.CircuitPlan`."""

    delta_plus: float
    delta_minus: float
    achieved_R: float
    bound_R: float
    output_states: tuple[numpy.ndarray, numpy.ndarray] = field(repr=False)
    mu_minus: float
    nu_minus: float
    priors: tuple[float, float]
    delta_L: float
    kappa: float
    ancilla_residual: float
    overlap_phi: float
    overlap_psi: float
    achieved_absolute_error: float
    achieved_global_fidelity: float
    saturated: bool

    def to_dict(self, include_states: bool = False) -> dict[str, Any]:
        data: dict[str, Any] = {
            "delta_plus": self.delta_plus,
            "delta_minus": self.delta_minus,
            "achieved_R": self.achieved_R,
            "bound_R": self.bound_R,
            "mu_minus": self.mu_minus,
            "nu_minus": self.nu_minus,
            "p_plus": self.priors[0],
            "p_minus": self.priors[1],
            "delta_L": self.delta_L,
            "kappa": self.kappa,
            "ancilla_residual": self.ancilla_residual,
            "overlap_phi": self.overlap_phi,
            "overlap_psi": self.overlap_psi,
            "achieved_absolute_error": self.achieved_absolute_error,
            "achieved_global_fidelity": self.achieved_global_fidelity,
            "saturated": self.saturated,
        }

        if include_states:
            data["output_states"] = [
                {"re": state.real.tolist(), "im": state.imag.tolist()}
                for state in self.output_states
            ]

        return data


def _check_angle(name: str, value: float, tol: Tolerances, upper: float = QUARTER_PI):
    if not (-tol.angle <= value <= upper + tol.angle):
        raise AngleOutOfRange(f"{name}={value!r} is not in [0, {upper:.6f}].")

    return min(max(float(value), 0.0), upper)


def d_gate(
    alpha: float,
    beta: float,
    tolerances: Tolerances | None = None,
) -> GateSpec:
    """Returns the distinguishability transfer gate :math:`D(\\alpha, \\beta)`.

    The gate maps :math:`|\\varphi_\\pm(\\alpha)\\rangle|\\varphi_\\pm(\\beta)\\rangle`
    to :math:`|\\varphi_\\pm(\\gamma)\\rangle|0\\rangle` with
    :math:`\\cos 2\\gamma = \\cos 2\\alpha \\cos 2\\beta`. It is the reflection
    :math:`I - 2P` where :math:`P` projects onto the span of the differences
    between inputs and outputs, so it is Hermitian and its own inverse.

    """

    tol = tolerances or get_tolerances()

    alpha = _check_angle("alpha", alpha, tol)
    beta = _check_angle("beta", beta, tol)

    ca, sa = math.cos(alpha), math.sin(alpha)
    cb, sb = math.cos(beta), math.sin(beta)

    cos_gamma = math.sqrt(ca**2 * cb**2 + sa**2 * sb**2)
    sin_gamma = math.sqrt(ca**2 * sb**2 + sa**2 * cb**2)

    # The input-output differences are (a, ±b, ±c, e) in the |00>, |01>, |10>,
    # |11> basis, so (a, 0, 0, e) and (0, b, c, 0) span them. a and c are written
    # in a form free of cancellation.
    ee = sa * sb
    bb = ca * sb
    aa = -(ee**2) / (ca * cb + cos_gamma)
    denominator = sa * cb + sin_gamma
    cc = -(bb**2) / denominator if denominator > 0 else 0.0

    projector = numpy.zeros((4, 4))
    for vector in ([aa, 0.0, 0.0, ee], [0.0, bb, cc, 0.0]):
        array = numpy.array(vector)
        norm = numpy.linalg.norm(array)
        if norm > 0:
            array = array / norm
            projector += numpy.outer(array, array)

    gamma = math.atan2(sin_gamma, cos_gamma)
    log.debug(f"D gate alpha={alpha:.6f}, beta={beta:.6f}, gamma={gamma:.6f}.")

    return GateSpec(
        numpy.eye(4) - 2 * projector,
        (0, 1),
        name="D",
        params={"alpha": alpha, "beta": beta, "gamma": gamma},
        tolerances=tol,
    )


def turned_gate(
    alpha: float,
    theta: float,
    tolerances: Tolerances | None = None,
) -> GateSpec:
    """Returns :math:`D(\\alpha, \\theta)` with its two register roles exchanged.

    Acting on ``(ancilla, qubit)``, it moves the ancilla distinguishability into
    the second qubit and leaves the ancilla in :math:`|0\\rangle`.

    """

    gate = d_gate(alpha, theta, tolerances=tolerances)

    return GateSpec(
        SWAP @ gate.unitary @ SWAP,
        (0, 1),
        name="turned-D",
        params={"alpha": gate.params["alpha"], "theta": gate.params["beta"]},
        tolerances=gate.tolerances,
    )


def t_coefficients(theta1: float, alpha_target: float) -> tuple[float, float]:
    """Returns :math:`(\\mu_-, \\nu_-)` for the gate ``t_gate(theta1, alpha_target)``.

    These are the coefficients of :math:`T|\\varphi_-(\\theta_1)\\rangle` on
    :math:`|\\varphi_+(\\alpha)\\rangle` and :math:`|\\varphi_-(\\alpha)\\rangle`.

    """

    sin_delta = math.sin(2 * alpha_target)
    if sin_delta == 0:
        return 1.0, 0.0

    mu = math.sin(2 * alpha_target - 2 * theta1) / sin_delta
    nu = math.sin(2 * theta1) / sin_delta

    return mu, nu


def t_gate(
    theta1: float,
    alpha_target: float,
    tolerances: Tolerances | None = None,
) -> GateSpec:
    """Returns the real rotation :math:`T` by ``alpha_target - theta1``.

    :math:`T` maps :math:`|\\varphi_+(\\theta_1)\\rangle` to
    :math:`|\\varphi_+(\\alpha)\\rangle` exactly and rotates
    :math:`|\\varphi_-(\\theta_1)\\rangle` by the same angle.

    Raises
    ------
    AngleOrderViolation
        If ``theta1 > alpha_target``.

    """

    tol = tolerances or get_tolerances()

    theta1 = _check_angle("theta1", theta1, tol)
    alpha_target = _check_angle("alpha_target", alpha_target, tol)

    if theta1 > alpha_target + tol.angle:
        raise AngleOrderViolation(
            f"theta1={theta1!r} is larger than alpha_target={alpha_target!r}."
        )

    angle = max(alpha_target - theta1, 0.0)
    cos, sin = math.cos(angle), math.sin(angle)

    return GateSpec(
        numpy.array([[cos, -sin], [sin, cos]]),
        (0,),
        name="T",
        params={"theta1": theta1, "alpha_target": alpha_target},
        tolerances=tol,
    )


def _half_angle(one_minus: float) -> float:
    """Returns ``x`` in ``[0, pi/4]`` with ``cos 2x = 1 - one_minus``."""

    one_minus = min(max(one_minus, 0.0), 1.0)

    return math.atan2(math.sqrt(one_minus), math.sqrt(2 - one_minus))


def _one_minus_cos_power(alpha0: float, power: int) -> float:
    """Returns ``1 - cos(2 alpha0)**power`` without cancellation."""

    sin2 = math.sin(alpha0) ** 2
    if sin2 >= 0.5:
        return 1.0 - math.cos(2 * alpha0) ** power

    return -math.expm1(power * math.log1p(-2 * sin2))


def alpha_sequence(
    alpha0: float,
    L: int,
    tolerances: Tolerances | None = None,
) -> list[float]:
    """Returns :math:`\\alpha_k` for ``k = 0..L-1``, with
    :math:`\\cos 2\\alpha_k = (\\cos 2\\alpha_0)^{k+1}`.

    """

    tol = tolerances or get_tolerances()

    if not (-tol.angle <= alpha0 <= QUARTER_PI + tol.angle):
        raise AngleOutOfRange(f"alpha0={alpha0!r} is not in [0, pi/4].")

    if L < 2:
        raise BadCounts(f"L must be at least 2, got {L}.")

    alpha0 = min(max(alpha0, 0.0), QUARTER_PI)

    return [alpha0] + [
        _half_angle(_one_minus_cos_power(alpha0, kk + 1)) for kk in range(1, L)
    ]


def build_circuit(
    N: int,
    L: int,
    alpha0: float,
    theta: float,
    tolerances: Tolerances | None = None,
) -> CircuitPlan:
    """Builds the optimal ``N -> L`` cloning circuit.

    Parameters
    ----------
    N, L
        The number of originals and of outputs, ``1 <= N < L``.
    alpha0
        Angle of the input states :math:`|\\varphi_\\pm(\\alpha_0)\\rangle`. The
        overlap of the inputs is :math:`f = \\cos 2\\alpha_0`.
    theta
        Angle of the ancilla states :math:`|\\varphi_\\pm(\\theta)\\rangle`, with
        overlap :math:`\\phi = \\cos 2\\theta`.

    Returns
    -------
    plan
        The circuit. Stage 1 concentrates the distinguishability of the originals
        into position 1, stage 2 merges the ancilla into it and rotates it with
        :math:`T`, and stage 3 distributes it over positions ``1..L``.

    Raises
    ------
    PerfectCloningRegime
        If :math:`\\phi \\leq f^M`, in which case the ancilla already allows
        perfect cloning.

    """

    if N < 1 or L <= N:
        raise BadCounts(f"Expected 1 <= N < L, got N={N}, L={L}.")

    tol = tolerances or get_tolerances()

    if not (-tol.angle <= alpha0 <= QUARTER_PI + tol.angle):
        raise AlphaOutOfRange(f"alpha0={alpha0!r} is not in [0, pi/4].")

    theta = _check_angle("theta", theta, tol)
    alpha0 = min(max(alpha0, 0.0), QUARTER_PI)

    ff = math.cos(2 * alpha0)
    phi = math.cos(2 * theta)

    if phi <= ff ** (L - N):
        log.warning(f"phi={phi:.6f} <= f^M={ff ** (L - N):.6f}: perfect cloning.")
        raise PerfectCloningRegime(
            f"Ancilla overlap {phi!r} does not exceed f^M={ff ** (L - N)!r}."
        )

    alphas = alpha_sequence(alpha0, L, tolerances=tol)

    # cos 2 theta1 = phi * f^N
    one_minus = 2 * math.sin(theta) ** 2 + phi * _one_minus_cos_power(alpha0, N)
    theta1 = _half_angle(one_minus)

    gates: list[GateSpec] = []

    for jj in range(N, 1, -1):
        gates.append(d_gate(alpha0, alphas[N - jj], tol).on(jj - 1, jj, stage=1))

    gates.append(turned_gate(alphas[N - 1], theta, tol).on(0, 1, stage=2))
    gates.append(t_gate(theta1, alphas[L - 1], tol).on(1, stage=2))

    for kk in range(2, L + 1):
        gates.append(d_gate(alpha0, alphas[L - kk], tol).on(kk - 1, kk, stage=3))

    log.debug(f"Built {N}->{L} circuit with {len(gates)} gates.")

    return CircuitPlan(
        num_qubits=L + 1,
        gates=tuple(gates),
        alpha0=alpha0,
        theta=theta,
        N=N,
        L=L,
        alpha_seq=tuple(alphas),
        theta1=theta1,
    )


def initial_state(plan: CircuitPlan, sign: str) -> PureState:
    """Returns the register state
    :math:`|\\varphi_\\pm(\\theta)\\rangle|\\varphi_\\pm(\\alpha_0)\\rangle^{\\otimes N}
    |0\\rangle^{\\otimes M}`.

    """

    ancilla = real_qubit_state(plan.theta, sign)
    original = real_qubit_state(plan.alpha0, sign)
    blank = numpy.array([1.0, 0.0])

    return product_state([ancilla] + [original] * plan.N + [blank] * plan.M)


def _apply_gate(state: numpy.ndarray, gate: GateSpec, num_qubits: int):
    """Applies a gate to a state tensor of shape ``(2,) * num_qubits``."""

    # Position p is bit p of the basis index, i.e. axis num_qubits - 1 - p.
    axes = [num_qubits - 1 - target for target in gate.targets]
    size = len(axes)

    unitary = gate.unitary.reshape((2,) * (2 * size))
    state = numpy.tensordot(unitary, state, axes=(list(range(size, 2 * size)), axes))

    return numpy.moveaxis(state, list(range(size)), axes)


def simulate(
    plan: CircuitPlan,
    inputs: PureState | npt.ArrayLike,
    stages: Collection[int] | None = None,
    limits: Limits | None = None,
    tolerances: Tolerances | None = None,
) -> numpy.ndarray:
    """Runs a state through the circuit and returns the final statevector.

    Parameters
    ----------
    plan
        The circuit to simulate.
    inputs
        Initial state of the ``L + 1`` qubit register.
    stages
        If given, only the gates in these stages are applied.

    Raises
    ------
    RegisterTooLarge
        If the register exceeds the ``max_register_qubits`` limit.
    InvariantViolation
        If the norm of the state drifts after a gate.

    """

    max_qubits = (limits or get_limits()).max_register_qubits
    if plan.num_qubits > max_qubits:
        raise RegisterTooLarge(
            f"{plan.num_qubits} qubits is above the limit of {max_qubits}."
        )

    vector = inputs.vector if isinstance(inputs, PureState) else numpy.asarray(inputs)
    if vector.size != 2**plan.num_qubits:
        raise InvariantViolation("Initial state does not match the register size.")

    tol = tolerances or get_tolerances()
    state = numpy.array(vector, dtype=numpy.complex128).reshape((2,) * plan.num_qubits)

    for gate in plan.gates:
        if stages is not None and gate.stage not in stages:
            continue

        state = _apply_gate(state, gate, plan.num_qubits)

        norm = numpy.linalg.norm(state)
        if abs(norm - 1) > tol.pure_norm:
            raise InvariantViolation(f"State norm drifted to {norm!r}.")

    return state.reshape(-1)


def _clone_angle(final: numpy.ndarray, ideal: numpy.ndarray) -> float:
    """Bures angle between the clone register state and the ideal output.

    The clone register occupies positions ``1..L``, so the ancilla is the least
    significant bit and ``final[b::2]`` is the branch with the ancilla in ``b``.

    """

    residual = 0.0
    projected = 0.0
    for branch in (final[0::2], final[1::2]):
        overlap = numpy.vdot(ideal, branch)
        projected += abs(overlap) ** 2
        residual += numpy.linalg.norm(branch - overlap * ideal) ** 2

    return math.atan2(math.sqrt(residual), math.sqrt(projected))


def simulate_and_verify(
    plan: CircuitPlan,
    p_minus: float = 0.5,
    tolerances: Tolerances | None = None,
) -> CloneRunReport:
    """Runs both inputs through the circuit and compares with the bound.

    Parameters
    ----------
    plan
        The circuit to simulate.
    p_minus
        Prior of the ``-`` input, in ``(0, 1/2]``.
    tolerances
        The tolerances to use. Defaults to :obj:`.get_tolerances`.

    Returns
    -------
    report
        The deviation angles of the clone register from the ideal outputs, the
        relative error they produce, and the two-state bound.

    Raises
    ------
    InvariantViolation
        If the overlap of the initial states is not preserved, if the ``+`` input
        is not cloned exactly, or if the relative error falls below the bound.

    """

    if not (0 < p_minus <= 0.5):
        raise BadProbabilities(f"p_minus must be in (0, 0.5], got {p_minus!r}.")

    tol = tolerances or get_tolerances()

    outputs: list[numpy.ndarray] = []
    deviations: list[float] = []
    residuals: list[float] = []
    inputs: list[PureState] = []

    for sign in ("+", "-"):
        start = initial_state(plan, sign)
        final = simulate(plan, start, tolerances=tol)

        ideal = product_state([real_qubit_state(plan.alpha0, sign)] * plan.L).vector

        inputs.append(start)
        outputs.append(final)
        deviations.append(_clone_angle(final, ideal))
        residuals.append(float(numpy.linalg.norm(final[1::2])))

    overlap_phi = complex(numpy.vdot(inputs[0].vector, inputs[1].vector))
    overlap_psi = complex(numpy.vdot(outputs[0], outputs[1]))
    if abs(overlap_phi - overlap_psi) > tol.property:
        raise InvariantViolation("The circuit does not preserve the input overlap.")

    states = tuple(real_qubit_state(plan.alpha0, sign).to_density() for sign in "+-")
    ancillas = None
    if plan.theta > 0:
        ancillas = tuple(
            real_qubit_state(plan.theta, sign).to_density() for sign in "+-"
        )

    scenario = CloningScenario(
        states=states,
        priors=(1 - p_minus, p_minus),
        ancillas=ancillas,
        N=plan.N,
        L=plan.L,
        tolerances=tol,
    )

    angles = pair_angles(scenario)
    achieved = relative_error_from_deviations(scenario, deviations, angles=angles)
    bound = two_state_bound(scenario).value

    if deviations[0] > tol.property:
        raise InvariantViolation(
            f"The + input is not cloned exactly: delta+={deviations[0]!r}."
        )

    if achieved < bound - tol.property:
        raise InvariantViolation(
            f"Relative error {achieved!r} is below the bound {bound!r}."
        )

    mu, nu = t_coefficients(plan.theta1, plan.alpha_seq[-1])

    log.debug(
        f"N={plan.N}, L={plan.L}: delta+={deviations[0]:.3e}, "
        f"delta-={deviations[1]:.6f}, R={achieved:.8f}, bound={bound:.8f}."
    )

    return CloneRunReport(
        delta_plus=deviations[0],
        delta_minus=deviations[1],
        achieved_R=achieved,
        bound_R=bound,
        output_states=(outputs[0][0::2], outputs[1][0::2]),
        mu_minus=mu,
        nu_minus=nu,
        priors=scenario.priors,
        delta_L=float(angles.delta_L[0, 1]),
        kappa=float(angles.kappa[0, 1]),
        ancilla_residual=max(residuals),
        overlap_phi=overlap_phi.real,
        overlap_psi=overlap_psi.real,
        achieved_absolute_error=absolute_error(scenario, deviations),
        achieved_global_fidelity=global_fidelity(scenario, deviations),
        saturated=abs(achieved - bound) <= tol.saturation,
    )
