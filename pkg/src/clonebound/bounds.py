#!/usr/bin/env python
# -*- coding: utf-8 -*-
#
# @Author: José Sánchez-Gallego (gallegoj@uw.edu)
# @Date: 2025-02-05
# @Filename: bounds.py
# @License: BSD 3-clause (http://www.opensource.org/licenses/BSD-3-Clause)

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations

from typing import Sequence

import numpy
import polars

from clonebound import log
from clonebound.exceptions import (
    BadCounts,
    BadProbabilities,
    BadScenario,
    CloneBoundError,
    DegeneratePair,
    DimensionMismatch,
    InvariantViolation,
)
from clonebound.models import ScenarioModel
from clonebound.optimize import SimplexProgram, simplex_min
from clonebound.qstate import (
    DensityOperator,
    fidelity,
    make_density,
    matrix_from_json,
    metrics,
    real_qubit_state,
    tensor_power,
)
from clonebound.utils import Tolerances, get_tolerances


__all__ = [
    "CloningScenario",
    "AngleReport",
    "CriteriaReport",
    "BoundResult",
    "DiscriminationLimits",
    "pair_angles",
    "deviation_angles",
    "relative_error",
    "relative_error_from_deviations",
    "absolute_error",
    "global_fidelity",
    "two_state_bound",
    "pure_state_bound",
    "perfect_cloning_possible",
    "multi_state_bound",
    "simplex_program",
    "simplex_bound",
    "criteria",
    "asymptotics_check",
    "discrimination_limits",
]


def _one_minus_power(x: float, k: float) -> float:
    """Returns ``1 - x**k`` without cancellation for ``x`` close to one."""

    if x <= 0:
        return 1.0

    return -math.expm1(k * math.log(x))


def _sine_ratio(cos_k: float, sin2_k: float, cos_d: float, sin2_d: float) -> float:
    """Returns ``sin(Δ - κ) / sin Δ`` written as ``cos κ - sin κ cot Δ``."""

    return cos_k - math.sqrt(max(sin2_k, 0.0)) * cos_d / math.sqrt(sin2_d)


def _check_counts(N: int, L: int):
    if N < 1 or L <= N:
        raise BadCounts(f"Expected 1 <= N < L, got N={N}, L={L}.")


def _check_probabilities(priors: Sequence[float], tol: Tolerances):
    if any(prior <= 0 for prior in priors):
        raise BadProbabilities("Prior probabilities must be positive.")

    if abs(sum(priors) - 1) > tol.probability:
        raise BadProbabilities(f"Priors add up to {sum(priors)!r}, not one.")


@dataclass(frozen=True, eq=False)
class CloningScenario:
    """A set of states to be cloned ``N -> L`` with their priors and ancillas.

    Parameters
    ----------
    states
        The ``m`` single-system states :math:`\\rho_j`.
    priors
        The prior probabilities :math:`p_j`.
    ancillas
        The ancilla states :math:`\\Upsilon_j`, or `None` when the ancilla carries
        no information about the input.
    N
        Number of originals.
    L
        Number of outputs. ``M = L - N`` is the number of copies produced.

    """

    states: tuple[DensityOperator, ...]
    priors: tuple[float, ...]
    ancillas: tuple[DensityOperator, ...] | None
    N: int
    L: int
    tolerances: Tolerances = field(default_factory=get_tolerances, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "priors", tuple(float(pp) for pp in self.priors))

        if len(self.states) < 2:
            raise BadScenario("At least two states are required.")

        if len(self.priors) != len(self.states):
            raise BadScenario("The number of priors does not match the states.")

        if any(state.dim != self.states[0].dim for state in self.states):
            raise DimensionMismatch("All states must have the same dimension.")

        if self.ancillas is not None:
            object.__setattr__(self, "ancillas", tuple(self.ancillas))
            if len(self.ancillas) != len(self.states):
                raise BadScenario("The number of ancillas does not match the states.")
            if any(anc.dim != self.ancillas[0].dim for anc in self.ancillas):
                raise DimensionMismatch("All ancillas must have the same dimension.")

        _check_probabilities(self.priors, self.tolerances)
        _check_counts(self.N, self.L)

    @property
    def m(self) -> int:
        return len(self.states)

    @property
    def M(self) -> int:
        return self.L - self.N

    @property
    def n(self) -> int:
        return self.states[0].dim

    def pair_weights(self) -> dict[tuple[int, int], float]:
        """Returns :math:`q_{jk} = p_j p_k / \\sum_{j<k} p_j p_k` for ``j < k``."""

        products = {
            (jj, kk): self.priors[jj] * self.priors[kk]
            for jj, kk in combinations(range(self.m), 2)
        }
        total = sum(products.values())

        return {pair: value / total for pair, value in products.items()}

    @classmethod
    def from_model(cls, model: ScenarioModel, tolerances: Tolerances | None = None):
        """Builds a scenario from its JSON model.

        Domain errors in a structurally valid model are re-raised as
        :obj:`.InvariantViolation`.

        """

        tol = tolerances or get_tolerances()

        try:
            states = [make_density(matrix_from_json(st), tol) for st in model.states]
            ancillas = None
            if model.ancillas is not None:
                ancillas = [
                    make_density(matrix_from_json(an), tol) for an in model.ancillas
                ]

            return cls(
                states=tuple(states),
                priors=tuple(model.priors),
                ancillas=tuple(ancillas) if ancillas is not None else None,
                N=model.N,
                L=model.L,
                tolerances=tol,
            )
        except CloneBoundError as err:
            raise InvariantViolation(f"Invalid scenario: {err}") from err

    @classmethod
    def pure_pair(
        cls,
        f: float,
        phi: float = 1.0,
        p_minus: float = 0.5,
        N: int = 1,
        L: int = 2,
    ):
        """Two real qubit states with overlap ``f`` and ancilla overlap ``phi``.

        The states are :math:`|\\varphi_\\pm(\\alpha_0)\\rangle` with
        :math:`\\cos 2\\alpha_0 = f`. The ancillas are
        :math:`|\\varphi_\\pm(\\theta)\\rangle` with :math:`\\cos 2\\theta = \\phi`,
        or `None` if ``phi=1``.

        """

        if not (0 <= f <= 1) or not (0 <= phi <= 1):
            raise InvariantViolation("Overlaps must be in [0, 1].")

        alpha0 = math.acos(f) / 2
        states = tuple(
            real_qubit_state(alpha0, sign).to_density() for sign in ("+", "-")
        )

        ancillas = None
        if phi < 1:
            theta = math.acos(phi) / 2
            ancillas = tuple(
                real_qubit_state(theta, sign).to_density() for sign in ("+", "-")
            )

        return cls(states, (1 - p_minus, p_minus), ancillas, N, L)


@dataclass(frozen=True)
class AngleReport:
    """Pairwise angles of a cloning scenario.

    ``fidelity`` and ``fidelity_ancilla`` are the single-copy fidelities
    :math:`F(\\rho_j, \\rho_k)` and :math:`F(\\Upsilon_j, \\Upsilon_k)` from which
    the angles are computed.

    """

    delta_N: numpy.ndarray
    delta_L: numpy.ndarray
    kappa: numpy.ndarray
    fidelity: numpy.ndarray
    fidelity_ancilla: numpy.ndarray
    N: int
    L: int

    @property
    def m(self) -> int:
        return int(self.delta_L.shape[0])

    def cos_kappa(self, jj: int, kk: int) -> float:
        fid = self.fidelity[jj, kk]
        return math.sqrt(fid**self.N * self.fidelity_ancilla[jj, kk])

    def sin2_kappa(self, jj: int, kk: int) -> float:
        return _one_minus_power(self.fidelity[jj, kk], self.N) + self.fidelity[
            jj, kk
        ] ** self.N * (1 - self.fidelity_ancilla[jj, kk])

    def cos_delta_L(self, jj: int, kk: int) -> float:
        return math.sqrt(self.fidelity[jj, kk] ** self.L)

    def sin2_delta_L(self, jj: int, kk: int) -> float:
        return _one_minus_power(self.fidelity[jj, kk], self.L)


@dataclass(frozen=True)
class CriteriaReport:
    """The four optimal criteria for two equiprobable pure states.

    ``fidelity_deficit`` and ``failure_probability`` are ``1 - max_F`` and
    ``1 - max_P`` computed without cancellation.

    """

    max_P: float
    max_F: float
    min_R: float
    min_A: float
    f: float
    N: int
    L: int
    fidelity_deficit: float
    failure_probability: float


@dataclass(frozen=True)
class BoundResult:
    """A lower bound on the relative error."""

    value: float
    perfect_cloning_possible: bool = False

    def __float__(self):
        return float(self.value)


@dataclass(frozen=True)
class DiscriminationLimits:
    """Large-``M`` limit of the two-state bound and discrimination figures."""

    bound_limit: float
    inconclusive_probability: float
    helstrom_success: float


def _pair_fidelities(
    states: Sequence[DensityOperator],
    power: int = 1,
) -> numpy.ndarray:
    size = len(states)
    values = numpy.ones((size, size))

    for jj, kk in combinations(range(size), 2):
        if power == 1:
            value = fidelity(states[jj], states[kk])
        else:
            value = fidelity(
                tensor_power(states[jj], power),
                tensor_power(states[kk], power),
            )
        values[jj, kk] = values[kk, jj] = value

    return values


def _angle(fid: numpy.ndarray) -> numpy.ndarray:
    angles = numpy.arccos(numpy.clip(numpy.sqrt(fid), 0.0, 1.0))
    numpy.fill_diagonal(angles, 0.0)

    return angles


def pair_angles(sc: CloningScenario, explicit: bool = False) -> AngleReport:
    """Computes the pairwise angles :math:`\\Delta^{(N)}`, :math:`\\Delta^{(L)}`, and
    :math:`\\kappa` of a scenario.

    Parameters
    ----------
    sc
        The cloning scenario.
    explicit
        If `False` (the default), fidelities of tensor powers are computed from the
        single-copy fidelities using multiplicativity. If `True`, the tensor
        powers are built explicitly, which is only possible for small ``n**L``.

    """

    fid = _pair_fidelities(sc.states)

    if sc.ancillas is None:
        fid_ancilla = numpy.ones_like(fid)
    else:
        fid_ancilla = _pair_fidelities(sc.ancillas)

    if explicit:
        fid_N = _pair_fidelities(sc.states, sc.N)
        fid_L = _pair_fidelities(sc.states, sc.L)
    else:
        fid_N = fid**sc.N
        fid_L = fid**sc.L

    return AngleReport(
        delta_N=_angle(fid_N),
        delta_L=_angle(fid_L),
        kappa=_angle(fid_N * fid_ancilla),
        fidelity=fid,
        fidelity_ancilla=fid_ancilla,
        N=sc.N,
        L=sc.L,
    )


def deviation_angles(
    sc: CloningScenario,
    outputs: Sequence[DensityOperator],
) -> list[float]:
    """Returns the angles between each output and its ideal ``L``-copy state."""

    if len(outputs) != sc.m:
        raise BadScenario(f"Expected {sc.m} outputs, got {len(outputs)}.")

    deviations: list[float] = []
    for state, output in zip(sc.states, outputs):
        ideal = tensor_power(state, sc.L)
        deviations.append(metrics(output, ideal).angle)

    return deviations


def _check_degenerate(angles: AngleReport, tol: Tolerances):
    for jj, kk in combinations(range(angles.m), 2):
        if 1 - angles.fidelity[jj, kk] <= tol.angle:
            raise DegeneratePair(f"States {jj} and {kk} are identical.")


def relative_error_from_deviations(
    sc: CloningScenario,
    deviations: Sequence[float],
    angles: AngleReport | None = None,
) -> float:
    """Returns the relative error given the output deviation angles.

    Parameters
    ----------
    sc
        The cloning scenario.
    deviations
        The angles :math:`\\delta'_j` between each actual output and
        :math:`\\rho_j^{\\otimes L}`.
    angles
        Precomputed pair angles for ``sc``.

    Raises
    ------
    DegeneratePair
        If two ideal outputs are identical.

    """

    if len(deviations) != sc.m:
        raise BadScenario(f"Expected {sc.m} deviations, got {len(deviations)}.")

    angles = angles or pair_angles(sc)
    _check_degenerate(angles, sc.tolerances)

    sines = [math.sin(dev) for dev in deviations]
    priors = sc.priors

    error = 0.0
    for (jj, kk), qq in sc.pair_weights().items():
        numerator = 2 * (priors[jj] * sines[jj] + priors[kk] * sines[kk])
        denominator = (priors[jj] + priors[kk]) * math.sqrt(angles.sin2_delta_L(jj, kk))
        error += qq * numerator / denominator

    return error


def relative_error(sc: CloningScenario, outputs: Sequence[DensityOperator]) -> float:
    """Returns the relative error of the clone-register states ``outputs``.

    For two states this is the prior-weighted sum of the output sine distances
    normalised by half the distance between the ideal outputs. For more states
    the pair errors are averaged with weights :math:`q_{jk}`.

    """

    return relative_error_from_deviations(sc, deviation_angles(sc, outputs))


def absolute_error(sc: CloningScenario, deviations: Sequence[float]) -> float:
    """Returns :math:`\\sum_j p_j \\sin\\delta'_j`."""

    return sum(pp * math.sin(dev) for pp, dev in zip(sc.priors, deviations))


def global_fidelity(sc: CloningScenario, deviations: Sequence[float]) -> float:
    """Returns :math:`\\sum_j p_j \\cos^2\\delta'_j`."""

    return sum(pp * math.cos(dev) ** 2 for pp, dev in zip(sc.priors, deviations))


def two_state_bound(sc: CloningScenario) -> BoundResult:
    """Lower bound on the relative error for two states.

    Returns
    -------
    result
        A :obj:`.BoundResult` with value
        :math:`2\\min(p_+,p_-)\\sin(\\Delta^{(L)} - \\kappa)/\\sin\\Delta^{(L)}`. If
        :math:`\\kappa \\geq \\Delta^{(L)}` the ancillas allow perfect cloning and the
        value is zero.

    """

    if sc.m != 2:
        raise BadScenario(f"Expected two states, got {sc.m}.")

    angles = pair_angles(sc)

    cos_k = angles.cos_kappa(0, 1)
    cos_d = angles.cos_delta_L(0, 1)

    if cos_k <= cos_d:
        log.debug("Ancilla states allow perfect cloning. Bound is zero.")
        return BoundResult(0.0, perfect_cloning_possible=True)

    ratio = _sine_ratio(
        cos_k,
        angles.sin2_kappa(0, 1),
        cos_d,
        angles.sin2_delta_L(0, 1),
    )

    return BoundResult(2 * min(sc.priors) * max(ratio, 0.0))


def _check_overlap(name: str, value: float):
    if not (0 <= value <= 1):
        raise InvariantViolation(f"{name} must be in [0, 1], got {value!r}.")


def pure_state_bound(
    f: float,
    phi: float,
    p_minus: float,
    N: int,
    L: int,
) -> BoundResult:
    """Closed-form two-state bound for pure states.

    Parameters
    ----------
    f
        The overlap :math:`|\\langle\\psi_+|\\psi_-\\rangle|`.
    phi
        The overlap of the ancilla states.
    p_minus
        Prior of the second state. The bound depends on ``min(p_minus, 1 - p_minus)``.
    N, L
        The number of originals and of outputs.

    """

    _check_overlap("f", f)
    _check_overlap("phi", phi)
    _check_counts(N, L)

    if not (0 < p_minus < 1):
        raise BadProbabilities(f"p_minus must be in (0, 1), got {p_minus!r}.")

    cos_k = f**N * phi
    cos_d = f**L

    if cos_k <= cos_d:
        return BoundResult(0.0, perfect_cloning_possible=True)

    sin2_k = -math.expm1(2 * N * math.log(f) + 2 * math.log(phi))

    ratio = _sine_ratio(cos_k, sin2_k, cos_d, _one_minus_power(f, 2 * L))

    return BoundResult(2 * min(p_minus, 1 - p_minus) * max(ratio, 0.0))


def perfect_cloning_possible(sc: CloningScenario) -> dict[tuple[int, int], bool]:
    """Checks, for each pair, whether the ancillas allow perfect cloning.

    A pair can be cloned perfectly when
    :math:`F(\\Upsilon_j, \\Upsilon_k) \\leq F(\\rho_j, \\rho_k)^M`.

    """

    angles = pair_angles(sc)

    return {
        (jj, kk): bool(
            angles.fidelity_ancilla[jj, kk] <= angles.fidelity[jj, kk] ** sc.M
        )
        for jj, kk in combinations(range(sc.m), 2)
    }


def multi_state_bound(sc: CloningScenario) -> float:
    """Lower bound on the relative error for an arbitrary number of states.

    Each pair contributes
    :math:`2 q_{jk} \\frac{\\min(p_j, p_k)}{p_j + p_k}
    \\frac{\\sin(\\Delta^{(L)}_{jk} - \\kappa_{jk})}{\\sin\\Delta^{(L)}_{jk}}`.
    Pairs with :math:`\\kappa_{jk} \\geq \\Delta^{(L)}_{jk}` contribute zero.

    """

    angles = pair_angles(sc)
    _check_degenerate(angles, sc.tolerances)

    priors = sc.priors

    bound = 0.0
    for (jj, kk), qq in sc.pair_weights().items():
        cos_k = angles.cos_kappa(jj, kk)
        cos_d = angles.cos_delta_L(jj, kk)
        if cos_k <= cos_d:
            continue

        ratio = _sine_ratio(
            cos_k,
            angles.sin2_kappa(jj, kk),
            cos_d,
            angles.sin2_delta_L(jj, kk),
        )

        weight = min(priors[jj], priors[kk]) / (priors[jj] + priors[kk])
        bound += 2 * qq * weight * max(ratio, 0.0)

    return bound


def simplex_program(sc: CloningScenario) -> SimplexProgram:
    """Builds the sine-sum program whose minimum bounds the relative error.

    The relative error equals :math:`2\\sum_j w_j \\sin\\delta'_j` with
    :math:`w_j = p_j \\sum_{k \\neq j} q_{jk} / ((p_j + p_k)\\sin\\Delta^{(L)}_{jk})`,
    and the deviations must satisfy
    :math:`\\delta'_j + \\delta'_k \\geq \\Delta^{(L)}_{jk} - \\kappa_{jk}`.

    """

    angles = pair_angles(sc)
    _check_degenerate(angles, sc.tolerances)

    priors = sc.priors
    rates = [0.0] * sc.m
    pair_bounds: dict[tuple[int, int], float] = {}

    for (jj, kk), qq in sc.pair_weights().items():
        sin_d = math.sqrt(angles.sin2_delta_L(jj, kk))
        rate = qq / ((priors[jj] + priors[kk]) * sin_d)
        rates[jj] += rate
        rates[kk] += rate

        gap = float(angles.delta_L[jj, kk] - angles.kappa[jj, kk])
        pair_bounds[(jj, kk)] = max(gap, 0.0)

    weights = [rate * prior for rate, prior in zip(rates, priors)]

    return SimplexProgram(
        m=sc.m,
        pair_bounds=pair_bounds,
        weights=tuple(weights),
        tolerances=sc.tolerances,
    )


def simplex_bound(sc: CloningScenario) -> float:
    """Lower bound on the relative error from the minimum of the sine-sum program.

    This bound is never smaller than :obj:`.multi_state_bound`.

    """

    value, _ = simplex_min(simplex_program(sc))

    return 2 * value


def criteria(f: float, N: int, L: int) -> CriteriaReport:
    """Optimal cloning criteria for two equiprobable pure states with overlap ``f``.

    Returns the maximum success probability of probabilistic exact cloning, the
    maximum global fidelity, and the minima of the relative and absolute errors.
    Identical states (``f=1``) are reported through their limit values.

    """

    _check_overlap("f", f)
    _check_counts(N, L)

    if f == 0:
        return CriteriaReport(1.0, 1.0, 0.0, 0.0, f, N, L, 0.0, 0.0)

    if f == 1:
        ratio = N / L
        return CriteriaReport(
            max_P=ratio,
            max_F=1.0,
            min_R=1 - math.sqrt(ratio),
            min_A=0.0,
            f=f,
            N=N,
            L=L,
            fidelity_deficit=0.0,
            failure_probability=1 - ratio,
        )

    a_N = _one_minus_power(f, N)
    a_L = _one_minus_power(f, L)
    a_2N = _one_minus_power(f, 2 * N)
    a_2L = _one_minus_power(f, 2 * L)

    max_P = a_N / a_L
    failure_probability = f**N * _one_minus_power(f, L - N) / a_L

    if f < 0.5:
        uu = f ** (2 * N)
        vv = f ** (2 * L)
        root = math.sqrt(a_2N * a_2L)
        deficit = ((uu + vv - uu * vv) / (1 + root) - f ** (L + N)) / 2
    else:
        deficit = (_one_minus_power(f, L + N) - math.sqrt(a_2N * a_2L)) / 2

    min_R = _sine_ratio(f**N, a_2N, f**L, a_2L)
    min_A = f**N * math.sqrt(a_2L) - f**L * math.sqrt(a_2N)

    return CriteriaReport(
        max_P=max_P,
        max_F=1 - deficit,
        min_R=min_R,
        min_A=min_A,
        f=f,
        N=N,
        L=L,
        fidelity_deficit=deficit,
        failure_probability=failure_probability,
    )


def _expansions(N: int, L: int, eps: float):
    """Leading-order expansions of the criteria.

    Yields ``(case, criterion, f, complement, prediction, printed)``. When
    ``complement`` is `True` the predictions refer to one minus the criterion.

    """

    ratio = N / L
    root = math.sqrt(ratio)

    yield ("i", "max_P", eps, True, eps**N, eps**N)
    yield ("i", "max_F", eps, True, eps ** (2 * N) / 4, eps ** (2 * N) / 4)
    yield ("i", "min_R", eps, False, eps**N, eps**N)
    yield ("i", "min_A", eps, False, eps**N, eps**N)

    f = 1 - eps

    yield (
        "ii",
        "max_P",
        f,
        False,
        ratio + N * (L - N) * eps / (2 * L),
        ratio - N * (L - N) * eps / (2 * L),
    )

    fidelity_term = (math.sqrt(L) - math.sqrt(N)) ** 2 * eps / 2
    yield ("ii", "max_F", f, True, fidelity_term, fidelity_term)

    yield (
        "ii",
        "min_R",
        f,
        False,
        1 - root + (root * (L + N) / 2 - N) * eps,
        1 - root + (math.sqrt(L * N) - N) * eps,
    )

    abs_term = (math.sqrt(2 * L) - math.sqrt(2 * N)) * math.sqrt(eps)
    yield ("ii", "min_A", f, False, abs_term, abs_term)


def asymptotics_check(N: int, L: int, eps: float) -> polars.DataFrame:
    """Compares the criteria with their leading-order expansions.

    Case ``i`` evaluates the criteria at ``f=eps`` and case ``ii`` at
    ``f=1-eps``. ``prediction`` is the expansion derived from the closed forms
    and ``printed_prediction`` the commonly quoted one, which has the opposite
    sign in the first-order term of ``max_P`` and a different first-order
    coefficient for ``min_R`` in case ``ii``. Residuals of quantities close to
    one are computed on their complements.

    Returns
    -------
    table
        A data frame with columns ``case``, ``criterion``, ``f``, ``value``,
        ``prediction``, ``residual``, ``printed_prediction``, and
        ``printed_residual``.

    """

    if not (0 < eps <= 1e-2):
        raise InvariantViolation(f"eps must be in (0, 1e-2], got {eps!r}.")

    _check_counts(N, L)

    rows: list[dict] = []
    for case, name, f, complement, prediction, printed in _expansions(N, L, eps):
        report = criteria(f, N, L)
        value = getattr(report, name)

        if complement:
            stable = (
                report.failure_probability
                if name == "max_P"
                else report.fidelity_deficit
            )
            residual = abs(stable - prediction)
            printed_residual = abs(stable - printed)
            prediction = 1 - prediction
            printed = 1 - printed
        else:
            residual = abs(value - prediction)
            printed_residual = abs(value - printed)

        rows.append(
            {
                "case": case,
                "criterion": name,
                "f": f,
                "value": value,
                "prediction": prediction,
                "residual": residual,
                "printed_prediction": printed,
                "printed_residual": printed_residual,
            }
        )

    return polars.DataFrame(rows)


def discrimination_limits(
    f: float,
    phi: float,
    N: int,
    p_minus: float = 0.5,
) -> DiscriminationLimits:
    """Limit of the two-state bound for many copies and related discrimination
    figures for the states
    :math:`|\\psi_\\pm\\rangle^{\\otimes N}\\otimes|\\theta_\\pm\\rangle`.

    Returns
    -------
    limits
        The bound for ``M -> inf`` (:math:`2\\min(p_\\pm) f^N\\phi`), the minimum
        inconclusive probability of unambiguous discrimination, and the success
        probability of minimum-error (Helstrom) discrimination.

    """

    _check_overlap("f", f)
    _check_overlap("phi", phi)

    if N < 1:
        raise BadCounts(f"N must be positive, got {N}.")

    if not (0 < p_minus < 1):
        raise BadProbabilities(f"p_minus must be in (0, 1), got {p_minus!r}.")

    p_plus = 1 - p_minus
    p_min = min(p_plus, p_minus)
    p_max = max(p_plus, p_minus)

    overlap = f**N * phi

    if overlap <= math.sqrt(p_min / p_max):
        inconclusive = 2 * math.sqrt(p_plus * p_minus) * overlap
    else:
        inconclusive = p_min + p_max * overlap**2

    helstrom = (1 + math.sqrt(1 - 4 * p_plus * p_minus * overlap**2)) / 2

    return DiscriminationLimits(
        bound_limit=2 * p_min * overlap,
        inconclusive_probability=inconclusive,
        helstrom_success=helstrom,
    )
