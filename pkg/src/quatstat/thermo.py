"""Partition functions and canonical-ensemble thermodynamics.

Two computational paths are deliberately kept separate:

* the **formal path**: ``Re Tr exp(-beta H)`` for the anti-Hermitian
  quaternionic Hamiltonian itself, which oscillates in ``beta``;
* the **spectral path**: real energies ``E_r`` read off the standard
  eigenvalues ``i E_r``, fed into the usual Boltzmann sums.

Conflating the two is a classic source of confusion for these models, so
both are exposed and their disagreement is a reportable finding, not a bug.

The second-order closed form of the single-particle partition function on
the commuting-scalar slice is likewise implemented twice: once in its
conventional display form ("printed") and once re-derived from this
module's own time-ordered perturbation integral ("rederived"). The two
differ in the sign of the coupling term; disagreements between printed and
derived quantities are collected into a structured discrepancy log rather
than being silently corrected.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy.integrate import cumulative_simpson, simpson

from .errors import (
    ConstraintViolation,
    DegenerateLevels,
    DomainError,
    NotNormal,
    QuadratureUnconverged,
    UnphysicalZ,
    ZeroMeanEnergy,
)
from .linalg import QMatrix, _embed, fro_norm, mat_exp, mat_mul, unembed
from .metric import MetricOperator, build_metric, is_quasi_anti_hermitian
from .quaternion import Quaternion, is_imaginary, qconj, qmul

#: Two slice energies closer than this trigger the analytic degenerate limit.
DEGENERACY_TOL = 1e-9


# ---------------------------------------------------------------------------
# Parameter bundles
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ToyModelParams:
    """General quaternionic two-level model with a diagonal metric.

    The Hamiltonian is ``[[a, c], [d, b]]`` with ``d`` fixed by the
    anti-Hermiticity constraint ``d = -(alpha/gamma) conj(c)`` under the
    metric ``diag(alpha, gamma)``; ``a`` and ``b`` must be purely imaginary
    quaternions.
    """

    a: Quaternion
    b: Quaternion
    c: Quaternion
    alpha: float
    gamma: float

    def __post_init__(self):
        if not is_imaginary(self.a) or not is_imaginary(self.b):
            raise ConstraintViolation("diagonal entries must be purely imaginary")
        if not (self.alpha > 0.0 and self.gamma > 0.0):
            raise ConstraintViolation("metric parameters alpha, gamma must be positive")

    @property
    def d(self) -> Quaternion:
        return qconj(self.c) * (-self.alpha / self.gamma)


@dataclass(frozen=True)
class EnergySliceParams:
    """Commuting-scalar slice of the two-level model.

    ``aE`` and ``bE`` are real energy parameters and ``kappa`` the real
    effective coupling ``(alpha/gamma) c^2`` (real for complex ``c`` and for
    ``c`` in the j-line, where it equals ``-(alpha/gamma)|c|^2``). The
    closed forms divide by ``aE - bE``; coincident energies are handled by
    the analytic degenerate limit.
    """

    aE: float
    bE: float
    kappa: float

    @classmethod
    def from_toy(cls, p: ToyModelParams, tol: float = 1e-10) -> "EnergySliceParams":
        """Formal scalar reading of quaternionic toy parameters.

        Requires ``a`` and ``b`` on the complex-imaginary line (``a = i aE``)
        and a coupling with real square, so that the slice expressions make
        sense as commuting scalars.
        """
        for name, q in (("a", p.a), ("b", p.b)):
            if max(abs(q.q2), abs(q.q3)) > tol:
                raise ConstraintViolation(
                    f"slice reading needs complex-imaginary {name}, got {q}"
                )
        c2 = qmul(p.c, p.c)
        if max(abs(c2.q1), abs(c2.q2), abs(c2.q3)) > tol * max(1.0, abs(c2)):
            raise ConstraintViolation("c^2 must be real for the scalar slice")
        return cls(aE=p.a.q1, bE=p.b.q1, kappa=(p.alpha / p.gamma) * c2.q0)

    @classmethod
    def from_spin(cls, omega: float, v: float) -> "EnergySliceParams":
        """Scalar slice of the spin model: energies ``+-omega/2``, coupling ``-v^2``."""
        return cls(aE=omega / 2.0, bE=-omega / 2.0, kappa=-(v * v))


@dataclass(frozen=True)
class SpectralEnsemble:
    """Real energy levels with multiplicities; the canonical-ensemble input.

    ``levels`` is a sorted tuple of ``(energy, multiplicity)`` pairs,
    ``n_particles`` the number of independent distinguishable particles and
    ``k`` the Boltzmann constant (1 in natural units).
    """

    levels: tuple[tuple[float, int], ...]
    n_particles: int = 1
    k: float = 1.0

    def __post_init__(self):
        levels = tuple(sorted((float(e), int(g)) for e, g in self.levels))
        if not levels:
            raise ConstraintViolation("ensemble needs at least one level")
        if any(g < 1 for _, g in levels):
            raise ConstraintViolation("multiplicities must be positive integers")
        if self.n_particles < 1:
            raise ConstraintViolation("particle count must be at least 1")
        object.__setattr__(self, "levels", levels)

    @property
    def energies(self) -> np.ndarray:
        return np.array([e for e, _ in self.levels])

    @property
    def degeneracies(self) -> np.ndarray:
        return np.array([g for _, g in self.levels], dtype=float)


@dataclass(frozen=True)
class DiscrepancyRecord:
    """One printed-vs-derived disagreement at a single inverse temperature."""

    quantity: str
    printed_value: float
    derived_value: float
    beta: float

    def to_dict(self) -> dict:
        return {
            "quantity": self.quantity,
            "printed_value": self.printed_value,
            "derived_value": self.derived_value,
            "beta": self.beta,
        }


@dataclass
class ThermoReport:
    """Thermodynamic quantities at one inverse temperature.

    ``A``, ``S`` and ``U`` are extensive (carry the particle number); ``Cv``
    is the specific heat per particle. ``discrepancies`` collects printed
    display values that disagree with the derivation chain.
    """

    beta: float
    Z1: float
    A: float
    S: float
    U: float
    Cv: float
    P: float | None = None
    provenance: str = "closed_form"
    discrepancies: list[DiscrepancyRecord] = field(default_factory=list)


@dataclass
class VolumeModel:
    """Slice parameters as functions of volume, for pressure evaluation.

    ``h`` is the finite-difference step used for the parameter derivatives;
    ``domain`` optionally restricts the admissible volumes.
    """

    aE: Callable[[float], float]
    bE: Callable[[float], float]
    kappa: Callable[[float], float]
    h: float = 1e-5
    domain: tuple[float, float] | None = None

    def slice_at(self, volume: float) -> EnergySliceParams:
        return EnergySliceParams(
            aE=self.aE(volume), bE=self.bE(volume), kappa=self.kappa(volume)
        )


# ---------------------------------------------------------------------------
# Hamiltonian construction and propagators
# ---------------------------------------------------------------------------


def build_toy_hamiltonian(p: ToyModelParams) -> QMatrix:
    """Assemble ``[[a, c], [d, b]]`` and certify its symmetry class."""
    h = QMatrix.from_rows([[p.a, p.c], [p.d, p.b]])
    if not is_quasi_anti_hermitian(h, toy_metric(p)):
        raise ConstraintViolation("constructed Hamiltonian failed certification")
    return h


def toy_metric(p: ToyModelParams) -> MetricOperator:
    """Diagonal metric ``diag(alpha, gamma)`` of the toy model."""
    return build_metric(math.sqrt(p.alpha), math.sqrt(p.gamma), 0.0)


def bloch_propagator(h: QMatrix, t: float) -> QMatrix:
    """Solution ``exp(-H t)`` of ``dU/dt = -H U`` with ``U(0) = 1``."""
    return mat_exp(-h, t)


def _check_diagonal(m: QMatrix):
    off = m.comp.copy()
    off[np.arange(m.n), np.arange(m.n), :] = 0.0
    if np.abs(off).max() > 1e-12 * max(1.0, fro_norm(m)):
        raise ConstraintViolation("reference matrix must be diagonal")


def _dyson_integrate(a0, ap, t, steps):
    """Second-order time-ordered integral in the complex embedding."""
    w, v = np.linalg.eig(a0)
    vinv = np.linalg.inv(v)
    if np.abs((v * w) @ vinv - a0).max() > 1e-10 * max(1.0, np.abs(a0).max()):
        raise NotNormal("reference matrix could not be diagonalized reliably")
    s = np.linspace(0.0, t, steps + 1)
    # interaction-picture generator: U0(s)^-1 Hp U0(s) with U0(s) = exp(-a0 s)
    b = vinv @ ap @ v
    phases = np.exp(np.subtract.outer(w, w)[None, :, :] * s[:, None, None])
    h_int = np.einsum("ab,kbc,cd->kad", v, phases * b, vinv)
    # cumulative_simpson casts complex input to real; integrate parts separately
    first = cumulative_simpson(
        h_int.real, x=s, axis=0, initial=0.0
    ) + 1j * cumulative_simpson(h_int.imag, x=s, axis=0, initial=0.0)
    product = h_int @ first
    second = simpson(product.real, x=s, axis=0) + 1j * simpson(
        product.imag, x=s, axis=0
    )
    dim = a0.shape[0]
    return np.eye(dim, dtype=complex) - first[-1] + second


def dyson_second_order(
    h0: QMatrix, hp: QMatrix, t: float, steps: int = 256, tol: float = 1e-9
) -> QMatrix:
    """Interaction-picture propagator truncated at second order.

    Returns ``U_I(t) ~ 1 - int H_I + int int H_I H_I`` with
    ``H_I(s) = U0(s)^-1 Hp U0(s)`` and ``U0(s) = exp(-H0 s)``; the full
    propagator is ``U0(t) U_I(t)``. The time-ordered double integral is
    evaluated by composite quadrature in the complex embedding; the result
    is recomputed with twice the steps and :class:`QuadratureUnconverged`
    is raised when the two differ beyond ``tol``.
    """
    h0._check_same_dim(hp)
    if steps < 16:
        raise ValueError("steps must be at least 16")
    _check_diagonal(h0)
    if t == 0.0:
        return QMatrix.identity(h0.n)
    a0, ap = _embed(h0), _embed(hp)
    coarse = _dyson_integrate(a0, ap, float(t), steps)
    fine = _dyson_integrate(a0, ap, float(t), 2 * steps)
    drift = np.abs(fine - coarse).max()
    if drift > tol * max(1.0, np.abs(fine).max()):
        raise QuadratureUnconverged(
            f"step doubling moved the result by {drift:.3e} (tol {tol:.1e})"
        )
    return unembed(fine)


def dyson_convergence_slope(
    h0: QMatrix,
    hp: QMatrix,
    t: float = 1.0,
    scales: Sequence[float] = (1e-1, 1e-2, 1e-3),
    steps: int = 256,
) -> float:
    """Order of the truncation error against the exact propagator.

    Rescales the perturbation so that ``|Hp|`` runs over ``scales``,
    measures ``|U0 U_I - exp(-(H0+Hp) t)|`` and returns the log-log slope.
    A value near 3 certifies the second-order truncation.
    """
    base = fro_norm(hp)
    if base == 0.0:
        raise ConstraintViolation("perturbation must be nonzero for the order study")
    u0 = bloch_propagator(h0, t)
    errors = []
    for scale in scales:
        hps = hp * (scale / base)
        ui = dyson_second_order(h0, hps, t, steps=steps)
        exact = bloch_propagator(h0 + hps, t)
        errors.append(fro_norm(mat_mul(u0, ui) - exact))
    slope, _ = np.polyfit(np.log(np.array(scales)), np.log(np.array(errors)), 1)
    return float(slope)


# ---------------------------------------------------------------------------
# Closed forms on the commuting-scalar slice
# ---------------------------------------------------------------------------


def _slice_z1_derivatives(p: EnergySliceParams, beta: float, mu: float):
    """Value and first two beta derivatives of the slice partition function.

    ``mu`` is the signed coupling entering ``Z1 = Ea + Eb + mu*beta*(Eb-Ea)/(aE-bE)``.
    Near-coincident energies switch to the analytic limit
    ``Z1 = exp(-m beta) (2 + mu beta^2)`` with ``m`` the mean energy.
    """
    a, b = p.aE, p.bE
    delta = a - b
    if abs(delta) < DEGENERACY_TOL:
        m = 0.5 * (a + b)
        em = math.exp(-m * beta)
        poly = 2.0 + mu * beta * beta
        z1 = em * poly
        z1p = em * (-m * poly + 2.0 * mu * beta)
        z1pp = em * (m * m * poly - 4.0 * m * mu * beta + 2.0 * mu)
        return z1, z1p, z1pp
    ea, eb = math.exp(-a * beta), math.exp(-b * beta)
    g = mu / delta
    z1 = ea + eb + g * beta * (eb - ea)
    z1p = -a * ea - b * eb + g * ((eb - ea) + beta * (a * ea - b * eb))
    z1pp = (
        a * a * ea
        + b * b * eb
        + g * (2.0 * (a * ea - b * eb) + beta * (b * b * eb - a * a * ea))
    )
    return z1, z1p, z1pp


def z1_formula(p: EnergySliceParams, beta: float, rederived: bool = False) -> float:
    """Single-particle partition function on the slice, to second order.

    With ``rederived=False`` the coupling term carries the conventional
    display sign, ``Z1 = Ea + Eb - kappa*beta*(Eb - Ea)/(aE - bE)``, which
    corresponds to an off-diagonal product ``c*d = -kappa`` (real coupling).
    With ``rederived=True`` the sign follows from carrying this module's
    own second-order time-ordered integral with the anti-Hermiticity
    constraint ``d = -(alpha/gamma) conj(c)`` for purely imaginary
    quaternionic coupling, where ``c*d = +kappa``. The two branches differ;
    comparisons between them belong in the discrepancy log.
    """
    mu = p.kappa if rederived else -p.kappa
    z1, _, _ = _slice_z1_derivatives(p, beta, mu)
    return z1


def thermo_closed_form(
    p: EnergySliceParams,
    beta: float,
    n_particles: int = 1,
    k: float = 1.0,
    rederived: bool = False,
    diff_tol: float = 1e-8,
) -> ThermoReport:
    """Slice thermodynamics generated from ``Z1`` by analytic differentiation.

    ``A = -(N/beta) ln Z1``; ``U``, ``S`` and ``Cv`` come from the first two
    beta derivatives of the chosen ``Z1`` branch, so every report satisfies
    ``A = U - T S`` and ``Cv = (1/N) dU/dT`` by construction. The display
    forms of ``U``, ``S`` and ``Cv`` are evaluated alongside and logged into
    ``report.discrepancies`` wherever they disagree with the derivation
    chain beyond ``diff_tol``.
    """
    if beta <= 0.0:
        raise ValueError("beta must be positive on the thermodynamic branch")
    n = int(n_particles)
    mu = p.kappa if rederived else -p.kappa
    z1, z1p, z1pp = _slice_z1_derivatives(p, beta, mu)
    if not (z1 > 0.0):
        raise UnphysicalZ(f"Z1 = {z1:.6g} is not positive at beta = {beta:.6g}")
    a_free = -(n / beta) * math.log(z1)
    u = -n * z1p / z1
    s = n * k * math.log(z1) + k * beta * u
    cv = k * beta * beta * (z1pp * z1 - z1p * z1p) / (z1 * z1)
    report = ThermoReport(
        beta=beta, Z1=z1, A=a_free, S=s, U=u, Cv=cv, provenance="closed_form"
    )
    if abs(p.aE - p.bE) >= DEGENERACY_TOL:
        evaluators = {
            "U": lambda: printed_internal_energy(p, beta, n),
            "S": lambda: printed_entropy(p, beta, n, k),
            "Cv": lambda: printed_specific_heat(p, beta, n, k),
        }
        derived = {"U": u, "S": s, "Cv": cv}
        for quantity, evaluate in evaluators.items():
            try:
                printed_value = evaluate()
            except (OverflowError, UnphysicalZ):
                continue
            derived_value = derived[quantity]
            if abs(printed_value - derived_value) > diff_tol * max(
                1.0, abs(derived_value)
            ):
                report.discrepancies.append(
                    DiscrepancyRecord(quantity, printed_value, derived_value, beta)
                )
    return report


def _require_distinct(p: EnergySliceParams):
    if abs(p.aE - p.bE) < DEGENERACY_TOL:
        raise DegenerateLevels(
            f"display form requires distinct energies, got aE = {p.aE}, bE = {p.bE}"
        )


def printed_internal_energy(
    p: EnergySliceParams, beta: float, n_particles: int = 1
) -> float:
    """Display form of the slice internal energy (literal transcription)."""
    _require_distinct(p)
    a, b, kp = p.aE, p.bE, p.kappa
    delta = a - b
    xb, xa = math.exp(beta * b), math.exp(beta * a)
    num = xb * (a * (delta + kp * beta) - kp) + xa * (b * (delta - kp * beta) + kp)
    den = xb * (delta + kp * beta) + xa * (delta - kp * beta)
    return n_particles * num / den


def printed_entropy(
    p: EnergySliceParams, beta: float, n_particles: int = 1, k: float = 1.0
) -> float:
    """Display form of the slice entropy (literal transcription)."""
    _require_distinct(p)
    a, b, kp = p.aE, p.bE, p.kappa
    delta = a - b
    z1 = z1_formula(p, beta, rederived=False)
    if not (z1 > 0.0):
        raise UnphysicalZ(f"Z1 = {z1:.6g} is not positive at beta = {beta:.6g}")
    xb, xa = math.exp(beta * b), math.exp(beta * a)
    num = (a * delta - kp + kp * beta * a) * xb + (b * delta + kp - kp * beta * b) * xa
    den = (delta + kp * beta) * xb + (delta - kp * beta) * xa
    return n_particles * k * math.log(z1) + n_particles * k * beta * num / den


def printed_specific_heat(
    p: EnergySliceParams, beta: float, n_particles: int = 1, k: float = 1.0
) -> float:
    """Display form of the slice specific heat (literal transcription).

    Kept verbatim, including its overall sign and the stray ``1/N`` factor;
    its disagreement with the derivation chain is a reported finding.
    """
    _require_distinct(p)
    a, b, kp = p.aE, p.bE, p.kappa
    delta = a - b
    xb, xa = math.exp(beta * b), math.exp(beta * a)
    bracket = delta * delta * (delta * delta - (kp * beta) ** 2 - 4.0 * kp)
    num = -math.exp(beta * (a + b)) * (bracket + 2.0 * kp * kp) + kp * kp * (
        math.exp(2.0 * beta * a) + math.exp(2.0 * beta * b)
    )
    den = (xb * (delta + kp * beta) + xa * (delta - kp * beta)) ** 2
    return (beta * beta * k / n_particles) * num / den


def printed_pressure(
    vm: VolumeModel, beta: float, volume: float, n_particles: int = 1
) -> float:
    """Display form of the slice pressure, with parameter derivatives by
    central differences of the volume model."""
    p = vm.slice_at(volume)
    _require_distinct(p)
    h = vm.h
    ap = (vm.aE(volume + h) - vm.aE(volume - h)) / (2.0 * h)
    bp = (vm.bE(volume + h) - vm.bE(volume - h)) / (2.0 * h)
    kpp = (vm.kappa(volume + h) - vm.kappa(volume - h)) / (2.0 * h)
    a, b, kp = p.aE, p.bE, p.kappa
    delta = a - b
    ea, eb = math.exp(-a * beta), math.exp(-b * beta)
    num_a = -delta * delta * ap - kp * (beta * delta + 1.0) * ap + kp * bp + kpp * delta
    num_b = -delta * delta * bp - kp * (1.0 - beta * delta) * bp + kp * ap - kpp * delta
    den = (delta * delta + kp * beta * delta) * ea + (
        delta * delta - kp * beta * delta
    ) * eb
    return n_particles * (num_a * ea + num_b * eb) / den


def pressure(
    vm: VolumeModel,
    beta: float,
    volume: float,
    n_particles: int = 1,
    rederived: bool = False,
    log: list[DiscrepancyRecord] | None = None,
) -> float:
    """Pressure ``-dA/dV`` at fixed beta, by Richardson-extrapolated
    central differences of the free energy.

    When ``log`` is given, the display-form pressure is evaluated as well
    and the pair is appended to the log.
    """
    h = vm.h
    if vm.domain is not None:
        lo, hi = vm.domain
        if not (lo <= volume - h and volume + h <= hi):
            raise DomainError(
                f"volume {volume} with step {h} leaves the domain [{lo}, {hi}]"
            )

    def free_energy(vol: float) -> float:
        z1 = z1_formula(vm.slice_at(vol), beta, rederived=rederived)
        if not (z1 > 0.0):
            raise UnphysicalZ(f"Z1 = {z1:.6g} is not positive at V = {vol:.6g}")
        return -(n_particles / beta) * math.log(z1)

    def central(step: float) -> float:
        return (free_energy(volume + step) - free_energy(volume - step)) / (2.0 * step)

    coarse, fine = central(h), central(h / 2.0)
    derivative = (4.0 * fine - coarse) / 3.0
    result = -derivative
    if log is not None:
        log.append(
            DiscrepancyRecord(
                "P", printed_pressure(vm, beta, volume, n_particles), result, beta
            )
        )
    return result


# ---------------------------------------------------------------------------
# Spectral path
# ---------------------------------------------------------------------------


def _boltzmann_weights(e: SpectralEnsemble, beta: float):
    """Shifted Boltzmann weights; stable against overflow for any beta sign."""
    exponents = -beta * e.energies
    shift = exponents.max()
    w = e.degeneracies * np.exp(exponents - shift)
    return w, shift


def z_spectral(e: SpectralEnsemble, beta: float) -> float:
    """Single-particle partition function ``sum g_r exp(-beta E_r)``."""
    w, shift = _boltzmann_weights(e, beta)
    return float(np.exp(shift) * w.sum())


def log_z_spectral(e: SpectralEnsemble, beta: float) -> float:
    w, shift = _boltzmann_weights(e, beta)
    return float(shift + np.log(w.sum()))


def log_z_total(e: SpectralEnsemble, beta: float) -> float:
    """Log partition function of N independent particles: ``N ln Z1``."""
    return e.n_particles * log_z_spectral(e, beta)


def _level_moments(e: SpectralEnsemble, beta: float):
    w, _ = _boltzmann_weights(e, beta)
    prob = w / w.sum()
    mean = float(prob @ e.energies)
    var = float(prob @ (e.energies - mean) ** 2)
    return mean, var


def thermo_spectral(e: SpectralEnsemble, beta: float) -> ThermoReport:
    """Exact thermodynamics from the Boltzmann sum over real energies.

    ``U`` is the extensive mean energy, ``A = -(N/beta) ln Z1``, ``S``
    follows from ``A = U - T S``, and the specific heat per particle is
    ``k beta^2`` times the single-particle energy variance.
    """
    if beta == 0.0:
        raise ValueError("beta must be nonzero for the free-energy branch")
    n, k = e.n_particles, e.k
    mean, var = _level_moments(e, beta)
    log_z1 = log_z_spectral(e, beta)
    a_free = -(n / beta) * log_z1
    u = n * mean
    s = k * beta * (u - a_free)
    cv = k * beta * beta * var
    return ThermoReport(
        beta=beta,
        Z1=float(np.exp(log_z1)),
        A=a_free,
        S=s,
        U=u,
        Cv=cv,
        provenance="spectral",
    )


def energy_variance(e: SpectralEnsemble, beta: float) -> float:
    """Single-particle energy variance ``<E^2> - <E>^2`` from the weights."""
    _, var = _level_moments(e, beta)
    return var


def relative_rms(e: SpectralEnsemble, beta: float) -> float:
    """Relative r.m.s. energy fluctuation of the N-particle system.

    Independent particles add variances, so the ratio carries an explicit
    ``1/sqrt(N)`` prefactor: quadrupling ``N`` halves the result exactly.
    """
    mean, var = _level_moments(e, beta)
    scale = max(1.0, float(np.abs(e.energies).max()))
    if abs(mean) <= 1e-12 * scale:
        raise ZeroMeanEnergy("mean energy vanishes; relative fluctuation undefined")
    return math.sqrt(var) / mean / math.sqrt(e.n_particles)
