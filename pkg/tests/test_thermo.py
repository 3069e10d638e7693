import math

import numpy as np
import pytest

from quatstat import (
    ConstraintViolation,
    DegenerateLevels,
    DomainError,
    EnergySliceParams,
    I,
    J,
    K,
    QMatrix,
    QuadratureUnconverged,
    Quaternion,
    SpectralEnsemble,
    ToyModelParams,
    UnphysicalZ,
    VolumeModel,
    ZeroMeanEnergy,
    bloch_propagator,
    build_toy_hamiltonian,
    dyson_convergence_slope,
    dyson_second_order,
    energy_variance,
    fro_norm,
    log_z_spectral,
    log_z_total,
    mat_mul,
    pressure,
    printed_internal_energy,
    printed_pressure,
    printed_specific_heat,
    re_trace,
    relative_rms,
    thermo_closed_form,
    thermo_spectral,
    toy_metric,
    z1_formula,
    z_spectral,
)
from quatstat.metric import is_quasi_anti_hermitian

OMEGA, V, X = 2.0, 0.5, 1.0


def spin_toy(omega=OMEGA, v=V, x=X):
    return ToyModelParams(
        a=I * (omega / 2), b=I * (-omega / 2), c=J * (v / x), alpha=x * x, gamma=1.0
    )


# -- model construction -------------------------------------------------------


def test_build_toy_hamiltonian_spin_entries():
    toy = spin_toy(x=2.0)
    h = build_toy_hamiltonian(toy)
    assert h.entry(0, 0) == I * 1.0
    assert h.entry(0, 1) == J * 0.25
    assert h.entry(1, 0) == J * 1.0  # -(alpha/gamma) conj(j v/x) = j v x
    assert h.entry(1, 1) == I * (-1.0)
    assert is_quasi_anti_hermitian(h, toy_metric(toy))


def test_build_toy_hamiltonian_decoupled():
    toy = ToyModelParams(a=I * 0.4, b=K * 0.9, c=Quaternion(), alpha=1.0, gamma=2.0)
    h = build_toy_hamiltonian(toy)
    assert fro_norm(h - QMatrix.diag([toy.a, toy.b])) == 0.0


def test_build_toy_hamiltonian_qubit_instance():
    phi = 0.6
    a = Quaternion(0, 0, -2 * math.cos(phi), -2 * math.sin(phi))
    toy = ToyModelParams(a=a, b=Quaternion(), c=Quaternion(), alpha=1.0, gamma=1.0)
    h = build_toy_hamiltonian(toy)
    assert h.entry(0, 0) == a
    assert re_trace(h) == 0.0


def test_toy_params_reject_real_diagonal():
    with pytest.raises(ConstraintViolation):
        ToyModelParams(a=Quaternion(1.0), b=I, c=J, alpha=1.0, gamma=1.0)
    with pytest.raises(ConstraintViolation):
        ToyModelParams(a=I, b=I, c=J, alpha=-1.0, gamma=1.0)


def test_slice_from_toy_and_spin():
    sl = EnergySliceParams.from_toy(spin_toy(x=2.0))
    assert sl == EnergySliceParams(aE=1.0, bE=-1.0, kappa=-0.25)
    assert EnergySliceParams.from_spin(OMEGA, V) == EnergySliceParams(1.0, -1.0, -0.25)
    complex_toy = ToyModelParams(a=I, b=-1.0 * I, c=I * 0.3, alpha=2.0, gamma=1.0)
    sl2 = EnergySliceParams.from_toy(complex_toy)
    assert sl2.kappa == pytest.approx(-0.18, rel=1e-12)
    with pytest.raises(ConstraintViolation):
        EnergySliceParams.from_toy(
            ToyModelParams(a=J, b=I, c=J, alpha=1.0, gamma=1.0)
        )


# -- propagators ---------------------------------------------------------------


def test_bloch_propagator_initial_condition():
    h = build_toy_hamiltonian(spin_toy())
    assert fro_norm(bloch_propagator(h, 0.0) - QMatrix.identity(2)) < 1e-15


def test_bloch_propagator_diagonal():
    toy = ToyModelParams(a=I * 0.7, b=I * (-0.2), c=Quaternion(), alpha=1.0, gamma=1.0)
    h = build_toy_hamiltonian(toy)
    u = bloch_propagator(h, 1.4)
    expected = QMatrix.diag(
        [
            Quaternion.from_complex(np.exp(-0.7j * 1.4)),
            Quaternion.from_complex(np.exp(0.2j * 1.4)),
        ]
    )
    assert fro_norm(u - expected) < 1e-12


def test_bloch_propagator_satisfies_equation():
    h = build_toy_hamiltonian(spin_toy())
    beta, step = 0.9, 1e-6
    lhs = (bloch_propagator(h, beta + step) - bloch_propagator(h, beta - step)) * (
        1.0 / (2 * step)
    )
    rhs = -1.0 * mat_mul(h, bloch_propagator(h, beta))
    assert fro_norm(lhs - rhs) < 1e-8


def test_bloch_spin_trace_oracle():
    h = build_toy_hamiltonian(spin_toy())
    for beta in (0.3, 1.1, 2.6):
        assert re_trace(bloch_propagator(h, beta)) == pytest.approx(
            2 * math.cos(OMEGA * beta / 2) * math.cos(V * beta), abs=1e-12
        )


# -- perturbative propagator ---------------------------------------------------


def test_dyson_zero_perturbation():
    h0 = QMatrix.diag([I, -1.0 * I])
    ui = dyson_second_order(h0, QMatrix.zeros(2), 1.3, steps=32)
    assert fro_norm(ui - QMatrix.identity(2)) < 1e-12


def test_dyson_requires_diagonal_reference_and_min_steps():
    h = build_toy_hamiltonian(spin_toy())
    h0 = QMatrix.diag([I, -1.0 * I])
    with pytest.raises(ConstraintViolation):
        dyson_second_order(h, h - h0, 1.0)
    with pytest.raises(ValueError):
        dyson_second_order(h0, h - h0, 1.0, steps=8)


def test_dyson_quadrature_convergence_guard():
    # a stiff reference with very coarse steps must fail the doubling check
    h0 = QMatrix.diag([I * 40.0, I * (-40.0)])
    hp = QMatrix.from_rows([[Quaternion(), I], [I, Quaternion()]])
    with pytest.raises(QuadratureUnconverged):
        dyson_second_order(h0, hp, 1.0, steps=16, tol=1e-12)


def test_dyson_spin_small_v_trace():
    # second-order trace 2 cos(omega beta/2)(1 - v^2 beta^2/2), error O(v^3)
    omega, beta = 2.0, 1.2
    for v in (1e-2, 1e-3):
        toy = spin_toy(omega=omega, v=v)
        h = build_toy_hamiltonian(toy)
        h0 = QMatrix.diag([toy.a, toy.b])
        ui = dyson_second_order(h0, h - h0, beta, steps=64)
        got = re_trace(mat_mul(bloch_propagator(h0, beta), ui))
        expected = 2 * math.cos(omega * beta / 2) * (1 - v * v * beta * beta / 2)
        assert abs(got - expected) < 1e-8 + 10 * v**3


def test_dyson_error_is_third_order():
    toy = spin_toy()
    h = build_toy_hamiltonian(toy)
    h0 = QMatrix.diag([toy.a, toy.b])
    slope = dyson_convergence_slope(h0, h - h0, t=1.0, steps=128)
    assert slope == pytest.approx(3.0, abs=0.2)


def test_dyson_error_is_third_order_generic_toy():
    rng = np.random.default_rng(12)
    a = Quaternion(0.0, *rng.normal(size=3))
    b = Quaternion(0.0, *rng.normal(size=3))
    c = Quaternion(*rng.normal(size=4))
    toy = ToyModelParams(a=a, b=b, c=c, alpha=1.7, gamma=0.6)
    h = build_toy_hamiltonian(toy)
    h0 = QMatrix.diag([a, b])
    slope = dyson_convergence_slope(h0, h - h0, t=1.0, steps=128)
    assert slope == pytest.approx(3.0, abs=0.2)


# -- slice closed forms ---------------------------------------------------------


def test_z1_formula_no_coupling():
    sl = EnergySliceParams(aE=0.9, bE=-0.3, kappa=0.0)
    beta = 1.7
    assert z1_formula(sl, beta) == pytest.approx(
        math.exp(-0.9 * beta) + math.exp(0.3 * beta), rel=1e-14
    )
    assert z1_formula(sl, beta) == z1_formula(sl, beta, rederived=True)


def test_z1_formula_spin_substitution():
    # printed branch has the coupling term with the opposite sign to the
    # rederived branch; both are exposed, neither silently corrected
    sl = EnergySliceParams.from_spin(OMEGA, V)
    beta = 1.3
    sinh_term = (2 * V * V * beta / OMEGA) * math.sinh(OMEGA * beta / 2)
    printed = 2 * math.cosh(OMEGA * beta / 2) + sinh_term
    rederived = 2 * math.cosh(OMEGA * beta / 2) - sinh_term
    assert z1_formula(sl, beta) == pytest.approx(printed, rel=1e-14)
    assert z1_formula(sl, beta, rederived=True) == pytest.approx(rederived, rel=1e-14)


def test_z1_formula_beta_zero():
    sl = EnergySliceParams(aE=0.4, bE=-1.1, kappa=0.3)
    assert z1_formula(sl, 0.0) == 2.0


def test_z1_degenerate_limit_is_continuous():
    beta = 1.2
    near = EnergySliceParams(aE=0.5 + 1e-9, bE=0.5 - 1e-9, kappa=0.1)
    limit = EnergySliceParams(aE=0.5, bE=0.5, kappa=0.1)
    assert z1_formula(limit, beta) == pytest.approx(z1_formula(near, beta), rel=1e-7)
    expected = math.exp(-0.5 * beta) * (2.0 - 0.1 * beta * beta)
    assert z1_formula(limit, beta) == pytest.approx(expected, rel=1e-14)


def test_slice_matches_numerical_time_ordered_integral():
    # commuting complex parameters: the closed form must reproduce the
    # quadrature of this module's own perturbation integral in both
    # coupling-sign conventions
    aE, bE, kappa, beta = 0.7, -0.4, -0.02, 1.1
    sl = EnergySliceParams(aE, bE, kappa)
    h0 = QMatrix.diag([Quaternion(aE), Quaternion(bE)])
    c = 0.1j
    for rederived in (True, False):
        d = (kappa if rederived else -kappa) / c
        hp = QMatrix.from_complex(np.array([[0, c], [d, 0]]))
        ui = dyson_second_order(h0, hp, beta, steps=128)
        z_numeric = re_trace(mat_mul(bloch_propagator(h0, beta), ui))
        z_closed = z1_formula(sl, beta, rederived=rederived)
        assert abs(z_numeric - z_closed) < 1e-8 + 10 * abs(c) ** 3


def test_thermo_closed_form_two_level_limit():
    sl = EnergySliceParams(aE=1.2, bE=-0.4, kappa=0.0)
    beta, n = 0.9, 5
    report = thermo_closed_form(sl, beta, n_particles=n)
    ea, eb = math.exp(-1.2 * beta), math.exp(0.4 * beta)
    assert report.U == pytest.approx(n * (1.2 * ea - 0.4 * eb) / (ea + eb), rel=1e-12)
    assert report.Z1 == pytest.approx(ea + eb, rel=1e-14)
    assert report.provenance == "closed_form"


def test_thermo_closed_form_identities():
    rng = np.random.default_rng(13)
    checked = 0
    while checked < 40:
        aE, bE = rng.uniform(-1.5, 1.5, size=2)
        if abs(aE - bE) < 0.05:
            continue
        sl = EnergySliceParams(aE=aE, bE=bE, kappa=rng.uniform(-0.3, 0.3))
        beta = rng.uniform(0.1, 2.5)
        try:
            report = thermo_closed_form(sl, beta, n_particles=4)
        except UnphysicalZ:
            continue
        t = 1.0 / beta
        assert report.A == pytest.approx(report.U - t * report.S, rel=1e-9, abs=1e-9)
        dt = 1e-5 * t

        def u_at(temp):
            return thermo_closed_form(sl, 1.0 / temp, n_particles=4).U

        fd = (u_at(t + dt) - u_at(t - dt)) / (2 * dt) / 4
        assert report.Cv == pytest.approx(fd, rel=1e-6, abs=1e-9)
        checked += 1


def test_thermo_closed_form_unphysical_branch():
    sl = EnergySliceParams.from_spin(OMEGA, V)
    with pytest.raises(UnphysicalZ):
        thermo_closed_form(sl, 12.0, rederived=True)


def test_printed_forms_against_derivation_chain():
    # the displayed U and S are exact derivatives of the displayed Z1; the
    # displayed specific heat carries a sign flip and a stray 1/N
    sl = EnergySliceParams(aE=1.0, bE=-0.5, kappa=0.2)
    beta, n = 0.8, 3
    report = thermo_closed_form(sl, beta, n_particles=n)
    assert printed_internal_energy(sl, beta, n) == pytest.approx(report.U, rel=1e-12)
    assert [d.quantity for d in report.discrepancies] == ["Cv"]
    assert printed_specific_heat(sl, beta, n) == pytest.approx(
        -report.Cv / n, rel=1e-12
    )


def test_printed_forms_reject_degenerate_levels():
    sl = EnergySliceParams(aE=0.5, bE=0.5, kappa=0.1)
    with pytest.raises(DegenerateLevels):
        printed_internal_energy(sl, 1.0)
    with pytest.raises(DegenerateLevels):
        printed_specific_heat(sl, 1.0)


# -- pressure -------------------------------------------------------------------


def two_level_volume_model(c0=0.8, h=1e-4):
    return VolumeModel(
        aE=lambda vol: c0 / vol,
        bE=lambda vol: -c0 / vol,
        kappa=lambda vol: 0.0,
        h=h,
        domain=(0.5, 4.0),
    )


def test_pressure_volume_independent_is_zero():
    vm = VolumeModel(aE=lambda _: 0.7, bE=lambda _: -0.7, kappa=lambda _: 0.1, h=1e-4)
    assert pressure(vm, beta=1.1, volume=2.0) == pytest.approx(0.0, abs=1e-10)


def test_pressure_matches_analytic_two_level():
    c0, beta, vol, n = 0.8, 1.3, 2.0, 7
    vm = two_level_volume_model(c0)
    expected = -(n * c0 / vol**2) * math.tanh(c0 * beta / vol)
    assert pressure(vm, beta, vol, n_particles=n) == pytest.approx(expected, rel=1e-6)


def test_pressure_richardson_step_halving():
    vm = two_level_volume_model(h=1e-3)
    finer = two_level_volume_model(h=5e-4)
    p1 = pressure(vm, 1.3, 2.0)
    p2 = pressure(finer, 1.3, 2.0)
    assert abs(p2 - p1) < 1e-8 * max(1.0, abs(p2))


def test_pressure_domain_and_display_log():
    vm = two_level_volume_model()
    with pytest.raises(DomainError):
        pressure(vm, 1.0, 0.5)
    log = []
    value = pressure(vm, 1.3, 2.0, n_particles=2, log=log)
    assert len(log) == 1 and log[0].quantity == "P"
    assert log[0].printed_value == pytest.approx(value, rel=1e-6)
    assert printed_pressure(vm, 1.3, 2.0, 2) == log[0].printed_value


# -- spectral path ---------------------------------------------------------------


def spin_ensemble(omega=OMEGA, v=V, n=1):
    return SpectralEnsemble(((omega / 2 + v, 1), (omega / 2 - v, 1)), n_particles=n)


def test_z_spectral_examples():
    single = SpectralEnsemble(((1.7, 1),))
    assert z_spectral(single, 0.9) == pytest.approx(math.exp(-1.53), rel=1e-14)
    beta = 1.4
    assert z_spectral(spin_ensemble(), beta) == pytest.approx(
        2 * math.exp(-beta * OMEGA / 2) * math.cosh(beta * V), rel=1e-13
    )
    counts = SpectralEnsemble(((0.0, 2), (1.0, 3)))
    assert z_spectral(counts, 0.0) == 5.0


def test_z_spectral_overflow_safety():
    huge = SpectralEnsemble(((-1000.0, 1), (-999.0, 1)))
    assert math.isfinite(log_z_spectral(huge, 2.0))
    assert log_z_spectral(huge, 2.0) == pytest.approx(
        2000.0 + math.log1p(math.exp(-2.0)), rel=1e-14
    )


def test_thermo_spectral_limits():
    e = SpectralEnsemble(((0.0, 1), (1.0, 2), (3.0, 1)), n_particles=1)
    hot = thermo_spectral(e, 1e-9)
    assert hot.U == pytest.approx((0.0 + 2 * 1.0 + 3.0) / 4.0, rel=1e-6)
    cold = thermo_spectral(e, 60.0)
    assert cold.U == pytest.approx(0.0, abs=1e-12)
    with pytest.raises(ValueError):
        thermo_spectral(e, 0.0)


def test_thermo_spectral_spin_oracle():
    for beta in (0.4, 1.0, 3.0):
        report = thermo_spectral(spin_ensemble(n=6), beta)
        assert report.U / 6 == pytest.approx(
            OMEGA / 2 - V * math.tanh(beta * V), rel=1e-12
        )
        assert report.A == pytest.approx(report.U - report.S / beta, rel=1e-10)
        assert report.S >= 0.0


def test_thermo_spectral_entropy_nonnegative():
    rng = np.random.default_rng(15)
    for _ in range(20):
        n_levels = rng.integers(2, 6)
        levels = tuple(
            (float(e), int(g))
            for e, g in zip(
                rng.uniform(-2, 2, n_levels), rng.integers(1, 4, n_levels)
            )
        )
        beta = rng.uniform(0.05, 4.0)
        assert thermo_spectral(SpectralEnsemble(levels), beta).S >= 0.0


def test_z_spectral_monotone_for_positive_energies():
    e = spin_ensemble()
    betas = np.linspace(0.1, 4.0, 30)
    values = [z_spectral(e, b) for b in betas]
    assert all(a > b for a, b in zip(values, values[1:]))


def test_energy_variance():
    assert energy_variance(SpectralEnsemble(((2.0, 3),)), 1.3) == 0.0
    pm = SpectralEnsemble(((-1.0, 1), (1.0, 1)))
    assert energy_variance(pm, 0.0) == pytest.approx(1.0, rel=1e-14)


def test_energy_variance_is_minus_du_dbeta():
    rng = np.random.default_rng(14)
    for _ in range(10):
        n_levels = rng.integers(2, 6)
        levels = tuple(
            (float(e), int(g))
            for e, g in zip(
                rng.uniform(-2, 2, n_levels), rng.integers(1, 4, n_levels)
            )
        )
        e = SpectralEnsemble(levels)
        beta = rng.uniform(0.2, 2.0)
        step = 1e-5

        def u_one(b):
            return thermo_spectral(e, b).U

        fd = -(u_one(beta + step) - u_one(beta - step)) / (2 * step)
        assert energy_variance(e, beta) == pytest.approx(fd, rel=1e-6, abs=1e-9)


def test_relative_rms():
    e1 = spin_ensemble(n=1)
    e4 = spin_ensemble(n=4)
    beta = 0.7
    assert relative_rms(e4, beta) * 2.0 == relative_rms(e1, beta)
    assert relative_rms(SpectralEnsemble(((2.0, 1),)), 1.0) == 0.0
    zero_one = SpectralEnsemble(((0.0, 1), (1.0, 1)), n_particles=1)
    assert relative_rms(zero_one, 0.0) == pytest.approx(1.0, rel=1e-14)
    symmetric = SpectralEnsemble(((-1.0, 1), (1.0, 1)))
    with pytest.raises(ZeroMeanEnergy):
        relative_rms(symmetric, 0.0)


def test_partition_function_factorizes_in_log():
    e = spin_ensemble()
    for n in (2, 3, 7):
        en = SpectralEnsemble(e.levels, n_particles=n)
        beta = 0.9
        direct = math.log(z_spectral(e, beta) ** n)
        assert log_z_total(en, beta) == pytest.approx(direct, rel=1e-12)


def test_picture_invariance_of_formal_trace():
    # Re Tr exp(-beta H) is invariant under the metric similarity map
    from quatstat import build_metric, inverse

    h = build_toy_hamiltonian(spin_toy(x=2.0))
    metric = build_metric(2.0, 1.0, 0.0)
    beta = 1.1
    rho = bloch_propagator(h, beta)
    conjugated = mat_mul(metric.eta, mat_mul(rho, inverse(metric.eta)))
    assert re_trace(conjugated) == pytest.approx(re_trace(rho), abs=1e-10)
