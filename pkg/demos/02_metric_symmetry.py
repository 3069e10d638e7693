"""Metric operators and adjoint-symmetry classification.

Builds the general 2-dimensional positive metric from its square-root
parameters, classifies Hamiltonians against it, and evaluates metric
expectation values of observables.
"""

import numpy as np

from quatstat import (
    I,
    J,
    QMatrix,
    Quaternion,
    build_metric,
    classification_report,
    dagger,
    eta_adjoint,
    expectation,
    generalized_density,
    mat_mul,
    vec_outer,
)

print("== the general positive metric ==")
metric = build_metric(1.0, 2.0, 1j)
z1, _ = metric.eta.complex_pair()
print("theta parameters (x, y, z) = (1, 2, i) give eta =")
print(np.array_str(z1, precision=3))
print("positive definite:", metric.positive)

print("\n== classifying the spin Hamiltonian ==")
omega, v, x = 2.0, 0.5, 2.0
h = QMatrix.from_rows(
    [[I * (omega / 2), J * (v / x)], [J * (v * x), I * (-omega / 2)]]
)
spin_metric = build_metric(x, 1.0, 0.0)  # eta' = diag(x^2, 1)
for name, verdict in classification_report(h, spin_metric).items():
    print(f"{name}: {verdict}")

print("\n== observables and expectation values ==")
# fixed points of the metric adjoint are the physical observables
b = QMatrix.from_rows(
    [[Quaternion(0.4), J * 0.2], [Quaternion(0.0, 0.1), Quaternion(-0.3)]]
)
observable = mat_mul(spin_metric.eta_inv, b + dagger(b))
residual = eta_adjoint(observable, spin_metric) - observable
print("adjoint fixed-point residual:", max(abs(residual.comp.ravel())))

psi = (I * 0.5, J * 0.5)
rho = vec_outer(psi, psi)
rho_tilde = generalized_density(rho, spin_metric)
print("generalized density rho*eta, top-left entry:", rho_tilde.entry(0, 0))
print("expectation <Q>:", expectation(observable, rho, spin_metric))
