"""Tests for the rigid-body vector field, energies, and model dataclasses."""

import numpy as np
import pytest
from numpy.testing import assert_allclose

from ddb import (
    DissipationMetric,
    InertiaModel,
    casimir,
    energy,
    energy_rate,
    forced_field,
    lagrangian,
    momentum_of,
    phi,
    velocity_of,
)
from ddb.dynamics import forced_field_jacobian


RNG = np.random.default_rng(771203)

# benchmark body: moments (1, 1.3, 0.5), isotropic gain 0.5
INERTIA = InertiaModel(1.0, 1.3, 0.5)
METRIC = DissipationMetric.isotropic(0.5)
OMEGA0 = np.array([0.0, 0.05, 1.0])
M0 = np.array([0.0, 0.065, 0.5])


def random_metric():
    a = RNG.normal(size=(3, 3))
    return DissipationMetric.from_matrix(a @ a.T)


def test_inertia_rejects_nonpositive_moments():
    with pytest.raises(ValueError):
        InertiaModel(1.0, -0.2, 0.5)
    with pytest.raises(ValueError):
        InertiaModel(0.0, 1.0, 1.0)


def test_inertia_matrices():
    assert_allclose(INERTIA.moments, [1.0, 1.3, 0.5], atol=0)
    assert_allclose(INERTIA.matrix, np.diag([1.0, 1.3, 0.5]), atol=0)
    assert_allclose(INERTIA.inverse @ INERTIA.matrix, np.eye(3), atol=1e-16)
    assert INERTIA == InertiaModel.from_moments((1.0, 1.3, 0.5))


def test_inertia_quadratic_form():
    # J = (tr(I)/2) Id - I with tr(I)/2 = 1.4
    assert_allclose(
        INERTIA.quadratic_form, np.diag([0.4, 0.1, 0.9]), atol=1e-16
    )
    assert not INERTIA.quadratic_form_indefinite


def test_quadratic_form_indefinite_flag():
    # I1 > I2 + I3 breaks the triangle inequality and makes J indefinite
    assert InertiaModel(3.0, 1.0, 1.0).quadratic_form_indefinite
    assert not InertiaModel(2.0, 1.0, 1.0).quadratic_form_indefinite


def test_metric_validation():
    with pytest.raises(ValueError):
        DissipationMetric.isotropic(-0.1)
    with pytest.raises(ValueError):
        DissipationMetric.from_matrix(np.array([[0.0, 1.0, 0.0]] * 3))
    with pytest.raises(ValueError):
        DissipationMetric.from_matrix(-np.eye(3))
    with pytest.raises(ValueError):
        DissipationMetric.from_matrix(np.eye(4))


def test_metric_accepts_boundary_cases():
    assert_allclose(DissipationMetric.isotropic(0.0).matrix, np.zeros((3, 3)), atol=0)
    assert_allclose(METRIC.matrix, 0.5 * np.eye(3), atol=0)
    # rank-one PSD gain
    u = np.array([1.0, 2.0, -1.0])
    DissipationMetric.from_matrix(np.outer(u, u))


def test_legendre_round_trip():
    for _ in range(10):
        xi = RNG.normal(size=3)
        assert_allclose(velocity_of(INERTIA, momentum_of(INERTIA, xi)), xi, atol=1e-15)


def test_lagrangian_equals_energy_of_momentum():
    for _ in range(10):
        xi = RNG.normal(size=3)
        assert_allclose(
            lagrangian(INERTIA, xi), energy(INERTIA, momentum_of(INERTIA, xi)), rtol=1e-14
        )


def test_benchmark_point_frozen_values():
    assert_allclose(momentum_of(INERTIA, OMEGA0), M0, atol=0)
    assert energy(INERTIA, M0) == pytest.approx(0.251625, abs=1e-15)
    assert casimir(M0) == pytest.approx(0.254225, abs=1e-15)
    assert lagrangian(INERTIA, OMEGA0) == pytest.approx(0.251625, abs=1e-15)
    assert_allclose(phi(INERTIA, METRIC, OMEGA0), [0.02, 0.0, 0.0], atol=1e-16)
    assert_allclose(
        forced_field(INERTIA, METRIC, M0), [0.04, 0.01, -0.0013], atol=1e-16
    )
    assert energy_rate(INERTIA, METRIC, M0) == pytest.approx(-0.0008, abs=1e-18)


def test_forced_field_reduces_to_free_motion():
    free = DissipationMetric.isotropic(0.0)
    for _ in range(10):
        m = RNG.normal(size=3)
        assert_allclose(
            forced_field(INERTIA, free, m),
            np.cross(m, velocity_of(INERTIA, m)),
            atol=1e-15,
        )


def test_field_is_tangent_to_momentum_sphere():
    # M . Mdot = 0 keeps |M|^2 constant along the flow
    for _ in range(20):
        m = RNG.normal(size=3)
        assert abs(m @ forced_field(INERTIA, random_metric(), m)) < 1e-13


def test_energy_rate_is_gradient_paired_with_field():
    # dE/dt = Omega . Mdot since dE/dM = Omega
    for _ in range(20):
        m = RNG.normal(size=3)
        metric = random_metric()
        assert_allclose(
            velocity_of(INERTIA, m) @ forced_field(INERTIA, metric, m),
            energy_rate(INERTIA, metric, m),
            atol=1e-14,
        )


def test_energy_rate_never_positive():
    for _ in range(50):
        m = RNG.normal(size=3)
        assert energy_rate(INERTIA, random_metric(), m) <= 0.0


def test_energy_rate_zero_without_dissipation_or_off_axis_motion():
    free = DissipationMetric.isotropic(0.0)
    m = RNG.normal(size=3)
    assert energy_rate(INERTIA, free, m) == 0.0
    # principal axis: M x Omega = 0 regardless of the gain
    assert energy_rate(INERTIA, METRIC, np.array([0.0, 0.7, 0.0])) == 0.0


def test_forced_field_jacobian_matches_finite_differences():
    eps = 1e-6
    for _ in range(20):
        m = RNG.normal(size=3)
        metric = random_metric()
        jac = forced_field_jacobian(INERTIA, metric, m)
        fd = np.empty((3, 3))
        for i in range(3):
            step = np.zeros(3)
            step[i] = eps
            fd[:, i] = (
                forced_field(INERTIA, metric, m + step)
                - forced_field(INERTIA, metric, m - step)
            ) / (2.0 * eps)
        assert_allclose(jac, fd, atol=1e-8)


def test_casimir_is_squared_norm():
    m = np.array([3.0, -4.0, 12.0])
    assert casimir(m) == pytest.approx(169.0, abs=0)
