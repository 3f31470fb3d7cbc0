"""Rigid-body mechanics on so(3)* with double-bracket dissipation.

The state is the body angular momentum M.  Free motion is
Mdot = M x Omega with Omega = I^(-1) M; the dissipative forcing
M x K (M x Omega) pulls energy down the orbit while leaving |M| alone:

    d/dt |M|^2 = 0,     d/dt E = -(M x Omega) . K (M x Omega) <= 0.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .so3 import hat

SYMMETRY_TOL = 1e-12
EIGENVALUE_TOL = -1e-12


@dataclass(frozen=True)
class InertiaModel:
    """Principal moments of a rigid body, with the derived quantities the
    discrete schemes need.

    The quadratic-form matrix J = (tr(I)/2) Id - I has diagonal
    ((-I1+I2+I3)/2, (I1-I2+I3)/2, (I1+I2-I3)/2).  Physical bodies keep J
    positive, but a negative entry is only flagged, not rejected.
    """

    i1: float
    i2: float
    i3: float

    def __post_init__(self):
        if min(self.i1, self.i2, self.i3) <= 0.0:
            raise ValueError(f"moments must be positive, got {self.moments}")

    @classmethod
    def from_moments(cls, moments) -> "InertiaModel":
        m1, m2, m3 = (float(x) for x in moments)
        return cls(m1, m2, m3)

    @property
    def moments(self) -> np.ndarray:
        return np.array([self.i1, self.i2, self.i3])

    @property
    def matrix(self) -> np.ndarray:
        return np.diag(self.moments)

    @property
    def inverse(self) -> np.ndarray:
        return np.diag(1.0 / self.moments)

    @property
    def quadratic_form(self) -> np.ndarray:
        """J = (tr(I)/2) Id - I, the weight of the discrete group equation."""
        m = self.moments
        return np.diag(0.5 * m.sum() - m)

    @property
    def quadratic_form_indefinite(self) -> bool:
        """True when J has a negative entry (triangle inequality violated)."""
        return bool(np.diag(self.quadratic_form).min() < 0.0)


@dataclass(frozen=True)
class DissipationMetric:
    """Symmetric positive-semidefinite gain K contracting so(3)*.

    Stored as a nested tuple so the dataclass stays hashable; use .matrix.
    """

    entries: tuple

    def __post_init__(self):
        k = self.matrix
        if k.shape != (3, 3):
            raise ValueError(f"K must be 3x3, got {k.shape}")
        if np.abs(k - k.T).max() > SYMMETRY_TOL:
            raise ValueError("K must be symmetric within 1e-12")
        if np.linalg.eigvalsh(k).min() < EIGENVALUE_TOL:
            raise ValueError("K must be positive semidefinite")

    @classmethod
    def isotropic(cls, alpha: float) -> "DissipationMetric":
        if alpha < 0.0:
            raise ValueError(f"alpha must be nonnegative, got {alpha}")
        return cls.from_matrix(alpha * np.eye(3))

    @classmethod
    def from_matrix(cls, k) -> "DissipationMetric":
        k = np.asarray(k, dtype=float)
        return cls(tuple(tuple(float(x) for x in row) for row in k))

    @property
    def matrix(self) -> np.ndarray:
        return np.array(self.entries, dtype=float)


def lagrangian(inertia: InertiaModel, xi: np.ndarray) -> float:
    """Reduced kinetic energy l(xi) = xi . I xi / 2."""
    xi = np.asarray(xi, dtype=float)
    return 0.5 * float(xi @ (inertia.moments * xi))


def momentum_of(inertia: InertiaModel, xi: np.ndarray) -> np.ndarray:
    """Legendre transform dl/dxi = I xi."""
    return inertia.moments * np.asarray(xi, dtype=float)


def velocity_of(inertia: InertiaModel, m: np.ndarray) -> np.ndarray:
    """Inverse Legendre transform Omega = I^(-1) M."""
    return np.asarray(m, dtype=float) / inertia.moments


def energy(inertia: InertiaModel, m: np.ndarray) -> float:
    """Kinetic energy M . I^(-1) M / 2 expressed in the momentum."""
    m = np.asarray(m, dtype=float)
    return 0.5 * float(m @ (m / inertia.moments))


def casimir(m: np.ndarray) -> float:
    """|M|^2, conserved by the flow for any inertia and any K."""
    m = np.asarray(m, dtype=float)
    return float(m @ m)


def phi(inertia: InertiaModel, metric: DissipationMetric, xi: np.ndarray) -> np.ndarray:
    """Dissipation field in velocity form: phi(xi) = K (I xi x xi)."""
    xi = np.asarray(xi, dtype=float)
    return metric.matrix @ np.cross(inertia.moments * xi, xi)


def forced_field(
    inertia: InertiaModel, metric: DissipationMetric, m: np.ndarray
) -> np.ndarray:
    """Right-hand side Mdot = M x Omega + M x K (M x Omega)."""
    m = np.asarray(m, dtype=float)
    free = np.cross(m, m / inertia.moments)
    return free + np.cross(m, metric.matrix @ free)


def forced_field_jacobian(
    inertia: InertiaModel, metric: DissipationMetric, m: np.ndarray
) -> np.ndarray:
    """d(forced_field)/dM; used by implicit stage solvers."""
    m = np.asarray(m, dtype=float)
    omega = m / inertia.moments
    free = np.cross(m, omega)
    kmat = metric.matrix
    d_free = hat(m) @ inertia.inverse - hat(omega)
    return d_free - hat(kmat @ free) + hat(m) @ kmat @ d_free


def energy_rate(
    inertia: InertiaModel, metric: DissipationMetric, m: np.ndarray
) -> float:
    """dE/dt = -(M x Omega) . K (M x Omega), never positive."""
    m = np.asarray(m, dtype=float)
    free = np.cross(m, m / inertia.moments)
    return -float(free @ (metric.matrix @ free))
