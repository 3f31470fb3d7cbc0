"""Kernel calculus on so(3) and its dual.

Plain 3-vectors stand in for both algebra elements (body angular
velocities) and momenta; the pairing between them is the Euclidean dot
product, so dual maps are plain matrix transposes.
"""

from __future__ import annotations

import numpy as np

from .errors import NotSkew

# Absolute tolerance on the symmetric part accepted by vee().
SKEW_TOL = 1e-10

# Below this rotation angle the Rodrigues coefficients switch to series form.
SMALL_ANGLE = 1e-4


def hat(v: np.ndarray) -> np.ndarray:
    """Skew matrix of v, so that hat(v) @ u == cross(v, u)."""
    v = np.asarray(v, dtype=float)
    return np.array(
        [
            [0.0, -v[2], v[1]],
            [v[2], 0.0, -v[0]],
            [-v[1], v[0], 0.0],
        ]
    )


def vee(m: np.ndarray, tol: float = SKEW_TOL) -> np.ndarray:
    """Inverse of hat. Rejects matrices whose symmetric part exceeds tol."""
    m = np.asarray(m, dtype=float)
    defect = 0.5 * np.abs(m + m.T).max()
    if defect > tol:
        raise NotSkew(f"symmetric part {defect:.3e} exceeds tolerance {tol:.1e}")
    return np.array([m[2, 1], m[0, 2], m[1, 0]])


def ad_star(xi: np.ndarray, mu: np.ndarray) -> np.ndarray:
    """Infinitesimal coadjoint action ad*_xi mu = mu x xi."""
    return np.cross(mu, xi)


def coadjoint(g: np.ndarray, mu: np.ndarray) -> np.ndarray:
    """Coadjoint action Ad*_g mu = g^T mu (vector form of g^T hat(mu) g)."""
    return np.asarray(g, dtype=float).T @ np.asarray(mu, dtype=float)


def exp_so3(v: np.ndarray) -> np.ndarray:
    """Rotation exp(hat(v)) by the Rodrigues formula."""
    v = np.asarray(v, dtype=float)
    th2 = float(v @ v)
    vh = hat(v)
    if th2 < SMALL_ANGLE * SMALL_ANGLE:
        # sin(t)/t and (1-cos(t))/t^2 via series; t^4 terms are below 1e-16 here
        a = 1.0 - th2 / 6.0
        b = 0.5 - th2 / 24.0
    else:
        th = np.sqrt(th2)
        a = np.sin(th) / th
        b = (1.0 - np.cos(th)) / th2
    return np.eye(3) + a * vh + b * (vh @ vh)


def cay_so3(v: np.ndarray) -> np.ndarray:
    """Cayley rotation (I - hat(v)/2)^(-1) (I + hat(v)/2) in closed form."""
    v = np.asarray(v, dtype=float)
    vh = hat(v)
    return np.eye(3) + (vh + 0.5 * (vh @ vh)) / (1.0 + 0.25 * float(v @ v))


def rotation_defect(g: np.ndarray) -> float:
    """How far g is from SO(3): max of ||g^T g - I||_F and |det g - 1|."""
    g = np.asarray(g, dtype=float)
    ortho = np.linalg.norm(g.T @ g - np.eye(3))
    return max(float(ortho), abs(float(np.linalg.det(g)) - 1.0))


def require_rotation(g: np.ndarray, tol: float = 1e-12) -> np.ndarray:
    """Validate a group element; returns it unchanged on success."""
    defect = rotation_defect(g)
    if defect > tol:
        raise ValueError(f"not a rotation: defect {defect:.3e} exceeds {tol:.1e}")
    return np.asarray(g, dtype=float)
