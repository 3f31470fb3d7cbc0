"""Retractions tau: so(3) -> SO(3) and the duals of their inverse
trivialized tangents.

Two families are supported: the exact exponential (Rodrigues) and the
Cayley transform.  tau itself is always the exact group map; for the
Exponential family the truncation order only controls how many terms of
the Bernoulli series the dual map dtau_inv_dual keeps.  The Cayley dual
is a closed form, so its truncation order is irrelevant.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .so3 import cay_so3, exp_so3, hat

# Bernoulli numbers B_0..B_8 in the B_1 = -1/2 convention; odd ones >= 3 vanish.
BERNOULLI = (
    1.0,
    -0.5,
    1.0 / 6.0,
    0.0,
    -1.0 / 30.0,
    0.0,
    1.0 / 42.0,
    0.0,
    -1.0 / 30.0,
)

MAX_TRUNCATION_ORDER = len(BERNOULLI) - 1

EXPONENTIAL = "exp"
CAYLEY = "cay"


@dataclass(frozen=True)
class RetractionKind:
    """Selects a retraction family plus, for 'exp', the dual-series order."""

    family: str
    truncation_order: int = 2

    def __post_init__(self):
        if self.family not in (EXPONENTIAL, CAYLEY):
            raise ValueError(f"unknown retraction family {self.family!r}")
        if not 1 <= self.truncation_order <= MAX_TRUNCATION_ORDER:
            raise ValueError(
                f"truncation order must be in [1, {MAX_TRUNCATION_ORDER}], "
                f"got {self.truncation_order}"
            )


def exponential(truncation_order: int = 2) -> RetractionKind:
    return RetractionKind(EXPONENTIAL, truncation_order)


def cayley() -> RetractionKind:
    return RetractionKind(CAYLEY)


def tau(kind: RetractionKind, v: np.ndarray) -> np.ndarray:
    """The retraction itself; exact group element for either family."""
    if kind.family == EXPONENTIAL:
        return exp_so3(v)
    return cay_so3(v)


def dtau_inv_dual(kind: RetractionKind, v: np.ndarray) -> np.ndarray:
    """Matrix of (d tau^(-1)_v)*, mapping momenta p to discrete momenta M.

    Cayley: exact closed form I + hat(v)/2 + v v^T / 4.
    Exponential: sum_j (-1)^j B_j hat(v)^j / j! up to the truncation order.
    """
    v = np.asarray(v, dtype=float)
    if kind.family == CAYLEY:
        return np.eye(3) + 0.5 * hat(v) + 0.25 * np.outer(v, v)
    vh = hat(v)
    out = np.eye(3)
    term = np.eye(3)
    factorial = 1.0
    for j in range(1, kind.truncation_order + 1):
        term = term @ vh
        factorial *= j
        b = BERNOULLI[j]
        if b != 0.0:
            sign = -1.0 if j % 2 else 1.0
            out = out + (sign * b / factorial) * term
    return out
