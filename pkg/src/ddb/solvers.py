"""Newton solvers behind the implicit relations of the discrete schemes.

Three consumers: the momentum-to-velocity solve of the double-bracket
steppers, the group equation of the Moser-Veselov stepper, and the stacked
stage systems of implicit Runge-Kutta baselines.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .dynamics import InertiaModel
from .errors import BranchAmbiguity, NoConvergence
from .retractions import CAYLEY, RetractionKind, dtau_inv_dual
from .so3 import cay_so3, exp_so3, hat

ANALYTIC = "analytic"
FINITE_DIFFERENCE = "finite_difference"

# Singular-value ratio below which the converged root of the group equation
# is treated as a merged (branch-ambiguous) root.  sqrt(abs_tol)-scale: at a
# fold the Jacobian degenerates linearly while the residual is quadratic.
FOLD_RATIO = 1e-5


@dataclass(frozen=True)
class NewtonConfig:
    """Termination and Jacobian policy for the Newton solves.

    jacobian 'analytic' uses a closed-form Jacobian wherever one is wired
    in (the Cayley momentum solve, the Runge-Kutta stage systems), falling
    back to central finite differences with step fd_step * max(1, |x|);
    'finite_difference' forces the fallback everywhere, which is the
    cross-check route for the closed forms.
    """

    abs_tol: float = 1e-12
    max_iter: int = 50
    jacobian: str = ANALYTIC
    fd_step: float = 1e-7

    def __post_init__(self):
        if self.jacobian not in (ANALYTIC, FINITE_DIFFERENCE):
            raise ValueError(f"unknown jacobian policy {self.jacobian!r}")
        if self.abs_tol <= 0 or self.max_iter < 1 or self.fd_step <= 0:
            raise ValueError("abs_tol, max_iter and fd_step must be positive")


DEFAULT_NEWTON = NewtonConfig()


def fd_jacobian(fun: Callable, x: np.ndarray, base_step: float) -> np.ndarray:
    """Central-difference Jacobian with step scaled by the iterate size."""
    x = np.asarray(x, dtype=float)
    step = base_step * max(1.0, float(np.linalg.norm(x)))
    n = x.size
    jac = np.empty((n, n))
    for i in range(n):
        dx = np.zeros(n)
        dx[i] = step
        jac[:, i] = (fun(x + dx) - fun(x - dx)) / (2.0 * step)
    return jac


def newton_system(
    fun: Callable,
    x0: np.ndarray,
    cfg: NewtonConfig = DEFAULT_NEWTON,
    jac: Optional[Callable] = None,
) -> np.ndarray:
    """Solve fun(x) = 0 from x0; post: |fun(x)|_inf <= cfg.abs_tol.

    Raises NoConvergence (carrying iteration count and last residual) when
    the budget runs out or the Jacobian is exactly singular.
    """
    x = np.array(x0, dtype=float)
    r = fun(x)
    res = float(np.abs(r).max())
    use_analytic = cfg.jacobian == ANALYTIC and jac is not None
    for it in range(cfg.max_iter):
        if res <= cfg.abs_tol:
            return x
        j = jac(x) if use_analytic else fd_jacobian(fun, x, cfg.fd_step)
        try:
            dx = np.linalg.solve(j, -r)
        except np.linalg.LinAlgError as exc:
            raise NoConvergence(it, res) from exc
        x = x + dx
        r = fun(x)
        res = float(np.abs(r).max())
    if res <= cfg.abs_tol:
        return x
    raise NoConvergence(cfg.max_iter, res)


def newton3(
    fun: Callable,
    x0: np.ndarray,
    cfg: NewtonConfig = DEFAULT_NEWTON,
    jac: Optional[Callable] = None,
) -> np.ndarray:
    """newton_system specialized to the 3-dimensional solves."""
    x0 = np.asarray(x0, dtype=float)
    if x0.shape != (3,):
        raise ValueError(f"expected a 3-vector start, got shape {x0.shape}")
    return newton_system(fun, x0, cfg, jac)


def solve_momentum_to_velocity(
    m: np.ndarray,
    kind: RetractionKind,
    inertia: InertiaModel,
    h: float,
    cfg: NewtonConfig = DEFAULT_NEWTON,
) -> np.ndarray:
    """Find xi with dtau_inv_dual(kind, h xi) (I xi) = M, seeded at I^(-1) M."""
    m = np.asarray(m, dtype=float)
    moments = inertia.moments

    def fun(xi):
        return dtau_inv_dual(kind, h * xi) @ (moments * xi) - m

    jac = None
    if kind.family == CAYLEY:
        imat = inertia.matrix

        def jac(xi):
            ixi = moments * xi
            return (
                imat
                + 0.5 * h * (hat(xi) @ imat - hat(ixi))
                + 0.25 * h * h * ((xi @ ixi) * np.eye(3) + 2.0 * np.outer(xi, ixi))
            )

    return newton3(fun, m / moments, cfg, jac=jac)


def solve_mv_group(
    m: np.ndarray,
    inertia: InertiaModel,
    h: float,
    cfg: NewtonConfig = DEFAULT_NEWTON,
) -> np.ndarray:
    """Solve (w J - J w^T) / h = hat(M) for w in SO(3), near-identity branch.

    Newton runs in the chart w = w0 cay(y) around the consistent predictor
    w0 = exp(h I^(-1) M), which pins the branch.  After convergence the
    Jacobian is checked for a fold: if its smallest singular value has
    collapsed, two admissible roots have merged at equal distance from the
    identity and BranchAmbiguity is raised instead of picking one.
    """
    m = np.asarray(m, dtype=float)
    jmat = inertia.quadratic_form
    w0 = exp_so3(h * (m / inertia.moments))

    def fun(y):
        w = w0 @ cay_so3(y)
        s = w @ jmat
        skew = s - s.T  # w J - J w^T is exactly skew for symmetric J
        return np.array([skew[2, 1], skew[0, 2], skew[1, 0]]) / h - m

    y = newton3(fun, np.zeros(3), cfg)
    jac = fd_jacobian(fun, y, cfg.fd_step)
    sv = np.linalg.svd(jac, compute_uv=False)
    if sv[-1] <= FOLD_RATIO * sv[0]:
        raise BranchAmbiguity(
            f"group equation root is not isolated (singular value ratio "
            f"{sv[-1] / sv[0]:.3e}); no branch is closest to the identity"
        )
    return w0 @ cay_so3(y)
