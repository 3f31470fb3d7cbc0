"""One-step maps for the dissipative rigid body and the trajectory driver.

The structure-preserving family transports the momentum by a product of
exact group elements, M -> (w phi_d)^T M, so |M| is conserved to round-off
no matter how coarse the step:

  * ddb_step            first order; velocity from the discrete Legendre
                        solve, dissipation increment phi_d = tau(h phi(xi_k))
  * ddb_symmetric_step  second order; phi_d built from an average of the
                        step's two stage velocities, which makes the
                        defining equation invariant under
                        (xi_k, h) <-> (xi_{k+1}, -h)
  * mv_step             first order; the velocity solve is replaced by the
                        discrete group equation (w J - J w^T)/h = hat(M)

RK4 and Lobatto IIIC integrate the same vector field without the transport
structure and serve as accuracy baselines; reference_integrate wraps an
adaptive eighth-order pair at tight tolerances.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.integrate import solve_ivp

from .dynamics import (
    DissipationMetric,
    InertiaModel,
    casimir,
    energy,
    forced_field,
    forced_field_jacobian,
    phi,
)
from .errors import (
    BranchAmbiguity,
    MissingIncrements,
    NoConvergence,
    StepFailure,
    StepSizeUnderflow,
)
from .retractions import RetractionKind, cayley, dtau_inv_dual, exponential, tau
from .solvers import (
    DEFAULT_NEWTON,
    NewtonConfig,
    newton3,
    newton_system,
    solve_momentum_to_velocity,
    solve_mv_group,
)
from .so3 import coadjoint, require_rotation

MIDPOINT_VELOCITY = "midpoint_velocity"
AVERAGED_PHI = "averaged_phi"

DDB = "ddb"
DDB_SYMMETRIC = "ddb-sym"
MOSER_VESELOV = "mv"
RK4 = "rk4"
LOBATTO3C = "lobatto3c"
REFERENCE = "reference"

REFERENCE_REL_TOL = 1e-12
REFERENCE_ABS_TOL = 1e-14


@dataclass(frozen=True)
class StepperKind:
    """Dispatch record for integrate(); name is the canonical CLI token."""

    name: str
    method: str
    retraction: Optional[RetractionKind] = None
    averaging: str = MIDPOINT_VELOCITY
    rel_tol: float = REFERENCE_REL_TOL
    abs_tol: float = REFERENCE_ABS_TOL


def _registry() -> dict:
    return {
        "ddb-cay": StepperKind("ddb-cay", DDB, cayley()),
        "ddb-exp": StepperKind("ddb-exp", DDB, exponential()),
        "ddb-sym-cay": StepperKind("ddb-sym-cay", DDB_SYMMETRIC, cayley()),
        "ddb-sym-exp": StepperKind("ddb-sym-exp", DDB_SYMMETRIC, exponential()),
        "mv": StepperKind("mv", MOSER_VESELOV, cayley()),
        "rk4": StepperKind("rk4", RK4),
        "lobatto3c": StepperKind("lobatto3c", LOBATTO3C),
        "reference": StepperKind("reference", REFERENCE),
    }


STEPPER_NAMES = tuple(_registry())


def stepper_from_name(name: str) -> StepperKind:
    try:
        return _registry()[name]
    except KeyError:
        raise ValueError(
            f"unknown stepper {name!r}; choose from {', '.join(STEPPER_NAMES)}"
        ) from None


def ddb_step(
    m: np.ndarray,
    kind: RetractionKind,
    inertia: InertiaModel,
    metric: DissipationMetric,
    h: float,
    cfg: NewtonConfig = DEFAULT_NEWTON,
):
    """One double-bracket update M -> Ad*_{w phi_d} M.

    w = tau(h xi) with xi from the momentum solve and phi_d = tau(h phi(xi)).
    Returns the new momentum and the applied increment w phi_d.
    """
    if h <= 0.0:
        raise ValueError(f"h must be positive, got {h}")
    m = np.asarray(m, dtype=float)
    xi = solve_momentum_to_velocity(m, kind, inertia, h, cfg)
    g = tau(kind, h * xi) @ tau(kind, h * phi(inertia, metric, xi))
    return coadjoint(g, m), g


def _phi_average(inertia, metric, averaging, xi_a, xi_b):
    if averaging == MIDPOINT_VELOCITY:
        return phi(inertia, metric, 0.5 * (xi_a + xi_b))
    return 0.5 * (phi(inertia, metric, xi_a) + phi(inertia, metric, xi_b))


def ddb_symmetric_step(
    m: np.ndarray,
    kind: RetractionKind,
    inertia: InertiaModel,
    metric: DissipationMetric,
    h: float,
    cfg: NewtonConfig = DEFAULT_NEWTON,
    averaging: str = MIDPOINT_VELOCITY,
):
    """Time-symmetric double-bracket update (second order).

    Both stage velocities enter symmetrically: the incoming momentum pairs
    with xi_k through (dtau^-1_{h xi_k})*, the outgoing one with xi_{k+1}
    through (dtau^-1_{-h xi_{k+1}})*, and the transport sandwiches the
    midpoint rotation between dissipation half-increments,

        g = tau(h/2 phi_bar) tau(h (xi_k + xi_{k+1})/2) tau(h/2 phi_bar),

    with phi_bar = phi((xi_k + xi_{k+1})/2) by default or the averaged-phi
    variant.  Exchanging (xi_k, h) <-> (xi_{k+1}, -h) maps g to g^-1 and
    swaps the two pairings, so the literal map with h -> -h is the exact
    inverse of the forward step: step(step(M, h), -h) == M up to solver
    tolerance, for any retraction.  With phi == 0 the stage equation is
    solved by xi_{k+1} = xi_k and the step coincides with ddb_step.

    Solved as a single Newton iteration in xi_{k+1}; xi_k is recovered
    from M once per step.  h may be negative (time-reversed step).
    """
    if h == 0.0:
        raise ValueError("h must be nonzero")
    if averaging not in (MIDPOINT_VELOCITY, AVERAGED_PHI):
        raise ValueError(f"unknown averaging {averaging!r}")
    m = np.asarray(m, dtype=float)
    moments = inertia.moments
    xi0 = solve_momentum_to_velocity(m, kind, inertia, h, cfg)

    def increment(y):
        half = tau(
            kind, 0.5 * h * _phi_average(inertia, metric, averaging, xi0, y)
        )
        return half @ tau(kind, 0.5 * h * (xi0 + y)) @ half

    def fun(y):
        return dtau_inv_dual(kind, -h * y) @ (moments * y) - coadjoint(
            increment(y), m
        )

    # Euler predictor on the velocity cuts one Newton iteration per step.
    seed = xi0 + h * forced_field(inertia, metric, m) / moments
    xi1 = newton3(fun, seed, cfg)
    g = increment(xi1)
    return coadjoint(g, m), g


def mv_step(
    m: np.ndarray,
    inertia: InertiaModel,
    metric: DissipationMetric,
    h: float,
    phi_retraction: RetractionKind = cayley(),
    cfg: NewtonConfig = DEFAULT_NEWTON,
) -> np.ndarray:
    """Moser-Veselov update: group solve for w, then dissipative transport.

    The dissipation increment reuses the double-bracket construction with
    the first-order velocity proxy Omega = I^(-1) M.
    """
    if h <= 0.0:
        raise ValueError(f"h must be positive, got {h}")
    m = np.asarray(m, dtype=float)
    w = solve_mv_group(m, inertia, h, cfg)
    omega = m / inertia.moments
    g = w @ tau(phi_retraction, h * phi(inertia, metric, omega))
    return coadjoint(g, m)


def rk4_step(
    m: np.ndarray,
    inertia: InertiaModel,
    metric: DissipationMetric,
    h: float,
) -> np.ndarray:
    """Classical fourth-order Runge-Kutta step on the forced field."""
    m = np.asarray(m, dtype=float)
    k1 = forced_field(inertia, metric, m)
    k2 = forced_field(inertia, metric, m + 0.5 * h * k1)
    k3 = forced_field(inertia, metric, m + 0.5 * h * k2)
    k4 = forced_field(inertia, metric, m + h * k3)
    return m + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


# Three-stage Lobatto IIIC tableau (order 4, fully implicit, L-stable).
LOBATTO3C_A = np.array(
    [
        [1.0 / 6.0, -1.0 / 3.0, 1.0 / 6.0],
        [1.0 / 6.0, 5.0 / 12.0, -1.0 / 12.0],
        [1.0 / 6.0, 2.0 / 3.0, 1.0 / 6.0],
    ]
)
LOBATTO3C_B = np.array([1.0 / 6.0, 2.0 / 3.0, 1.0 / 6.0])
LOBATTO3C_C = np.array([0.0, 0.5, 1.0])


def lobatto3c_step(
    m: np.ndarray,
    inertia: InertiaModel,
    metric: DissipationMetric,
    h: float,
    cfg: NewtonConfig = DEFAULT_NEWTON,
) -> np.ndarray:
    """Three-stage Lobatto IIIC step; stages solved as one stacked Newton
    system on the 9-dimensional stage-value vector."""
    m = np.asarray(m, dtype=float)

    def field(y):
        return forced_field(inertia, metric, y)

    def fun(z):
        stages = z.reshape(3, 3)
        f = np.array([field(stages[i]) for i in range(3)])
        return (stages - m - h * (LOBATTO3C_A @ f)).ravel()

    def jac(z):
        stages = z.reshape(3, 3)
        out = np.eye(9)
        for j in range(3):
            block = forced_field_jacobian(inertia, metric, stages[j])
            for i in range(3):
                out[3 * i : 3 * i + 3, 3 * j : 3 * j + 3] -= (
                    h * LOBATTO3C_A[i, j] * block
                )
        return out

    f0 = field(m)
    z0 = np.array([m + c * h * f0 for c in LOBATTO3C_C]).ravel()
    stages = newton_system(fun, z0, cfg, jac=jac).reshape(3, 3)
    f = np.array([field(stages[i]) for i in range(3)])
    return m + h * (LOBATTO3C_B @ f)


@dataclass(frozen=True, eq=False)
class TrajectoryRecord:
    """Uniform-grid trajectory with per-node conserved-quantity samples.

    times[k] = t0 + k h, computed by multiplication so reruns are
    bit-identical.  increments holds the applied group elements
    w_k phi_d(w_k) for steppers that produce them, else None.
    """

    times: np.ndarray
    momenta: np.ndarray
    energies: np.ndarray
    casimirs: np.ndarray
    increments: Optional[tuple]
    stepper: str
    config: dict

    def __len__(self) -> int:
        return len(self.times)


def _grid(t0: float, t_end: float, h: float):
    """Node count and exact step for the span; rounds near-integer ratios."""
    if h <= 0.0:
        raise ValueError(f"h must be positive, got {h}")
    span = t_end - t0
    if span < 0.0:
        raise ValueError("t_end must not precede t0")
    if span == 0.0:
        return 0, h
    n = int(round(span / h))
    n = max(n, 1)
    return n, span / n


def _record(momenta, t0, h, n, increments, stepper_name, inertia, metric, extra):
    times = t0 + h * np.arange(n + 1)
    momenta = np.asarray(momenta, dtype=float)
    energies = np.array([energy(inertia, mk) for mk in momenta])
    casimirs = np.array([casimir(mk) for mk in momenta])
    config = {
        "stepper": stepper_name,
        "inertia": [float(x) for x in inertia.moments],
        "metric": [[float(x) for x in row] for row in metric.matrix],
        "t0": float(t0),
        "t_end": float(t0 + h * n),
        "h": float(h),
    }
    config.update(extra)
    return TrajectoryRecord(
        times=times,
        momenta=momenta,
        energies=energies,
        casimirs=casimirs,
        increments=increments,
        stepper=stepper_name,
        config=config,
    )


def reference_integrate(
    m0: np.ndarray,
    inertia: InertiaModel,
    metric: DissipationMetric,
    t0: float,
    t_end: float,
    rel_tol: float = REFERENCE_REL_TOL,
    abs_tol: float = REFERENCE_ABS_TOL,
    h: Optional[float] = None,
    times: Optional[np.ndarray] = None,
) -> TrajectoryRecord:
    """Adaptive high-order reference trajectory sampled on a uniform grid.

    Exactly one of h or times fixes the sampling grid (times must then be
    the uniform grid t0 + k h of the fixed-step runs being compared).
    """
    sol, n, h = _reference_solution(m0, inertia, metric, t0, t_end, rel_tol, abs_tol, h, times)
    grid = t0 + h * np.arange(n + 1)
    momenta = sol(grid).T if n > 0 else np.asarray([m0], dtype=float)
    return _record(
        momenta,
        t0,
        h,
        n,
        None,
        "reference",
        inertia,
        metric,
        {"rel_tol": rel_tol, "abs_tol": abs_tol},
    )


def _reference_solution(m0, inertia, metric, t0, t_end, rel_tol, abs_tol, h, times):
    """Dense adaptive solution plus the grid spec; shared with the harness."""
    if times is not None:
        if h is not None:
            raise ValueError("pass h or times, not both")
        times = np.asarray(times, dtype=float)
        if len(times) < 2:
            raise ValueError("times must hold at least two nodes")
        h = float(times[1] - times[0])
    if h is None:
        raise ValueError("a sampling grid is required: pass h or times")
    n, h = _grid(t0, t_end, h)
    m0 = np.asarray(m0, dtype=float)
    if n == 0:
        return None, 0, h

    def field(_t, y):
        return forced_field(inertia, metric, y)

    sol = solve_ivp(
        field,
        (t0, t_end),
        m0,
        method="DOP853",
        rtol=rel_tol,
        atol=abs_tol,
        dense_output=True,
    )
    if not sol.success:
        raise StepSizeUnderflow(sol.message)
    return sol.sol, n, h


def integrate(
    stepper: StepperKind,
    m0: np.ndarray,
    inertia: InertiaModel,
    metric: DissipationMetric,
    t0: float,
    t_end: float,
    h: float,
    cfg: NewtonConfig = DEFAULT_NEWTON,
) -> TrajectoryRecord:
    """Drive a stepper across [t0, t_end] on the uniform grid t0 + k h.

    (t_end - t0)/h is expected to be an integer within 1e-9 relative;
    otherwise the node count is rounded and h recomputed exactly.  Any
    solver failure aborts the trajectory as StepFailure with the step index.
    """
    if stepper.method == REFERENCE:
        return reference_integrate(
            m0, inertia, metric, t0, t_end, stepper.rel_tol, stepper.abs_tol, h=h
        )
    n, h = _grid(t0, t_end, h)
    m = np.asarray(m0, dtype=float)
    momenta = np.empty((n + 1, 3))
    momenta[0] = m
    has_increments = stepper.method in (DDB, DDB_SYMMETRIC)
    increments = [] if has_increments else None
    for k in range(n):
        try:
            if stepper.method == DDB:
                m, g = ddb_step(m, stepper.retraction, inertia, metric, h, cfg)
                increments.append(g)
            elif stepper.method == DDB_SYMMETRIC:
                m, g = ddb_symmetric_step(
                    m, stepper.retraction, inertia, metric, h, cfg, stepper.averaging
                )
                increments.append(g)
            elif stepper.method == MOSER_VESELOV:
                m = mv_step(m, inertia, metric, h, stepper.retraction, cfg)
            elif stepper.method == RK4:
                m = rk4_step(m, inertia, metric, h)
            elif stepper.method == LOBATTO3C:
                m = lobatto3c_step(m, inertia, metric, h, cfg)
            else:
                raise ValueError(f"unknown stepper method {stepper.method!r}")
        except (NoConvergence, BranchAmbiguity) as exc:
            raise StepFailure(k, t0 + k * h, exc) from exc
        momenta[k + 1] = m
    return _record(
        momenta,
        t0,
        h,
        n,
        tuple(increments) if increments is not None else None,
        stepper.name,
        inertia,
        metric,
        {},
    )


def reconstruct_attitude(
    record: TrajectoryRecord, r0: Optional[np.ndarray] = None
) -> np.ndarray:
    """Accumulate attitudes R_{k+1} = R_k (w_k phi_d) from the increments."""
    if record.increments is None:
        raise MissingIncrements(
            f"stepper {record.stepper!r} recorded no group increments"
        )
    r = np.eye(3) if r0 is None else require_rotation(r0)
    out = [r]
    for g in record.increments:
        r = r @ g
        out.append(r)
    return np.array(out)
