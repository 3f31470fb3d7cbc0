"""Benchmark scenarios and trajectory diagnostics.

Three built-in rigid-body configurations exercise the integrators:

  A  short dissipative run for conservation and convergence checks
  B  long run into the stable-axis limit set
  C  symmetric body (i1 = i2), whose momentum sphere dynamics collapse
     onto a great circle

compare_methods and convergence_study produce the summary records the
command line writes out.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, replace
from typing import Optional, Sequence, Union

import numpy as np

from .dynamics import DissipationMetric, InertiaModel
from .errors import DegenerateSpectrum, NotDegenerate, StepFailure, UnknownScenario
from .integrators import (
    StepperKind,
    TrajectoryRecord,
    _grid,
    _reference_solution,
    integrate,
)

AXIS_TIE_TOL = 1e-12

DEFAULT_CONVERGENCE_H = (1.0, 0.5, 0.2, 0.1, 0.05, 0.02, 0.01, 0.005, 0.002, 0.001)

# Factor on the reference solver's own error scale below which measured
# errors say nothing about the stepper; such h are dropped from the fit.
EXCLUSION_FLOOR_FACTOR = 100.0


@dataclass(frozen=True)
class ScenarioConfig:
    """Complete problem statement for one benchmark run."""

    name: str
    inertia: InertiaModel
    metric: DissipationMetric
    omega0: tuple
    t0: float
    t_end: float
    h: Union[float, tuple]

    def initial_momentum(self) -> np.ndarray:
        return self.inertia.moments * np.asarray(self.omega0, dtype=float)


def builtin_scenario(name: str) -> ScenarioConfig:
    omega0 = (0.0, 0.05, 1.0)
    alpha = 0.5
    if name == "A":
        return ScenarioConfig(
            "A", InertiaModel(1.0, 1.3, 0.5), DissipationMetric.isotropic(alpha),
            omega0, 0.0, 30.0, 0.1,
        )
    if name == "B":
        return ScenarioConfig(
            "B", InertiaModel(1.0, 1.3, 0.5), DissipationMetric.isotropic(alpha),
            omega0, 0.0, 250.0, 0.1,
        )
    if name == "C":
        return ScenarioConfig(
            "C", InertiaModel(1.0, 1.0, 0.5), DissipationMetric.isotropic(alpha),
            omega0, 0.0, 250.0, 0.1,
        )
    raise UnknownScenario(name)


SCENARIO_NAMES = ("A", "B", "C")


def distance_to_limit_points(m: np.ndarray, inertia: InertiaModel) -> float:
    """Distance from M to the pair of stable equilibria +-|M| e_max.

    Energy restricted to the momentum sphere is minimized along the axis
    of largest moment of inertia, so the dissipative flow settles there.
    The largest moment must be simple; a tie at the top means the limit
    set is a circle, not a point pair.
    """
    m = np.asarray(m, dtype=float)
    moments = inertia.moments
    ordered = np.sort(moments)
    if ordered[2] - ordered[1] <= AXIS_TIE_TOL:
        raise DegenerateSpectrum(
            f"limit points need a simple largest moment, got {tuple(moments)}"
        )
    axis = int(np.argmax(moments))
    r = float(np.linalg.norm(m))
    target = np.zeros(3)
    target[axis] = r
    return float(min(np.linalg.norm(m - target), np.linalg.norm(m + target)))


def distance_to_great_circle(m: np.ndarray, inertia: InertiaModel):
    """(d_circle, d_plane) for the symmetric body's invariant circle.

    For i1 = i2 the limit set is the equator of the momentum sphere in the
    plane orthogonal to the symmetry axis.  d_plane is the out-of-plane
    offset |M . e3|; d_circle also charges the radial defect.
    """
    m = np.asarray(m, dtype=float)
    moments = inertia.moments
    pairs = [(0, 1, 2), (0, 2, 1), (1, 2, 0)]
    axis = None
    for i, j, k in pairs:
        if abs(moments[i] - moments[j]) <= AXIS_TIE_TOL:
            axis = k
            break
    if axis is None:
        raise NotDegenerate(
            f"great-circle distance needs a repeated moment, got {tuple(moments)}"
        )
    r = float(np.linalg.norm(m))
    d_plane = abs(float(m[axis]))
    in_plane = float(np.sqrt(max(r * r - m[axis] * m[axis], 0.0)))
    d_circle = float(np.hypot(d_plane, in_plane - r))
    return d_circle, d_plane


@dataclass(frozen=True)
class MethodMetrics:
    """Per-stepper summary of one scenario run.

    Limit-set distances are None when the inertia spectrum does not define
    them; final_error is None when no reference run was part of the
    comparison.  A failed run carries only its failure message.
    """

    stepper: str
    final_momentum: Optional[tuple]
    final_energy: Optional[float]
    final_error: Optional[float]
    max_casimir_drift: Optional[float]
    max_energy_increase: Optional[float]
    distance_to_limit: Optional[float]
    d_circle: Optional[float]
    d_plane: Optional[float]
    runtime_seconds: float
    failure: Optional[str] = None


@dataclass(frozen=True)
class MetricsReport:
    scenario: str
    methods: tuple


def _method_metrics(record: TrajectoryRecord, inertia: InertiaModel, runtime: float):
    c0 = record.casimirs[0]
    drift = float(np.max(np.abs(record.casimirs - c0)))
    increases = np.diff(record.energies)
    max_increase = float(np.max(increases)) if len(increases) else 0.0
    try:
        dist = distance_to_limit_points(record.momenta[-1], inertia)
    except DegenerateSpectrum:
        dist = None
    try:
        d_circle, d_plane = distance_to_great_circle(record.momenta[-1], inertia)
    except NotDegenerate:
        d_circle = d_plane = None
    return MethodMetrics(
        stepper=record.stepper,
        final_momentum=tuple(float(x) for x in record.momenta[-1]),
        final_energy=float(record.energies[-1]),
        final_error=None,
        max_casimir_drift=drift,
        max_energy_increase=max(max_increase, 0.0),
        distance_to_limit=dist,
        d_circle=d_circle,
        d_plane=d_plane,
        runtime_seconds=runtime,
    )


def run_scenario(
    scenario: ScenarioConfig, stepper: StepperKind, h: Optional[float] = None
) -> TrajectoryRecord:
    if h is None:
        if not isinstance(scenario.h, float):
            raise ValueError("scenario carries multiple h values; pick one")
        h = scenario.h
    record = integrate(
        stepper,
        scenario.initial_momentum(),
        scenario.inertia,
        scenario.metric,
        scenario.t0,
        scenario.t_end,
        h,
    )
    record.config["scenario"] = scenario.name
    return record


def compare_methods(
    scenario: ScenarioConfig,
    steppers: Sequence[StepperKind],
    h: Optional[float] = None,
) -> tuple:
    """Run each stepper on the scenario; returns (MetricsReport, records).

    A stepper that fails mid-trajectory is reported with its failure
    message instead of aborting the comparison.  records maps stepper
    name to the TrajectoryRecord for the ones that finished.  When the
    comparison includes the reference stepper, every other method's
    final_error is measured against its last node.
    """
    methods = []
    records = {}
    for stepper in steppers:
        start = time.perf_counter()
        try:
            record = run_scenario(scenario, stepper, h)
        except StepFailure as exc:
            methods.append(
                MethodMetrics(
                    stepper=stepper.name,
                    final_momentum=None,
                    final_energy=None,
                    final_error=None,
                    max_casimir_drift=None,
                    max_energy_increase=None,
                    distance_to_limit=None,
                    d_circle=None,
                    d_plane=None,
                    runtime_seconds=time.perf_counter() - start,
                    failure=str(exc),
                )
            )
            continue
        runtime = time.perf_counter() - start
        records[stepper.name] = record
        methods.append(_method_metrics(record, scenario.inertia, runtime))
    if "reference" in records:
        ref_final = records["reference"].momenta[-1]
        methods = [
            replace(
                m,
                final_error=float(
                    np.linalg.norm(np.asarray(m.final_momentum) - ref_final)
                ),
            )
            if m.failure is None and m.stepper != "reference"
            else m
            for m in methods
        ]
    return MetricsReport(scenario=scenario.name, methods=tuple(methods)), records


@dataclass(frozen=True)
class ConvergenceResult:
    """Global-error sweep for one stepper against the adaptive reference.

    errors[i] is the max-norm trajectory error at step size hs[i]; entries
    below the reference solver's own accuracy floor are flagged in
    excluded and dropped from the least-squares slope.  slope is None
    when fewer than two points survive.
    """

    stepper: str
    hs: tuple
    errors: tuple
    excluded: tuple
    slope: Optional[float]


def _fit_slope(hs, errors):
    log_h = np.log(np.asarray(hs))
    log_e = np.log(np.asarray(errors))
    return float(np.polyfit(log_h, log_e, 1)[0])


def convergence_study(
    scenario: ScenarioConfig,
    steppers: Sequence[StepperKind],
    hs: Sequence[float],
    rel_tol: float = 1e-12,
    abs_tol: float = 1e-14,
) -> tuple:
    """Max-norm global error of each stepper over a descending h sweep.

    The reference trajectory is solved once (dense output) and sampled on
    each grid.  Requires at least three strictly descending step sizes so
    a slope is meaningful.
    """
    hs = [float(h) for h in hs]
    if len(hs) < 3:
        raise ValueError("convergence study needs at least three step sizes")
    if any(b >= a for a, b in zip(hs, hs[1:])):
        raise ValueError("step sizes must be strictly descending")
    for h in hs:
        _grid(scenario.t0, scenario.t_end, h)

    m0 = scenario.initial_momentum()
    dense, _, _ = _reference_solution(
        m0, scenario.inertia, scenario.metric,
        scenario.t0, scenario.t_end, rel_tol, abs_tol, hs[0], None,
    )
    scale = float(np.linalg.norm(dense(scenario.t_end)))
    floor = EXCLUSION_FLOOR_FACTOR * (rel_tol * scale + abs_tol)

    results = []
    for stepper in steppers:
        errors = []
        excluded = []
        for h in hs:
            record = run_scenario(scenario, stepper, h)
            ref = dense(record.times).T
            err = float(np.max(np.linalg.norm(record.momenta - ref, axis=1)))
            errors.append(err)
            excluded.append(err < floor)
        kept_h = [h for h, ex in zip(hs, excluded) if not ex]
        kept_e = [e for e, ex in zip(errors, excluded) if not ex]
        slope = _fit_slope(kept_h, kept_e) if len(kept_h) >= 2 else None
        results.append(
            ConvergenceResult(
                stepper=stepper.name,
                hs=tuple(hs),
                errors=tuple(errors),
                excluded=tuple(excluded),
                slope=slope,
            )
        )
    return tuple(results)
