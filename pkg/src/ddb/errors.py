"""Exception types shared across the library."""

from __future__ import annotations


class NotSkew(ValueError):
    """Matrix handed to vee() has a symmetric part above tolerance."""


class NoConvergence(RuntimeError):
    """Newton iteration exhausted its budget without meeting the residual target."""

    def __init__(self, iterations: int, last_residual: float):
        self.iterations = iterations
        self.last_residual = last_residual
        super().__init__(
            f"no convergence after {iterations} iterations "
            f"(last residual {last_residual:.3e})"
        )


class BranchAmbiguity(RuntimeError):
    """The near-identity root of a group equation is not isolated.

    Raised when the solve lands where two admissible roots (distinguished
    only by their distance to the identity) have merged within tolerance,
    so "closest to the identity" no longer selects a branch.
    """


class StepFailure(RuntimeError):
    """A trajectory died mid-run; carries the step index and the cause."""

    def __init__(self, step_index: int, time: float, cause: Exception):
        self.step_index = step_index
        self.time = time
        self.cause = cause
        super().__init__(f"step {step_index} (t={time:g}) failed: {cause}")


class StepSizeUnderflow(RuntimeError):
    """The adaptive reference integrator gave up before reaching t_end."""


class UnknownScenario(KeyError):
    """Requested scenario name is not one of the built-ins."""


class DegenerateSpectrum(ValueError):
    """Limit points are undefined: the two largest moments of inertia tie."""


class NotDegenerate(ValueError):
    """Great-circle metrics need the two largest moments of inertia equal."""


class MissingIncrements(ValueError):
    """Attitude reconstruction asked for increments the stepper never produced."""
