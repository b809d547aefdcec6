"""Exception and warning types shared across the package."""

from __future__ import annotations


class WgdispError(Exception):
    """Base class for all package errors."""


class InputError(WgdispError, ValueError):
    """Invalid argument, geometry, mode index or configuration."""


class SpeciesFileError(InputError):
    """Malformed dipole species file; carries the offending line number."""

    def __init__(self, message: str, path: str, line_number: int):
        super().__init__(f"{path}:{line_number}: {message}")
        self.path = path
        self.line_number = line_number


class ModeCapError(WgdispError, RuntimeError):
    """Mode summation would exceed the configured hard cap."""

    def __init__(self, needed: int, cap: int):
        super().__init__(
            f"mode summation needs ~{needed} modes, exceeding the hard cap of {cap}; "
            "for separations this small use the near-field closed forms in "
            "wgdisp.asymptotics instead"
        )
        self.needed = needed
        self.cap = cap


class QuadratureError(WgdispError, RuntimeError):
    """Numerical integration failed to reach the requested tolerance.

    Carries the best available estimate and the achieved error bound so a
    caller can decide whether the partial result is still usable.
    """

    def __init__(self, message: str, best_estimate: float, achieved_error: float):
        super().__init__(f"{message} (best estimate {best_estimate!r}, "
                         f"achieved error {achieved_error!r})")
        self.best_estimate = best_estimate
        self.achieved_error = achieved_error


class ConvergenceError(WgdispError, RuntimeError):
    """Series summation did not converge within the allowed index range."""

    def __init__(self, message: str, partial_sum: float, tail_bound: float):
        super().__init__(f"{message} (partial sum {partial_sum!r}, "
                         f"tail bound {tail_bound!r})")
        self.partial_sum = partial_sum
        self.tail_bound = tail_bound


class TightConfinementWarning(UserWarning):
    """Transition wavelength is not far above the transverse confinement."""


class ValidityDomainWarning(UserWarning):
    """Arguments are outside the validity domain of a closed-form result."""
