"""Exception types raised across the toolkit."""


class SnailsimError(Exception):
    """Base class for all toolkit errors."""


class NonConvergence(SnailsimError):
    """An iterative solver exhausted its iteration budget."""


class MultiStableRegime(SnailsimError):
    """Junction asymmetry beta >= 1/M: the potential is no longer single-welled."""


class UnstablePotential(SnailsimError):
    """Effective quadratic coefficient is non-positive; no stable minimum."""


class FitDiverged(SnailsimError):
    """A least-squares fit failed to reduce the residual."""


class DispersiveViolation(SnailsimError):
    """|g / (omega - omega_c)| exceeds the dispersive-approximation guard."""


class ResonantDenominator(SnailsimError):
    """A perturbative energy denominator fell below the resonance guard."""


class AmplitudeAboveCritical(SnailsimError):
    """Pump amplitude |xi| at or above the well-escape threshold."""


class TruncationError(SnailsimError):
    """Requested state or displacement does not fit in the truncated Fock space."""


class DimensionMismatch(SnailsimError):
    """Operator or state dimensions are inconsistent."""


class StepSizeUnderflow(SnailsimError):
    """Adaptive integrator step size shrank below the representable minimum."""


class CalibrationAmbiguity(SnailsimError):
    """Branch angles still differ after solving the calibration equations."""


class InconsistentChannels(SnailsimError):
    """P01- and P10-derived time constants disagree beyond tolerance."""


class SingularConfusion(SnailsimError):
    """Confusion matrix is (nearly) singular: true-positive equals false-positive rate."""


class ConfigInvalid(SnailsimError):
    """Run configuration failed validation; message carries field-level details."""
