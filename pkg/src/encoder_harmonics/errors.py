"""Exception types shared across the package."""


class EncoderHarmonicsError(Exception):
    """Base class for all package errors."""


class SpecError(EncoderHarmonicsError, ValueError):
    """Invalid encoder specification or configuration."""


class SamplingError(EncoderHarmonicsError, ValueError):
    """Sample grid too coarse for the harmonic content."""


class DomainError(EncoderHarmonicsError, ValueError):
    """Input outside the mathematical domain of an operation
    (singular correction, divergent bound, Nyquist violation)."""


class TermBudgetError(EncoderHarmonicsError, RuntimeError):
    """Series expansion would exceed the configured term budget."""
