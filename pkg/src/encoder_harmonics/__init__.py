"""Harmonic analysis of the angular error of sine/cosine angle encoders."""

from .approximation import (
    SinusoidTerm,
    TaylorExpansion,
    collect_spectrum,
    evaluate,
    first_order_amplitudes,
    geometric_epsilon,
    geometric_spectrum,
    product_to_sum,
    taylor_terms,
)
from .bounds import (
    BoundReport,
    amplitude_sums,
    build_report,
    geometric_bound,
    rule_of_thumb,
    taylor_residual_bound,
)
from .catalog import (
    ConsistencyReport,
    MismatchCase,
    Variant,
    catalog_consistency,
    catalog_orders,
    catalog_spectrum,
    equivalent_spec,
)
from .errors import (
    DomainError,
    EncoderHarmonicsError,
    SamplingError,
    SpecError,
    TermBudgetError,
)
from .exact import (
    ErrorTrace,
    HarmonicSpectrum,
    atan2_unwrap,
    dft_spectrum,
    error_from_angles,
    exact_error,
    unwrap_angles,
)
from .signal_model import (
    DEFAULT_SAMPLES,
    EncoderSpec,
    HarmonicComponent,
    MainHarmonicParams,
    SignalTrace,
    complex_vector,
    correct_main_harmonic,
    ideal_main,
    normalize,
    normalize_and_equivalents,
    phase_mismatch_component,
    sample_grid,
    synthesize,
)

__version__ = "0.1.0"
