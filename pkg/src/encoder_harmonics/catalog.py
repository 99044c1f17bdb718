"""Closed-form error harmonics for main-harmonic mismatches.

Second-order amplitudes of the angular error for the seven common
combinations of DC offset, amplitude mismatch and phase (orthogonality)
error of the main harmonic.  Parameters are understood
post-normalization: ``an``/``bn`` are the deviations of the channel
amplitudes from one, ``a0``/``b0`` the normalized offsets, ``delta``
the lead of the sine channel against the cosine channel.

Every entry can be cross-checked against the second-order series engine
with :func:`catalog_consistency`; closed forms that disagree beyond the
engine tolerance are reported, never silently corrected.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .approximation import collect_spectrum, taylor_terms
from .errors import SpecError
from .signal_model import (
    EncoderSpec,
    HarmonicComponent,
    ideal_main,
    phase_mismatch_component,
)


class Variant(enum.Enum):
    OFFSET = "offset"
    AMPLITUDE = "amplitude"
    PHASE = "phase"
    OFFSET_AMPLITUDE = "offset-amplitude"
    OFFSET_PHASE = "offset-phase"
    AMPLITUDE_PHASE = "amplitude-phase"
    OFFSET_AMPLITUDE_PHASE = "offset-amplitude-phase"


#: Which parameter groups each variant uses.
_USES = {
    Variant.OFFSET: ("offset",),
    Variant.AMPLITUDE: ("amplitude",),
    Variant.PHASE: ("phase",),
    Variant.OFFSET_AMPLITUDE: ("offset", "amplitude"),
    Variant.OFFSET_PHASE: ("offset", "phase"),
    Variant.AMPLITUDE_PHASE: ("amplitude", "phase"),
    Variant.OFFSET_AMPLITUDE_PHASE: ("offset", "amplitude", "phase"),
}

#: Harmonic orders (as multiples of p) with first- and second-order support.
_ORDERS = {
    Variant.OFFSET: (frozenset({1}), frozenset({2})),
    Variant.AMPLITUDE: (frozenset({2}), frozenset({4})),
    Variant.PHASE: (frozenset({0, 2}), frozenset({0, 2, 4})),
    Variant.OFFSET_AMPLITUDE: (frozenset({1, 2}), frozenset({1, 2, 3, 4})),
    Variant.OFFSET_PHASE: (frozenset({0, 1, 2}), frozenset({0, 1, 2, 3, 4})),
    Variant.AMPLITUDE_PHASE: (frozenset({0, 2}), frozenset({0, 2, 4})),
    Variant.OFFSET_AMPLITUDE_PHASE: (frozenset({0, 1, 2}), frozenset({0, 1, 2, 3, 4})),
}


@dataclass(frozen=True)
class MismatchCase:
    """One mismatch scenario; parameters irrelevant to the variant must be zero."""

    variant: Variant
    a0: float = 0.0
    b0: float = 0.0
    an: float = 0.0
    bn: float = 0.0
    delta: float = 0.0

    def __post_init__(self) -> None:
        uses = _USES[self.variant]
        if "offset" not in uses and (self.a0 or self.b0):
            raise SpecError(f"{self.variant.value}: offsets must be zero")
        if "amplitude" not in uses and (self.an or self.bn):
            raise SpecError(f"{self.variant.value}: amplitude deviations must be zero")
        if "phase" not in uses and self.delta:
            raise SpecError(f"{self.variant.value}: phase mismatch must be zero")
        if not -math.pi < self.delta < math.pi:
            raise SpecError(f"phase mismatch must lie in (-pi, pi), got {self.delta}")


def equivalent_spec(case: MismatchCase, p: int) -> EncoderSpec:
    """Normalized spec with the case's equivalent disturbance harmonics."""
    components = []
    if case.a0 or case.b0:
        components.append(
            HarmonicComponent(0, case.a0, math.pi / 2, case.b0, 0.0)
        )
    if case.an or case.bn:
        components.append(HarmonicComponent(p, case.an, 0.0, case.bn, 0.0))
    if case.delta:
        components.append(phase_mismatch_component(case.delta, p))
    return EncoderSpec(main=ideal_main(p), disturbances=tuple(components), normalized=True)


def _formulas(case: MismatchCase) -> dict:
    """Tabulated closed forms, keyed by multiple of p; signed forms kept raw."""
    a0, b0, an, bn, d = case.a0, case.b0, case.an, case.bn, case.delta
    v = case.variant
    if v is Variant.OFFSET:
        return {
            1: math.sqrt(a0**2 + b0**2),
            2: math.sqrt(a0**4 / 4 + a0**2 * b0**2 / 2 + b0**4 / 4),
        }
    if v is Variant.AMPLITUDE:
        return {
            2: 0.5 * (an - bn) + 0.25 * (bn**2 - an**2),
            4: 0.125 * (an - bn) ** 2,
        }
    if v is Variant.PHASE:
        return {
            0: 0.75 * math.sin(d) - 0.125 * math.sin(2 * d),
            2: math.sqrt(0.25 * math.sin(d) ** 2 + (math.cos(d) - 1) ** 2),
            4: 0.25 * (1 - math.cos(d)),
        }
    if v is Variant.OFFSET_AMPLITUDE:
        return {
            1: 0.5 * (bn + an - 2) * math.sqrt(b0**2 + a0**2),
            2: math.sqrt(
                b0**2 * a0**2
                + (2 * b0**2 + bn**2 - 2 * bn - 2 * a0**2 - an**2 - 2 * an) ** 2 / 16
            ),
            3: 0.5 * (an - bn) * math.sqrt(b0**2 + a0**2),
            4: 0.125 * (an - bn) ** 2,
        }
    if v is Variant.OFFSET_PHASE:
        return {
            0: 0.75 * math.sin(d) - 0.125 * math.sin(2 * d),
            1: math.sqrt(2) / 2 * math.sqrt((5 - 3 * math.cos(d)) * (a0**2 + b0**2)),
            2: 0.5
            * math.sqrt(
                (math.sin(d) - 2 * a0 * b0) ** 2
                + (2 * math.cos(d) - a0**2 + b0**2 - 2) ** 2
            ),
            3: math.sqrt(2) / 2 * math.sqrt((1 - math.cos(d)) * (a0**2 + b0**2)),
            4: 0.25 * (1 - math.cos(d)),
        }
    if v is Variant.AMPLITUDE_PHASE:
        return {
            0: 0.25 * (3 - an - bn) * math.sin(d) - 0.125 * math.sin(2 * d),
            2: 0.25
            * math.sqrt(
                (
                    an**2
                    - bn**2
                    - 4 * an
                    + 2 * bn
                    + 2 * an * math.cos(d)
                    - 4 * math.cos(d)
                    + 4
                )
                ** 2
                + 4 * math.sin(d) ** 2 * (bn - 1) ** 2
            ),
            4: 0.125
            * math.sqrt(
                (math.sin(2 * d) + 2 * math.sin(d) * (an - bn - 1)) ** 2
                + (
                    (an - bn) ** 2
                    - 2 * (an - bn)
                    + 2 * math.cos(d) * (an - bn - 1)
                    + math.cos(2 * d)
                    + 1
                )
                ** 2
            ),
        }
    if v is Variant.OFFSET_AMPLITUDE_PHASE:
        return {
            0: 0.25 * (3 - an + bn) * math.sin(d) - 0.125 * math.sin(2 * d),
            1: 0.5
            * math.sqrt(
                (a0**2 + b0**2)
                * (
                    (an + bn) ** 2
                    - 6 * (an + bn)
                    + 2 * math.cos(d) * (an + bn)
                    - 6 * math.cos(d)
                    + 10
                )
            ),
            2: 0.5
            * math.sqrt(
                (math.sin(d) * (bn - 1) + 2 * a0 * b0) ** 2
                + (
                    0.5 * (an**2 - bn**2)
                    + a0**2
                    - b0**2
                    - 2 * an
                    + bn
                    + math.cos(d) * (an - 2)
                    + 2
                )
                ** 2
            ),
            3: 0.5
            * math.sqrt(
                (a0**2 + b0**2)
                * (
                    (an - bn) ** 2
                    - 2 * (an - bn)
                    + 2 * math.cos(d) * (an - bn - 1)
                    + 2
                )
            ),
            4: 0.125
            * math.sqrt(
                (math.sin(2 * d) + 2 * math.sin(d) * (an - bn - 1)) ** 2
                + (
                    (an - bn) ** 2
                    - 2 * (an - bn)
                    + 2 * math.cos(d) * (an - bn - 1)
                    + math.cos(2 * d)
                    + 1
                )
                ** 2
            ),
        }
    raise SpecError(f"unknown variant {v!r}")


def catalog_spectrum(case: MismatchCase, p: int) -> dict:
    """Tabulated second-order amplitudes at orders {0, p, 2p, 3p, 4p}.

    Amplitudes are reported as absolute values; orders without support
    for the variant are zero.
    """
    formulas = _formulas(case)
    return {m * p: abs(formulas.get(m, 0.0)) for m in range(5)}


def catalog_orders(case: MismatchCase):
    """First- and second-order harmonic support, as multiples of p."""
    return _ORDERS[case.variant]


@dataclass(frozen=True)
class ConsistencyReport:
    """Per-order comparison of the closed forms against the series engine."""

    case: MismatchCase
    p: int
    catalog: dict
    engine: dict
    deviations: dict

    @property
    def max_deviation(self) -> float:
        return max(self.deviations.values(), default=0.0)


def catalog_consistency(case: MismatchCase, p: int) -> ConsistencyReport:
    """Compare the tabulated amplitudes with the k=2 series engine."""
    catalog = catalog_spectrum(case, p)
    spectrum = collect_spectrum(taylor_terms(equivalent_spec(case, p), k=2))
    engine = {order: spectrum.amplitude(order) for order in catalog}
    deviations = {
        order: abs(catalog[order] - engine[order]) for order in catalog
    }
    return ConsistencyReport(
        case=case, p=p, catalog=catalog, engine=engine, deviations=deviations
    )
