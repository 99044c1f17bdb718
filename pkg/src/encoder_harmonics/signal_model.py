"""Fourier-series model of sine/cosine encoder signals.

An encoder with periodicity p emits two channels in quadrature,

    a(phi) = A0 + Ap*sin(p*phi + theta_p) + sum_n An*sin(n*phi + theta_n)
    b(phi) = B0 + Bp*cos(p*phi + psi_p)  + sum_n Bn*cos(n*phi + psi_n)

where the order-p term is the usable signal and everything else is a
disturbance.  This module synthesizes sampled traces from such a model,
corrects/normalizes imperfections of the main harmonic and converts them
into equivalent disturbance harmonics of order 0 and p.

Phase-sign convention: the orthogonality mismatch is expressed as the
*lead* of the sine channel relative to the cosine channel.  With the
cosine channel as phase reference (psi_p = 0) the mismatch is simply
theta_p, and the exact identity

    sin(x + d) = sin(x) + 2*sin(d/2)*sin(x + (d + pi)/2)

turns it into an order-p disturbance of amplitude 2*sin(d/2).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import DomainError, SamplingError, SpecError

TWO_PI = 2.0 * math.pi

#: Default number of samples per mechanical revolution.  Power of two,
#: and >= 8x oversampling for harmonic orders up to 512.
DEFAULT_SAMPLES = 4096

#: Amplitudes below this are treated as exactly zero when pruning
#: equivalent harmonics and merged components.
_ZERO_AMP = 1e-15


def wrap_phase(x: float) -> float:
    """Wrap an angle to [-pi, pi)."""
    return (x + math.pi) % TWO_PI - math.pi


@dataclass(frozen=True)
class HarmonicComponent:
    """One disturbance term of the signal Fourier series.

    Contributes ``a_amp*sin(n*phi + theta)`` to the sine channel and
    ``b_amp*cos(n*phi + psi)`` to the cosine channel.  Amplitudes may be
    signed at construction; :meth:`canonicalize` folds signs into the
    phases.  Order 0 encodes DC offsets and requires theta = +-pi/2 and
    psi in {0, +-pi} so both channel contributions are plain constants.
    """

    n: int
    a_amp: float = 0.0
    theta: float = 0.0
    b_amp: float = 0.0
    psi: float = 0.0

    def __post_init__(self) -> None:
        if self.n < 0:
            raise SpecError(f"harmonic order must be >= 0, got {self.n}")
        if self.n == 0:
            if abs(math.cos(self.theta)) > 1e-12:
                raise SpecError(
                    "order-0 component requires theta = +-pi/2 "
                    f"(got theta={self.theta!r})"
                )
            if abs(math.sin(self.psi)) > 1e-12:
                raise SpecError(
                    "order-0 component requires psi = 0 or +-pi "
                    f"(got psi={self.psi!r})"
                )

    @property
    def delta(self) -> float:
        """Phase difference psi - theta between the two channels."""
        return self.psi - self.theta

    def canonicalize(self) -> "HarmonicComponent":
        """Return the canonical form: amplitudes >= 0, phases in [-pi, pi).

        Folding a negative amplitude into a +-pi phase shift leaves the
        synthesized signal unchanged.  Idempotent.
        """
        a_amp, theta = self.a_amp, self.theta
        b_amp, psi = self.b_amp, self.psi
        if a_amp < 0:
            a_amp, theta = -a_amp, theta + math.pi
        if b_amp < 0:
            b_amp, psi = -b_amp, psi + math.pi
        return HarmonicComponent(self.n, a_amp, wrap_phase(theta), b_amp, wrap_phase(psi))

    def a_at(self, phi):
        """Sine-channel contribution at mechanical angle(s) ``phi``."""
        return self.a_amp * np.sin(self.n * np.asarray(phi, dtype=float) + self.theta)

    def b_at(self, phi):
        """Cosine-channel contribution at mechanical angle(s) ``phi``."""
        return self.b_amp * np.cos(self.n * np.asarray(phi, dtype=float) + self.psi)


@dataclass(frozen=True)
class MainHarmonicParams:
    """Parameters of the order-p main harmonic, including imperfections."""

    p: int
    a_amp: float = 1.0
    b_amp: float = 1.0
    theta: float = 0.0
    psi: float = 0.0
    a_offset: float = 0.0
    b_offset: float = 0.0

    def __post_init__(self) -> None:
        if self.p < 1:
            raise SpecError(f"periodicity must be >= 1, got {self.p}")
        if self.a_amp <= 0 or self.b_amp <= 0:
            raise SpecError("main-harmonic amplitudes must be positive")

    @property
    def delta(self) -> float:
        """Phase difference psi - theta of the main harmonic."""
        return self.psi - self.theta

    @property
    def sine_lead(self) -> float:
        """Phase of the sine channel relative to the cosine channel."""
        return self.theta - self.psi

    @property
    def is_ideal(self) -> bool:
        return (
            self.a_amp == 1.0
            and self.b_amp == 1.0
            and self.theta == 0.0
            and self.psi == 0.0
            and self.a_offset == 0.0
            and self.b_offset == 0.0
        )


def ideal_main(p: int) -> MainHarmonicParams:
    """Unit-amplitude, zero-offset, orthogonal main harmonic."""
    return MainHarmonicParams(p=p)


def _merge_components(components) -> tuple:
    """Merge duplicate orders by per-channel phasor addition."""
    by_order: dict[int, list[HarmonicComponent]] = {}
    for comp in components:
        by_order.setdefault(comp.n, []).append(comp)
    merged = []
    for n in sorted(by_order):
        group = by_order[n]
        if len(group) == 1:
            comp = group[0].canonicalize()
        elif n == 0:
            # DC components add as plain signed constants.
            a = math.fsum(c.a_amp * math.sin(c.theta) for c in group)
            b = math.fsum(c.b_amp * math.cos(c.psi) for c in group)
            comp = HarmonicComponent(0, a, math.pi / 2, b, 0.0).canonicalize()
        else:
            za = sum(cmath.rect(c.a_amp, c.theta) for c in group)
            zb = sum(cmath.rect(c.b_amp, c.psi) for c in group)
            comp = HarmonicComponent(
                n, abs(za), cmath.phase(za), abs(zb), cmath.phase(zb)
            ).canonicalize()
        if abs(comp.a_amp) > _ZERO_AMP or abs(comp.b_amp) > _ZERO_AMP:
            merged.append(comp)
    return tuple(merged)


@dataclass(frozen=True)
class EncoderSpec:
    """Full signal model: main harmonic plus disturbance harmonics.

    Duplicate disturbance orders are merged by phasor addition at
    construction, so the model holds at most one component per order.
    ``normalized`` asserts the ideal-main assumptions (unit amplitudes,
    zero offsets and phases) hold exactly.
    """

    main: MainHarmonicParams
    disturbances: tuple = ()
    normalized: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(self, "disturbances", _merge_components(self.disturbances))
        if self.normalized and not self.main.is_ideal:
            raise SpecError("normalized spec requires an ideal main harmonic")

    @property
    def p(self) -> int:
        return self.main.p

    @property
    def max_order(self) -> int:
        orders = [self.main.p] + [c.n for c in self.disturbances]
        return max(orders)

    def canonicalized(self) -> "EncoderSpec":
        return replace(self, disturbances=tuple(c.canonicalize() for c in self.disturbances))

    def scaled(self, s: float) -> "EncoderSpec":
        """Scale all disturbance amplitudes by ``s`` (main untouched)."""
        comps = tuple(
            replace(c, a_amp=c.a_amp * s, b_amp=c.b_amp * s) for c in self.disturbances
        )
        return replace(self, disturbances=comps)

    def evaluate(self, phi):
        """Evaluate both channels at mechanical angle(s) ``phi``."""
        phi = np.asarray(phi, dtype=float)
        m = self.main
        a = m.a_offset + m.a_amp * np.sin(m.p * phi + m.theta)
        b = m.b_offset + m.b_amp * np.cos(m.p * phi + m.psi)
        for comp in self.disturbances:
            a = a + comp.a_at(phi)
            b = b + comp.b_at(phi)
        return a, b


@dataclass(frozen=True)
class SignalTrace:
    """Channels sampled on a uniform grid over one mechanical revolution."""

    phi: np.ndarray
    a: np.ndarray
    b: np.ndarray

    def __len__(self) -> int:
        return len(self.phi)


def sample_grid(n_samples: int) -> np.ndarray:
    """Uniform angle grid phi_k = 2*pi*k/N over [0, 2*pi)."""
    return np.arange(n_samples) * (TWO_PI / n_samples)


def synthesize(spec: EncoderSpec, n_samples: int = DEFAULT_SAMPLES) -> SignalTrace:
    """Sample the signal model over one mechanical revolution.

    Requires at least 8x oversampling of the highest harmonic order
    present, so every order lands well below Nyquist.
    """
    min_samples = 8 * spec.max_order
    if n_samples < min_samples:
        raise SamplingError(
            f"need >= {min_samples} samples for max order {spec.max_order}, got {n_samples}"
        )
    phi = sample_grid(n_samples)
    a, b = spec.evaluate(phi)
    return SignalTrace(phi=phi, a=a, b=b)


def complex_vector(spec: EncoderSpec, phi):
    """Signal vector z = b + i*a at mechanical angle(s) ``phi``."""
    a, b = spec.evaluate(phi)
    return b + 1j * a


def phase_mismatch_component(lead: float, p: int) -> HarmonicComponent:
    """Equivalent order-p disturbance for a sine channel sin(p*phi + lead).

    Exact by the identity sin(x+d) = sin(x) + 2*sin(d/2)*sin(x+(d+pi)/2).
    """
    return HarmonicComponent(
        n=p, a_amp=2.0 * math.sin(lead / 2.0), theta=(lead + math.pi) / 2.0
    )


def _cos_phase_mismatch_component(lead: float, p: int) -> HarmonicComponent:
    """Equivalent order-p disturbance for a cosine channel cos(p*phi + lead)."""
    return HarmonicComponent(
        n=p, b_amp=2.0 * math.sin(lead / 2.0), psi=(lead + math.pi) / 2.0
    )


def normalize_and_equivalents(params: MainHarmonicParams):
    """Scaling factor and equivalent disturbances for a non-ideal main harmonic.

    Returns ``(g, components)`` where g = (Ap + Bp)/2 and the components
    reproduce, together with an ideal main harmonic, the raw signals
    divided by g -- exactly.  Offsets map to an order-0 component,
    amplitude deviations to an order-p component (signed amplitudes,
    carrying the channel phases), and each channel phase to an order-p
    component via the half-angle identity.  Zero-magnitude components
    are omitted.
    """
    g = (params.a_amp + params.b_amp) / 2.0
    components = []
    if abs(params.a_offset) > _ZERO_AMP or abs(params.b_offset) > _ZERO_AMP:
        components.append(
            HarmonicComponent(
                n=0,
                a_amp=params.a_offset / g,
                theta=math.pi / 2,
                b_amp=params.b_offset / g,
                psi=0.0,
            )
        )
    da = params.a_amp / g - 1.0
    db = params.b_amp / g - 1.0
    if abs(da) > _ZERO_AMP or abs(db) > _ZERO_AMP:
        components.append(
            HarmonicComponent(
                n=params.p, a_amp=da, theta=params.theta, b_amp=db, psi=params.psi
            )
        )
    if params.theta != 0.0:
        components.append(phase_mismatch_component(params.theta, params.p))
    if params.psi != 0.0:
        components.append(_cos_phase_mismatch_component(params.psi, params.p))
    return g, components


def normalize(spec: EncoderSpec):
    """Rewrite a spec with an ideal, normalized main harmonic.

    Main-harmonic imperfections become equivalent disturbance harmonics
    and all disturbance amplitudes are divided by the scaling factor g.
    The resulting spec reproduces the raw signals divided by g exactly,
    which leaves the arctangent angle (and hence the angular error)
    unchanged.  Returns ``(g, normalized_spec)``.
    """
    if spec.normalized:
        return 1.0, spec
    g, equivalents = normalize_and_equivalents(spec.main)
    scaled = [
        replace(c, a_amp=c.a_amp / g, b_amp=c.b_amp / g) for c in spec.disturbances
    ]
    return g, EncoderSpec(
        main=ideal_main(spec.p),
        disturbances=tuple(scaled) + tuple(equivalents),
        normalized=True,
    )


def _corrected_component(
    comp: HarmonicComponent, params: MainHarmonicParams
) -> HarmonicComponent:
    """Apply the main-harmonic correction map to one disturbance."""
    lead = params.sine_lead
    k = params.a_amp / params.b_amp * math.sin(lead)
    denom = params.a_amp * math.cos(lead)
    if comp.n == 0:
        a_const = comp.a_amp * math.sin(comp.theta)
        b_const = comp.b_amp * math.cos(comp.psi)
        return HarmonicComponent(
            0,
            (a_const - k * b_const) / denom,
            math.pi / 2,
            b_const / params.b_amp,
            0.0,
        ).canonicalize()
    # a'' mixes the b-channel term in: cos(n*phi+psi) = sin(n*phi+psi+pi/2).
    za = (
        cmath.rect(comp.a_amp, comp.theta)
        - k * cmath.rect(comp.b_amp, comp.psi + math.pi / 2)
    ) / denom
    return HarmonicComponent(
        comp.n,
        abs(za),
        cmath.phase(za),
        comp.b_amp / params.b_amp,
        comp.psi,
    ).canonicalize()


def correct_main_harmonic(raw, params: MainHarmonicParams):
    """Correct offsets, amplitudes and orthogonality of the main harmonic.

    Implements the linear map

        b' = (b - B0)/Bp
        a'' = ((a - A0) - (b - B0)*(Ap/Bp)*sin(d)) / (Ap*cos(d))

    with d the sine-channel lead, which restores a unit-amplitude,
    zero-offset, orthogonal main harmonic.  Accepts either a
    :class:`SignalTrace` (returns a corrected trace) or an
    :class:`EncoderSpec` (returns a normalized spec whose disturbances
    went through the same map).  Singular at d = +-pi/2.
    """
    lead = params.sine_lead
    if abs(math.cos(lead)) < 1e-12:
        raise DomainError("phase mismatch of +-pi/2 makes the correction singular")
    if isinstance(raw, SignalTrace):
        b1 = (raw.b - params.b_offset) / params.b_amp
        a2 = (
            (raw.a - params.a_offset)
            - (raw.b - params.b_offset) * (params.a_amp / params.b_amp) * math.sin(lead)
        ) / (params.a_amp * math.cos(lead))
        return SignalTrace(phi=raw.phi, a=a2, b=b1)
    if isinstance(raw, EncoderSpec):
        # Shift the angle origin so any common phase psi_p vanishes, then
        # run every disturbance through the correction map.
        shift = params.psi / params.p
        comps = []
        for comp in raw.disturbances:
            shifted = replace(
                comp,
                theta=comp.theta - comp.n * shift if comp.n else comp.theta,
                psi=comp.psi - comp.n * shift if comp.n else comp.psi,
            )
            comps.append(_corrected_component(shifted, params))
        return EncoderSpec(
            main=ideal_main(raw.p), disturbances=tuple(comps), normalized=True
        )
    raise TypeError(f"expected SignalTrace or EncoderSpec, got {type(raw).__name__}")
