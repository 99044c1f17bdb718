"""Exact angular-error oracle.

Ground truth for everything else in the package: the electrical angle is
recovered with the two-argument arctangent, 2*pi discontinuities are
removed by phase unwrapping, and the angular error is decomposed into
harmonic amplitudes by discrete Fourier transform over exactly one
mechanical revolution (so every mechanical order lands on an integer
bin; no windowing).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .signal_model import (
    DEFAULT_SAMPLES,
    TWO_PI,
    EncoderSpec,
    SignalTrace,
    normalize,
    synthesize,
    wrap_phase,
)


@dataclass(frozen=True)
class ErrorTrace:
    """Sampled electrical angular error over one mechanical revolution."""

    phi: np.ndarray
    delta_phi_p: np.ndarray
    p: int

    @property
    def mechanical_error(self) -> np.ndarray:
        """Mechanical angular error, electrical error divided by p."""
        return self.delta_phi_p / self.p

    def __len__(self) -> int:
        return len(self.phi)


@dataclass(frozen=True)
class HarmonicSpectrum:
    """Map order -> (amplitude >= 0 in rad, phase in [-pi, pi)).

    Reconstruction convention: order n >= 1 contributes
    ``H_n * sin(n*phi + phase_n)``; order 0 is the DC value with its
    sign encoded in the phase (0 or -pi, i.e. DC = H_0 * cos(phase_0)).
    """

    entries: dict

    def amplitude(self, n: int) -> float:
        return self.entries.get(n, (0.0, 0.0))[0]

    def phase(self, n: int) -> float:
        return self.entries.get(n, (0.0, 0.0))[1]

    @property
    def dc(self) -> float:
        """Signed DC value."""
        amp, phase = self.entries.get(0, (0.0, 0.0))
        return amp * math.cos(phase)

    def orders(self):
        return sorted(self.entries)

    def dominant_orders(self, count: int):
        """Orders of the ``count`` largest amplitudes among n >= 1."""
        ranked = sorted(
            (n for n in self.entries if n >= 1),
            key=lambda n: self.amplitude(n),
            reverse=True,
        )
        return ranked[:count]

    def evaluate(self, phi):
        """Evaluate the band-limited reconstruction at angle(s) ``phi``."""
        phi = np.asarray(phi, dtype=float)
        out = np.full_like(phi, self.dc)
        for n, (amp, phase) in self.entries.items():
            if n >= 1:
                out = out + amp * np.sin(n * phi + phase)
        return out


def unwrap_angles(raw) -> np.ndarray:
    """Remove 2*pi jumps so successive differences lie in (-pi, pi]."""
    return np.unwrap(np.asarray(raw, dtype=float))


def atan2_unwrap(trace: SignalTrace) -> np.ndarray:
    """Continuous signal-vector angle along the trace.

    The first sample is the raw two-argument arctangent in (-pi, pi];
    subsequent samples accumulate 2*pi corrections so the sequence has
    no jump exceeding pi.
    """
    degenerate = (trace.a == 0.0) & (trace.b == 0.0)
    if np.any(degenerate):
        k = int(np.argmax(degenerate))
        raise DomainError(f"a = b = 0 at sample {k}: angle undefined")
    return unwrap_angles(np.arctan2(trace.a, trace.b))


def error_from_angles(angles, phi, p: int) -> ErrorTrace:
    """Angular error of an unwrapped angle sequence against p*phi.

    The base point is re-wrapped into (-pi, pi], so adding whole turns
    to every input angle leaves the result unchanged.
    """
    angles = np.asarray(angles, dtype=float)
    phi = np.asarray(phi, dtype=float)
    delta = angles - p * phi
    shift = delta[0] - wrap_phase(delta[0])
    if delta[0] == math.pi:  # wrap_phase maps pi -> -pi; keep pi itself
        shift = 0.0
    return ErrorTrace(phi=phi, delta_phi_p=delta - shift, p=p)


def exact_error(spec: EncoderSpec, n_samples: int = DEFAULT_SAMPLES) -> ErrorTrace:
    """Exact electrical angular error of a spec, sampled over one revolution.

    Non-normalized specs are normalized first (global scaling cancels in
    the arctangent argument, so this leaves the error unchanged).
    """
    if not spec.normalized:
        _, spec = normalize(spec)
    trace = synthesize(spec, n_samples)
    return error_from_angles(atan2_unwrap(trace), trace.phi, spec.p)


def dft_spectrum(err: ErrorTrace, max_order: int) -> HarmonicSpectrum:
    """Harmonic amplitudes of the angular error up to ``max_order``.

    Amplitudes are 2|X_n|/N for n >= 1 and |X_0|/N at DC; phases are
    chosen so the reconstruction uses sin(n*phi + phase).
    """
    n_samples = len(err)
    if max_order >= n_samples / 2:
        raise DomainError(
            f"max_order {max_order} at or above Nyquist for N={n_samples}"
        )
    spectrum = np.fft.rfft(err.delta_phi_p)
    entries = {}
    dc = spectrum[0].real / n_samples
    entries[0] = (abs(dc), 0.0 if dc >= 0 else wrap_phase(math.pi))
    for n in range(1, max_order + 1):
        x = spectrum[n]
        entries[n] = (2.0 * abs(x) / n_samples, wrap_phase(np.angle(x) + math.pi / 2))
    return HarmonicSpectrum(entries=entries)
