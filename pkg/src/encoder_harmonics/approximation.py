"""Analytic approximation of the angular error.

Two routes, both free of any arctangent evaluation:

* the geometric route projects each disturbance vector onto the unit
  tangent at the main-harmonic vector, yielding four sinusoidal error
  terms per disturbance (orders n - p and n + p);

* the series route expands the error function in the disturbance
  amplitudes.  The mixed partial derivative of total order q, taken at
  zero amplitudes, is

      (q - 1)! * sin(q*p*phi + (|alpha| + 2|beta|)*pi/2)
               * prod sin^alpha_j(n_j*phi + theta_j)
               * prod cos^beta_j(n_j*phi + psi_j)

  where alpha counts sine-channel and beta cosine-channel derivatives.
  Each monomial is flattened into plain sinusoids with product-to-sum
  identities, so the partial sum of any order is an explicit list of
  ``amplitude * sin(order*phi + phase)`` terms.

The first-order series term reproduces the geometric route exactly.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from itertools import combinations_with_replacement
from math import comb, factorial

import numpy as np

from .errors import SpecError, TermBudgetError
from .exact import HarmonicSpectrum
from .signal_model import EncoderSpec, HarmonicComponent, wrap_phase

#: Collected amplitudes below this are cancellation noise and dropped.
COLLECT_EPS = 1e-15

#: Default ceiling on the number of generated sinusoid terms.
DEFAULT_TERM_BUDGET = 1_000_000


@dataclass(frozen=True)
class SinusoidTerm:
    """One analytic term ``amplitude * sin(order*phi + phase)``."""

    order: int
    amplitude: float
    phase: float

    def normalized(self) -> "SinusoidTerm":
        """Fold into normal form: order >= 0, amplitude >= 0, phase in [-pi, pi)."""
        order, amplitude, phase = self.order, self.amplitude, self.phase
        if order < 0:
            # sin(-w*phi + x) = -sin(w*phi - x)
            order, amplitude, phase = -order, -amplitude, -phase
        if amplitude < 0:
            amplitude, phase = -amplitude, phase + math.pi
        return SinusoidTerm(order, amplitude, wrap_phase(phase))

    def evaluate(self, phi):
        return self.amplitude * np.sin(self.order * np.asarray(phi, dtype=float) + self.phase)


@dataclass(frozen=True)
class TaylorExpansion:
    """Partial sum of the error series as a flat list of sinusoids.

    ``a_tilde`` is the l1 amplitude sum of the underlying spec, kept for
    the residual bound.
    """

    k: int
    terms: tuple
    a_tilde: float


def product_to_sum(factors, scalar: float = 1.0):
    """Expand ``scalar * prod sin(omega_j*phi + chi_j)`` into plain sinusoids.

    ``factors`` is a sequence of ``(omega, chi)`` pairs.  The expansion
    is exact: repeated application of
    sin(x)*sin(y) = (1/2)*sin(x - y + pi/2) - (1/2)*sin(x + y + pi/2).
    An empty product is the constant ``scalar``.
    """
    if not factors:
        return [SinusoidTerm(0, scalar, math.pi / 2).normalized()]
    w0, c0 = factors[0]
    partial = [(scalar, w0, c0)]
    for w2, c2 in factors[1:]:
        expanded = []
        for amp, w1, c1 in partial:
            expanded.append((amp / 2.0, w1 - w2, c1 - c2 + math.pi / 2))
            expanded.append((-amp / 2.0, w1 + w2, c1 + c2 + math.pi / 2))
        partial = expanded
    return [SinusoidTerm(w, amp, chi).normalized() for amp, w, chi in partial]


def geometric_epsilon(component: HarmonicComponent, p: int):
    """First-order error terms of one disturbance, by tangent projection.

    Four terms: (1/2)An at orders n -+ p with phase theta, and
    (1/2)Bn at order n - p with phase psi minus (1/2)Bn at order n + p
    with phase psi.  Returned in normal form.
    """
    c = component
    raw = [
        SinusoidTerm(c.n - p, 0.5 * c.a_amp, c.theta),
        SinusoidTerm(c.n - p, 0.5 * c.b_amp, c.psi),
        SinusoidTerm(c.n + p, 0.5 * c.a_amp, c.theta),
        SinusoidTerm(c.n + p, -0.5 * c.b_amp, c.psi),
    ]
    return [t.normalized() for t in raw]


def first_order_amplitudes(component: HarmonicComponent, p: int):
    """Closed-form first-order amplitudes (H_{n-p}, H_{n+p}).

    H_{n-+p} = (1/2)*sqrt(An^2 +- 2*An*Bn*cos(delta_n) + Bn^2); equals
    the phasor-collected amplitudes of :func:`geometric_epsilon` for any
    component with n != p (at n = p the lower order collapses to DC,
    where only the constant part survives).
    """
    c = component
    cross = 2.0 * c.a_amp * c.b_amp * math.cos(c.delta)
    lo = 0.5 * math.sqrt(max(c.a_amp**2 + cross + c.b_amp**2, 0.0))
    hi = 0.5 * math.sqrt(max(c.a_amp**2 - cross + c.b_amp**2, 0.0))
    return lo, hi


def _series_variables(spec: EncoderSpec):
    """Flatten the disturbances into (amplitude, factor, is_cosine) variables."""
    variables = []
    for comp in spec.disturbances:
        if comp.a_amp != 0.0:
            variables.append((comp.a_amp, (comp.n, comp.theta), False))
        if comp.b_amp != 0.0:
            variables.append((comp.b_amp, (comp.n, comp.psi + math.pi / 2), True))
    return variables


def taylor_terms(
    spec: EncoderSpec, k: int, term_budget: int = DEFAULT_TERM_BUDGET
) -> TaylorExpansion:
    """Series expansion of the angular error up to total order ``k``.

    Enumerates every multi-index over the disturbance amplitude
    variables with 1 <= q <= k by combinations with repetition (the
    multinomial weight q!/(alpha! beta!) combined with (q-1)! gives the
    coefficient (q-1)!/(alpha! beta!)).  The zeroth-order term is zero
    by the unwrap convention and omitted.
    """
    if not spec.normalized:
        raise SpecError("taylor_terms requires a normalized spec")
    if k < 1:
        raise SpecError(f"expansion order must be >= 1, got {k}")
    variables = _series_variables(spec)
    n_vars = len(variables)
    projected = sum(comb(n_vars + q - 1, q) * 2**q for q in range(1, k + 1))
    if projected > term_budget:
        raise TermBudgetError(
            f"expansion would generate ~{projected} terms (budget {term_budget})"
        )
    p = spec.p
    terms = []
    for q in range(1, k + 1):
        lead_coeff = factorial(q - 1)
        for combo in combinations_with_replacement(range(n_vars), q):
            counts: dict[int, int] = {}
            for idx in combo:
                counts[idx] = counts.get(idx, 0) + 1
            coeff = lead_coeff
            n_cos_derivs = 0
            factors = []
            for idx, count in counts.items():
                amp, factor, is_cos = variables[idx]
                coeff *= amp**count / factorial(count)
                if is_cos:
                    n_cos_derivs += count
                factors.extend([factor] * count)
            n_sin_derivs = q - n_cos_derivs
            lead = (q * p, (n_sin_derivs + 2 * n_cos_derivs) * math.pi / 2)
            terms.extend(product_to_sum([lead] + factors, coeff))
    a_tilde = math.fsum(
        abs(c.a_amp) + abs(c.b_amp) for c in spec.disturbances
    )
    return TaylorExpansion(k=k, terms=tuple(terms), a_tilde=a_tilde)


def collect_spectrum(terms_or_expansion) -> HarmonicSpectrum:
    """Collapse sinusoid terms into one amplitude/phase per order.

    Same-order terms add as phasors amp*e^{i*phase}; order-0 terms add
    as signed constants.  Uses compensated summation so the result is
    independent of term ordering.  Collected amplitudes below 1e-15 are
    dropped as cancellation noise.
    """
    if isinstance(terms_or_expansion, TaylorExpansion):
        terms = terms_or_expansion.terms
    else:
        terms = terms_or_expansion
    groups: dict[int, list[SinusoidTerm]] = {}
    for term in terms:
        t = term.normalized()
        groups.setdefault(t.order, []).append(t)
    entries = {}
    for order, group in groups.items():
        if order == 0:
            dc = math.fsum(t.amplitude * math.sin(t.phase) for t in group)
            if abs(dc) > COLLECT_EPS:
                entries[0] = (abs(dc), 0.0 if dc >= 0 else wrap_phase(math.pi))
        else:
            re = math.fsum(t.amplitude * math.cos(t.phase) for t in group)
            im = math.fsum(t.amplitude * math.sin(t.phase) for t in group)
            z = complex(re, im)
            if abs(z) > COLLECT_EPS:
                entries[order] = (abs(z), cmath.phase(z))
    return HarmonicSpectrum(entries=entries)


def geometric_spectrum(spec: EncoderSpec) -> HarmonicSpectrum:
    """Phasor-collected first-order spectrum of the geometric route."""
    if not spec.normalized:
        raise SpecError("geometric_spectrum requires a normalized spec")
    terms = []
    for comp in spec.disturbances:
        terms.extend(geometric_epsilon(comp, spec.p))
    return collect_spectrum(terms)


def evaluate(expansion: TaylorExpansion, phi):
    """Evaluate the expansion's partial sum at angle(s) ``phi``."""
    phi = np.asarray(phi, dtype=float)
    if not expansion.terms:
        return np.zeros_like(phi)
    orders = np.array([t.order for t in expansion.terms], dtype=float)
    amps = np.array([t.amplitude for t in expansion.terms])
    phases = np.array([t.phase for t in expansion.terms])
    return np.sin(np.multiply.outer(phi, orders) + phases) @ amps
