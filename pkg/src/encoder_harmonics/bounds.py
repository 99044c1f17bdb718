"""Worst-case bounds on the angular error and the series residual."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError, SpecError
from .signal_model import EncoderSpec


@dataclass(frozen=True)
class BoundReport:
    """Summary of all bounds for one spec.

    ``rule_of_thumb`` is present only on its domain (amplitude sum below
    one half); ``residual_bounds`` maps expansion order k to the bound
    on the series remainder, strictly decreasing in k.
    """

    a_cal: float
    a_tilde: float
    geometric: float
    rule_of_thumb: float | None
    residual_bounds: dict


def amplitude_sums(spec: EncoderSpec):
    """Disturbance magnitude sums (root-sum-square and l1 flavors).

    Returns ``(A, A_tilde)`` with A = sum_n sqrt(An^2 + Bn^2) and
    A_tilde = sum_n (An + Bn), over all disturbances of the normalized,
    canonical spec.  A <= A_tilde always.
    """
    if not spec.normalized:
        raise SpecError("amplitude sums are defined on the normalized spec")
    spec = spec.canonicalized()
    a_cal = math.fsum(
        math.hypot(c.a_amp, c.b_amp) for c in spec.disturbances
    )
    a_tilde = math.fsum(c.a_amp + c.b_amp for c in spec.disturbances)
    return a_cal, a_tilde


def geometric_bound(a_cal: float) -> float:
    """Worst-case angular error for amplitude sum ``a_cal`` < 1.

    Angle of the tangent from the origin to the circle of radius a_cal
    around 1+0i: atan(a*sqrt(1-a^2)/(1-a^2)), which equals asin(a).
    """
    if a_cal < 0:
        raise DomainError(f"amplitude sum must be >= 0, got {a_cal}")
    if a_cal >= 1:
        raise DomainError(
            "amplitude sum >= 1: the Lissajous figure may encircle the "
            "origin, the angular error is unbounded"
        )
    if a_cal == 0:
        return 0.0
    return math.atan(a_cal * math.sqrt(1 - a_cal**2) / (1 - a_cal**2))


def rule_of_thumb(a_cal: float) -> float:
    """Linear bound pi*A/3, valid for A <= 1/2 (60 degrees per unit)."""
    if a_cal < 0:
        raise DomainError(f"amplitude sum must be >= 0, got {a_cal}")
    if a_cal > 0.5:
        raise DomainError(f"rule of thumb requires amplitude sum <= 1/2, got {a_cal}")
    return math.pi * a_cal / 3.0


def taylor_residual_bound(a_tilde: float, k: int) -> float:
    """Bound on the order-k series remainder: -ln(1-x) - sum_{q<=k} x^q/q."""
    if k < 0:
        raise DomainError(f"expansion order must be >= 0, got {k}")
    if a_tilde < 0:
        raise DomainError(f"amplitude sum must be >= 0, got {a_tilde}")
    if a_tilde >= 1:
        raise DomainError(f"series bound diverges for amplitude sum >= 1, got {a_tilde}")
    return -math.log1p(-a_tilde) - math.fsum(
        a_tilde**q / q for q in range(1, k + 1)
    )


def build_report(spec: EncoderSpec, k_max: int = 3) -> BoundReport:
    """Compute every bound for a normalized spec in one pass."""
    a_cal, a_tilde = amplitude_sums(spec)
    geometric = geometric_bound(a_cal)
    thumb = rule_of_thumb(a_cal) if a_cal <= 0.5 else None
    residuals = {k: taylor_residual_bound(a_tilde, k) for k in range(1, k_max + 1)}
    return BoundReport(
        a_cal=a_cal,
        a_tilde=a_tilde,
        geometric=geometric,
        rule_of_thumb=thumb,
        residual_bounds=residuals,
    )
