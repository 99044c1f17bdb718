"""Command-line front end.

Subcommands:

* ``analyze``   -- exact error, series approximations, spectra and bounds
* ``lissajous`` -- sampled signal-vector curve plus per-sample exact error
* ``catalog``   -- tabulated mismatch amplitudes with consistency check

Configs are single JSON documents; all angles in the file are radians,
degree output is opt-in via ``"units": "deg"``.  Exit codes: 0 success,
2 config error, 3 domain error (divergent bounds), 4 term budget.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass
from pathlib import Path

import click
import numpy as np

from . import __version__
from .approximation import collect_spectrum, evaluate, geometric_spectrum, taylor_terms
from .bounds import amplitude_sums, geometric_bound, rule_of_thumb, taylor_residual_bound
from .catalog import MismatchCase, Variant, catalog_consistency, catalog_orders, catalog_spectrum
from .errors import DomainError, SpecError, TermBudgetError
from .exact import dft_spectrum, exact_error
from .report import dumps, fmt, to_unit, write_csv, write_json
from .signal_model import (
    DEFAULT_SAMPLES,
    EncoderSpec,
    HarmonicComponent,
    MainHarmonicParams,
    normalize,
    synthesize,
)

EXIT_CONFIG = 2
EXIT_DOMAIN = 3
EXIT_BUDGET = 4


class ConfigError(SpecError):
    """Malformed configuration file."""


@dataclass(frozen=True)
class AnalysisConfig:
    """Effective (fully defaulted) analysis configuration."""

    spec: EncoderSpec
    samples: int
    taylor_order: int
    max_order: int
    units: str

    def as_dict(self) -> dict:
        m = self.spec.main
        return {
            "periodicity": m.p,
            "main": {
                "Ap": m.a_amp,
                "Bp": m.b_amp,
                "theta_p": m.theta,
                "psi_p": m.psi,
                "A0": m.a_offset,
                "B0": m.b_offset,
            },
            "harmonics": [
                {"n": c.n, "A": c.a_amp, "theta": c.theta, "B": c.b_amp, "psi": c.psi}
                for c in self.spec.disturbances
            ],
            "samples": self.samples,
            "taylor_order": self.taylor_order,
            "max_order": self.max_order,
            "units": self.units,
        }


def _get(mapping: dict, key: str, default, kind, where: str):
    value = mapping.get(key, default)
    if value is None:
        raise ConfigError(f"{where}: missing required field '{key}'")
    try:
        return kind(value)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"{where}: field '{key}' is not a {kind.__name__}: {value!r}") from exc


def parse_config(document: dict) -> AnalysisConfig:
    """Build an AnalysisConfig from a parsed JSON document.

    Defaults are applied explicitly so the effective configuration can
    be echoed into every report and re-parsed to an equivalent config.
    """
    if not isinstance(document, dict):
        raise ConfigError("config root must be a JSON object")
    p = _get(document, "periodicity", None, int, "config")
    main_doc = document.get("main", {})
    if not isinstance(main_doc, dict):
        raise ConfigError("config: 'main' must be an object")
    try:
        main = MainHarmonicParams(
            p=p,
            a_amp=_get(main_doc, "Ap", 1.0, float, "main"),
            b_amp=_get(main_doc, "Bp", 1.0, float, "main"),
            theta=_get(main_doc, "theta_p", 0.0, float, "main"),
            psi=_get(main_doc, "psi_p", 0.0, float, "main"),
            a_offset=_get(main_doc, "A0", 0.0, float, "main"),
            b_offset=_get(main_doc, "B0", 0.0, float, "main"),
        )
    except SpecError as exc:
        raise ConfigError(f"main: {exc}") from exc
    harmonics = []
    for i, entry in enumerate(document.get("harmonics", [])):
        if not isinstance(entry, dict):
            raise ConfigError(f"harmonics[{i}]: must be an object")
        where = f"harmonics[{i}]"
        try:
            harmonics.append(
                HarmonicComponent(
                    n=_get(entry, "n", None, int, where),
                    a_amp=_get(entry, "A", 0.0, float, where),
                    theta=_get(entry, "theta", 0.0, float, where),
                    b_amp=_get(entry, "B", 0.0, float, where),
                    psi=_get(entry, "psi", 0.0, float, where),
                )
            )
        except SpecError as exc:
            raise ConfigError(f"{where}: {exc}") from exc
    spec = EncoderSpec(main=main, disturbances=tuple(harmonics))
    samples = _get(document, "samples", DEFAULT_SAMPLES, int, "config")
    taylor_order = _get(document, "taylor_order", 2, int, "config")
    if taylor_order < 1:
        raise ConfigError(f"config: taylor_order must be >= 1, got {taylor_order}")
    max_order = _get(document, "max_order", 4 * (spec.max_order + p), int, "config")
    units = document.get("units", "rad")
    if units not in ("rad", "deg"):
        raise ConfigError(f"config: units must be 'rad' or 'deg', got {units!r}")
    return AnalysisConfig(
        spec=spec, samples=samples, taylor_order=taylor_order, max_order=max_order, units=units
    )


def load_config(path: str) -> AnalysisConfig:
    import json

    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    try:
        document = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}:{exc.lineno}:{exc.colno}: invalid JSON: {exc.msg}") from exc
    return parse_config(document)


def _infer_mismatch_case(cfg: AnalysisConfig, g: float):
    """Mismatch-catalog case matching the config, if one applies.

    Only pure main-harmonic mismatch configs (no extra harmonics, sine
    channel carrying the full orthogonality error) map onto the
    catalog.
    """
    main = cfg.spec.main
    if cfg.spec.disturbances or main.psi != 0.0:
        return None
    a0, b0 = main.a_offset / g, main.b_offset / g
    an, bn = main.a_amp / g - 1.0, main.b_amp / g - 1.0
    delta = main.sine_lead
    tol = 1e-15
    has_offset = abs(a0) > tol or abs(b0) > tol
    has_amp = abs(an) > tol or abs(bn) > tol
    has_phase = abs(delta) > tol
    key = (has_offset, has_amp, has_phase)
    variants = {
        (True, False, False): Variant.OFFSET,
        (False, True, False): Variant.AMPLITUDE,
        (False, False, True): Variant.PHASE,
        (True, True, False): Variant.OFFSET_AMPLITUDE,
        (True, False, True): Variant.OFFSET_PHASE,
        (False, True, True): Variant.AMPLITUDE_PHASE,
        (True, True, True): Variant.OFFSET_AMPLITUDE_PHASE,
    }
    variant = variants.get(key)
    if variant is None:
        return None
    return MismatchCase(
        variant,
        a0=a0 if has_offset else 0.0,
        b0=b0 if has_offset else 0.0,
        an=an if has_amp else 0.0,
        bn=bn if has_amp else 0.0,
        delta=delta if has_phase else 0.0,
    )


def _normalization_payload(g: float, nspec: EncoderSpec) -> dict:
    return {
        "g": g,
        "harmonics": [
            {"n": c.n, "A": c.a_amp, "theta": c.theta, "B": c.b_amp, "psi": c.psi}
            for c in nspec.disturbances
        ],
    }


@click.group()
@click.version_option(version=__version__)
def main() -> None:
    """Predict and decompose the angular error of sine/cosine encoders."""


@main.command()
@click.option("--config", "config_path", required=True, help="JSON config file.")
@click.option(
    "--output-dir",
    default=".",
    type=click.Path(file_okay=False),
    help="Directory for report files.",
)
@click.option("--plot", is_flag=True, help="Also render PNG figures.")
def analyze(config_path: str, output_dir: str, plot: bool) -> None:
    """Run the full analysis and emit trace/spectrum/bounds reports."""
    try:
        cfg = load_config(config_path)
    except ConfigError as exc:
        click.echo(f"config error: {exc}", err=True)
        sys.exit(EXIT_CONFIG)

    out = Path(output_dir)
    out.mkdir(parents=True, exist_ok=True)
    g, nspec = normalize(cfg.spec)

    try:
        err = exact_error(nspec, cfg.samples)
        expansion1 = taylor_terms(nspec, 1)
        expansion_k = taylor_terms(nspec, cfg.taylor_order)
    except TermBudgetError as exc:
        click.echo(f"resource error: {exc}", err=True)
        sys.exit(EXIT_BUDGET)
    except (SpecError, DomainError) as exc:
        click.echo(f"domain error: {exc}", err=True)
        sys.exit(EXIT_DOMAIN)

    taylor1 = evaluate(expansion1, err.phi)
    taylor_k = evaluate(expansion_k, err.phi)

    exact_spec = dft_spectrum(err, cfg.max_order)
    geo_spec = geometric_spectrum(nspec)
    spec1 = collect_spectrum(expansion1)
    spec_k = collect_spectrum(expansion_k)

    notes = []
    a_cal, a_tilde = amplitude_sums(nspec)
    try:
        geo_bound = geometric_bound(a_cal)
    except DomainError as exc:
        geo_bound = None
        notes.append(str(exc))
    try:
        thumb = rule_of_thumb(a_cal) if a_cal <= 0.5 else None
    except DomainError:
        thumb = None
    residual_bounds = {}
    divergent = a_tilde >= 1.0
    if divergent:
        notes.append(f"series bound diverges: l1 amplitude sum {a_tilde} >= 1")
    else:
        for k in range(1, cfg.taylor_order + 1):
            residual_bounds[str(k)] = taylor_residual_bound(a_tilde, k)

    case = _infer_mismatch_case(cfg, g)
    catalog_amps = catalog_spectrum(case, nspec.p) if case is not None else {}

    conv = 180.0 / math.pi if cfg.units == "deg" else 1.0
    suffix = cfg.units

    write_csv(
        out / "error_trace.csv",
        [
            "phi_rad",
            f"exact_{suffix}",
            f"taylor1_{suffix}",
            f"taylor{cfg.taylor_order}_{suffix}",
            f"residual1_{suffix}",
            f"residual{cfg.taylor_order}_{suffix}",
        ],
        (
            (
                phi,
                e * conv,
                t1 * conv,
                tk * conv,
                (e - t1) * conv,
                (e - tk) * conv,
            )
            for phi, e, t1, tk in zip(err.phi, err.delta_phi_p, taylor1, taylor_k)
        ),
    )

    rows = []
    for order in range(cfg.max_order + 1):
        catalog_cell = (
            fmt(catalog_amps[order] * conv) if order in catalog_amps else ""
        )
        rows.append(
            (
                str(order),
                fmt(exact_spec.amplitude(order) * conv),
                fmt(geo_spec.amplitude(order) * conv),
                fmt(spec1.amplitude(order) * conv),
                fmt(spec_k.amplitude(order) * conv),
                catalog_cell,
            )
        )
    write_csv(
        out / "spectrum.csv",
        [
            "order",
            f"exact_amp_{suffix}",
            f"geometric_amp_{suffix}",
            f"taylor1_amp_{suffix}",
            f"taylor{cfg.taylor_order}_amp_{suffix}",
            f"catalog_amp_{suffix}",
        ],
        rows,
    )

    payload = {
        "config": cfg.as_dict(),
        "normalization": _normalization_payload(g, nspec),
        "bounds": {
            "amplitude_sum": a_cal,
            "amplitude_sum_l1": a_tilde,
            "geometric_bound": None if geo_bound is None else geo_bound * conv,
            "rule_of_thumb": None if thumb is None else thumb * conv,
            "residual_bounds": {k: v * conv for k, v in residual_bounds.items()},
            "divergent": divergent,
            "units": cfg.units,
            "notes": notes,
        },
    }
    write_json(out / "bounds.json", payload)

    if plot:
        from . import plots

        plots.plot_error_trace(
            out / "error_trace.png",
            err.phi,
            err.delta_phi_p * conv,
            taylor1 * conv,
            taylor_k * conv,
            cfg.taylor_order,
            cfg.units,
        )
        orders = list(range(cfg.max_order + 1))
        plots.plot_spectrum(
            out / "spectrum.png",
            orders,
            [exact_spec.amplitude(n) * conv for n in orders],
            [spec1.amplitude(n) * conv for n in orders],
            [spec_k.amplitude(n) * conv for n in orders],
            cfg.taylor_order,
            cfg.units,
        )

    if divergent or geo_bound is None:
        sys.exit(EXIT_DOMAIN)


@main.command()
@click.option("--config", "config_path", required=True, help="JSON config file.")
@click.option(
    "--output-dir",
    default=".",
    type=click.Path(file_okay=False),
    help="Directory for report files.",
)
@click.option("--plot", is_flag=True, help="Also render a PNG figure.")
def lissajous(config_path: str, output_dir: str, plot: bool) -> None:
    """Emit the sampled signal-vector curve and per-sample exact error."""
    try:
        cfg = load_config(config_path)
    except ConfigError as exc:
        click.echo(f"config error: {exc}", err=True)
        sys.exit(EXIT_CONFIG)

    out = Path(output_dir)
    out.mkdir(parents=True, exist_ok=True)
    trace = synthesize(cfg.spec, cfg.samples)
    err = exact_error(cfg.spec, cfg.samples)
    conv = 180.0 / math.pi if cfg.units == "deg" else 1.0
    write_csv(
        out / "lissajous.csv",
        ["phi_rad", "b", "a", f"error_{cfg.units}"],
        zip(trace.phi, trace.b, trace.a, err.delta_phi_p * conv),
    )
    if plot:
        from . import plots

        plots.plot_lissajous(
            out / "lissajous.png", trace.b, trace.a, err.delta_phi_p * conv, cfg.units
        )


@main.command()
@click.argument("variant", type=click.Choice([v.value for v in Variant]))
@click.option("--a0", default=0.0, help="Normalized sine-channel offset.")
@click.option("--b0", default=0.0, help="Normalized cosine-channel offset.")
@click.option("--an", default=0.0, help="Sine amplitude deviation from 1.")
@click.option("--bn", default=0.0, help="Cosine amplitude deviation from 1.")
@click.option("--delta", default=0.0, help="Phase mismatch in radians.")
@click.option("-p", "periodicity", default=1, help="Encoder periodicity.")
@click.option("--units", default="rad", type=click.Choice(["rad", "deg"]))
def catalog(variant, a0, b0, an, bn, delta, periodicity, units) -> None:
    """Print tabulated mismatch amplitudes plus a consistency check."""
    try:
        case = MismatchCase(Variant(variant), a0=a0, b0=b0, an=an, bn=bn, delta=delta)
    except SpecError as exc:
        click.echo(f"config error: {exc}", err=True)
        sys.exit(EXIT_CONFIG)
    conv = 180.0 / math.pi if units == "deg" else 1.0
    report = catalog_consistency(case, periodicity)
    t1, t2 = catalog_orders(case)
    payload = {
        "variant": variant,
        "periodicity": periodicity,
        "params": {"a0": a0, "b0": b0, "an": an, "bn": bn, "delta": delta},
        "units": units,
        "orders": {
            "t1_multiples_of_p": sorted(t1),
            "t2_multiples_of_p": sorted(t2),
        },
        "amplitudes": {str(o): v * conv for o, v in sorted(report.catalog.items())},
        "consistency": {
            "engine_amplitudes": {str(o): v * conv for o, v in sorted(report.engine.items())},
            "deviations": {str(o): v * conv for o, v in sorted(report.deviations.items())},
            "max_deviation": report.max_deviation * conv,
        },
    }
    click.echo(dumps(payload), nl=False)


if __name__ == "__main__":
    main()
