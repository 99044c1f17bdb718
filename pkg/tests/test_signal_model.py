import math
import random

import numpy as np
import pytest

import encoder_harmonics as eh
from encoder_harmonics.signal_model import normalize

from conftest import reference_spec


def ideal_spec(p=1):
    return eh.EncoderSpec(main=eh.ideal_main(p), normalized=True)


class TestSynthesize:
    def test_ideal_p1_origin(self):
        trace = eh.synthesize(ideal_spec(), 64)
        assert trace.a[0] == 0.0
        assert trace.b[0] == 1.0

    def test_reference_origin(self):
        trace = eh.synthesize(reference_spec(), 4096)
        expected_a = 0.05 * math.sin(math.pi / 8)
        expected_b = 1.0 + 0.02 * math.cos(math.pi / 7) + 0.09 * math.cos(math.pi / 4)
        assert trace.a[0] == pytest.approx(expected_a, abs=1e-15)
        assert trace.b[0] == pytest.approx(expected_b, abs=1e-15)
        # sanity on the derived magnitudes
        assert expected_a == pytest.approx(0.019134, abs=1e-6)
        assert expected_b == pytest.approx(1.081659, abs=1e-6)

    def test_grid_is_uniform(self):
        trace = eh.synthesize(ideal_spec(), 128)
        assert len(trace) == 128
        np.testing.assert_allclose(np.diff(trace.phi), 2 * math.pi / 128)

    def test_rejects_coarse_grid(self):
        spec = eh.EncoderSpec(
            eh.ideal_main(1), (eh.HarmonicComponent(20, 0.1, 0, 0.1, 0),), normalized=True
        )
        with pytest.raises(eh.SamplingError):
            eh.synthesize(spec, 100)

    def test_matches_per_sample_evaluation(self):
        spec = reference_spec()
        trace = eh.synthesize(spec, 256)
        a, b = spec.evaluate(trace.phi)
        np.testing.assert_allclose(trace.a, a, atol=1e-12)
        np.testing.assert_allclose(trace.b, b, atol=1e-12)


class TestHarmonicComponent:
    def test_canonicalize_folds_negative_amplitude(self):
        comp = eh.HarmonicComponent(3, -0.1, 0.2, 0.05, -0.4)
        canon = comp.canonicalize()
        assert canon.a_amp == pytest.approx(0.1)
        assert canon.theta == pytest.approx(0.2 - math.pi)
        phi = np.linspace(0, 2 * math.pi, 97)
        np.testing.assert_allclose(comp.a_at(phi), canon.a_at(phi), atol=1e-12)
        np.testing.assert_allclose(comp.b_at(phi), canon.b_at(phi), atol=1e-12)

    def test_canonicalize_idempotent(self):
        comp = eh.HarmonicComponent(3, -0.1, 2.5, -0.05, -2.9)
        once = comp.canonicalize()
        assert once.canonicalize() == once

    def test_canonical_trace_identical(self):
        spec = eh.EncoderSpec(
            eh.ideal_main(1),
            (eh.HarmonicComponent(4, -0.1, 0.3, 0.02, 0.1),),
            normalized=True,
        )
        canon = spec.canonicalized()
        t1 = eh.synthesize(spec, 256)
        t2 = eh.synthesize(canon, 256)
        np.testing.assert_allclose(t1.a, t2.a, atol=1e-12)
        np.testing.assert_allclose(t1.b, t2.b, atol=1e-12)

    def test_delta_accessor(self):
        comp = eh.HarmonicComponent(5, 0.1, 0.2, 0.1, 0.5)
        assert comp.delta == pytest.approx(0.3)

    def test_order0_requires_offset_phases(self):
        with pytest.raises(eh.SpecError):
            eh.HarmonicComponent(0, 0.1, 0.3, 0.0, 0.0)
        with pytest.raises(eh.SpecError):
            eh.HarmonicComponent(0, 0.1, math.pi / 2, 0.1, 0.4)
        eh.HarmonicComponent(0, -0.1, math.pi / 2, 0.1, 0.0)  # signed DC is fine

    def test_negative_order_rejected(self):
        with pytest.raises(eh.SpecError):
            eh.HarmonicComponent(-1, 0.1, 0, 0, 0)


class TestEncoderSpec:
    def test_duplicate_orders_merged_by_phasor_addition(self):
        spec = eh.EncoderSpec(
            eh.ideal_main(1),
            (
                eh.HarmonicComponent(5, 0.1, 0.0, 0.0, 0.0),
                eh.HarmonicComponent(5, 0.1, math.pi / 2, 0.0, 0.0),
            ),
            normalized=True,
        )
        assert len(spec.disturbances) == 1
        merged = spec.disturbances[0]
        assert merged.a_amp == pytest.approx(0.1 * math.sqrt(2))
        assert merged.theta == pytest.approx(math.pi / 4)

    def test_merge_preserves_signal(self):
        comps = (
            eh.HarmonicComponent(7, 0.03, 0.4, 0.05, -0.2),
            eh.HarmonicComponent(7, 0.02, -1.1, 0.01, 2.0),
        )
        spec = eh.EncoderSpec(eh.ideal_main(2), comps, normalized=True)
        phi = np.linspace(0, 2 * math.pi, 111)
        a = sum(c.a_at(phi) for c in comps) + np.sin(2 * phi)
        b = sum(c.b_at(phi) for c in comps) + np.cos(2 * phi)
        sa, sb = spec.evaluate(phi)
        np.testing.assert_allclose(sa, a, atol=1e-12)
        np.testing.assert_allclose(sb, b, atol=1e-12)

    def test_normalized_flag_requires_ideal_main(self):
        with pytest.raises(eh.SpecError):
            eh.EncoderSpec(eh.MainHarmonicParams(p=1, a_amp=1.1), normalized=True)

    def test_main_validation(self):
        with pytest.raises(eh.SpecError):
            eh.MainHarmonicParams(p=0)
        with pytest.raises(eh.SpecError):
            eh.MainHarmonicParams(p=1, a_amp=-1.0)


class TestComplexVector:
    def test_ideal_quarter_turn(self):
        z = eh.complex_vector(ideal_spec(), math.pi / 2)
        assert z == pytest.approx(1j, abs=1e-15)

    def test_ideal_unit_circle(self):
        phi = np.linspace(0, 2 * math.pi, 257)
        z = eh.complex_vector(ideal_spec(), phi)
        np.testing.assert_allclose(np.abs(z), 1.0, atol=1e-12)

    def test_reference_origin(self):
        z = eh.complex_vector(reference_spec(), 0.0)
        assert z.real == pytest.approx(1.081659, abs=1e-6)
        assert z.imag == pytest.approx(0.019134, abs=1e-6)


class TestCorrectMainHarmonic:
    def test_identity_for_ideal_params(self):
        params = eh.ideal_main(1)
        trace = eh.synthesize(eh.EncoderSpec(main=params), 128)
        corrected = eh.correct_main_harmonic(trace, params)
        np.testing.assert_allclose(corrected.a, trace.a, atol=1e-15)
        np.testing.assert_allclose(corrected.b, trace.b, atol=1e-15)

    def test_amplitude_and_offset(self):
        params = eh.MainHarmonicParams(p=1, a_amp=2.0, b_amp=2.0, a_offset=0.5)
        trace = eh.synthesize(eh.EncoderSpec(main=params), 256)
        corrected = eh.correct_main_harmonic(trace, params)
        np.testing.assert_allclose(corrected.a, np.sin(trace.phi), atol=1e-12)
        np.testing.assert_allclose(corrected.b, np.cos(trace.phi), atol=1e-12)

    def test_phase_mismatch_correction_zeroes_error(self):
        params = eh.MainHarmonicParams(p=1, theta=0.2)
        corrected = eh.correct_main_harmonic(eh.EncoderSpec(main=params), params)
        err = eh.exact_error(corrected, 512)
        assert np.max(np.abs(err.delta_phi_p)) < 1e-10

    def test_corrected_spec_with_disturbances(self):
        # correcting the spec must match correcting the synthesized trace
        params = eh.MainHarmonicParams(p=2, a_amp=1.2, b_amp=0.9, theta=0.15, a_offset=0.1)
        spec = eh.EncoderSpec(
            main=params, disturbances=(eh.HarmonicComponent(7, 0.05, 0.3, 0.02, -0.4),)
        )
        corrected_spec = eh.correct_main_harmonic(spec, params)
        trace = eh.synthesize(spec, 512)
        corrected_trace = eh.correct_main_harmonic(trace, params)
        a, b = corrected_spec.evaluate(trace.phi)
        np.testing.assert_allclose(a, corrected_trace.a, atol=1e-12)
        np.testing.assert_allclose(b, corrected_trace.b, atol=1e-12)

    def test_singular_at_quarter_turn_mismatch(self):
        params = eh.MainHarmonicParams(p=1, theta=math.pi / 2)
        trace = eh.synthesize(eh.EncoderSpec(main=params), 64)
        with pytest.raises(eh.DomainError):
            eh.correct_main_harmonic(trace, params)


class TestNormalizeAndEquivalents:
    def test_amplitude_mismatch_example(self):
        params = eh.MainHarmonicParams(p=1, a_amp=2.0, b_amp=2.5)
        g, comps = eh.normalize_and_equivalents(params)
        assert g == pytest.approx(2.25)
        (amp,) = comps
        assert amp.n == 1
        assert amp.a_amp == pytest.approx(-1.0 / 9.0)
        assert amp.b_amp == pytest.approx(1.0 / 9.0)

    def test_phase_mismatch_example(self):
        comp = eh.phase_mismatch_component(math.pi / 6, p=1)
        assert comp.a_amp == pytest.approx(2 * math.sin(math.pi / 12))
        assert comp.a_amp == pytest.approx(0.517638, abs=1e-6)
        assert comp.theta == pytest.approx(7 * math.pi / 12)

    def test_ideal_params_empty(self):
        g, comps = eh.normalize_and_equivalents(eh.ideal_main(3))
        assert g == 1.0
        assert comps == []

    def test_phase_identity_exact(self):
        # sin(x + d) = sin(x) + 2 sin(d/2) sin(x + (d+pi)/2), exactly
        d = 0.7
        x = np.linspace(0, 2 * math.pi, 1001)
        comp = eh.phase_mismatch_component(d, p=1)
        lhs = np.sin(x + d)
        rhs = np.sin(x) + comp.a_at(x)
        np.testing.assert_allclose(lhs, rhs, atol=1e-15)

    def test_equivalence_random_params(self):
        rng = random.Random(7)
        for _ in range(50):
            params = eh.MainHarmonicParams(
                p=rng.choice([1, 2, 4]),
                a_amp=rng.uniform(0.8, 1.2),
                b_amp=rng.uniform(0.8, 1.2),
                theta=rng.uniform(-0.3, 0.3),
                psi=rng.uniform(-0.3, 0.3),
                a_offset=rng.uniform(-0.2, 0.2),
                b_offset=rng.uniform(-0.2, 0.2),
            )
            spec = eh.EncoderSpec(main=params)
            g, nspec = normalize(spec)
            phi = eh.sample_grid(256)
            a_raw, b_raw = spec.evaluate(phi)
            a_norm, b_norm = nspec.evaluate(phi)
            np.testing.assert_allclose(a_norm, a_raw / g, atol=1e-9)
            np.testing.assert_allclose(b_norm, b_raw / g, atol=1e-9)

    def test_normalize_scales_disturbances(self):
        params = eh.MainHarmonicParams(p=1, a_amp=2.0, b_amp=2.0)
        spec = eh.EncoderSpec(
            main=params, disturbances=(eh.HarmonicComponent(5, 0.2, 0.1, 0.4, 0.2),)
        )
        g, nspec = normalize(spec)
        assert g == pytest.approx(2.0)
        comp = next(c for c in nspec.disturbances if c.n == 5)
        assert comp.a_amp == pytest.approx(0.1)
        assert comp.b_amp == pytest.approx(0.2)
