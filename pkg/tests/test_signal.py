import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate

from ambkit.rng import Lcg64
from ambkit.signal import (
    Lattice,
    LatticeError,
    SampledSignal,
    SignalSet,
    energy,
    fourier_transform,
    gen_waveform,
    hermite_functions,
    inner_product,
    lp_norm,
    moment,
    random_smooth_set,
    second_moment,
)


def quad_inf(f):
    return integrate.quad(f, -12.0, 12.0, epsabs=1e-14, epsrel=1e-13, limit=400)[0]


# oracles: continuous integrals by adaptive quadrature
GAUSS_ENERGY = quad_inf(lambda t: math.sqrt(2) * math.exp(-2 * math.pi * t * t))
GAUSS_TIME_VAR = quad_inf(lambda t: t * t * math.sqrt(2) * math.exp(-2 * math.pi * t * t))


def test_quadrature_oracles_match_closed_forms():
    assert GAUSS_ENERGY == pytest.approx(1.0, abs=1e-12)
    assert GAUSS_TIME_VAR == pytest.approx(1 / (4 * math.pi), abs=1e-12)


class TestGenerators:
    def test_unit_gaussian_energy(self, lattice):
        s = gen_waveform("gaussian", {"alpha": math.pi, "normalize": True}, lattice)[0]
        assert energy(s) == pytest.approx(GAUSS_ENERGY, abs=1e-10)

    def test_samples_on_lattice(self, lattice):
        s = gen_waveform("gaussian", {"alpha": 2.0, "beta": 0.5 + 1j}, lattice)[0]
        t = lattice.t0 + np.arange(lattice.n) * lattice.dt
        np.testing.assert_allclose(s.samples, np.exp(-2 * t * t + (0.5 + 1j) * t), rtol=1e-14)

    def test_matched_pair_identical_for_equal_params(self, lattice):
        pair = gen_waveform("matched_gaussian_pair", {"alpha": math.pi, "normalize": True}, lattice)
        assert len(pair) == 2
        np.testing.assert_array_equal(pair[0].samples, pair[1].samples)
        assert energy(pair[0]) == pytest.approx(1.0, abs=1e-10)

    def test_hermite_orthonormal(self, lattice):
        h = gen_waveform("hermite", {"orders": [0, 1, 2, 5]}, lattice)
        gram = np.array([[inner_product(a, b) for b in h] for a in h])
        np.testing.assert_allclose(gram, np.eye(4), atol=1e-10)

    def test_hermite_matches_quadrature_oracle(self):
        # <h1, h3 * t> via quad against the recurrence-built functions
        def h(n, t):
            return hermite_functions(np.array([t]), [n])[0][0].real

        val = quad_inf(lambda t: h(1, t) * h(1, t))
        assert val == pytest.approx(1.0, abs=1e-10)
        assert quad_inf(lambda t: h(0, t) * h(1, t)) == pytest.approx(0.0, abs=1e-12)

    def test_lfm_chirp_rect_envelope(self, lattice):
        s = gen_waveform("lfm_chirp", {"rates": [2.0], "duration": 4.0}, lattice)[0]
        assert np.allclose(np.abs(s.samples[np.abs(lattice.times) < 1.9]), 1.0)
        assert np.all(s.samples[np.abs(lattice.times) > 2.1] == 0)

    def test_phase_code_unit_chips(self, lattice):
        s = gen_waveform("phase_code", {"code": [1, -1, 1j, 2], "chip": 0.5}, lattice)[0]
        mag = np.abs(s.samples)
        assert set(np.unique(mag)) <= {0.0, 1.0}
        assert energy(s) == pytest.approx(2.0, abs=1e-12)

    def test_random_phase_code_deterministic(self, lattice):
        a = gen_waveform("phase_code", {"length": 7, "seed": 3}, lattice)[0]
        b = gen_waveform("phase_code", {"length": 7, "seed": 3}, lattice)[0]
        np.testing.assert_array_equal(a.samples, b.samples)

    @pytest.mark.parametrize(
        "kind,params",
        [
            ("gaussian", {"alpha": 0}),
            ("gaussian", {"alpha": -1.0}),
            ("matched_gaussian_pair", {"alpha": 0.0}),
            ("phase_code", {"code": []}),
            ("nonsense", {}),
        ],
    )
    def test_invalid_params(self, lattice, kind, params):
        with pytest.raises(ValueError):
            gen_waveform(kind, params, lattice)

    def test_short_lattice_rejected(self):
        with pytest.raises(LatticeError):
            gen_waveform("gaussian", {"alpha": 1.0}, (0.0, 0.1, 1))


class TestTypes:
    def test_non_finite_rejected(self):
        with pytest.raises(ValueError):
            SampledSignal(0.0, 0.1, [1.0, np.nan, 0.0])

    def test_set_requires_shared_lattice(self):
        a = SampledSignal(0.0, 0.1, np.ones(4))
        b = SampledSignal(0.0, 0.2, np.ones(4))
        with pytest.raises(LatticeError):
            SignalSet((a, b))

    def test_samples_read_only(self, g):
        with pytest.raises(ValueError):
            g.samples[0] = 5


class TestNorms:
    def test_unit_gaussian_norms(self, g):
        assert lp_norm(g, 2) == pytest.approx(1.0, abs=1e-10)
        assert lp_norm(g, np.inf) == pytest.approx(2**0.25, abs=1e-12)
        # ||g||_1 = 2^(1/4) * int exp(-pi t^2) = 2^(1/4)
        assert lp_norm(g, 1) == pytest.approx(quad_inf(lambda t: 2**0.25 * math.exp(-math.pi * t * t)), abs=1e-10)

    def test_zero_signal(self, lattice):
        z = SampledSignal(lattice.t0, lattice.dt, np.zeros(lattice.n))
        for p in (1, 1.5, 2, 7, np.inf):
            assert lp_norm(z, p) == 0

    def test_p_below_one(self, g):
        with pytest.raises(ValueError):
            lp_norm(g, 0.5)

    @settings(max_examples=60, deadline=None)
    @given(
        st.lists(st.complex_numbers(max_magnitude=1e3, allow_nan=False, allow_infinity=False), min_size=2, max_size=40),
        st.complex_numbers(max_magnitude=1e3, allow_nan=False, allow_infinity=False),
        st.sampled_from([1.0, 1.5, 2.0, 3.0, 4.0, np.inf]),
    )
    def test_homogeneity(self, vals, c, p):
        x = SampledSignal(0.0, 0.25, vals)
        assert lp_norm(x.scaled(c), p) == pytest.approx(abs(c) * lp_norm(x, p), rel=1e-12, abs=1e-300)

    def test_inner_product_zero_operand(self, g):
        z = SampledSignal(g.t0, g.dt, np.zeros(g.n))
        assert inner_product(g, z) == 0

    def test_inner_product_lattice_mismatch(self, g):
        with pytest.raises(LatticeError):
            inner_product(g, SampledSignal(g.t0 + 0.5, g.dt, g.samples))


class TestFourier:
    def test_gaussian_self_dual(self, g):
        X = fourier_transform(g, 4)
        f = X.freqs
        assert X.df == pytest.approx(1 / (4 * g.n * g.dt))
        assert np.abs(np.abs(X.values) - 2**0.25 * np.exp(-math.pi * f * f)).max() < 1e-6

    def test_gaussian_phase_matches_quadrature(self, g):
        # X(f) at a few frequencies by direct quadrature of the continuous transform
        X = fourier_transform(g.shifted(32), 4)
        for f0 in (0.0, 0.3, -1.1):
            i = int(round((f0 - X.f0) / X.df))
            f = X.freqs[i]
            re = quad_inf(lambda t: 2**0.25 * math.exp(-math.pi * (t - 1) ** 2) * math.cos(2 * math.pi * f * t))
            im = quad_inf(lambda t: -(2**0.25) * math.exp(-math.pi * (t - 1) ** 2) * math.sin(2 * math.pi * f * t))
            assert abs(X.values[i] - complex(re, im)) < 1e-9

    def test_single_spike_is_flat(self, lattice):
        x = np.zeros(lattice.n, dtype=complex)
        x[100] = 3 - 4j
        X = fourier_transform(SampledSignal(lattice.t0, lattice.dt, x), 2)
        np.testing.assert_allclose(np.abs(X.values), lattice.dt * 5.0, rtol=1e-12)

    def test_translation_keeps_modulus(self, g):
        a = fourier_transform(g, 4)
        b = fourier_transform(g.shifted(32), 4)
        assert np.abs(np.abs(a.values) - np.abs(b.values)).max() < 1e-6

    @pytest.mark.parametrize("kind", ["gauss", "hermite", "chirp"])
    def test_plancherel(self, lattice, kind):
        if kind == "gauss":
            x = gen_waveform("gaussian", {"alpha": 1.3, "beta": 0.4 + 2j}, lattice)[0]
        elif kind == "hermite":
            x = gen_waveform("hermite", {"orders": [4]}, lattice)[0]
        else:
            x = gen_waveform("lfm_chirp", {"rates": [1.0], "alpha": 0.8}, lattice)[0]
        X = fourier_transform(x, 4)
        ex = energy(x)
        eX = float(np.sum(np.abs(X.values) ** 2) * X.df)
        assert abs(ex - eX) <= 1e-6 * ex


class TestMoments:
    def test_gaussian_variances(self, g):
        assert moment(g, 2) == pytest.approx(GAUSS_TIME_VAR, abs=1e-8)
        assert moment(fourier_transform(g, 4), 2) == pytest.approx(GAUSS_TIME_VAR, abs=1e-6)

    def test_even_signal_zero_mean(self, lattice):
        x = gen_waveform("hermite", {"orders": [2]}, lattice)[0]
        assert abs(moment(x, 1)) < 1e-12

    def test_translation_consistent_variance(self, g):
        for k in (-40, 17, 64):
            assert moment(g.shifted(k), 2) == pytest.approx(moment(g, 2), abs=1e-8)
            assert moment(g.shifted(k), 1) == pytest.approx(k * g.dt, abs=1e-10)

    def test_second_moment_unnormalised(self, g):
        assert second_moment(g.scaled(3)) == pytest.approx(9 * moment(g, 2), rel=1e-12)

    def test_zero_energy(self, lattice):
        z = SampledSignal(lattice.t0, lattice.dt, np.zeros(lattice.n))
        with pytest.raises(ValueError):
            moment(z, 1)

    def test_bad_order(self, g):
        with pytest.raises(ValueError):
            moment(g, 3)


class TestRng:
    def test_lcg_reference_values(self):
        # state_1 = 6364136223846793005 * 0 + 1442695040888963407 (mod 2^64)
        r = Lcg64(0)
        assert r.next_u64() == 1442695040888963407
        assert r.next_u64() == (6364136223846793005 * 1442695040888963407 + 1442695040888963407) % 2**64

    def test_uniform_range_and_determinism(self):
        a = Lcg64(42).uniform(size=1000)
        b = Lcg64(42).uniform(size=1000)
        np.testing.assert_array_equal(a, b)
        assert a.min() >= 0 and a.max() < 1
        assert abs(a.mean() - 0.5) < 0.05

    def test_normal_moments(self):
        z = Lcg64(7).normal(size=4000)
        assert abs(z.mean()) < 0.08 and abs(z.std() - 1) < 0.05

    def test_random_sets_reproducible(self, lattice):
        a = random_smooth_set(2, lattice, seed=5)
        b = random_smooth_set(2, lattice, seed=5)
        c = random_smooth_set(2, lattice, seed=6)
        np.testing.assert_array_equal(a[1].samples, b[1].samples)
        assert not np.array_equal(a[0].samples, c[0].samples)

    def test_lattice_validation(self):
        with pytest.raises(LatticeError):
            Lattice(0.0, 0.0, 10)
