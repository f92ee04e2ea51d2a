import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ambkit.ambiguity import GridSpec, Region, symmetric_ambiguity
from ambkit.mimo import (
    CorrelationMatrixField,
    SteeringSpec,
    correlation_matrix_field,
    matrix_norm_field,
    mimo_ambiguity,
    mimo_l2_energy,
    mimo_region_energy,
    mimo_slices,
)
from ambkit.signal import SampledSignal, SignalSet, gen_waveform, random_smooth_set

from conftest import gaussian_amb_magnitude


@pytest.fixture(scope="module")
def pair(lattice):
    return gen_waveform("matched_gaussian_pair", {"alpha": math.pi, "normalize": True}, lattice)


@pytest.fixture(scope="module")
def pair_field(pair, grid):
    return correlation_matrix_field(pair, grid)


@pytest.fixture(scope="module")
def herm_field(hermites, grid):
    return correlation_matrix_field(SignalSet(tuple(hermites)[:2]), grid)


@pytest.fixture(scope="module")
def coarse():
    return GridSpec.square(6.0, 97)


class TestField:
    def test_single_signal(self, g, small_grid):
        f = correlation_matrix_field(SignalSet((g,)), small_grid)
        np.testing.assert_array_equal(f.entries[0, 0], symmetric_ambiguity(g, g, small_grid).values)

    def test_identical_entries(self, pair_field):
        e = pair_field.entries
        for i in range(2):
            for j in range(2):
                assert np.abs(e[i, j] - e[0, 0]).max() <= 1e-12

    def test_orthonormal_origin(self, herm_field, grid):
        i, j = grid.index_of(0, 0)
        assert abs(herm_field.entries[0, 1, i, j]) < 1e-9

    def test_bad_shape(self, small_grid):
        with pytest.raises(ValueError):
            CorrelationMatrixField(small_grid, np.zeros((2, 3) + small_grid.shape))

    @pytest.mark.parametrize("kind", ["symmetric", "cross"])
    def test_lag_symmetry(self, lattice, coarse, kind):
        # symmetric: conj(A_ji(-tau,-nu)) = A_ij(tau,nu); cross picks up exp(j 2 pi nu tau)
        sigs = random_smooth_set(3, lattice, seed=9)
        f = correlation_matrix_field(sigs, coarse, kind)
        tau, nu = coarse.mesh()
        phase = 1.0 if kind == "symmetric" else np.exp(2j * math.pi * nu * tau)
        for i in range(3):
            for j in range(3):
                flipped = np.conj(f.entries[j, i, ::-1, ::-1])
                assert np.abs(flipped - phase * f.entries[i, j]).max() <= 1e-12

    def test_unknown_kind(self, pair, small_grid):
        with pytest.raises(ValueError):
            correlation_matrix_field(pair, small_grid, "wigner")


class TestSteering:
    def test_nodes_default(self):
        assert SteeringSpec().nodes(3) == 6
        assert SteeringSpec(gamma=4).nodes(3) == 9

    @pytest.mark.parametrize("bad", [0, -1, 1.5, "2"])
    def test_bad_gamma(self, bad):
        with pytest.raises(ValueError):
            SteeringSpec(gamma=bad)

    def test_too_few_nodes(self):
        with pytest.raises(ValueError):
            SteeringSpec(gamma=3, k_s=4).nodes(3)
        with pytest.raises(ValueError):
            SteeringSpec(gamma=1, k_s=3).nodes(2)


class TestMimoAmbiguity:
    def test_broadside_identical(self, pair_field, grid):
        a = mimo_ambiguity(pair_field, SteeringSpec(), 0.0, 0.0)
        assert np.abs(a.values - 4 * gaussian_amb_magnitude(grid)).max() <= 4e-6

    def test_single_entry_any_steering(self, g, small_grid):
        f = correlation_matrix_field(SignalSet((g,)), small_grid)
        for gamma, a, b in ((1, 0.3, 0.7), (3, 0.9, 0.1)):
            out = mimo_ambiguity(f, SteeringSpec(gamma), a, b).values
            assert np.abs(out - f.entries[0, 0]).max() <= 1e-15

    def test_null_at_half(self, pair_field):
        a = mimo_ambiguity(pair_field, SteeringSpec(1), 0.5, 0.0)
        assert a.peak <= 1e-9 * pair_field.entry_peaks().max()

    @settings(max_examples=20, deadline=None)
    @given(st.integers(1, 4), st.floats(0, 1), st.floats(0, 1))
    def test_periodicity(self, gamma, fs, fsp):
        rng = np.random.default_rng(0)
        spec = GridSpec(-1, 0.5, 5, -1, 0.5, 5)
        f = CorrelationMatrixField(spec, rng.normal(size=(3, 3, 5, 5)) + 1j * rng.normal(size=(3, 3, 5, 5)))
        st_ = SteeringSpec(gamma)
        a = mimo_ambiguity(f, st_, fs, fsp).values
        b = mimo_ambiguity(f, st_, fs + 1 / gamma, fsp).values
        c = mimo_ambiguity(f, st_, fs, fsp + 1 / gamma).values
        scale = np.abs(a).max()
        assert np.abs(a - b).max() <= 1e-12 * scale and np.abs(a - c).max() <= 1e-12 * scale


class TestEnergy:
    def test_orthonormal_pair(self, herm_field):
        assert mimo_l2_energy(herm_field, SteeringSpec()) == pytest.approx(4.0, rel=1e-3)

    def test_single_gaussian(self, g, grid):
        f = correlation_matrix_field(SignalSet((g,)), grid)
        assert mimo_l2_energy(f, SteeringSpec()) == pytest.approx(1.0, abs=1e-4)

    def test_scaled_member(self, hermites, grid):
        f = correlation_matrix_field(SignalSet((hermites[0], hermites[1].scaled(2.0))), grid)
        assert mimo_l2_energy(f, SteeringSpec()) == pytest.approx(25.0, rel=1e-3)

    @pytest.mark.parametrize("gamma", [1, 2, 3])
    def test_doubling_nodes(self, lattice, coarse, gamma):
        sigs = random_smooth_set(3, lattice, seed=4)
        f = correlation_matrix_field(sigs, coarse)
        k = SteeringSpec(gamma).nodes(3)
        e1 = mimo_l2_energy(f, SteeringSpec(gamma, k))
        e2 = mimo_l2_energy(f, SteeringSpec(gamma, 2 * k))
        assert abs(e1 - e2) <= 1e-12 * e1

    def test_slices_match_direct_mean(self, lattice):
        spec = GridSpec.square(3.0, 25)
        sigs = random_smooth_set(2, lattice, seed=1)
        f = correlation_matrix_field(sigs, spec)
        s = mimo_slices(f, SteeringSpec(2), eps_list=[0.1])
        k = s.k_s
        grids = [np.abs(mimo_ambiguity(f, SteeringSpec(2), a / k, b / k).values) for a in range(k) for b in range(k)]
        np.testing.assert_allclose(s.density, np.mean([x * x for x in grids], axis=0), rtol=1e-12)
        np.testing.assert_allclose(s.max_abs, np.max(grids, axis=0), rtol=1e-15)
        assert len(s.slice_support[0.1]) == k * k

    def test_region_energy_bounded(self, pair_field):
        st_ = SteeringSpec()
        stats = mimo_slices(pair_field, st_)
        whole = mimo_region_energy(pair_field, st_, None, stats)
        part = mimo_region_energy(pair_field, st_, Region.disk(0, 0, 1), stats)
        assert 0 < part < whole


class TestNorms:
    def test_identical_at_origin(self, lattice, grid):
        sigs = SignalSet(tuple(gen_waveform("gaussian", {"alpha": math.pi, "normalize": True}, lattice)) * 3)
        f = correlation_matrix_field(sigs, GridSpec(-0.5, 0.5, 3, -0.5, 0.5, 3))
        for kind in ("frobenius", "induced1", "inducedInf"):
            assert matrix_norm_field(f, kind).values[1, 1] == pytest.approx(3.0, abs=1e-9)

    def test_orthonormal_frobenius(self, herm_field, grid):
        i, j = grid.index_of(0, 0)
        assert matrix_norm_field(herm_field, "frobenius").values[i, j] == pytest.approx(math.sqrt(2), abs=1e-6)

    def test_entrywise_two_is_frobenius(self, lattice, coarse):
        f = correlation_matrix_field(random_smooth_set(3, lattice, seed=2), coarse, "cross")
        np.testing.assert_array_equal(
            matrix_norm_field(f, "entrywise_p", 2).values, matrix_norm_field(f, "frobenius").values
        )

    def test_entrywise_dominance(self, lattice, coarse):
        f = correlation_matrix_field(random_smooth_set(3, lattice, seed=2), coarse)
        total = np.abs(f.entries).sum(axis=(0, 1))
        assert np.all(matrix_norm_field(f, "induced1").values <= total)
        assert np.all(matrix_norm_field(f, "inducedInf").values <= total)

    def test_bad_kind(self, pair_field):
        with pytest.raises(ValueError):
            matrix_norm_field(pair_field, "entrywise_p", 0.5)
        with pytest.raises(ValueError):
            matrix_norm_field(pair_field, "spectral")
