"""Tests for the SM-NOMA system model."""

import math

import numpy as np
import pytest

from sm_noma import gmd
from sm_noma.system import (
    ChannelRealization,
    Codebook,
    SystemConfig,
    draw_channel,
    make_conventional_sm_codebooks,
    mixture_of_interference,
    mixture_of_received,
    simulate_received_symbol,
    synthesize_transmit_signal,
)


def paper_config(signal_power=1.0, noise_power=1.0):
    return SystemConfig(
        num_tx_antennas=4,
        num_users=2,
        codebook_sizes=(4, 4),
        power_levels=(4.0, 1.0),
        signal_power=signal_power,
        noise_power=noise_power,
    )


class TestSystemConfig:
    def test_snr_is_derived(self):
        cfg = paper_config(signal_power=100.0, noise_power=4.0)
        assert cfg.snr == pytest.approx(25.0)
        assert cfg.snr_db == pytest.approx(10 * math.log10(25.0))

    def test_field_validation(self):
        with pytest.raises(ValueError):
            paper_config(noise_power=0.0)
        with pytest.raises(ValueError):
            SystemConfig(4, 2, (4,), (4.0, 1.0), 1.0, 1.0)
        with pytest.raises(ValueError):
            SystemConfig(4, 2, (4, 4), (4.0, -1.0), 1.0, 1.0)


class TestCodebooks:
    def test_conventional_sm_is_standard_basis(self):
        books = make_conventional_sm_codebooks(paper_config())
        assert len(books) == 2
        for book in books:
            np.testing.assert_array_equal(book.vectors, np.eye(4, dtype=complex))

    def test_single_antenna_degenerate(self):
        book = Codebook.conventional_sm(1)
        np.testing.assert_array_equal(book.vectors, [[1.0 + 0j]])

    def test_all_vectors_unit_norm(self):
        for book in make_conventional_sm_codebooks(paper_config()):
            norms = np.sum(np.abs(book.vectors) ** 2, axis=1)
            np.testing.assert_allclose(norms, 1.0, atol=1e-12)

    def test_size_mismatch_rejected(self):
        cfg = SystemConfig(4, 2, (4, 2), (4.0, 1.0), 1.0, 1.0)
        with pytest.raises(ValueError, match="codebook size"):
            make_conventional_sm_codebooks(cfg)

    def test_non_unit_vectors_rejected(self):
        with pytest.raises(ValueError, match="unit"):
            Codebook(np.array([[1.0, 1.0], [0.0, 1.0]], dtype=complex))


class TestDrawChannel:
    def test_entry_variance(self):
        cfg = paper_config()
        books = make_conventional_sm_codebooks(cfg)
        rng = np.random.default_rng(0)
        entries = np.concatenate(
            [draw_channel(cfg, books, rng).channel_vectors.ravel() for _ in range(6250)]
        )
        # 6250 draws x (2 x 4) entries = 5e4; variance band per spec
        assert 0.99 <= np.mean(np.abs(entries) ** 2) <= 1.01
        assert abs(np.mean(entries)) < 0.01

    def test_conventional_sm_gain_is_channel_entry(self):
        cfg = paper_config()
        books = make_conventional_sm_codebooks(cfg)
        realization = draw_channel(cfg, books, np.random.default_rng(1))
        for r in (1, 2):
            for k in (1, 2):
                np.testing.assert_array_equal(
                    realization.gains_of(r, k), realization.channel_vectors[r - 1]
                )

    def test_deterministic_for_fixed_seed(self):
        cfg = paper_config()
        books = make_conventional_sm_codebooks(cfg)
        a = draw_channel(cfg, books, np.random.default_rng(7))
        b = draw_channel(cfg, books, np.random.default_rng(7))
        np.testing.assert_array_equal(a.channel_vectors, b.channel_vectors)

    def test_gains_recomputable(self):
        cfg = paper_config()
        books = make_conventional_sm_codebooks(cfg)
        realization = draw_channel(cfg, books, np.random.default_rng(2))
        rebuilt = ChannelRealization.from_channels(realization.channel_vectors, books)
        for r in (1, 2):
            for k in (1, 2):
                np.testing.assert_allclose(
                    realization.gains_of(r, k), rebuilt.gains_of(r, k), atol=1e-12
                )


class TestTransmitSignal:
    def test_paper_example(self):
        cfg = paper_config()
        books = make_conventional_sm_codebooks(cfg)
        x, n_rf = synthesize_transmit_signal(cfg, books, np.array([1.0, 1.0]), (1, 2))
        np.testing.assert_allclose(x, [2.0, 1.0, 0.0, 0.0])
        assert n_rf == 2

    def test_antenna_collision(self):
        cfg = paper_config()
        books = make_conventional_sm_codebooks(cfg)
        x, n_rf = synthesize_transmit_signal(cfg, books, np.array([1.0, 1.0]), (3, 3))
        np.testing.assert_allclose(x, [0.0, 0.0, 3.0, 0.0])
        assert n_rf == 1

    def test_zero_symbols(self):
        cfg = paper_config()
        books = make_conventional_sm_codebooks(cfg)
        x, n_rf = synthesize_transmit_signal(cfg, books, np.zeros(2), (1, 4))
        np.testing.assert_array_equal(x, np.zeros(4))
        assert n_rf == 0

    def test_index_out_of_range(self):
        cfg = paper_config()
        books = make_conventional_sm_codebooks(cfg)
        with pytest.raises(ValueError, match="out of range"):
            synthesize_transmit_signal(cfg, books, np.ones(2), (0, 2))
        with pytest.raises(ValueError, match="out of range"):
            synthesize_transmit_signal(cfg, books, np.ones(2), (1, 5))


class TestReceivedSymbol:
    def test_last_message_has_no_interference(self):
        cfg = paper_config()
        books = make_conventional_sm_codebooks(cfg)
        realization = draw_channel(cfg, books, np.random.default_rng(3))
        s = np.array([0.7 + 0.1j, -0.3 + 0.5j])
        y = simulate_received_symbol(realization, cfg, 2, 2, s, (1, 3), 0.25j)
        expected = realization.gain(2, 2, 3) * 1.0 * s[1] + 0.25j
        assert y == pytest.approx(expected)

    def test_first_message_expansion_zero_noise(self):
        cfg = paper_config()
        books = make_conventional_sm_codebooks(cfg)
        realization = draw_channel(cfg, books, np.random.default_rng(4))
        s = np.array([1.0 + 0j, 1.0 + 0j])
        y = simulate_received_symbol(realization, cfg, 1, 1, s, (2, 4), 0.0)
        expected = 2.0 * realization.gain(1, 1, 2) + 1.0 * realization.gain(1, 2, 4)
        assert y == pytest.approx(expected)

    def test_decoding_order_enforced(self):
        cfg = paper_config()
        books = make_conventional_sm_codebooks(cfg)
        realization = draw_channel(cfg, books, np.random.default_rng(5))
        with pytest.raises(ValueError, match="SIC"):
            simulate_received_symbol(realization, cfg, 1, 2, np.ones(2), (1, 1), 0.0)

    def test_second_moment_matches_mixture(self):
        cfg = paper_config(signal_power=10.0)
        books = make_conventional_sm_codebooks(cfg)
        realization = draw_channel(cfg, books, np.random.default_rng(6))
        rng = np.random.default_rng(60)
        n = 100_000
        sym = (rng.standard_normal((n, 2)) + 1j * rng.standard_normal((n, 2))) * math.sqrt(
            cfg.signal_power / 2
        )
        noise = (rng.standard_normal(n) + 1j * rng.standard_normal(n)) * math.sqrt(
            cfg.noise_power / 2
        )
        idx = rng.integers(1, 5, size=(n, 2))
        ys = [
            simulate_received_symbol(
                realization, cfg, 1, 1, sym[d], tuple(idx[d]), noise[d]
            )
            for d in range(n)
        ]
        mix = mixture_of_received(realization, cfg, 1, 1)
        empirical = float(np.mean(np.abs(ys) ** 2))
        assert empirical == pytest.approx(mix.mean_power, rel=0.01)


class TestMixtures:
    def test_last_message_interference_is_pure_noise(self):
        cfg = paper_config()
        books = make_conventional_sm_codebooks(cfg)
        realization = draw_channel(cfg, books, np.random.default_rng(8))
        mix = mixture_of_interference(realization, cfg, 2, 2)
        assert len(mix) == 1
        assert mix.variances[0] == pytest.approx(cfg.noise_power)

    def test_component_counts(self):
        cfg = paper_config()
        books = make_conventional_sm_codebooks(cfg)
        realization = draw_channel(cfg, books, np.random.default_rng(9))
        assert len(mixture_of_interference(realization, cfg, 1, 1)) == 4
        assert len(mixture_of_received(realization, cfg, 1, 1)) == 16
        assert len(mixture_of_received(realization, cfg, 2, 2)) == 4
        np.testing.assert_allclose(
            mixture_of_received(realization, cfg, 1, 1).weights, 1 / 16
        )

    def test_component_variances(self):
        cfg = paper_config(signal_power=3.0, noise_power=0.5)
        books = make_conventional_sm_codebooks(cfg)
        realization = draw_channel(cfg, books, np.random.default_rng(10))
        mix = mixture_of_received(realization, cfg, 2, 2)
        g = np.abs(realization.gains_of(2, 2)) ** 2
        np.testing.assert_allclose(mix.variances, 0.5 + 3.0 * 1.0 * g, atol=1e-12)
        assert np.all(mix.variances >= cfg.noise_power)

    def test_zero_power_collapses_to_noise(self):
        cfg = SystemConfig(4, 2, (4, 4), (0.0, 0.0), 1.0, 1.0)
        books = make_conventional_sm_codebooks(cfg)
        realization = draw_channel(cfg, books, np.random.default_rng(11))
        mix = mixture_of_received(realization, cfg, 1, 1)
        np.testing.assert_allclose(mix.variances, cfg.noise_power, atol=1e-12)

    def test_received_dominates_interference_componentwise(self):
        cfg = paper_config()
        books = make_conventional_sm_codebooks(cfg)
        realization = draw_channel(cfg, books, np.random.default_rng(12))
        recv = mixture_of_received(realization, cfg, 1, 1)
        intf = mixture_of_interference(realization, cfg, 1, 1)
        # received tuples (n1, n2) iterate with n2 fastest; matched on n2
        recv_v = recv.variances.reshape(4, 4)
        assert np.all(recv_v >= intf.variances[None, :] - 1e-12)

    def test_all_mixtures_zero_mean_equal_weight(self):
        cfg = paper_config()
        books = make_conventional_sm_codebooks(cfg)
        realization = draw_channel(cfg, books, np.random.default_rng(13))
        for r, k in ((1, 1), (2, 1), (2, 2)):
            for mix in (
                mixture_of_received(realization, cfg, r, k),
                mixture_of_interference(realization, cfg, r, k),
            ):
                assert mix.is_zero_mean
                np.testing.assert_allclose(mix.weights, 1.0 / len(mix))

    def test_sampled_interference_entropy_matches_quadrature(self):
        cfg = paper_config(signal_power=10.0)
        books = make_conventional_sm_codebooks(cfg)
        realization = draw_channel(cfg, books, np.random.default_rng(14))
        mix = mixture_of_interference(realization, cfg, 1, 1)
        mc = gmd.entropy_monte_carlo(mix, np.random.default_rng(140), 200_000)
        quad = gmd.entropy_radial_quadrature(mix)
        assert abs(mc.value - quad.value) <= 3 * mc.std_error
