"""Tests for mutual information, the closed-form lower bound, and asymptotics."""

import math

import numpy as np
import pytest

from sm_noma import gmd
from sm_noma.mi import (
    MiResult,
    asymptotes,
    mi_exact,
    mi_lower_bound_k2,
    sum_mi,
)
from sm_noma.system import (
    ChannelRealization,
    SystemConfig,
    draw_channel,
    make_conventional_sm_codebooks,
    mixture_of_interference,
    mixture_of_received,
)

LOG2E = math.log2(math.e)


def config_at_snr(snr_db, powers=(4.0, 1.0)):
    return SystemConfig(
        num_tx_antennas=4,
        num_users=2,
        codebook_sizes=(4, 4),
        power_levels=powers,
        signal_power=10.0 ** (snr_db / 10.0),
        noise_power=1.0,
    )


def random_realization(cfg, seed):
    books = make_conventional_sm_codebooks(cfg)
    return draw_channel(cfg, books, np.random.default_rng(seed))


def flat_gain_realization(cfg, b):
    """Channel whose entries all equal b, so every effective gain equals b."""
    books = make_conventional_sm_codebooks(cfg)
    h = np.full((cfg.num_users, cfg.num_tx_antennas), b, dtype=complex)
    return ChannelRealization.from_channels(h, books)


class TestMiExact:
    def test_last_message_interference_entropy_closed_form(self):
        cfg = config_at_snr(10.0)
        realization = random_realization(cfg, 0)
        res = mi_exact(realization, cfg, 2, 2)
        # h(Omega_{2,2}) = log2(pi e sigma_v^2): interference is pure noise,
        # so the exact MI equals h(Y) minus that closed form
        h_y = gmd.entropy_radial_quadrature(
            mixture_of_received(realization, cfg, 2, 2)
        ).value
        assert res.mi_exact.value == pytest.approx(
            h_y - gmd.gaussian_entropy(cfg.noise_power), abs=1e-9
        )

    def test_vanishing_snr_gives_zero_mi(self):
        cfg = config_at_snr(-60.0)
        realization = random_realization(cfg, 1)
        for r, k in ((1, 1), (2, 1), (2, 2)):
            assert abs(mi_exact(realization, cfg, r, k).mi_exact.value) < 1e-3

    def test_flat_gains_reduce_to_awgn_capacity(self):
        cfg = config_at_snr(10.0)
        b = 0.8 - 0.3j
        realization = flat_gain_realization(cfg, b)
        res = mi_exact(realization, cfg, 2, 2)
        expected = math.log2(1.0 + cfg.snr * cfg.power_levels[1] * abs(b) ** 2)
        assert res.mi_exact.value == pytest.approx(expected, abs=1e-9)

    def test_monte_carlo_method(self):
        cfg = config_at_snr(5.0)
        realization = random_realization(cfg, 2)
        quad = mi_exact(realization, cfg, 1, 1)
        mc = mi_exact(
            realization, cfg, 1, 1, "monte_carlo",
            rng=np.random.default_rng(20), samples=200_000,
        )
        assert abs(mc.mi_exact.value - quad.mi_exact.value) <= 3 * mc.mi_exact.std_error
        assert mc.mi_exact.sample_count == 400_000  # both entropies sampled

    def test_decoding_order_enforced(self):
        cfg = config_at_snr(0.0)
        realization = random_realization(cfg, 3)
        with pytest.raises(ValueError):
            mi_exact(realization, cfg, 1, 2)


class TestMiLowerBound:
    def test_flat_gain_closed_form_22(self):
        cfg = config_at_snr(7.0)
        b = 1.3 + 0.4j
        realization = flat_gain_realization(cfg, b)
        expected = (
            math.log2(1.0 + cfg.snr * cfg.power_levels[1] * abs(b) ** 2) + 1.0 - LOG2E
        )
        assert mi_lower_bound_k2(realization, cfg, 2, 2) == pytest.approx(
            expected, abs=1e-10
        )

    def test_low_snr_limit_22(self):
        cfg = config_at_snr(-80.0)
        realization = random_realization(cfg, 4)
        assert mi_lower_bound_k2(realization, cfg, 2, 2) == pytest.approx(
            1.0 - LOG2E, abs=1e-6
        )

    def test_low_snr_limit_11(self):
        cfg = config_at_snr(-80.0)
        realization = random_realization(cfg, 5)
        assert mi_lower_bound_k2(realization, cfg, 1, 1) == pytest.approx(
            1.0 - math.log2(4.0 * math.e), abs=1e-6
        )

    @pytest.mark.parametrize("pair", [(1, 1), (2, 1), (2, 2)])
    def test_equals_assembled_bound_path(self, pair):
        r, k = pair
        for seed in range(10):
            cfg = config_at_snr(float(np.random.default_rng(seed).uniform(-40, 40)))
            realization = random_realization(cfg, 100 + seed)
            assembled = gmd.entropy_lower_bound(
                mixture_of_received(realization, cfg, r, k)
            ) - gmd.entropy_upper_bound(mixture_of_interference(realization, cfg, r, k))
            assert mi_lower_bound_k2(realization, cfg, r, k) == pytest.approx(
                assembled, abs=1e-10
            )

    def test_never_exceeds_exact(self):
        for seed in range(30):
            snr = float(np.random.default_rng(1000 + seed).uniform(-30, 30))
            cfg = config_at_snr(snr)
            realization = random_realization(cfg, seed)
            for r, k in ((1, 1), (2, 1), (2, 2)):
                res = mi_exact(realization, cfg, r, k)
                assert res.mi_lower_bound <= res.mi_exact.value + 1e-8

    def test_rejects_more_than_two_users(self):
        cfg = SystemConfig(4, 3, (4, 4, 4), (4.0, 2.0, 1.0), 1.0, 1.0)
        books = make_conventional_sm_codebooks(cfg)
        realization = draw_channel(cfg, books, np.random.default_rng(6))
        with pytest.raises(ValueError, match="K = 2"):
            mi_lower_bound_k2(realization, cfg, 1, 1)


class TestAsymptotes:
    def test_high_snr_ceiling_value(self):
        report = asymptotes(config_at_snr(0.0), 1, 1)
        assert report.high_snr_mi_limit == pytest.approx(math.log2(5.0))

    def test_constant_shift_user1(self):
        report = asymptotes(config_at_snr(0.0), 2, 1)
        assert report.constant_shift == pytest.approx(1.0 - math.log2(4.0 * math.e))
        assert report.low_snr_lb_limit == report.constant_shift
        assert report.high_snr_lb_limit == pytest.approx(
            math.log2(5.0) + 1.0 - math.log2(4.0 * math.e)
        )

    def test_user2_high_snr_limits_absent(self):
        report = asymptotes(config_at_snr(0.0), 2, 2)
        assert report.high_snr_mi_limit is None
        assert report.high_snr_lb_limit is None
        assert report.constant_shift == pytest.approx(1.0 - LOG2E)

    def test_rejections(self):
        cfg3 = SystemConfig(4, 3, (4, 4, 4), (4.0, 2.0, 1.0), 1.0, 1.0)
        with pytest.raises(ValueError):
            asymptotes(cfg3, 1, 1)
        with pytest.raises(ValueError):
            asymptotes(config_at_snr(0.0), 1, 2)
        with pytest.raises(ValueError):
            asymptotes(config_at_snr(0.0), 1, 1, avg_gain_sq=-1.0)


def make_result(r, k, value, err, snr_db):
    return MiResult(r, k, gmd.EntropyEstimate(value, err, 0), math.nan, snr_db)


class TestSumMi:
    def test_definition(self):
        total, err = sum_mi(
            [make_result(1, 1, 1.0, 0.1, 10.0), make_result(2, 2, 2.0, 0.2, 10.0)]
        )
        assert total == pytest.approx(3.0)
        assert err == pytest.approx(math.hypot(0.1, 0.2))

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            sum_mi([])

    def test_cross_decoded_messages_rejected(self):
        with pytest.raises(ValueError, match="r must equal k"):
            sum_mi([make_result(2, 1, 1.0, 0.0, 10.0)])

    def test_mismatched_snr_rejected(self):
        with pytest.raises(ValueError, match="mismatched"):
            sum_mi(
                [make_result(1, 1, 1.0, 0.0, 10.0), make_result(2, 2, 2.0, 0.0, 12.0)]
            )

    def test_missing_user_rejected(self):
        with pytest.raises(ValueError, match="one result per user"):
            sum_mi(
                [make_result(1, 1, 1.0, 0.0, 10.0), make_result(1, 1, 2.0, 0.0, 10.0)]
            )
