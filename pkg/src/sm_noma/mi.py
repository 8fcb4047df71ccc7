"""Mutual information per (decoder r, message k).

Exact MI via entropy estimation of the received/interference mixtures,
the closed-form lower bound for the two-user case, and the low/high-SNR
asymptotic values with their constant shifts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import gmd
from .gmd import EntropyEstimate
from .system import (
    ChannelRealization,
    SystemConfig,
    mixture_of_interference,
    mixture_of_received,
)

LOG2E = math.log2(math.e)


@dataclass(frozen=True)
class MiResult:
    """Exact MI and its closed-form lower bound at one (r, k, SNR) point."""

    decoder_user: int
    message_index: int
    mi_exact: EntropyEstimate
    mi_lower_bound: float
    snr_db: float

    def __post_init__(self):
        if not math.isnan(self.mi_lower_bound):
            slack = self.mi_exact.value + 3.0 * self.mi_exact.std_error
            if self.mi_lower_bound > slack + 1e-9:
                raise ValueError(
                    f"lower bound {self.mi_lower_bound} exceeds exact MI "
                    f"{self.mi_exact.value} +/- {self.mi_exact.std_error}"
                )


@dataclass(frozen=True)
class AsymptoteReport:
    """Low/high-SNR limits of the MI lower bound and exact MI for K = 2."""

    low_snr_lb_limit: float
    high_snr_mi_limit: float | None
    high_snr_lb_limit: float | None
    constant_shift: float


def _entropy_of(
    mixture: gmd.GaussianMixture,
    method: str,
    rng: np.random.Generator | None,
    samples: int,
    tolerance: float,
) -> EntropyEstimate:
    # Single-component mixtures are plain Gaussians: closed form, no estimation.
    if len(mixture) == 1:
        return EntropyEstimate(gmd.gaussian_entropy(mixture.variances[0]), 0.0, 0)
    return gmd.entropy_exact(
        mixture, method, rng=rng, samples=samples, tolerance=tolerance
    )


def mi_exact(
    realization: ChannelRealization,
    config: SystemConfig,
    r: int,
    k: int,
    method: str = "radial_quadrature",
    *,
    rng: np.random.Generator | None = None,
    samples: int = 10**6,
    tolerance: float = 1e-10,
) -> MiResult:
    """I_{r,k} = h(Y_{r,k}) - h(Omega_{r,k}), both entropies by the same method."""
    received = mixture_of_received(realization, config, r, k)
    interference = mixture_of_interference(realization, config, r, k)
    h_y = _entropy_of(received, method, rng, samples, tolerance)
    h_w = _entropy_of(interference, method, rng, samples, tolerance)
    value = h_y.value - h_w.value
    std_error = math.hypot(h_y.std_error, h_w.std_error)
    count = h_y.sample_count + h_w.sample_count
    if config.num_users == 2:
        lb = mi_lower_bound_k2(realization, config, r, k)
    else:
        lb = math.nan
    return MiResult(
        decoder_user=r,
        message_index=k,
        mi_exact=EntropyEstimate(value, std_error, count),
        mi_lower_bound=lb,
        snr_db=config.snr_db,
    )


def mi_lower_bound_k2(
    realization: ChannelRealization, config: SystemConfig, r: int, k: int
) -> float:
    """Closed-form MI lower bound h_LB(Y) - h_UB(Omega) for the two-user case.

    Pairwise gain sums include the diagonal n = m (each diagonal term is
    twice the single squared gain), matching the overlap structure of the
    entropy lower bound.
    """
    if config.num_users != 2:
        raise ValueError("closed-form lower bound is derived only for K = 2")
    if not (1 <= k <= r <= 2):
        raise ValueError(f"invalid decoder/message pair ({r}, {k}) for K = 2")
    rho = config.snr
    a1, a2 = config.power_levels
    g2 = np.abs(realization.gains_of(r, 2)) ** 2  # |b_{r,2}^(n)|^2
    n2 = len(g2)
    p2 = g2[:, None] + g2[None, :]  # pairwise sums incl. diagonal

    if k == 2:
        # log2(N2/e) - (1/N2) sum_n log2( sum_m 1 / (2 + rho a2^2 p2[n,m]) )
        inner = np.sum(1.0 / (2.0 + rho * a2 * p2), axis=1)
        return math.log2(n2) - LOG2E - float(np.mean(np.log2(inner)))

    g1 = np.abs(realization.gains_of(r, 1)) ** 2
    n1 = len(g1)
    p1 = g1[:, None] + g1[None, :]
    # denom[n1, n2, m1, m2] = 2 + rho (a1^2 p1[n1,m1] + a2^2 p2[n2,m2])
    denom = (
        2.0
        + rho * a1 * p1[:, None, :, None]
        + rho * a2 * p2[None, :, None, :]
    )
    numer = 1.0 + rho * a2 * g2[None, :, None, None]
    inner = np.sum(numer / denom, axis=(2, 3))
    return math.log2(n1) - LOG2E - float(np.mean(np.log2(inner)))


def asymptotes(
    config: SystemConfig, r: int, k: int, avg_gain_sq: float = 0.0
) -> AsymptoteReport:
    """Low/high-SNR limits for K = 2.

    avg_gain_sq carries the averaged squared gain used in the high-SNR
    derivation; the limits themselves are gain-independent, so it is kept
    for diagnostics only.
    """
    if config.num_users != 2:
        raise ValueError("asymptotic analysis covers only K = 2")
    if not (1 <= k <= r <= 2):
        raise ValueError(f"invalid decoder/message pair ({r}, {k}) for K = 2")
    if avg_gain_sq < 0:
        raise ValueError("avg_gain_sq must be nonnegative")
    if k == 2:
        shift = 1.0 - LOG2E
        return AsymptoteReport(
            low_snr_lb_limit=shift,
            high_snr_mi_limit=None,
            high_snr_lb_limit=None,
            constant_shift=shift,
        )
    n2 = config.codebook_sizes[1]
    a1, a2 = config.power_levels
    shift = 1.0 - math.log2(math.e * n2)
    ceiling = math.log2(1.0 + a1 / a2)
    return AsymptoteReport(
        low_snr_lb_limit=shift,
        high_snr_mi_limit=ceiling,
        high_snr_lb_limit=ceiling + shift,
        constant_shift=shift,
    )


def sum_mi(results: list[MiResult]) -> tuple[float, float]:
    """Sum MI over users, sum_k I_{k,k}, with root-sum-square std errors."""
    if not results:
        raise ValueError("need at least one per-user MI result")
    if any(res.decoder_user != res.message_index for res in results):
        raise ValueError("sum MI uses each user's own message: r must equal k")
    users = sorted(res.decoder_user for res in results)
    if users != list(range(1, len(results) + 1)):
        raise ValueError(f"need exactly one result per user 1..K, got users {users}")
    snrs = {res.snr_db for res in results}
    if len(snrs) != 1:
        raise ValueError(f"results are at mismatched SNRs: {sorted(snrs)}")
    total = sum(res.mi_exact.value for res in results)
    err = math.sqrt(sum(res.mi_exact.std_error ** 2 for res in results))
    return total, err
