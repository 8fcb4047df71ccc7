"""Batch experiment engine: seeded SNR/power sweeps, realization averaging,
and figure-ready CSV/JSON output.

Seeding: every random draw comes from a substream derived deterministically
from (root seed, purpose tag, realization index), so output is bit-identical
for a fixed (config, seed) regardless of evaluation order.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field, replace
from pathlib import Path

import numpy as np

from . import gmd
from .baselines import BaselineKind, miso_noma_mi, sm_tdma_mi
from .mi import asymptotes, mi_exact, mi_lower_bound_k2
from .system import (
    ChannelRealization,
    SystemConfig,
    draw_channel,
    make_conventional_sm_codebooks,
    mixture_of_interference,
    mixture_of_received,
    simulate_received_symbol,
)


class ConfigError(ValueError):
    """Invalid or unknown experiment-configuration content."""


# Substream purpose tags: keep channel draws and Monte Carlo draws on
# disjoint, order-independent streams.
_TAG_CHANNEL = 0
_TAG_MC = 1
_TAG_PROPS = 2


def substream(seed: int, *key: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=tuple(key)))


@dataclass(frozen=True)
class FixedPowerSplit:
    alpha1_sq: float
    alpha2_sq: float

    def __post_init__(self):
        if self.alpha1_sq < 0 or self.alpha2_sq < 0:
            raise ConfigError("power levels must be nonnegative")


@dataclass(frozen=True)
class TotalPowerSweep:
    total: float
    ratio_grid: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "ratio_grid", tuple(float(r) for r in self.ratio_grid))
        if self.total <= 0:
            raise ConfigError("total power must be positive")
        if not self.ratio_grid or any(r < 0 for r in self.ratio_grid):
            raise ConfigError("ratio grid must be nonempty and nonnegative")

    def split(self, ratio: float) -> tuple[float, float]:
        """alpha1^2 : alpha2^2 = ratio with alpha1^2 + alpha2^2 = total."""
        a2 = self.total / (1.0 + ratio)
        return self.total - a2, a2


@dataclass(frozen=True)
class ExperimentConfig:
    system: SystemConfig
    snr_grid_db: tuple[float, ...]
    power_split: FixedPowerSplit | TotalPowerSweep
    realizations: int = 200
    mc_samples: int = 10**6
    quadrature_tolerance: float = 1e-10
    seed: int = 0
    baselines: tuple[BaselineKind, ...] = ()
    output_path: str | None = None
    method: str = "quadrature"

    def __post_init__(self):
        object.__setattr__(self, "snr_grid_db", tuple(float(s) for s in self.snr_grid_db))
        if not self.snr_grid_db:
            raise ConfigError("snr_grid_db must be nonempty")
        if any(b >= a for a, b in zip(self.snr_grid_db[1:], self.snr_grid_db)):
            raise ConfigError("snr_grid_db must be strictly increasing")
        if self.realizations < 1:
            raise ConfigError("realizations must be >= 1")
        if self.mc_samples < 1:
            raise ConfigError("mc_samples must be >= 1")
        if self.quadrature_tolerance <= 0:
            raise ConfigError("quadrature_tolerance must be positive")
        if self.method not in ("quadrature", "montecarlo"):
            raise ConfigError(f"unknown method {self.method!r}")

    @property
    def entropy_method(self) -> str:
        return "radial_quadrature" if self.method == "quadrature" else "monte_carlo"


@dataclass(frozen=True)
class MiCurve:
    """One labeled curve: (x, mean bits, std error bits) per grid point."""

    label: str
    points: tuple[tuple[float, float, float], ...]


def default_snr_grid() -> tuple[float, ...]:
    return tuple(float(s) for s in range(-40, 42, 2))


def default_system(alpha1_sq: float = 4.0, alpha2_sq: float = 1.0) -> SystemConfig:
    """Two paired users, conventional SM on M = 4 antennas, unit noise power."""
    return SystemConfig(
        num_tx_antennas=4,
        num_users=2,
        codebook_sizes=(4, 4),
        power_levels=(alpha1_sq, alpha2_sq),
        signal_power=1.0,
        noise_power=1.0,
    )


def default_baselines() -> tuple[BaselineKind, ...]:
    return (
        BaselineKind("miso_noma", {"num_tx_antennas": 2}),
        BaselineKind("sm_tdma", {"time_shares": (0.5, 0.5)}),
    )


def figure1_config(**overrides) -> ExperimentConfig:
    base = dict(
        system=default_system(4.0, 1.0),
        snr_grid_db=default_snr_grid(),
        power_split=FixedPowerSplit(4.0, 1.0),
        baselines=default_baselines(),
    )
    base.update(overrides)
    return ExperimentConfig(**base)


def figure2a_config(**overrides) -> ExperimentConfig:
    return figure1_config(**overrides)


def figure2b_config(**overrides) -> ExperimentConfig:
    base = dict(
        system=default_system(4.0, 1.0),
        snr_grid_db=(30.0,),
        power_split=TotalPowerSweep(5.0, (0.25, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0)),
        baselines=(),
    )
    base.update(overrides)
    return ExperimentConfig(**base)


def _at_snr(system: SystemConfig, snr_db: float, powers: tuple[float, float]) -> SystemConfig:
    """Single-knob SNR: sigma_v^2 = 1 fixed, sigma_s^2 = rho."""
    return replace(
        system,
        power_levels=powers,
        noise_power=1.0,
        signal_power=10.0 ** (snr_db / 10.0),
    )


def _fixed_powers(config: ExperimentConfig) -> tuple[float, float]:
    if not isinstance(config.power_split, FixedPowerSplit):
        raise ConfigError("this figure needs a fixed power split")
    return (config.power_split.alpha1_sq, config.power_split.alpha2_sq)


def _mean_curves(
    label_rows: dict[str, np.ndarray], xs: tuple[float, ...]
) -> list[MiCurve]:
    """Reduce (realization, grid) sample arrays to mean/std-error curves in
    fixed label order."""
    curves = []
    for label, samples in label_rows.items():
        mean = samples.mean(axis=0)
        n = samples.shape[0]
        if n > 1:
            se = samples.std(axis=0, ddof=1) / math.sqrt(n)
        else:
            se = np.zeros_like(mean)
        curves.append(
            MiCurve(
                label,
                tuple(
                    (float(x), float(m), float(s)) for x, m, s in zip(xs, mean, se)
                ),
            )
        )
    return curves


def _baseline_params(config: ExperimentConfig) -> tuple[int | None, tuple[float, ...] | None]:
    miso_m = None
    tdma_shares = None
    for b in config.baselines:
        if b.variant == "miso_noma":
            miso_m = b.params.get("num_tx_antennas", 2)
        elif b.variant == "sm_tdma":
            tdma_shares = tuple(b.params.get("time_shares", (0.5, 0.5)))
    return miso_m, tdma_shares


def _require_paired_sm(config: ExperimentConfig) -> None:
    if config.system.num_users != 2:
        raise ConfigError("figure reproduction needs K = 2")
    if any(n != config.system.num_tx_antennas for n in config.system.codebook_sizes):
        raise ConfigError("figure reproduction needs conventional SM (N_k = M)")


def _draw_realizations(config: ExperimentConfig) -> list[ChannelRealization]:
    codebooks = make_conventional_sm_codebooks(config.system)
    return [
        draw_channel(config.system, codebooks, substream(config.seed, _TAG_CHANNEL, i))
        for i in range(config.realizations)
    ]


def _mi_value(
    realization: ChannelRealization,
    system: SystemConfig,
    r: int,
    k: int,
    config: ExperimentConfig,
    rng_key: tuple[int, ...],
) -> float:
    rng = None
    if config.method == "montecarlo":
        rng = substream(config.seed, _TAG_MC, *rng_key)
    return mi_exact(
        realization,
        system,
        r,
        k,
        config.entropy_method,
        rng=rng,
        samples=config.mc_samples,
        tolerance=config.quadrature_tolerance,
    ).mi_exact.value


def run_figure1(config: ExperimentConfig) -> list[MiCurve]:
    """Per-user MI of SM-NOMA and baselines plus the closed-form lower bounds,
    on the SNR grid with a fixed power split."""
    _require_paired_sm(config)
    powers = _fixed_powers(config)
    realizations = _draw_realizations(config)
    miso_m, tdma_shares = _baseline_params(config)

    labels = ["SM-NOMA I(1,1)", "SM-NOMA I(2,2)",
              "SM-NOMA I_LB(1,1)", "SM-NOMA I_LB(2,2)",
              "SM-NOMA I_LB+(1,1)", "SM-NOMA I_LB+(2,2)"]
    if miso_m is not None:
        labels += ["MISO-NOMA I(1,1)", "MISO-NOMA I(2,2)"]
    if tdma_shares is not None:
        labels += ["SM-TDMA I(1)", "SM-TDMA I(2)"]
    rows = {lab: np.zeros((config.realizations, len(config.snr_grid_db))) for lab in labels}

    for i, realization in enumerate(realizations):
        for j, snr_db in enumerate(config.snr_grid_db):
            system = _at_snr(config.system, snr_db, powers)
            rows["SM-NOMA I(1,1)"][i, j] = _mi_value(realization, system, 1, 1, config, (i, j, 0))
            rows["SM-NOMA I(2,2)"][i, j] = _mi_value(realization, system, 2, 2, config, (i, j, 1))
            lb11 = mi_lower_bound_k2(realization, system, 1, 1)
            lb22 = mi_lower_bound_k2(realization, system, 2, 2)
            rows["SM-NOMA I_LB(1,1)"][i, j] = lb11
            rows["SM-NOMA I_LB(2,2)"][i, j] = lb22
            rows["SM-NOMA I_LB+(1,1)"][i, j] = max(lb11, 0.0)
            rows["SM-NOMA I_LB+(2,2)"][i, j] = max(lb22, 0.0)
            if miso_m is not None:
                rows["MISO-NOMA I(1,1)"][i, j] = miso_noma_mi(realization, system, 1, 1, miso_m)
                rows["MISO-NOMA I(2,2)"][i, j] = miso_noma_mi(realization, system, 2, 2, miso_m)
            if tdma_shares is not None:
                for k in (1, 2):
                    rows[f"SM-TDMA I({k})"][i, j] = sm_tdma_mi(
                        realization, system, k, tdma_shares[k - 1],
                        tolerance=config.quadrature_tolerance,
                    )
    return _mean_curves(rows, config.snr_grid_db)


def run_figure2a(config: ExperimentConfig) -> list[MiCurve]:
    """Sum MI of SM-NOMA and baselines on the SNR grid at a fixed total power."""
    _require_paired_sm(config)
    powers = _fixed_powers(config)
    realizations = _draw_realizations(config)
    miso_m, tdma_shares = _baseline_params(config)

    labels = ["SM-NOMA sum"]
    if miso_m is not None:
        labels.append("MISO-NOMA sum")
    if tdma_shares is not None:
        labels.append("SM-TDMA sum")
    rows = {lab: np.zeros((config.realizations, len(config.snr_grid_db))) for lab in labels}

    for i, realization in enumerate(realizations):
        for j, snr_db in enumerate(config.snr_grid_db):
            system = _at_snr(config.system, snr_db, powers)
            i11 = _mi_value(realization, system, 1, 1, config, (i, j, 0))
            i22 = _mi_value(realization, system, 2, 2, config, (i, j, 1))
            rows["SM-NOMA sum"][i, j] = i11 + i22
            if miso_m is not None:
                rows["MISO-NOMA sum"][i, j] = miso_noma_mi(
                    realization, system, 1, 1, miso_m
                ) + miso_noma_mi(realization, system, 2, 2, miso_m)
            if tdma_shares is not None:
                rows["SM-TDMA sum"][i, j] = sum(
                    sm_tdma_mi(realization, system, k, tdma_shares[k - 1],
                               tolerance=config.quadrature_tolerance)
                    for k in (1, 2)
                )
    return _mean_curves(rows, config.snr_grid_db)


def run_figure2b(config: ExperimentConfig) -> list[MiCurve]:
    """Per-user MI at a fixed SNR versus the power ratio alpha1^2/alpha2^2,
    with the total power held constant. Curve x-values are the ratios."""
    _require_paired_sm(config)
    if not isinstance(config.power_split, TotalPowerSweep):
        raise ConfigError("figure 2(b) needs a total_power_sweep power split")
    if len(config.snr_grid_db) != 1:
        raise ConfigError("figure 2(b) fixes a single SNR point")
    snr_db = config.snr_grid_db[0]
    sweep = config.power_split
    realizations = _draw_realizations(config)

    rows = {
        "SM-NOMA I(1,1)": np.zeros((config.realizations, len(sweep.ratio_grid))),
        "SM-NOMA I(2,2)": np.zeros((config.realizations, len(sweep.ratio_grid))),
    }
    for i, realization in enumerate(realizations):
        for j, ratio in enumerate(sweep.ratio_grid):
            system = _at_snr(config.system, snr_db, sweep.split(ratio))
            rows["SM-NOMA I(1,1)"][i, j] = _mi_value(realization, system, 1, 1, config, (i, j, 0))
            rows["SM-NOMA I(2,2)"][i, j] = _mi_value(realization, system, 2, 2, config, (i, j, 1))
    return _mean_curves(rows, sweep.ratio_grid)


@dataclass(frozen=True)
class PropertyResult:
    name: str
    passed: bool
    detail: str


@dataclass(frozen=True)
class PropertyReport:
    results: tuple[PropertyResult, ...]

    @property
    def all_passed(self) -> bool:
        return all(r.passed for r in self.results)

    def lines(self) -> list[str]:
        return [
            f"{'PASS' if r.passed else 'FAIL'}  {r.name}: {r.detail}"
            for r in self.results
        ]


def _random_zero_mean_mixture(rng: np.random.Generator) -> gmd.GaussianMixture:
    n = int(rng.integers(1, 9))
    variances = 10.0 ** rng.uniform(-2, 2, size=n)
    return gmd.equal_weight_zero_mean_mixture(variances)


def run_property_suite(config: ExperimentConfig) -> PropertyReport:
    """Randomized cross-module invariant checks with the configured seed."""
    rng = substream(config.seed, _TAG_PROPS)
    results: list[PropertyResult] = []

    def record(name: str, passed: bool, detail: str) -> None:
        results.append(PropertyResult(name, bool(passed), detail))

    # Entropy bound sandwich on random zero-mean mixtures.
    tol = 1e-8
    worst = 0.0
    violations = 0
    for _ in range(100):
        mix = _random_zero_mean_mixture(rng)
        h = gmd.entropy_radial_quadrature(mix, 1e-10).value
        lb = gmd.entropy_lower_bound(mix)
        ub = gmd.entropy_upper_bound(mix)
        gap = max(lb - h, h - ub)
        worst = max(worst, gap)
        if gap > tol:
            violations += 1
    record("bound_sandwich", violations == 0,
           f"{violations} violations, worst slack {worst:.3e} bits")

    # Duplicate invariance of the lower bound; upper bound shifts by beta.
    max_lb_dev = 0.0
    max_ub_dev = 0.0
    for _ in range(25):
        mix = _random_zero_mean_mixture(rng)
        w, v = mix.weights, mix.variances
        split_w = np.concatenate([w[:1] / 2, w[:1] / 2, w[1:]])
        split_v = np.concatenate([v[:1], v[:1], v[1:]])
        split = gmd.mixture_from_arrays(split_w, np.zeros(len(split_w)), split_v)
        max_lb_dev = max(max_lb_dev, abs(
            gmd.entropy_lower_bound(split) - gmd.entropy_lower_bound(mix)))
        max_ub_dev = max(max_ub_dev, abs(
            gmd.entropy_upper_bound(split) - gmd.entropy_upper_bound(mix) - w[0]))
    record("duplicate_invariance", max_lb_dev < 1e-10 and max_ub_dev < 1e-10,
           f"LB dev {max_lb_dev:.3e}, UB-shift dev {max_ub_dev:.3e} bits")

    # Closed-form equal-weight path matches the general bounds.
    max_dev = 0.0
    for _ in range(50):
        mix = _random_zero_mean_mixture(rng)
        lb, ub = gmd.entropy_bounds_equal_weight_zero_mean(mix.variances)
        max_dev = max(max_dev,
                      abs(lb - gmd.entropy_lower_bound(mix)),
                      abs(ub - gmd.entropy_upper_bound(mix)))
    record("equal_weight_specialization", max_dev < 1e-12,
           f"max deviation {max_dev:.3e} bits")

    # Scaling every variance by c adds log2(c) to bounds and exact entropy.
    max_dev = 0.0
    for _ in range(10):
        mix = _random_zero_mean_mixture(rng)
        c = float(10.0 ** rng.uniform(-1, 1))
        scaled = gmd.equal_weight_zero_mean_mixture(mix.variances * c)
        shift = math.log2(c)
        max_dev = max(
            max_dev,
            abs(gmd.entropy_lower_bound(scaled) - gmd.entropy_lower_bound(mix) - shift),
            abs(gmd.entropy_upper_bound(scaled) - gmd.entropy_upper_bound(mix) - shift),
            abs(gmd.entropy_radial_quadrature(scaled, 1e-10).value
                - gmd.entropy_radial_quadrature(mix, 1e-10).value - shift),
        )
    record("variance_scaling", max_dev < 1e-8, f"max deviation {max_dev:.3e} bits")

    # Closed-form K=2 lower bound equals the bound assembly from mixtures.
    codebooks = make_conventional_sm_codebooks(config.system)
    max_dev = 0.0
    for i in range(100):
        realization = draw_channel(config.system, codebooks, rng)
        snr_db = float(rng.uniform(-40, 40))
        system = _at_snr(config.system, snr_db, config.system.power_levels[:2])
        for (r, k) in ((1, 1), (2, 1), (2, 2)):
            direct = mi_lower_bound_k2(realization, system, r, k)
            assembled = gmd.entropy_lower_bound(
                mixture_of_received(realization, system, r, k)
            ) - gmd.entropy_upper_bound(
                mixture_of_interference(realization, system, r, k)
            )
            max_dev = max(max_dev, abs(direct - assembled))
    record("lb_path_equivalence", max_dev < 1e-10, f"max |delta| {max_dev:.3e} bits")

    # Lower-bound validity against the exact MI on random operating points.
    violations = 0
    worst = -math.inf
    for i in range(100):
        realization = draw_channel(config.system, codebooks, rng)
        snr_db = float(rng.uniform(-40, 40))
        system = _at_snr(config.system, snr_db, config.system.power_levels[:2])
        for (r, k) in ((1, 1), (2, 1), (2, 2)):
            res = mi_exact(realization, system, r, k,
                           tolerance=config.quadrature_tolerance)
            excess = res.mi_lower_bound - (
                res.mi_exact.value + 3.0 * res.mi_exact.std_error)
            worst = max(worst, excess)
            if excess > 0:
                violations += 1
    record("lb_validity", violations == 0,
           f"{violations} violations, worst LB excess {worst:.3e} bits")

    # Asymptotic behavior averaged over realizations at the SNR extremes.
    n_real = max(config.realizations, 200)
    sys_high = _at_snr(config.system, 40.0, config.system.power_levels[:2])
    sys_low = _at_snr(config.system, -40.0, config.system.power_levels[:2])
    mid_systems = [_at_snr(config.system, s, config.system.power_levels[:2])
                   for s in (10.0, 20.0, 30.0)]
    i11 = np.zeros(n_real)
    shift11 = np.zeros(n_real)
    low_dev = 0.0
    lb_low_dev = 0.0
    sic_gap = np.zeros((n_real, len(mid_systems)))
    a1, a2 = config.system.power_levels[:2]
    n2 = config.system.codebook_sizes[1]
    for i in range(n_real):
        realization = draw_channel(config.system, codebooks, rng)
        res = mi_exact(realization, sys_high, 1, 1,
                       tolerance=config.quadrature_tolerance)
        i11[i] = res.mi_exact.value
        shift11[i] = res.mi_exact.value - res.mi_lower_bound
        for (r, k) in ((1, 1), (2, 1), (2, 2)):
            res_low = mi_exact(realization, sys_low, r, k,
                               tolerance=config.quadrature_tolerance)
            low_dev = max(low_dev, abs(res_low.mi_exact.value))
            limit = asymptotes(sys_low, r, k).low_snr_lb_limit
            lb_low_dev = max(lb_low_dev, abs(res_low.mi_lower_bound - limit))
        for j, system in enumerate(mid_systems):
            sic_gap[i, j] = (
                mi_exact(realization, system, 2, 2,
                         tolerance=config.quadrature_tolerance).mi_exact.value
                - mi_exact(realization, system, 1, 1,
                           tolerance=config.quadrature_tolerance).mi_exact.value
            )
    record("low_snr_limits", low_dev < 0.02 and lb_low_dev < 0.02,
           f"max |MI| {low_dev:.4f}, max LB deviation {lb_low_dev:.4f} bits at -40 dB")
    ceiling = math.log2(1.0 + a1 / a2)
    dev = abs(float(i11.mean()) - ceiling)
    record("high_snr_saturation", dev < 0.1,
           f"mean I(1,1) at 40 dB off the merged-Gaussian ceiling by {dev:.4f} bits "
           f"(tolerance 0.1)")
    target_shift = math.log2(math.e * n2) - 1.0
    dev = abs(float(shift11.mean()) - target_shift)
    record("constant_shift_convergence", dev < 0.1,
           f"mean I-I_LB at 40 dB off {target_shift:.4f} by {dev:.4f} bits "
           f"(tolerance 0.1)")
    min_gap = float(sic_gap.mean(axis=0).min())
    record("sic_ordering", min_gap > 0.0,
           f"min mean I(2,2)-I(1,1) over 10-30 dB is {min_gap:.4f} bits")

    # Quadrupling Monte Carlo samples should halve the reported std error.
    ratios = []
    for _ in range(5):
        mix = _random_zero_mean_mixture(rng)
        se_small = gmd.entropy_monte_carlo(mix, rng, 20_000).std_error
        se_large = gmd.entropy_monte_carlo(mix, rng, 80_000).std_error
        ratios.append(se_small / se_large)
    mean_ratio = float(np.mean(ratios))
    record("mc_error_scaling", abs(mean_ratio - 2.0) < 0.4,
           f"mean std-error ratio {mean_ratio:.3f} (expect 2)")

    # Empirical second moment of simulated symbols matches the mixture power.
    system = _at_snr(config.system, 10.0, config.system.power_levels[:2])
    realization = draw_channel(system, codebooks, rng)
    mix = mixture_of_received(realization, system, 1, 1)
    draws = 200_000
    sizes = system.codebook_sizes
    symbols = (rng.standard_normal((draws, 2)) + 1j * rng.standard_normal((draws, 2))) \
        * math.sqrt(system.signal_power / 2.0)
    idx = np.column_stack([rng.integers(1, n + 1, size=draws) for n in sizes])
    noise = (rng.standard_normal(draws) + 1j * rng.standard_normal(draws)) \
        * math.sqrt(system.noise_power / 2.0)
    power = float(np.mean(np.abs([
        simulate_received_symbol(realization, system, 1, 1, symbols[d],
                                 tuple(idx[d]), noise[d])
        for d in range(draws)
    ]) ** 2))
    rel = abs(power - mix.mean_power) / mix.mean_power
    record("received_second_moment", rel < 0.01,
           f"relative deviation {rel:.4f} (tolerance 0.01)")

    return PropertyReport(tuple(results))


def _power_split_dict(split: FixedPowerSplit | TotalPowerSweep) -> dict:
    if isinstance(split, FixedPowerSplit):
        return {"mode": "fixed", "alpha1_sq": split.alpha1_sq, "alpha2_sq": split.alpha2_sq}
    return {"mode": "total_power_sweep", "total": split.total,
            "ratio_grid": list(split.ratio_grid)}


def config_to_dict(config: ExperimentConfig) -> dict:
    return {
        "system": asdict(config.system),
        "snr_grid_db": list(config.snr_grid_db),
        "power_split": _power_split_dict(config.power_split),
        "realizations": config.realizations,
        "mc_samples": config.mc_samples,
        "quadrature_tolerance": config.quadrature_tolerance,
        "seed": config.seed,
        "baselines": [{"variant": b.variant, "params": dict(b.params)}
                      for b in config.baselines],
        "output_path": config.output_path,
        "method": config.method,
    }


def _reject_unknown(data: dict, allowed: set[str], context: str) -> None:
    unknown = set(data) - allowed
    if unknown:
        raise ConfigError(f"unknown {context} keys: {sorted(unknown)}")


def config_from_dict(data: dict) -> ExperimentConfig:
    """Build an ExperimentConfig from a plain dict; unknown keys rejected."""
    _reject_unknown(data, {
        "system", "snr_grid_db", "power_split", "realizations", "mc_samples",
        "quadrature_tolerance", "seed", "baselines", "output_path", "method",
    }, "config")
    try:
        sys_data = dict(data.get("system", {}))
        _reject_unknown(sys_data, {
            "num_tx_antennas", "num_users", "codebook_sizes", "power_levels",
            "signal_power", "noise_power",
        }, "system")
        defaults = default_system()
        system = SystemConfig(
            num_tx_antennas=sys_data.get("num_tx_antennas", defaults.num_tx_antennas),
            num_users=sys_data.get("num_users", defaults.num_users),
            codebook_sizes=tuple(sys_data.get("codebook_sizes", defaults.codebook_sizes)),
            power_levels=tuple(sys_data.get("power_levels", defaults.power_levels)),
            signal_power=sys_data.get("signal_power", defaults.signal_power),
            noise_power=sys_data.get("noise_power", defaults.noise_power),
        )
        split_data = dict(data.get("power_split", {"mode": "fixed",
                                                   "alpha1_sq": 4.0, "alpha2_sq": 1.0}))
        mode = split_data.pop("mode", None)
        if mode == "fixed":
            _reject_unknown(split_data, {"alpha1_sq", "alpha2_sq"}, "power_split")
            split: FixedPowerSplit | TotalPowerSweep = FixedPowerSplit(**split_data)
        elif mode == "total_power_sweep":
            _reject_unknown(split_data, {"total", "ratio_grid"}, "power_split")
            split = TotalPowerSweep(split_data["total"], tuple(split_data["ratio_grid"]))
        else:
            raise ConfigError(f"power_split mode must be 'fixed' or "
                              f"'total_power_sweep', got {mode!r}")
        baselines = []
        for b in data.get("baselines", []):
            _reject_unknown(dict(b), {"variant", "params"}, "baseline")
            params = dict(b.get("params", {}))
            if "time_shares" in params:
                params["time_shares"] = tuple(params["time_shares"])
            baselines.append(BaselineKind(b["variant"], params))
        return ExperimentConfig(
            system=system,
            snr_grid_db=tuple(data.get("snr_grid_db", default_snr_grid())),
            power_split=split,
            realizations=data.get("realizations", 200),
            mc_samples=data.get("mc_samples", 10**6),
            quadrature_tolerance=data.get("quadrature_tolerance", 1e-10),
            seed=data.get("seed", 0),
            baselines=tuple(baselines),
            output_path=data.get("output_path"),
            method=data.get("method", "quadrature"),
        )
    except ConfigError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(str(exc)) from exc


def load_config(path: str | Path) -> ExperimentConfig:
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError("config file must hold a JSON object")
    return config_from_dict(data)


def write_curves(
    path: str | Path,
    curves: list[MiCurve],
    config: ExperimentConfig,
    x_axis: str = "snr_db",
) -> None:
    """CSV with one row per (curve, grid point) plus a JSON sidecar embedding
    the fully resolved config for provenance."""
    path = Path(path)
    lines = ["label,snr_db,mean_bits,std_error_bits"]
    for curve in curves:
        for x, mean, se in curve.points:
            lines.append(f"{curve.label},{x:.10g},{mean:.12g},{se:.12g}")
    path.write_text("\n".join(lines) + "\n")
    sidecar = {
        "config": config_to_dict(config),
        "x_axis": x_axis,
        "labels": [c.label for c in curves],
    }
    path.with_suffix(path.suffix + ".json").write_text(
        json.dumps(sidecar, indent=2, sort_keys=True) + "\n"
    )
