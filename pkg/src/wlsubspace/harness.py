"""Seeded Monte Carlo experiment runner with CSV output.

Experiments are described by a flat key-value config file (see
:func:`load_config`) and run deterministically from a single master seed:
every random draw comes from a counter-based substream keyed by
(purpose, channel index, block index), so results are independent of
execution order and worker-thread count, and conventional / widely linear
estimators always consume identical received blocks and identical pilots
(common random numbers).

Five experiments are available:

* ``mse_vs_snr`` / ``mse_vs_n``  -- paired estimation sweeps; each row
  carries the empirical mean squared error next to the closed-form
  prediction averaged over the same channel set.
* ``theory_table``               -- the closed-form columns alone.
* ``prob_optimal_vs_j`` / ``prob_lmag_vs_j`` -- channel-statistics sweeps
  of P{conventional MSE > WL MSE} against the closed form / bounds.

The adjudication experiments settle the two printed-formula ambiguities
(unconditional sign-error sum and the two-antenna bound pair) by brute
force sampling.
"""

from __future__ import annotations

import math
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from importlib import resources

import numpy as np
from scipy import special as _special

from . import ambiguity
from .ambiguity import Scenario, make_pilots
from .analysis import (
    TheoryQuery,
    lmag_bounds,
    prob_sign_error_unconditional,
    prob_wl_wins_optimal,
    theory_mse,
)
from .channel import ChannelRealization, draw_block, draw_channel, substream
from .estimators import (
    EigendecompositionError,
    conventional_estimate,
    wl_estimate,
)
from .numerics import gaussian_q

__all__ = [
    "ConfigError",
    "NumericalFailureError",
    "ExperimentConfig",
    "SummaryRow",
    "ProbRow",
    "load_config",
    "loads_config",
    "dump_config",
    "load_preset",
    "preset_names",
    "run_mse_sweep",
    "run_theory_table",
    "run_prob_sweep",
    "emit_csv",
    "adjudicate_sign_error_formula",
    "adjudicate_lmag_case1",
    "format_adjudication_report",
]

EXPERIMENTS = (
    "mse_vs_snr",
    "mse_vs_n",
    "prob_optimal_vs_j",
    "prob_lmag_vs_j",
    "theory_table",
)

# An MSE sweep aborts when eigensolver failures exceed one per thousand
# trials; failed trials are dropped from the averages below that.
FAILURE_RATE_LIMIT = 1e-3

_PROB_CHUNK = 100_000


class ConfigError(Exception):
    """A config file or config value is invalid."""


class NumericalFailureError(RuntimeError):
    """Eigensolver failures exceeded the tolerated rate during a sweep."""


# ---------------------------------------------------------------------------
# configuration


@dataclass(frozen=True)
class ExperimentConfig:
    """Validated description of one experiment.

    ``J``, ``N``, ``snr_db`` and ``K`` are grids (singletons where the
    experiment expects a scalar); ``channels`` is the number of channel
    realizations (for probability sweeps: the number of channel draws).
    """

    experiment: str
    master_seed: int
    J: tuple[int, ...] = (5,)
    gamma2: float = 1.0
    channels: int = 1000
    blocks_per_channel: int = 1
    N: tuple[int, ...] = (100,)
    snr_db: tuple[float, ...] = (10.0,)
    scenarios: tuple[str, ...] = ("optimal",)
    K: tuple[int, ...] = (1,)
    output_path: str | None = None

    def __post_init__(self) -> None:
        if self.experiment not in EXPERIMENTS:
            raise ConfigError(
                f"experiment must be one of {', '.join(EXPERIMENTS)}; got {self.experiment!r}"
            )
        if int(self.master_seed) < 0:
            raise ConfigError("master_seed must be a nonnegative integer")
        for key in ("J", "N", "snr_db", "scenarios", "K"):
            if len(getattr(self, key)) == 0:
                raise ConfigError(f"{key} grid must be nonempty")
        if self.channels < 1 or self.blocks_per_channel < 1:
            raise ConfigError("channels and blocks_per_channel must be >= 1")
        if any(j < 1 for j in self.J) or any(n < 1 for n in self.N):
            raise ConfigError("J and N entries must be >= 1")
        if any(k < 1 for k in self.K):
            raise ConfigError("K entries must be >= 1")
        if self.gamma2 <= 0.0:
            raise ConfigError("gamma2 must be positive")
        for snr in self.snr_db:
            if math.isnan(snr) or snr == -math.inf:
                raise ConfigError(f"snr_db entries must be finite or +inf; got {snr}")
        for name in self.scenarios:
            if name not in ambiguity.SCENARIO_KINDS:
                raise ConfigError(
                    f"scenarios entries must be in {ambiguity.SCENARIO_KINDS}; got {name!r}"
                )
        if self.experiment in ("mse_vs_snr", "mse_vs_n", "theory_table"):
            if len(self.J) != 1:
                raise ConfigError(f"{self.experiment} takes a single J")
            if self.experiment == "mse_vs_n" and len(self.snr_db) != 1:
                raise ConfigError("mse_vs_n takes a single snr_db")
            if self.experiment != "mse_vs_n" and len(self.N) != 1:
                raise ConfigError(f"{self.experiment} takes a single N")
        else:
            if any(j < 2 for j in self.J):
                raise ConfigError(f"{self.experiment} requires every J >= 2")
            if len(self.N) != 1:
                raise ConfigError(f"{self.experiment} takes a single N")

    def scenario_keys(self) -> list[tuple[str, int | None]]:
        """Expand the scenario list into (kind, K) row keys."""
        keys: list[tuple[str, int | None]] = []
        for kind in self.scenarios:
            if kind == "training":
                keys.extend(("training", k) for k in self.K)
            else:
                keys.append((kind, None))
        return keys

    def to_text(self) -> str:
        def join(values) -> str:
            return ",".join(_format_number(v) for v in values)

        lines = [
            f"experiment = {self.experiment}",
            f"master_seed = {self.master_seed}",
            f"J = {join(self.J)}",
            f"gamma2 = {_format_number(self.gamma2)}",
            f"channels = {self.channels}",
            f"blocks_per_channel = {self.blocks_per_channel}",
            f"N = {join(self.N)}",
            f"snr_db = {join(self.snr_db)}",
            f"scenarios = {','.join(self.scenarios)}",
            f"K = {join(self.K)}",
        ]
        if self.output_path is not None:
            lines.append(f"output_path = {self.output_path}")
        return "\n".join(lines) + "\n"


def _format_number(value) -> str:
    if isinstance(value, bool):
        raise TypeError("booleans are not config numbers")
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return repr(float(value))


_INT_KEYS = {"master_seed", "channels", "blocks_per_channel"}
_FLOAT_KEYS = {"gamma2"}
_INT_LIST_KEYS = {"J", "N", "K"}
_FLOAT_LIST_KEYS = {"snr_db"}
_STR_LIST_KEYS = {"scenarios"}
_STR_KEYS = {"experiment", "output_path"}
_ALL_KEYS = (
    _INT_KEYS | _FLOAT_KEYS | _INT_LIST_KEYS | _FLOAT_LIST_KEYS | _STR_LIST_KEYS | _STR_KEYS
)
_REQUIRED_KEYS = ("experiment", "master_seed")


def _parse_value(key: str, raw: str, lineno: int):
    def fail(expected: str):
        return ConfigError(f"line {lineno}: key {key!r} expects {expected}, got {raw!r}")

    try:
        if key in _INT_KEYS:
            return int(raw)
        if key in _FLOAT_KEYS:
            return float(raw)
        if key in _INT_LIST_KEYS:
            return tuple(int(part.strip()) for part in raw.split(","))
        if key in _FLOAT_LIST_KEYS:
            return tuple(float(part.strip()) for part in raw.split(","))
        if key in _STR_LIST_KEYS:
            return tuple(part.strip() for part in raw.split(",") if part.strip())
    except ValueError:
        kind = "an integer" if key in _INT_KEYS else (
            "a number" if key in _FLOAT_KEYS else "a comma-separated list"
        )
        raise fail(kind) from None
    return raw


def loads_config(text: str, source: str = "<string>") -> ExperimentConfig:
    """Parse a flat ``key = value`` config from a string."""
    values: dict = {}
    seen_lines: dict[str, int] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if "=" not in stripped:
            raise ConfigError(f"{source}: line {lineno}: expected 'key = value', got {line!r}")
        key, _, raw = stripped.partition("=")
        key, raw = key.strip(), raw.strip()
        if key not in _ALL_KEYS:
            raise ConfigError(f"{source}: line {lineno}: unknown key {key!r}")
        if key in seen_lines:
            raise ConfigError(
                f"{source}: line {lineno}: duplicate key {key!r} (first set on line {seen_lines[key]})"
            )
        seen_lines[key] = lineno
        try:
            values[key] = _parse_value(key, raw, lineno)
        except ConfigError as exc:
            raise ConfigError(f"{source}: {exc}") from None
    for key in _REQUIRED_KEYS:
        if key not in values:
            raise ConfigError(f"{source}: missing required key {key!r}")
    try:
        return ExperimentConfig(**values)
    except ConfigError as exc:
        raise ConfigError(f"{source}: {exc}") from None


def load_config(path) -> ExperimentConfig:
    """Read an :class:`ExperimentConfig` from a flat key-value text file."""
    with open(path, "r", encoding="utf-8") as fh:
        return loads_config(fh.read(), source=str(path))


def dump_config(cfg: ExperimentConfig, path) -> None:
    """Write a config file that :func:`load_config` reads back unchanged."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(cfg.to_text())


def preset_names() -> list[str]:
    """Names of the bundled experiment presets."""
    root = resources.files(__package__) / "presets"
    return sorted(p.name[: -len(".cfg")] for p in root.iterdir() if p.name.endswith(".cfg"))


def load_preset(name: str) -> ExperimentConfig:
    """Load a bundled preset config by name."""
    root = resources.files(__package__) / "presets"
    candidate = root / f"{name}.cfg"
    if not candidate.is_file():
        raise ConfigError(
            f"unknown preset {name!r}; available: {', '.join(preset_names())}"
        )
    return loads_config(candidate.read_text(encoding="utf-8"), source=f"preset {name}")


# ---------------------------------------------------------------------------
# output rows


@dataclass(frozen=True)
class SummaryRow:
    """One aggregated MSE-sweep cell (a point on one curve)."""

    x: float
    estimator: str
    scenario: str
    K: int | None
    empirical_mse: float | None
    theory_exact: float
    theory_approx: float
    std_error: float | None
    trials: int

    HEADER = "x,estimator,scenario,K,empirical_mse,theory_exact,theory_approx,std_error,trials"

    def fields(self) -> list:
        return [
            self.x,
            self.estimator,
            self.scenario,
            self.K,
            self.empirical_mse,
            self.theory_exact,
            self.theory_approx,
            self.std_error,
            self.trials,
        ]


@dataclass(frozen=True)
class ProbRow:
    """One aggregated probability-sweep cell."""

    J: int
    snr_db: float
    p_empirical: float
    p_theory: float | None
    bound_lower: float | None
    bound_upper: float | None
    bound_loose: float | None
    trials: int

    HEADER = "J,snr_db,p_empirical,p_theory,bound_lower,bound_upper,bound_loose,trials"

    def fields(self) -> list:
        return [
            self.J,
            self.snr_db,
            self.p_empirical,
            self.p_theory,
            self.bound_lower,
            self.bound_upper,
            self.bound_loose,
            self.trials,
        ]


def _format_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, str):
        return value
    return _format_number(value)


def render_csv(rows, schema=None) -> str:
    """Render rows as CSV text with the fixed header (full-precision decimals)."""
    if schema is None:
        if not rows:
            raise ValueError("schema is required to render an empty row list")
        schema = type(rows[0])
    lines = [schema.HEADER]
    for row in rows:
        if not isinstance(row, schema):
            raise TypeError(f"row {row!r} is not a {schema.__name__}")
        lines.append(",".join(_format_cell(v) for v in row.fields()))
    return "\n".join(lines) + "\n"


def emit_csv(rows, path, schema=None) -> None:
    """Write rows (possibly none) to ``path`` under the fixed CSV schema."""
    if schema is None:
        schema = type(rows[0]) if rows else SummaryRow
    text = render_csv(rows, schema=schema)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


# ---------------------------------------------------------------------------
# MSE sweeps


def _snr_to_sigma2(snr_db: float) -> float:
    return float(10.0 ** (-snr_db / 10.0))


def _draw_sweep_channels(cfg: ExperimentConfig):
    """The sweep's channel set plus each channel's randomly chosen coefficient.

    Channels are drawn once per sweep and shared by every grid point.  The
    suboptimal-scenario index ell is drawn once per channel, uniformly, from
    the tail of the same substream, and recorded alongside it.
    """
    J = cfg.J[0]
    out: list[tuple[ChannelRealization, int]] = []
    for c in range(cfg.channels):
        rng = substream(cfg.master_seed, "channel", c)
        ch = draw_channel(J, cfg.gamma2, rng)
        ell = int(rng.integers(ch.J))
        out.append((ch, ell))
    return out


def _scenario_for(kind: str, K: int | None, ell: int) -> Scenario:
    if kind == "suboptimal":
        return Scenario.suboptimal(ell)
    if kind == "training":
        return Scenario.training(K)
    return Scenario(kind)


def _channel_theory(ch, ell, skeys, N, sigma2):
    theory = {}
    for kind, K in skeys:
        scen = _scenario_for(kind, K, ell)
        for est in ("conventional", "wl"):
            q = TheoryQuery.for_channel(est, scen, ch, N, sigma2)
            theory[(est, kind, K)] = (theory_mse(q, "exact"), theory_mse(q, "approx"))
    return theory


def _mse_channel_task(cfg, c, ch, ell, N, sigma2, skeys):
    """Simulate every block of one channel at one grid point.

    Returns per-(estimator, scenario, K) accumulators (sum, sum of squares,
    count), the channel's theory values, and the eigensolver failure count.
    """
    sums = {(est, kind, K): [0.0, 0.0, 0] for est in ("conventional", "wl") for kind, K in skeys}
    want_pilots = sorted({K for kind, K in skeys if kind == "training"})
    failures = 0
    seed = cfg.master_seed
    for b in range(cfg.blocks_per_channel):
        block = draw_block(
            ch,
            N,
            sigma2,
            substream(seed, "symbols", c, b),
            noise_rng=substream(seed, "noise", c, b),
        )
        try:
            conv = conventional_estimate(block)
            wl = wl_estimate(block)
        except EigendecompositionError:
            failures += 1
            continue
        pilots = {
            K: make_pilots(ch, K, sigma2, substream(seed, "pilots", c, b, K))
            for K in want_pilots
        }
        for kind, K in skeys:
            scen = _scenario_for(kind, K, ell)
            pb = pilots.get(K)
            err_c = ambiguity.squared_error(ambiguity.apply(conv, scen, ch, pb), ch.h)
            err_w = ambiguity.squared_error(ambiguity.apply(wl, scen, ch, pb), ch.h_bar)
            for est, err in (("conventional", err_c), ("wl", err_w)):
                acc = sums[(est, kind, K)]
                acc[0] += err
                acc[1] += err * err
                acc[2] += 1
    return sums, _channel_theory(ch, ell, skeys, N, sigma2), failures


def _reduce_grid_point(cfg, x, skeys, per_channel, simulated: bool):
    """Combine per-channel results (in channel order) into summary rows."""
    rows = []
    n_channels = len(per_channel)
    for est in ("conventional", "wl"):
        for kind, K in skeys:
            key = (est, kind, K)
            exact = sum(theory[key][0] for _, theory, _ in per_channel) / n_channels
            approx = sum(theory[key][1] for _, theory, _ in per_channel) / n_channels
            if simulated:
                total = sq_total = 0.0
                count = 0
                for sums, _, _ in per_channel:
                    acc = sums[key]
                    total += acc[0]
                    sq_total += acc[1]
                    count += acc[2]
                mean = total / count
                if count > 1:
                    var = max(sq_total - total * total / count, 0.0) / (count - 1)
                    std_error = math.sqrt(var / count)
                else:
                    std_error = 0.0
                rows.append(
                    SummaryRow(x, est, kind, K, mean, exact, approx, std_error, count)
                )
            else:
                rows.append(
                    SummaryRow(x, est, kind, K, None, exact, approx, None, cfg.channels)
                )
    return rows


def _run_mse_like(cfg: ExperimentConfig, threads: int, simulated: bool):
    skeys = cfg.scenario_keys()
    channels = _draw_sweep_channels(cfg)
    if cfg.experiment == "mse_vs_n":
        grid = [(float(n), n, _snr_to_sigma2(cfg.snr_db[0])) for n in cfg.N]
    else:
        grid = [(snr, cfg.N[0], _snr_to_sigma2(snr)) for snr in cfg.snr_db]

    rows: list[SummaryRow] = []
    total_failures = 0
    total_trials = cfg.channels * cfg.blocks_per_channel * len(grid)
    for x, N, sigma2 in grid:
        if simulated:
            def task(item):
                c, (ch, ell) = item
                return _mse_channel_task(cfg, c, ch, ell, N, sigma2, skeys)

            work = list(enumerate(channels))
            if threads > 1:
                with ThreadPoolExecutor(max_workers=threads) as pool:
                    per_channel = list(pool.map(task, work))
            else:
                per_channel = [task(item) for item in work]
            total_failures += sum(f for _, _, f in per_channel)
        else:
            per_channel = [
                (None, _channel_theory(ch, ell, skeys, N, sigma2), 0)
                for ch, ell in channels
            ]
        rows.extend(_reduce_grid_point(cfg, x, skeys, per_channel, simulated))
    if simulated and total_failures > max(1, int(total_trials * FAILURE_RATE_LIMIT)):
        raise NumericalFailureError(
            f"{total_failures} eigensolver failures in {total_trials} trials"
        )
    return rows


def run_mse_sweep(cfg: ExperimentConfig, threads: int = 1) -> list[SummaryRow]:
    """Run a paired conventional/WL estimation sweep.

    For each grid point every channel is simulated for
    ``cfg.blocks_per_channel`` received blocks; both estimators see the same
    blocks and the same pilots.  Empirical averages land next to the
    channel-averaged closed forms.  The row list is a pure function of
    ``(cfg, cfg.master_seed)`` whatever ``threads`` is.
    """
    if cfg.experiment not in ("mse_vs_snr", "mse_vs_n"):
        raise ConfigError(f"run_mse_sweep cannot run experiment {cfg.experiment!r}")
    return _run_mse_like(cfg, max(1, int(threads)), simulated=True)


def run_theory_table(cfg: ExperimentConfig) -> list[SummaryRow]:
    """Evaluate the closed-form columns only (no simulation)."""
    if cfg.experiment not in ("theory_table", "mse_vs_snr", "mse_vs_n"):
        raise ConfigError(f"run_theory_table cannot run experiment {cfg.experiment!r}")
    return _run_mse_like(cfg, threads=1, simulated=False)


# ---------------------------------------------------------------------------
# probability sweeps over channel statistics


def _channel_functionals(rng: np.random.Generator, draws: int, J: int, gamma2: float):
    """Yield (||g||^2, |h_L|^2) chunks for ``draws`` i.i.d. channels."""
    remaining = draws
    scale = math.sqrt(gamma2 / 2.0)
    while remaining > 0:
        n = min(remaining, _PROB_CHUNK)
        parts = rng.normal(0.0, scale, size=(n, J, 2))
        coeff_mag2 = np.sum(parts * parts, axis=2)
        g2 = np.sum(coeff_mag2, axis=1)
        hL2 = np.max(coeff_mag2, axis=1) / g2
        yield g2, hL2
        remaining -= n


def delta_mse_optimal_draws(g2: np.ndarray, J: int, N: int, sigma2: float) -> np.ndarray:
    """Vectorized optimal-correction MSE difference for sampled ||g||^2."""
    return (-0.5 * sigma2 * g2 + sigma2 * sigma2 * (J / 2.0 - 0.75)) / (N * g2 * g2)


def delta_mse_lmag_draws(
    g2: np.ndarray, hL2: np.ndarray, J: int, N: int, sigma2: float
) -> np.ndarray:
    """Vectorized simplified largest-magnitude MSE difference."""
    lead = sigma2 / (N * g2) * (0.5 / hL2 - 1.0)
    quad = sigma2 * sigma2 / (N * g2 * g2) * (J / 2.0 + 0.5 / hL2 - 1.25)
    return lead + quad


def run_prob_sweep(cfg: ExperimentConfig, threads: int = 1) -> list[ProbRow]:
    """Estimate P{conventional MSE > WL MSE} over the channel distribution.

    Per (J, SNR) cell, ``cfg.channels`` channels are drawn and the per-draw
    closed-form MSE difference decides the winner; the empirical fraction is
    reported next to the closed form (optimal correction) or the printed
    bounds (largest-magnitude correction).  ``threads`` is accepted for CLI
    symmetry; the sweep is vectorized and single-threaded.
    """
    del threads
    if cfg.experiment not in ("prob_optimal_vs_j", "prob_lmag_vs_j"):
        raise ConfigError(f"run_prob_sweep cannot run experiment {cfg.experiment!r}")
    lmag = cfg.experiment == "prob_lmag_vs_j"
    N = cfg.N[0]
    rows: list[ProbRow] = []
    for J in cfg.J:
        for si, snr in enumerate(cfg.snr_db):
            sigma2 = _snr_to_sigma2(snr)
            rng = substream(cfg.master_seed, "prob", J, si)
            wins = 0
            for g2, hL2 in _channel_functionals(rng, cfg.channels, J, cfg.gamma2):
                if lmag:
                    delta = delta_mse_lmag_draws(g2, hL2, J, N, sigma2)
                else:
                    delta = delta_mse_optimal_draws(g2, J, N, sigma2)
                wins += int(np.count_nonzero(delta > 0.0))
            p_emp = wins / cfg.channels
            if lmag:
                record = lmag_bounds(J, sigma2, cfg.gamma2)[0]
                rows.append(
                    ProbRow(
                        J=J,
                        snr_db=snr,
                        p_empirical=p_emp,
                        p_theory=None,
                        bound_lower=record.lower,
                        bound_upper=record.upper,
                        bound_loose=record.looser_lower,
                        trials=cfg.channels,
                    )
                )
            else:
                rows.append(
                    ProbRow(
                        J=J,
                        snr_db=snr,
                        p_empirical=p_emp,
                        p_theory=prob_wl_wins_optimal(J, sigma2, cfg.gamma2),
                        bound_lower=None,
                        bound_upper=None,
                        bound_loose=None,
                        trials=cfg.channels,
                    )
                )
    return rows


# ---------------------------------------------------------------------------
# adjudication oracles


def adjudicate_sign_error_formula(
    J_values=(1, 2, 3),
    K_values=(1, 2),
    sigma2_values=(0.25, 0.5),
    gamma2: float = 1.0,
    draws: int = 10**6,
    master_seed: int = 20260810,
) -> list[dict]:
    """Decide which unconditional sign-error variant the sampling law obeys.

    For each (J, K, sigma2), averages the conditional error probability
    Q(sqrt(2 K ||g||^2 / sigma2)) over ``draws`` channel draws and measures
    how many standard errors each printed variant sits from that mean.
    """
    findings = []
    for J in J_values:
        for K in K_values:
            for si, sigma2 in enumerate(sigma2_values):
                rng = substream(master_seed, "sign-adjudicate", int(J), int(K), si)
                total = total_sq = 0.0
                for g2, _ in _channel_functionals(rng, draws, int(J), gamma2):
                    q = 0.5 * _special.erfc(np.sqrt(K * g2 / sigma2))
                    total += float(np.sum(q))
                    total_sq += float(np.sum(q * q))
                mean = total / draws
                var = max(total_sq - total * total / draws, 0.0) / (draws - 1)
                se = math.sqrt(var / draws)
                with warnings.catch_warnings():
                    # some grid points sit outside the stated validity region
                    warnings.simplefilter("ignore")
                    printed = prob_sign_error_unconditional(J, K, gamma2, sigma2, "as_printed")
                    power = prob_sign_error_unconditional(
                        J, K, gamma2, sigma2, "power_corrected"
                    )
                matches = [
                    name
                    for name, value in (("as_printed", printed), ("power_corrected", power))
                    if abs(value - mean) <= 3.0 * se
                ]
                findings.append(
                    {
                        "J": int(J),
                        "K": int(K),
                        "sigma2": float(sigma2),
                        "monte_carlo": mean,
                        "std_error": se,
                        "as_printed": printed,
                        "power_corrected": power,
                        "matches": matches,
                    }
                )
    return findings


def adjudicate_lmag_case1(
    ratios=(0.1, 0.5, 1.0),
    gamma2: float = 1.0,
    N: int = 100,
    draws: int = 10**6,
    master_seed: int = 20260810,
) -> list[dict]:
    """Decide which two-antenna bound pair the sampled win probability obeys."""
    findings = []
    for ri, ratio in enumerate(ratios):
        sigma2 = float(ratio) * gamma2
        rng = substream(master_seed, "lmag-adjudicate", ri)
        wins = 0
        for g2, hL2 in _channel_functionals(rng, draws, 2, gamma2):
            delta = delta_mse_lmag_draws(g2, hL2, 2, N, sigma2)
            wins += int(np.count_nonzero(delta > 0.0))
        p_emp = wins / draws
        candidates = {}
        for record in lmag_bounds(2, sigma2, gamma2):
            candidates[record.variant] = {
                "lower": record.lower,
                "upper": record.upper,
                "holds": bool(record.lower < p_emp < record.upper),
            }
        findings.append(
            {
                "sigma2_over_gamma2": float(ratio),
                "p_empirical": p_emp,
                "trials": draws,
                "candidates": candidates,
            }
        )
    return findings


def format_adjudication_report(sign_findings, bound_findings) -> str:
    """Human-readable summary of both adjudication experiments."""
    lines = ["unconditional sign-error formula, variant adjudication", "-" * 56]
    for f in sign_findings:
        matched = ", ".join(f["matches"]) if f["matches"] else "none"
        lines.append(
            f"J={f['J']} K={f['K']} sigma2={f['sigma2']}: "
            f"monte_carlo={f['monte_carlo']:.6f} (se {f['std_error']:.2e}) "
            f"as_printed={f['as_printed']:.6f} power_corrected={f['power_corrected']:.6f} "
            f"-> matches: {matched}"
        )
    winners = {name for f in sign_findings for name in f["matches"]}
    if winners == {"power_corrected"}:
        lines.append(
            "finding: only the power_corrected variant (exponent l on the summand) "
            "matches the sampled mean in every configuration."
        )
    lines.append("")
    lines.append("two-antenna largest-magnitude bound pair, adjudication")
    lines.append("-" * 56)
    for f in bound_findings:
        lines.append(f"sigma2/gamma2={f['sigma2_over_gamma2']}: p_empirical={f['p_empirical']:.5f}")
        for variant, c in f["candidates"].items():
            verdict = "holds" if c["holds"] else "violated"
            lines.append(
                f"    {variant}: ({c['lower']:.5f}, {c['upper']:.5f}) -> {verdict}"
            )
    holding = {
        variant
        for f in bound_findings
        for variant, c in f["candidates"].items()
        if c["holds"]
    }
    if holding == {"theorem_statement"}:
        lines.append(
            "finding: the empirical probability falls strictly inside the "
            "theorem-statement pair at every ratio; the appendix-derivation "
            "pair never contains it."
        )
    return "\n".join(lines) + "\n"
