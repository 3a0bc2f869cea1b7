"""Monte-Carlo engine: scenario configs, trial pipeline, CSV emission."""

import csv
import io
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, fields

import numpy as np

from . import theory
from .analog import analog_precoder
from .channels import (
    DEFAULT_PATHS,
    DEFAULT_SPACING,
    FULL,
    SUB,
    ChannelMatrix,
    Rng,
    SystemConfig,
    mmwave_channel,
    rayleigh_channel,
)
from .errors import ConfigError, DegenerateTrialsExceeded, SingularMatrix
from .feedback import (
    CORR,
    RVQ,
    corr_codebook,
    effective_channels,
    quantize_feedback,
    rvq_codebook,
    theoretical_correlation,
)
from .linalg import gram_inverse
from .metrics import (
    LinkResult,
    degenerate_result,
    link_powers,
    radiated_power_fraction,
    rates_from_powers,
)
from .precoding import PERFECT, QUANTIZED, mrt_precoder, zf_precoder

DIGITAL = "digital"  # fully-digital baseline pseudo-structure
PERFECT_CB = "perfect"

RAYLEIGH = "rayleigh"
MMWAVE = "mmwave"

DEGENERATE_LIMIT = 1e-3

# stream tags under each trial's spawn key
_CHANNEL_TAG = 0
_CODEBOOK_TAG = 1
_FIXED_CODEBOOK_TAG = 2

SWEEPABLE = ("m", "k", "b2", "snr_db")


@dataclass(frozen=True)
class ChannelSpec:
    model: str = RAYLEIGH
    paths: int = DEFAULT_PATHS
    d_over_lambda: float = DEFAULT_SPACING


@dataclass(frozen=True)
class Sweep:
    parameter: str
    values: tuple

    def __post_init__(self):
        if self.parameter not in SWEEPABLE:
            raise ConfigError(f"sweep parameter must be one of {SWEEPABLE}")
        if not self.values:
            raise ConfigError("sweep values must be non-empty")


@dataclass(frozen=True)
class ScenarioConfig:
    """One simulation campaign; JSON field names match the attributes."""

    m: int
    k: int
    structure: str
    snr_db: tuple = ()
    b1: int | None = None
    b2: int | None = None
    channel: ChannelSpec = ChannelSpec()
    codebook: str = PERFECT_CB
    precoder: str = "zf"
    sweep: Sweep | None = None
    trials: int = 2000
    master_seed: int = 0
    scenario_id: str = "scenario"
    fixed_codebook: bool = False

    def __post_init__(self):
        if self.structure not in (SUB, FULL, DIGITAL):
            raise ConfigError(f"structure must be sub, full or digital, got {self.structure!r}")
        if self.codebook not in (RVQ, CORR, PERFECT_CB):
            raise ConfigError(f"codebook must be rvq, corr or perfect, got {self.codebook!r}")
        if self.precoder not in ("zf", "mrt"):
            raise ConfigError(f"precoder must be zf or mrt, got {self.precoder!r}")
        if self.trials < 1:
            raise ConfigError(f"trials must be >= 1, got {self.trials}")
        if self.codebook == PERFECT_CB and self.b2 is not None:
            raise ConfigError("b2 must be omitted with perfect feedback")
        if self.codebook != PERFECT_CB and self.b2 is None:
            raise ConfigError(f"codebook {self.codebook!r} requires b2")
        if self.structure == DIGITAL and (self.codebook != PERFECT_CB or self.b1 is not None):
            raise ConfigError("the fully-digital baseline is unquantized (no b1/b2)")
        sweeping_snr = self.sweep is not None and self.sweep.parameter == "snr_db"
        if sweeping_snr and self.snr_db:
            raise ConfigError("snr_db must be empty when sweeping snr_db")
        if not sweeping_snr and not self.snr_db:
            raise ConfigError("snr_db must be non-empty")
        # fail fast on sweep values violating the system invariants
        for value, snr in self.axes():
            self.system_at(value, snr)

    def axes(self):
        """(sweep_value, snr_db) grid in deterministic emission order."""
        if self.sweep is None:
            return [(None, snr) for snr in self.snr_db]
        if self.sweep.parameter == "snr_db":
            return [(value, value) for value in self.sweep.values]
        return [(value, snr) for value in self.sweep.values for snr in self.snr_db]

    def sweep_groups(self):
        """Distinct sweep values (trial statistics are shared across SNR)."""
        if self.sweep is None:
            return [None]
        return list(self.sweep.values)

    def params_at(self, sweep_value):
        m, k, b2 = self.m, self.k, self.b2
        if self.sweep is not None and sweep_value is not None:
            if self.sweep.parameter == "m":
                m = int(sweep_value)
            elif self.sweep.parameter == "k":
                k = int(sweep_value)
            elif self.sweep.parameter == "b2":
                b2 = int(sweep_value)
        return m, k, b2

    def system_at(self, sweep_value, snr_db) -> SystemConfig:
        m, k, b2 = self.params_at(sweep_value)
        # the digital baseline has no analog network; FULL only asserts m >= k
        structure = FULL if self.structure == DIGITAL else self.structure
        return SystemConfig(m=m, k=k, p=10.0 ** (snr_db / 10.0), b1=self.b1, b2=b2, structure=structure)


@dataclass
class ResultRow:
    scenario_id: str
    structure: str
    channel: str
    codebook: str
    precoder: str
    m: int
    k: int
    b1: int | None
    b2: int | None
    snr_db: float
    trials: int
    mean_sum_rate: float
    stderr_sum_rate: float
    mean_user_rate: float
    theory_rate: float | None
    theory_loss_bound: float | None
    theory_net_rate: float | None
    degenerate_count: int


CSV_COLUMNS = [f.name for f in fields(ResultRow)]


def _draw_channel(sc: ScenarioConfig, cfg: SystemConfig, rng: Rng) -> ChannelMatrix:
    gen = rng.generator(_CHANNEL_TAG)
    if sc.channel.model == MMWAVE:
        return mmwave_channel(cfg, gen, sc.channel.paths, sc.channel.d_over_lambda)
    return rayleigh_channel(cfg, gen)


def _user_codebook(sc: ScenarioConfig, cfg: SystemConfig, user, gen):
    if sc.codebook == RVQ:
        return rvq_codebook(cfg.k, cfg.b2, gen)
    return corr_codebook(theoretical_correlation(cfg, user), cfg.b2, gen)


def _trial_codebooks(sc: ScenarioConfig, cfg: SystemConfig, rng: Rng):
    return [
        _user_codebook(sc, cfg, user, rng.generator(_CODEBOOK_TAG, user))
        for user in range(cfg.k)
    ]


def _fixed_codebooks(sc: ScenarioConfig, cfg: SystemConfig):
    root = Rng(sc.master_seed, 0)
    return [
        _user_codebook(sc, cfg, user, root.generator(_FIXED_CODEBOOK_TAG, user))
        for user in range(cfg.k)
    ]


def _digital_powers(h: np.ndarray):
    """Fully-digital ZF with per-user unit-norm columns: |h_k^H w_j|^2."""
    u = h @ gram_inverse(h)
    w = u / np.linalg.norm(u, axis=0)
    return np.abs(h.conj().T @ w) ** 2, 1.0


def _hybrid_powers(sc: ScenarioConfig, cfg: SystemConfig, h, rng: Rng, codebooks):
    a = analog_precoder(h, cfg)
    g = effective_channels(h, a)
    if sc.codebook == PERFECT_CB:
        g_hat, basis = g, PERFECT
    else:
        cbs = codebooks if codebooks is not None else _trial_codebooks(sc, cfg, rng)
        g_hat, basis = quantize_feedback(g, cbs), QUANTIZED
    if sc.precoder == "zf":
        w = zf_precoder(g_hat, a.f, basis)
    else:
        w = mrt_precoder(g_hat, a.f, basis)
    return link_powers(h, a, w), radiated_power_fraction(a, w, cfg)


def _trial_stats(sc: ScenarioConfig, sweep_value, trial_index, codebooks=None):
    """P-independent per-trial statistics (power matrix, radiated fraction)."""
    cfg = sc.system_at(sweep_value, 0.0)
    rng = Rng(sc.master_seed, trial_index)
    h = _draw_channel(sc, cfg, rng)
    try:
        if sc.structure == DIGITAL:
            powers, radiated = _digital_powers(h.h)
        else:
            powers, radiated = _hybrid_powers(sc, cfg, h.h, rng, codebooks)
    except SingularMatrix:
        return None, float("nan"), True
    return powers, radiated, False


def _stats_chunk(args):
    sc, sweep_value, start, stop = args
    codebooks = None
    if sc.fixed_codebook and sc.codebook != PERFECT_CB and sc.structure != DIGITAL:
        codebooks = _fixed_codebooks(sc, sc.system_at(sweep_value, 0.0))
    return [_trial_stats(sc, sweep_value, t, codebooks) for t in range(start, stop)]


def _collect_stats(sc: ScenarioConfig, sweep_value, workers):
    if workers <= 1 or sc.trials < 2 * workers:
        return _stats_chunk((sc, sweep_value, 0, sc.trials))
    bounds = np.linspace(0, sc.trials, workers + 1).astype(int)
    jobs = [
        (sc, sweep_value, int(bounds[i]), int(bounds[i + 1]))
        for i in range(workers)
        if bounds[i] < bounds[i + 1]
    ]
    out = []
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for part in pool.map(_stats_chunk, jobs):
            out.extend(part)
    return out


def run_trial(sc: ScenarioConfig, trial_index, snr_index=0, sweep_index=0) -> LinkResult:
    """One deterministic realization of the scenario pipeline."""
    sweep_value = sc.sweep_groups()[sweep_index]
    snrs = [snr for value, snr in sc.axes() if value == sweep_value]
    cfg = sc.system_at(sweep_value, snrs[snr_index])
    powers, radiated, degenerate = _trial_stats(sc, sweep_value, trial_index)
    if degenerate:
        return degenerate_result(cfg.k)
    result = rates_from_powers(powers, cfg.p, cfg.k)
    result.radiated_fraction = radiated
    return result


def _theory_columns(sc: ScenarioConfig, cfg: SystemConfig):
    if sc.channel.model != RAYLEIGH or sc.precoder != "zf" or sc.structure == DIGITAL:
        return None, None, None
    rate = theory.asymptotic_rate(sc.structure, cfg.p, cfg.k, cfg.b1)
    if sc.codebook == PERFECT_CB or cfg.k < 2:
        return rate, None, None
    loss = theory.loss_bound(sc.structure, sc.codebook, cfg.p, cfg.m, cfg.k, cfg.b1, cfg.b2)
    return rate, loss, rate - loss


def run_scenario(sc: ScenarioConfig, workers=1) -> list[ResultRow]:
    """All (sweep value, SNR) rows; identical output for any worker count."""
    rows = []
    flagged = []
    for sweep_value in sc.sweep_groups():
        stats = _collect_stats(sc, sweep_value, workers)
        degenerate_count = sum(1 for powers, _, bad in stats if bad)
        if degenerate_count / sc.trials >= DEGENERATE_LIMIT:
            flagged.append((sweep_value, degenerate_count))
        kept = [(powers, rad) for powers, rad, bad in stats if not bad]
        snrs = (
            [snr for value, snr in sc.axes() if value == sweep_value]
            if sc.sweep is not None
            else list(sc.snr_db)
        )
        for snr_db in snrs:
            cfg = sc.system_at(sweep_value, snr_db)
            sums = np.array(
                [rates_from_powers(powers, cfg.p, cfg.k).sum_rate for powers, _ in kept]
            )
            mean = float(np.mean(sums)) if len(sums) else float("nan")
            stderr = (
                float(np.std(sums, ddof=1) / math.sqrt(len(sums))) if len(sums) > 1 else 0.0
            )
            t_rate, t_loss, t_net = _theory_columns(sc, cfg)
            rows.append(
                ResultRow(
                    scenario_id=sc.scenario_id,
                    structure=sc.structure,
                    channel=sc.channel.model,
                    codebook=sc.codebook,
                    precoder=sc.precoder,
                    m=cfg.m,
                    k=cfg.k,
                    b1=None if sc.structure == DIGITAL else cfg.b1,
                    b2=cfg.b2,
                    snr_db=float(snr_db),
                    trials=sc.trials,
                    mean_sum_rate=mean,
                    stderr_sum_rate=stderr,
                    mean_user_rate=mean / cfg.k,
                    theory_rate=t_rate,
                    theory_loss_bound=t_loss,
                    theory_net_rate=t_net,
                    degenerate_count=degenerate_count,
                )
            )
    if flagged:
        detail = ", ".join(f"sweep={v!r}: {c}/{sc.trials}" for v, c in flagged)
        raise DegenerateTrialsExceeded(
            f"degenerate trials exceeded {DEGENERATE_LIMIT:.1%} in {detail}"
        )
    return rows


def fully_digital_baseline(h, p, k) -> LinkResult:
    """ZF over the raw channel with unit-norm per-user precoders."""
    if isinstance(h, ChannelMatrix):
        h = h.h
    h = np.asarray(h)
    powers, _ = _digital_powers(h)
    result = rates_from_powers(powers, p, k)
    result.radiated_fraction = 1.0
    return result


# ---------------------------------------------------------------- config i/o


def _require_keys(obj, allowed, where):
    unknown = set(obj) - set(allowed)
    if unknown:
        raise ConfigError(f"unknown {where} keys: {sorted(unknown)}")


def _parse_quant_bits(value, name):
    if value is None or value == "ideal":
        return None
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"{name} must be an integer or \"ideal\"/null, got {value!r}")
    return value


def _parse_channel(obj):
    if obj is None or obj == RAYLEIGH:
        return ChannelSpec()
    if isinstance(obj, dict):
        _require_keys(obj, ("model", "l", "d_over_lambda"), "channel")
        model = obj.get("model")
        if model == RAYLEIGH:
            return ChannelSpec()
        if model == MMWAVE:
            return ChannelSpec(
                MMWAVE,
                int(obj.get("l", DEFAULT_PATHS)),
                float(obj.get("d_over_lambda", DEFAULT_SPACING)),
            )
    raise ConfigError(f"channel must be \"rayleigh\" or an mmwave object, got {obj!r}")


def scenario_from_dict(obj) -> ScenarioConfig:
    if not isinstance(obj, dict):
        raise ConfigError("scenario config must be a JSON object")
    _require_keys(
        obj,
        (
            "system",
            "channel",
            "codebook",
            "precoder",
            "snr_db",
            "sweep",
            "trials",
            "master_seed",
            "scenario_id",
            "fixed_codebook",
        ),
        "scenario",
    )
    system = obj.get("system")
    if not isinstance(system, dict):
        raise ConfigError("system must be an object with m, k, structure")
    _require_keys(system, ("m", "k", "b1", "b2", "structure"), "system")
    sweep = obj.get("sweep")
    if sweep is not None:
        _require_keys(sweep, ("parameter", "values"), "sweep")
        sweep = Sweep(sweep["parameter"], tuple(sweep["values"]))
    try:
        return ScenarioConfig(
            m=int(system["m"]),
            k=int(system["k"]),
            structure=system.get("structure", SUB),
            snr_db=tuple(obj.get("snr_db", ())),
            b1=_parse_quant_bits(system.get("b1"), "b1"),
            b2=_parse_quant_bits(system.get("b2"), "b2"),
            channel=_parse_channel(obj.get("channel")),
            codebook=obj.get("codebook", PERFECT_CB),
            precoder=obj.get("precoder", "zf"),
            sweep=sweep,
            trials=int(obj.get("trials", 2000)),
            master_seed=int(obj.get("master_seed", 0)),
            scenario_id=str(obj.get("scenario_id", "scenario")),
            fixed_codebook=bool(obj.get("fixed_codebook", False)),
        )
    except KeyError as exc:
        raise ConfigError(f"missing required config key {exc}") from exc


def scenario_from_json(path) -> ScenarioConfig:
    with open(path, encoding="utf-8") as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"invalid JSON in {path}: {exc}") from exc
    return scenario_from_dict(obj)


# ------------------------------------------------------------------- csv out


def _fmt(value):
    if value is None:
        return ""
    if isinstance(value, float):
        if math.isnan(value):
            return "nan"
        return f"{value:.9g}"
    return str(value)


def _render_row(row: ResultRow):
    out = []
    for name in CSV_COLUMNS:
        value = getattr(row, name)
        if name == "b1" and value is None and row.structure != DIGITAL:
            out.append("ideal")
        else:
            out.append(_fmt(value))
    return out


def rows_to_csv(rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for row in rows:
        writer.writerow(_render_row(row))
    return buf.getvalue()


def write_csv(rows, path):
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(rows_to_csv(rows))
