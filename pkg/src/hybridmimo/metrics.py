"""Per-user SINR, spectral efficiency, and power-accounting diagnostics."""

from dataclasses import dataclass, field

import numpy as np

from .analog import AnalogPrecoder
from .channels import SystemConfig
from .errors import DimensionMismatch
from .feedback import effective_channels
from .precoding import DigitalPrecoder


@dataclass
class LinkResult:
    """Outcome of one channel realization."""

    sinr: np.ndarray = field(default_factory=lambda: np.array([]))
    rate: np.ndarray = field(default_factory=lambda: np.array([]))
    sum_rate: float = float("nan")
    radiated_fraction: float = float("nan")
    degenerate: bool = False


def degenerate_result(k) -> LinkResult:
    nan = np.full(k, np.nan)
    return LinkResult(nan, nan.copy(), float("nan"), float("nan"), True)


def link_powers(h, a: AnalogPrecoder, w: DigitalPrecoder) -> np.ndarray:
    """K x K matrix of |g_k^H w_j|^2 with the true effective channels."""
    g = effective_channels(h, a)
    if w.w.shape != g.shape:
        raise DimensionMismatch(f"precoder shape {w.w.shape} != {g.shape}")
    return np.abs(g.conj().T @ w.w) ** 2


def rates_from_powers(powers, p, k) -> LinkResult:
    """SINR_k = (P/K) S_k / ((P/K) I_k + 1) with unit noise power."""
    signal = np.diagonal(powers)
    interference = powers.sum(axis=1) - signal
    scaled = p / k
    sinr = scaled * signal / (scaled * interference + 1.0)
    rate = np.log2(1.0 + sinr)
    return LinkResult(sinr, rate, float(rate.sum()), float("nan"), False)


def sinr_per_user(h, a: AnalogPrecoder, w: DigitalPrecoder, cfg: SystemConfig) -> LinkResult:
    """Rates for one realization; W built from feedback, SINR on true G."""
    result = rates_from_powers(link_powers(h, a, w), cfg.p, cfg.k)
    result.radiated_fraction = radiated_power_fraction(a, w, cfg)
    return result


def radiated_power_fraction(a: AnalogPrecoder, w: DigitalPrecoder, cfg: SystemConfig) -> float:
    """Share of input power that survives the divider/combiner network.

    (1/K) sum_k ||A w_k||^2; equals 1/N (sub) and 1/(M K) (full) for W = I.
    """
    if a.a.shape[1] != w.w.shape[0]:
        raise DimensionMismatch(
            f"analog columns {a.a.shape[1]} != precoder rows {w.w.shape[0]}"
        )
    return float(np.linalg.norm(a.a @ w.w) ** 2 / cfg.k)
