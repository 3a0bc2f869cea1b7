"""Dissipation-aware quantized analog precoder construction."""

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .channels import SUB, ChannelMatrix, SystemConfig
from .errors import DimensionMismatch

TWO_PI = 2.0 * math.pi


@dataclass
class AnalogPrecoder:
    """Quantized analog network.

    ``a`` carries the divider/combiner dissipation scaling (entry
    magnitude 1/N sub-connected, 1/(M*sqrt(K)) fully-connected); ``f`` is
    the bare phase-shifter matrix with unit-norm columns.
    """

    a: np.ndarray
    f: np.ndarray
    structure: str
    b1: int | None


def quantize_phase(theta, b1):
    """Quantize angles onto the 2**b1-point phase-shifter grid.

    Accepts scalars or arrays; ties at half a grid step resolve to the
    smaller codebook index.
    """
    out = _kernels.quantize_phases(np.asarray(theta, dtype=np.float64), int(b1))
    if np.isscalar(theta):
        return float(np.ravel(out)[0])
    return out


def sub_support_mask(m, k):
    """(M, K) 0/1 mask of the block-diagonal sub-connected wiring."""
    n = m // k
    mask = np.zeros((m, k))
    for j in range(k):
        mask[n * j : n * (j + 1), j] = 1.0
    return mask


def compensating_phases(h, b1):
    """Per-entry phase-shifter angles that align each channel entry.

    The selected angle is the (quantized) argument of the entry, so the
    compensated entry h* e^{j phase} has phase error within half a grid
    step.  Zero entries get angle 0.
    """
    phases = np.angle(h)
    phases = np.where(phases < 0, phases + TWO_PI, phases)
    phases = np.where(h == 0, 0.0, phases)
    if b1 is not None:
        phases = _kernels.quantize_phases(phases, int(b1))
    return phases


def analog_precoder(h, cfg: SystemConfig) -> AnalogPrecoder:
    """Build the analog precoder that maximizes per-entry received power."""
    if isinstance(h, ChannelMatrix):
        h = h.h
    h = np.asarray(h)
    if h.shape != (cfg.m, cfg.k):
        raise DimensionMismatch(f"channel shape {h.shape} != ({cfg.m}, {cfg.k})")
    phases = compensating_phases(h, cfg.b1)
    if cfg.structure == SUB:
        n = cfg.n
        f = sub_support_mask(cfg.m, cfg.k) * np.exp(1j * phases) / math.sqrt(n)
        a = f / math.sqrt(n)
    else:
        f = np.exp(1j * phases) / math.sqrt(cfg.m)
        a = f / math.sqrt(cfg.m * cfg.k)
    return AnalogPrecoder(a, f, cfg.structure, cfg.b1)
