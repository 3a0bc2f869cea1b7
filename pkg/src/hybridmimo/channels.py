"""System configuration, reproducible RNG streams, and channel generators."""

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, InvalidPathCount

SUB = "sub"
FULL = "full"
STRUCTURES = (SUB, FULL)

# defaults for the geometric mmWave model
DEFAULT_PATHS = 10
DEFAULT_SPACING = 0.5


@dataclass(frozen=True)
class SystemConfig:
    """Dimensions, power and quantization resolutions of one operating point.

    ``p`` is the total transmit power on a linear scale; with unit noise
    power it doubles as the SNR.  ``b1``/``b2`` are quantization bit
    counts; ``None`` means unquantized (ideal phases / perfect feedback).
    """

    m: int
    k: int
    p: float
    b1: int | None = None
    b2: int | None = None
    structure: str = SUB

    def __post_init__(self):
        if self.k < 1:
            raise ConfigError(f"k must be >= 1, got {self.k}")
        if self.m < self.k:
            raise ConfigError(f"m must be >= k, got m={self.m} k={self.k}")
        if not self.p > 0:
            raise ConfigError(f"p must be positive, got {self.p}")
        if self.structure not in STRUCTURES:
            raise ConfigError(f"structure must be one of {STRUCTURES}")
        if self.structure == SUB and self.m % self.k != 0:
            raise ConfigError(f"sub-connected requires k | m, got m={self.m} k={self.k}")
        if self.b1 is not None and self.b1 < 1:
            raise ConfigError(f"b1 must be >= 1 or None, got {self.b1}")
        if self.b2 is not None and self.b2 < 1:
            raise ConfigError(f"b2 must be >= 1 or None, got {self.b2}")

    @property
    def n(self):
        """Antennas per RF chain in the sub-connected structure."""
        return self.m // self.k


@dataclass(frozen=True)
class Rng:
    """Counter-style stream addressing on top of numpy's SeedSequence.

    The same (master_seed, stream_id, subkey) always reproduces the same
    draws, independent of execution order or worker count.
    """

    master_seed: int
    stream_id: int = 0

    def generator(self, *subkey: int) -> np.random.Generator:
        seq = np.random.SeedSequence(
            entropy=self.master_seed, spawn_key=(self.stream_id, *subkey)
        )
        return np.random.default_rng(seq)


def _as_generator(rng) -> np.random.Generator:
    if isinstance(rng, Rng):
        return rng.generator()
    if isinstance(rng, np.random.Generator):
        return rng
    raise ConfigError(f"rng must be Rng or numpy Generator, got {type(rng)!r}")


@dataclass
class ChannelMatrix:
    """M x K complex channel, one column per user."""

    h: np.ndarray
    model: str  # "rayleigh" | "mmwave"


def complex_gaussian(gen, shape, scale=1.0):
    """CN(0, scale^2) entries; real and imaginary parts drawn back to back.

    Uses numpy's ziggurat normal sampler; the draw order (full real block,
    then full imaginary block) is part of the reproducibility contract.
    """
    re = gen.standard_normal(shape)
    im = gen.standard_normal(shape)
    return (scale / math.sqrt(2.0)) * (re + 1j * im)


def rayleigh_channel(cfg: SystemConfig, rng) -> ChannelMatrix:
    """i.i.d. CN(0, 1) channel matrix."""
    gen = _as_generator(rng)
    return ChannelMatrix(complex_gaussian(gen, (cfg.m, cfg.k)), "rayleigh")


def rayleigh_batch(cfg: SystemConfig, count, gen) -> np.ndarray:
    """(count, M, K) stack of i.i.d. CN(0, 1) channels from one generator."""
    return complex_gaussian(gen, (count, cfg.m, cfg.k))


def ula_response(m, phi, d_over_lambda=DEFAULT_SPACING):
    """Unit-norm uniform-linear-array steering vector for azimuth phi."""
    if m < 1:
        raise ConfigError(f"m must be >= 1, got {m}")
    idx = np.arange(m)
    return np.exp(1j * 2.0 * np.pi * d_over_lambda * math.sin(phi) * idx) / math.sqrt(m)


def mmwave_channel(
    cfg: SystemConfig,
    rng,
    paths=DEFAULT_PATHS,
    d_over_lambda=DEFAULT_SPACING,
) -> ChannelMatrix:
    """Geometric multipath channel over a ULA.

    Each user sees ``paths`` planar wavefronts with CN(0,1) gains and
    uniform departure angles; columns are scaled so E||h_k||^2 = M.  Per
    user the angles are drawn first, then the gains.
    """
    if paths < 1:
        raise InvalidPathCount(f"paths must be >= 1, got {paths}")
    gen = _as_generator(rng)
    m, k = cfg.m, cfg.k
    h = np.empty((m, k), dtype=np.complex128)
    idx = np.arange(m)
    scale = math.sqrt(m / paths)
    for user in range(k):
        phi = gen.uniform(0.0, 2.0 * np.pi, paths)
        alpha = complex_gaussian(gen, paths)
        steer = np.exp(1j * 2.0 * np.pi * d_over_lambda * np.outer(idx, np.sin(phi)))
        h[:, user] = scale / math.sqrt(m) * (steer @ alpha.conj())
    return ChannelMatrix(h, "mmwave")
