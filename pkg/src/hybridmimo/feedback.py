"""Effective channels, feedback codebooks, and quantization distortion."""

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .analog import AnalogPrecoder, compensating_phases, sub_support_mask
from .channels import SUB, ChannelMatrix, SystemConfig, complex_gaussian, rayleigh_batch
from .errors import ConfigError, DimensionMismatch, ZeroVector
from .linalg import psd_sqrt

RVQ = "rvq"
CORR = "corr"

ZERO_NORM = 1e-14


@dataclass
class Codebook:
    """2**b2 unit-norm quantization vectors, one per row."""

    vectors: np.ndarray
    kind: str  # RVQ | CORR
    shaping: np.ndarray | None = None


@dataclass
class CorrelationMatrix:
    """K x K Hermitian PSD correlation of one user's effective channel."""

    r: np.ndarray
    source: str  # "theoretical" | "empirical"


def effective_channels(h, a: AnalogPrecoder) -> np.ndarray:
    """K x K effective channel matrix G with columns g_k = A^H h_k."""
    if isinstance(h, ChannelMatrix):
        h = h.h
    h = np.asarray(h)
    if h.shape[0] != a.a.shape[0]:
        raise DimensionMismatch(f"channel rows {h.shape[0]} != precoder rows {a.a.shape[0]}")
    return a.a.conj().T @ h


def phase_mean_gain(b1):
    """Mean of cos(phase error) after b1-bit quantization: sinc(pi/2**b1)."""
    if b1 is None:
        return 1.0
    delta = math.pi / (1 << b1)
    return math.sin(delta) / delta


def theoretical_correlation(cfg: SystemConfig, user_k: int) -> CorrelationMatrix:
    """Closed-form (diagonal) correlation of user k's effective channel.

    Exact at any M for i.i.d. Rayleigh channels: the diagonal carries the
    aligned-gain power on coordinate k and the residual 1/N (sub) or
    1/(M K) (full) elsewhere; off-diagonal correlations vanish.
    """
    if not 0 <= user_k < cfg.k:
        raise ConfigError(f"user_k must be in [0, {cfg.k}), got {user_k}")
    s2 = phase_mean_gain(cfg.b1) ** 2
    quarter_pi_s2 = math.pi / 4.0 * s2
    if cfg.structure == SUB:
        off = 1.0 / cfg.n
        peak = quarter_pi_s2 + (1.0 - quarter_pi_s2) / cfg.n
    else:
        off = 1.0 / (cfg.m * cfg.k)
        peak = quarter_pi_s2 / cfg.k + (1.0 - quarter_pi_s2) / (cfg.m * cfg.k)
    d = np.full(cfg.k, off)
    d[user_k] = peak
    return CorrelationMatrix(np.diag(d).astype(np.complex128), "theoretical")


def effective_channel_batch(h_batch, cfg: SystemConfig) -> np.ndarray:
    """(T, K, K) effective channels for a stack of channel matrices."""
    h_batch = np.asarray(h_batch)
    phases = compensating_phases(h_batch, cfg.b1)
    if cfg.structure == SUB:
        aconj = sub_support_mask(cfg.m, cfg.k) * np.exp(-1j * phases) / cfg.n
    else:
        aconj = np.exp(-1j * phases) / (cfg.m * math.sqrt(cfg.k))
    return np.einsum("tmi,tmk->tik", aconj, h_batch)


def effective_channel_samples(cfg: SystemConfig, count, gen, chunk=4096):
    """Yield (c, K, K) batches of effective channels over Rayleigh fading."""
    done = 0
    while done < count:
        c = min(chunk, count - done)
        yield effective_channel_batch(rayleigh_batch(cfg, c, gen), cfg)
        done += c


def empirical_correlation(cfg: SystemConfig, user_k: int, count, gen, chunk=4096):
    """Sample estimate of E[g_k g_k^H]; the EmpiricalShaping variant."""
    acc = np.zeros((cfg.k, cfg.k), dtype=np.complex128)
    for g in effective_channel_samples(cfg, count, gen, chunk):
        gk = g[:, :, user_k]
        acc += np.einsum("ti,tj->ij", gk, gk.conj())
    r = acc / count
    return CorrelationMatrix(0.5 * (r + r.conj().T), "empirical")


def _raw_vectors(k, b2, gen):
    if b2 < 1:
        raise ConfigError(f"b2 must be >= 1, got {b2}")
    return complex_gaussian(gen, (1 << b2, k))


def rvq_codebook(k, b2, rng) -> Codebook:
    """Isotropic random codebook: normalized i.i.d. Gaussian vectors."""
    gen = rng.generator() if hasattr(rng, "generator") else rng
    v = _raw_vectors(k, b2, gen)
    v /= np.linalg.norm(v, axis=1, keepdims=True)
    return Codebook(v, RVQ)


def corr_codebook(corr, b2, rng) -> Codebook:
    """Correlation-shaped codebook: rows R^(1/2) v / ||R^(1/2) v||.

    With identity shaping this reproduces rvq_codebook bit for bit under
    the same rng stream.
    """
    r = corr.r if isinstance(corr, CorrelationMatrix) else np.asarray(corr)
    gen = rng.generator() if hasattr(rng, "generator") else rng
    root = psd_sqrt(r)
    v = _raw_vectors(r.shape[0], b2, gen)
    diag = np.diagonal(root)
    if np.count_nonzero(root - np.diag(diag)) == 0:
        v = v * diag.real
    else:
        v = v @ root.T
    norms = np.linalg.norm(v, axis=1, keepdims=True)
    if norms.min() < ZERO_NORM:
        raise ZeroVector("shaping matrix annihilated a codebook vector")
    v /= norms
    return Codebook(v, CORR, shaping=r)


def select_codeword(g, cb: Codebook):
    """(index, codeword) maximizing |g^H c|; first maximum wins."""
    g = np.asarray(g, dtype=np.complex128).reshape(-1)
    if np.linalg.norm(g) < ZERO_NORM:
        raise ZeroVector("effective channel has zero norm")
    idx = _kernels.best_match(cb.vectors, g)
    return idx, cb.vectors[idx]


def distortion(g, c):
    """Quantization error sin^2 between g and the unit codeword c."""
    g = np.asarray(g, dtype=np.complex128).reshape(-1)
    nrm = np.linalg.norm(g)
    if nrm < ZERO_NORM:
        raise ZeroVector("effective channel has zero norm")
    val = 1.0 - abs(np.vdot(g / nrm, c)) ** 2
    return min(max(val, 0.0), 1.0)


def quantize_feedback(g_all, codebooks):
    """Stack selected codewords into the fed-back K x K matrix G_hat."""
    cols = []
    for k, cb in enumerate(codebooks):
        _, c = select_codeword(g_all[:, k], cb)
        cols.append(c)
    return np.stack(cols, axis=1)
