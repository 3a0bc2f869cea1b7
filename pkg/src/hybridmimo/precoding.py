"""ZF and MRT digital precoders with the hybrid power normalization."""

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, ZeroVector
from .linalg import gram_inverse

PERFECT = "perfect"
QUANTIZED = "quantized"

ZERO_NORM = 1e-14


@dataclass
class DigitalPrecoder:
    """K x K digital precoder; every column satisfies ||F w_k|| = 1."""

    w: np.ndarray
    basis: str  # PERFECT | QUANTIZED


def _f_norms(f_hat, u):
    if f_hat.shape[1] != u.shape[0]:
        raise DimensionMismatch(
            f"phase matrix columns {f_hat.shape[1]} != precoder rows {u.shape[0]}"
        )
    return np.linalg.norm(f_hat @ u, axis=0)


def zf_precoder(g_hat, f_hat, basis=QUANTIZED) -> DigitalPrecoder:
    """Zero-forcing on the fed-back channels.

    Columns of G_hat (G_hat^H G_hat)^{-1}, each scaled so the radiated
    phase-network output F w_k has unit norm.  Raises SingularMatrix for
    degenerate feedback; the caller flags the trial.
    """
    g_hat = np.asarray(g_hat, dtype=np.complex128)
    u = g_hat @ gram_inverse(g_hat)
    norms = _f_norms(f_hat, u)
    if norms.min() < ZERO_NORM:
        raise ZeroVector("ZF column vanished under the phase network")
    return DigitalPrecoder(u / norms, basis)


def mrt_precoder(g_hat, f_hat, basis=QUANTIZED) -> DigitalPrecoder:
    """Maximum ratio transmission: columns parallel to the fed-back channels."""
    g_hat = np.asarray(g_hat, dtype=np.complex128)
    if np.linalg.norm(g_hat, axis=0).min() < ZERO_NORM:
        raise ZeroVector("fed-back channel has zero norm")
    norms = _f_norms(f_hat, g_hat)
    if norms.min() < ZERO_NORM:
        raise ZeroVector("MRT column vanished under the phase network")
    return DigitalPrecoder(g_hat / norms, basis)
