"""Closed-form performance expressions for both hybrid structures.

Asymptotic (large-M) per-user rates, feedback-loss bounds for the
correlation-shaped and random codebooks, bit-budget inversions, and the
structure-crossover conditions.  All functions are pure scalar math.
"""

import math
from dataclasses import asdict, dataclass

from .channels import FULL, SUB, STRUCTURES
from .errors import ConfigError, InvalidTarget, TargetInfeasible, UnsupportedK
from .feedback import CORR, RVQ, phase_mean_gain

# sum-rate turning point of the fully-connected structure: the sum rate
# grows with K while power_factor > FULL_TREND_CONST * K^2
FULL_TREND_CONST = 3.92

LN2 = math.log(2.0)


@dataclass(frozen=True)
class PhaseErrorMoments:
    """Moments of one quantized-phase channel entry |h| e^{j err}.

    half_width: phase-error half width pi/2**b1 (0 when unquantized)
    mean_cos: E[cos err], the per-entry alignment gain
    var_real / var_imag: variances of the aligned entry's parts
    diag_gain: limit of the effective channel's diagonal entries
    """

    half_width: float
    mean_cos: float
    var_real: float
    var_imag: float
    diag_gain: float


def _check_structure(structure):
    if structure not in STRUCTURES:
        raise ConfigError(f"structure must be one of {STRUCTURES}")


def phase_error_moments(structure, k, b1) -> PhaseErrorMoments:
    _check_structure(structure)
    if k < 1:
        raise ConfigError(f"k must be >= 1, got {k}")
    s = phase_mean_gain(b1)
    delta = 0.0 if b1 is None else math.pi / (1 << b1)
    cos_d = math.cos(delta)
    var_real = 0.5 * (1.0 + s * cos_d) - math.pi / 4.0 * s * s
    var_imag = 0.5 * (1.0 - s * cos_d)
    gain = math.sqrt(math.pi) / 2.0 * s
    if structure == FULL:
        gain /= math.sqrt(k)
    return PhaseErrorMoments(delta, s, var_real, var_imag, gain)


def diag_gain(structure, k, b1) -> float:
    """Large-M limit of the effective channel's diagonal entries."""
    return phase_error_moments(structure, k, b1).diag_gain


def _power_factor(p, b1):
    """pi P / 4 * mean_cos^2; the SNR term shared by every rate formula."""
    s = phase_mean_gain(b1)
    return math.pi * p / 4.0 * s * s


def asymptotic_rate(structure, p, k, b1) -> float:
    """Per-user rate (bits/s/Hz) with perfect feedback, large M."""
    _check_structure(structure)
    if not p > 0:
        raise ConfigError(f"p must be positive, got {p}")
    denom = k if structure == SUB else k * k
    return math.log2(1.0 + _power_factor(p, b1) / denom)


@dataclass(frozen=True)
class TrendReport:
    """Behaviour of the sum rate in K (relaxed to a continuous variable)."""

    structure: str
    power_factor: float
    slope: float
    curvature: float | None
    threshold: float | None
    direction: str  # "increasing" | "decreasing"


def sumrate_trend(structure, p, k, b1) -> TrendReport:
    """Slope of K * asymptotic_rate in K.

    Sub-connected: analytic slope and curvature (curvature < 0, slope > 0
    for K > 1).  Fully-connected: the sum rate decreases with K when the
    power factor is at most FULL_TREND_CONST * K^2, else increases; the
    analytic slope is reported alongside.
    """
    _check_structure(structure)
    if not k > 1:
        raise ConfigError(f"continuous-K analysis needs k > 1, got {k}")
    xi = _power_factor(p, b1)
    if structure == SUB:
        slope = math.log2(1.0 + xi / k) - xi / ((k + xi) * LN2)
        curvature = xi / ((k + xi) * LN2) * (1.0 / (k + xi) - 1.0 / k)
        return TrendReport(structure, xi, slope, curvature, None, "increasing")
    slope = math.log2(1.0 + xi / (k * k)) - 2.0 * xi / ((k * k + xi) * LN2)
    threshold = FULL_TREND_CONST * k * k
    direction = "increasing" if xi > threshold else "decreasing"
    return TrendReport(structure, xi, slope, None, threshold, direction)


def _check_loss_args(k, m):
    if k < 2:
        raise UnsupportedK(f"loss bounds need k >= 2, got {k}")
    if m < k:
        raise ConfigError(f"m must be >= k, got m={m} k={k}")


def feedback_penalty(b2, k) -> float:
    """Distortion scale 2**(-b2 / (k-1)) of a 2**b2-word codebook."""
    return 2.0 ** (-b2 / (k - 1.0))


def loss_bound(structure, codebook_kind, p, m, k, b1, b2) -> float:
    """Large-M upper estimate of the per-user rate loss from b2-bit feedback."""
    _check_structure(structure)
    _check_loss_args(k, m)
    q = feedback_penalty(b2, k)
    if codebook_kind == CORR:
        scale = p * (k - 1.0) / m
        if structure == FULL:
            scale /= k * k
    elif codebook_kind == RVQ:
        denom = k if structure == SUB else k * k
        scale = _power_factor(p, b1) / denom
    else:
        raise ConfigError(f"codebook_kind must be {CORR!r} or {RVQ!r}")
    return math.log2(1.0 + scale * q)


def net_rate(structure, codebook_kind, p, m, k, b1, b2) -> float:
    """Rate minus loss bound: a lower estimate of the quantized-feedback rate."""
    return asymptotic_rate(structure, p, k, b1) - loss_bound(
        structure, codebook_kind, p, m, k, b1, b2
    )


def analog_bits_for_rate(structure, p, k, rate_target_arg) -> float:
    """Phase-shifter bits needed to hold the per-user rate at log2(target).

    Small-phase-error (high-b1) expansion; accurate once the answer is
    above roughly 2.5 bits, progressively optimistic below that.
    """
    _check_structure(structure)
    if k < 1:
        raise ConfigError(f"k must be >= 1, got {k}")
    zeta = 0 if structure == SUB else 1
    x = 4.0 * k ** (1 + zeta) / (math.pi * p) * (rate_target_arg - 1.0)
    if not x < 1.0:
        raise TargetInfeasible(
            f"target argument {rate_target_arg} exceeds the feasible maximum "
            f"{math.pi * p / (4.0 * k ** (1 + zeta)) + 1.0:.6g}"
        )
    return math.log2(math.pi / math.sqrt(3.0)) - 0.5 * math.log2(1.0 - x)


def feedback_bits_for_loss(structure, p_db, m, k, loss_target_arg) -> float:
    """Feedback bits keeping the correlation-codebook loss at log2(target).

    Exact inversion of the loss bound; grows by (K-1) log2(10)/10 bits per
    dB of transmit power.
    """
    _check_structure(structure)
    _check_loss_args(k, m)
    if not loss_target_arg > 1.0:
        raise InvalidTarget(f"loss target argument must exceed 1, got {loss_target_arg}")
    zeta = 0 if structure == SUB else 1
    per_user = (
        math.log2(10.0) / 10.0 * p_db
        - math.log2(m * float(k) ** (2 * zeta) / (k - 1.0))
        - math.log2(loss_target_arg - 1.0)
    )
    return (k - 1.0) * per_user


def rvq_extra_feedback_bits(structure, m, k, b1) -> float:
    """Feedback bits the random codebook needs beyond the shaped one.

    Grows as (K-1) log2 M; negative values (shaped codebook needing more
    bits) do occur at small M / large K and are reported as-is.
    """
    _check_structure(structure)
    _check_loss_args(k, m)
    zeta = 0 if structure == SUB else 1
    s2 = phase_mean_gain(b1) ** 2
    return (k - 1.0) * (
        math.log2(m) + math.log2(math.pi * s2 / (4.0 * float(k) ** (1 - zeta) * (k - 1.0)))
    )


@dataclass(frozen=True)
class CrossoverReport:
    """Which structure wins at an operating point, three equivalent ways."""

    delta_r1: float
    min_antennas: float
    max_power: float
    preferred: str


def crossover(p, m, k, b1, b2) -> CrossoverReport:
    """Net sub-connected minus fully-connected rate and its sign conditions.

    delta_r1 >= 0, m >= min_antennas and p <= max_power are algebraically
    equivalent statements of "sub-connected preferred".
    """
    if k < 2:
        raise UnsupportedK(f"crossover analysis needs k >= 2, got {k}")
    delta_r1 = net_rate(SUB, CORR, p, m, k, b1, b2) - net_rate(FULL, CORR, p, m, k, b1, b2)
    q = feedback_penalty(b2, k)
    pi_s2 = math.pi * phase_mean_gain(b1) ** 2
    min_antennas = q * (4.0 * (k * k - 1.0) / pi_s2 + (1.0 - 1.0 / k) * p)
    max_power = m / q * k / (k - 1.0) - 4.0 * k * (k + 1.0) / pi_s2
    return CrossoverReport(
        delta_r1, min_antennas, max_power, SUB if delta_r1 >= 0 else FULL
    )


def amplifier_gain_threshold(p, m, k, b1, b2) -> float:
    """Power-amplifier gain of the fully-connected structure that levels the field.

    Positive root of the quadratic equality between the two structures'
    net rates; equals 1 exactly on the crossover surface, above 1 where
    the sub-connected structure wins.
    """
    if k < 2:
        raise UnsupportedK(f"gain threshold needs k >= 2, got {k}")
    q = feedback_penalty(b2, k)
    s2 = phase_mean_gain(b1) ** 2
    sub_rate_term = math.pi * p / (4.0 * k) * s2
    sub_loss_term = p * (k - 1.0) / m * q
    full_rate_term = sub_rate_term / k
    full_loss_term = sub_loss_term / (k * k)
    quad = sub_loss_term * full_rate_term
    lin = sub_loss_term + full_rate_term
    const = sub_rate_term + full_loss_term + quad / k
    if not (quad > 0 and lin > 0 and const > 0):
        raise ConfigError("gain threshold undefined: non-positive coefficients")
    return -lin / (2.0 * quad) + math.sqrt(const / quad + lin * lin / (4.0 * quad * quad))


def _parse_b1(value):
    if value in (None, "ideal"):
        return None
    return int(value)


def evaluate(op, params) -> dict:
    """Dispatch one closed-form operation; returns a flat key/value report."""
    p = dict(params)
    try:
        if op == "diag_gain":
            out = {"diag_gain": diag_gain(p["structure"], int(p["k"]), _parse_b1(p.get("b1")))}
        elif op == "moments":
            m = phase_error_moments(p["structure"], int(p["k"]), _parse_b1(p.get("b1")))
            out = asdict(m)
        elif op == "asymptotic_rate":
            out = {
                "asymptotic_rate": asymptotic_rate(
                    p["structure"], float(p["p"]), int(p["k"]), _parse_b1(p.get("b1"))
                )
            }
        elif op == "sumrate_trend":
            rep = sumrate_trend(p["structure"], float(p["p"]), int(p["k"]), _parse_b1(p.get("b1")))
            out = {key: val for key, val in asdict(rep).items() if val is not None}
        elif op == "loss_bound":
            out = {
                "loss_bound": loss_bound(
                    p["structure"], p["codebook"], float(p["p"]), int(p["m"]),
                    int(p["k"]), _parse_b1(p.get("b1")), float(p["b2"]),
                )
            }
        elif op == "net_rate":
            out = {
                "net_rate": net_rate(
                    p["structure"], p["codebook"], float(p["p"]), int(p["m"]),
                    int(p["k"]), _parse_b1(p.get("b1")), float(p["b2"]),
                )
            }
        elif op == "analog_bits_for_rate":
            out = {
                "analog_bits": analog_bits_for_rate(
                    p["structure"], float(p["p"]), int(p["k"]), float(p["target"])
                )
            }
        elif op == "feedback_bits_for_loss":
            out = {
                "feedback_bits": feedback_bits_for_loss(
                    p["structure"], float(p["p_db"]), int(p["m"]), int(p["k"]),
                    float(p["target"]),
                )
            }
        elif op == "rvq_extra_feedback_bits":
            out = {
                "extra_bits": rvq_extra_feedback_bits(
                    p["structure"], int(p["m"]), int(p["k"]), _parse_b1(p.get("b1"))
                )
            }
        elif op == "crossover":
            rep = crossover(
                float(p["p"]), int(p["m"]), int(p["k"]), _parse_b1(p.get("b1")), float(p["b2"])
            )
            out = asdict(rep)
        elif op == "amplifier_gain_threshold":
            out = {
                "eta": amplifier_gain_threshold(
                    float(p["p"]), int(p["m"]), int(p["k"]), _parse_b1(p.get("b1")), float(p["b2"])
                )
            }
        else:
            raise ConfigError(f"unknown theory op {op!r}")
    except KeyError as exc:
        raise ConfigError(f"missing parameter {exc} for op {op!r}") from exc
    report = {"op": op}
    report.update({f"in_{key}": val for key, val in sorted(p.items())})
    report.update(out)
    return report
