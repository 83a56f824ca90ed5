"""Capacity of a fixed 2x2 channel and the input distribution achieving it.

Two independent routes to the same number guard against transcription
errors: `capacity_closed_form` evaluates the known closed form in the
diagonal entries, while `optimal_input` maximizes the mutual information
directly by bisecting its derivative in p0 (the mutual information is
concave in the input mass). The two must agree to 1e-7 on any
non-degenerate matrix.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .channel import ChannelMatrix, InputDistribution, binary_entropy, mutual_information

# |a11 + a22 - 1| below this is treated as a rank-one (zero capacity)
# channel; sits far above accumulated CDF rounding (~1e-15) and far below
# any physically meaningful asymmetry.
DEGENERACY_EPS = 1e-9

DEFAULT_TOL = 1e-12


@dataclass(frozen=True)
class CapacityResult:
    capacity_bits: float
    p_star: InputDistribution
    q0_star: float


def capacity_closed_form(a: ChannelMatrix) -> float:
    """Capacity in bits of the binary channel with diagonal (a11, a22).

    The two exponents are formed first and combined with logaddexp2 so
    precision survives when they are large and nearly cancelling.
    Degenerate matrices (a11 + a22 = 1) carry no information and return 0.
    """
    d = a.a11 + a.a22 - 1.0
    if abs(d) < DEGENERACY_EPS:
        return 0.0
    h1 = binary_entropy(a.a11)
    h2 = binary_entropy(a.a22)
    e1 = -(a.a22 * h1 + (a.a11 - 1.0) * h2) / d
    e2 = -((a.a22 - 1.0) * h1 + a.a11 * h2) / d
    return float(np.logaddexp2(e1, e2))


def _mi_slope(a: ChannelMatrix, p0: float, h1: float, h2: float) -> float:
    """d/dp0 of the mutual information at input mass p0."""
    d = a.a11 + a.a22 - 1.0
    q0 = (1.0 - a.a22) + p0 * d
    if q0 <= 0.0:
        log_term = math.inf
    elif q0 >= 1.0:
        log_term = -math.inf
    else:
        log_term = math.log2((1.0 - q0) / q0)
    return d * log_term - h1 + h2


def optimal_input(a: ChannelMatrix, tol: float = DEFAULT_TOL) -> CapacityResult:
    """Capacity-achieving input mass by bisection on the concave objective.

    The mutual information vanishes at p0 = 0 and p0 = 1 and is concave
    in between, so its derivative has exactly one sign change; bisecting
    it to width `tol` pins the maximizer. Degenerate matrices return the
    (0 bits, p0 = 0.5) convention.
    """
    if not tol > 0.0:
        raise ValueError(f"tol must be > 0, got {tol}")
    if abs(a.a11 + a.a22 - 1.0) < DEGENERACY_EPS:
        p = InputDistribution(0.5)
        return CapacityResult(0.0, p, p.p0 * a.a11 + p.p1 * (1.0 - a.a22))

    h1 = binary_entropy(a.a11)
    h2 = binary_entropy(a.a22)
    lo, hi = 0.0, 1.0
    s_lo = _mi_slope(a, lo, h1, h2)
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        s_mid = _mi_slope(a, mid, h1, h2)
        if s_mid == 0.0:
            lo = hi = mid
            break
        if (s_lo > 0.0) == (s_mid > 0.0):
            lo, s_lo = mid, s_mid
        else:
            hi = mid
    p = InputDistribution(0.5 * (lo + hi))
    return CapacityResult(
        mutual_information(p, a),
        p,
        p.p0 * a.a11 + p.p1 * (1.0 - a.a22),
    )
