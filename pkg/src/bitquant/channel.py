"""The 2x2 channel induced by a ratio level, and its mutual information.

A ratio level r splits the line into the region where phi0/phi1 > r
(quantized to z=0) and its complement (z=1). The induced discrete
channel is fully described by its diagonal entries

    a11 = P(Z=0 | X=0)   and   a22 = P(Z=1 | X=1).

Both are computed as CDF differences over the segments cut by the ratio
crossings, never by quadrature of the pdf, so Gaussian cases are exact
to machine precision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .density import ChannelSpec, log_likelihood_ratio
from .errors import MembershipAmbiguous
from .rootfind import DEFAULT_N_SCAN, DEFAULT_TOL, solve_ratio_equation

# midpoint ratios closer to the level than this signal a tangency that
# slipped through the scan
AMBIGUITY_EPS = 1e-12


@dataclass(frozen=True)
class ThresholdVector:
    """Sorted cut points plus the z=0 membership mask of each segment.

    `segment_maps_to_zero[i]` is True iff the i-th of the n+1 segments
    lies in the region quantized to 0; adjacent segments always carry
    opposite values.
    """

    thresholds: tuple[float, ...]
    segment_maps_to_zero: tuple[bool, ...]

    def __post_init__(self):
        t = self.thresholds
        m = self.segment_maps_to_zero
        if len(m) != len(t) + 1:
            raise ValueError("mask must have one more entry than thresholds")
        if any(a >= b for a, b in zip(t[:-1], t[1:])):
            raise ValueError("thresholds must be strictly increasing")
        if any(a == b for a, b in zip(m[:-1], m[1:])):
            raise ValueError("adjacent segments must alternate")


@dataclass(frozen=True)
class ChannelMatrix:
    """Diagonal entries of the induced binary channel."""

    a11: float
    a22: float

    def __post_init__(self):
        for name, v in (("a11", self.a11), ("a22", self.a22)):
            if not -1e-12 <= v <= 1.0 + 1e-12:
                raise ValueError(f"{name} must be in [0, 1], got {v}")
        object.__setattr__(self, "a11", min(max(self.a11, 0.0), 1.0))
        object.__setattr__(self, "a22", min(max(self.a22, 0.0), 1.0))


@dataclass(frozen=True)
class InputDistribution:
    """Input mass on bit 0; p1 = 1 - p0 is implied."""

    p0: float

    def __post_init__(self):
        if not 0.0 <= self.p0 <= 1.0:
            raise ValueError(f"p0 must be in [0, 1], got {self.p0}")

    @property
    def p1(self) -> float:
        return 1.0 - self.p0


def segment_membership(spec: ChannelSpec, roots: list[float], r: float) -> ThresholdVector:
    """Decide which segments lie in the ratio-above-level region.

    Membership is determined by sampling the log-ratio inside each
    segment (at the segment midpoint, or at the support endpoint for the
    two unbounded segments) rather than by assuming any fixed pattern.

    Raises MembershipAmbiguous when a sampled ratio is within 1e-12 of
    the level itself, or when the sampled mask fails to alternate; the
    caller retries with a slightly perturbed level.
    """
    if not r > 0.0:
        raise ValueError(f"ratio level must be > 0, got {r}")
    lo, hi = spec.support
    bounds = [lo] + list(roots) + [hi]
    n_seg = len(roots) + 1
    log_r = math.log(r)

    probes = []
    for i in range(n_seg):
        if n_seg == 1:
            probes.append(0.5 * (lo + hi))
        elif i == 0:
            probes.append(lo)
        elif i == n_seg - 1:
            probes.append(hi)
        else:
            probes.append(0.5 * (bounds[i] + bounds[i + 1]))

    llr = np.atleast_1d(log_likelihood_ratio(spec, np.asarray(probes)))
    mask = []
    for i, d in enumerate(llr - log_r):
        if abs(d) < 1.0 and r * abs(math.expm1(float(d))) < AMBIGUITY_EPS:
            raise MembershipAmbiguous(
                f"segment {i} probe ratio is within {AMBIGUITY_EPS} of level {r}"
            )
        mask.append(bool(d > 0.0))
    if any(a == b for a, b in zip(mask[:-1], mask[1:])):
        raise MembershipAmbiguous(f"sampled mask {mask} does not alternate at level {r}")
    return ThresholdVector(tuple(float(x) for x in roots), tuple(mask))


def matrix_from_threshold_vector(spec: ChannelSpec, tv: ThresholdVector) -> ChannelMatrix:
    """CDF-difference integration of phi0 over z=0 segments, phi1 over z=1."""
    edges = np.concatenate([[-np.inf], np.asarray(tv.thresholds), [np.inf]])
    f0 = np.concatenate([[0.0], spec.phi0.cdf(edges[1:-1]) if len(tv.thresholds) else [], [1.0]])
    f1 = np.concatenate([[0.0], spec.phi1.cdf(edges[1:-1]) if len(tv.thresholds) else [], [1.0]])
    d0 = np.diff(f0)
    d1 = np.diff(f1)
    mask = np.asarray(tv.segment_maps_to_zero)
    a11 = float(np.sum(d0[mask]))
    a22 = float(np.sum(d1[~mask]))
    return ChannelMatrix(a11, a22)


def channel_matrix_from_r(
    spec: ChannelSpec,
    r: float,
    tol: float = DEFAULT_TOL,
    n_scan: int = DEFAULT_N_SCAN,
) -> tuple[ChannelMatrix, ThresholdVector]:
    """Channel matrix induced by quantizing at ratio level r."""
    roots = solve_ratio_equation(spec, r, tol=tol, n_scan=n_scan)
    tv = segment_membership(spec, roots, r)
    return matrix_from_threshold_vector(spec, tv), tv


def binary_entropy(w):
    """Binary entropy in bits with the 0 log 0 = 0 convention; vectorized."""
    w = np.asarray(w, dtype=float)
    out = np.zeros_like(w)
    inside = (w > 0.0) & (w < 1.0)
    v = w[inside]
    out[inside] = -(v * np.log2(v) + (1.0 - v) * np.log2(1.0 - v))
    return float(out) if out.ndim == 0 else out


def mutual_information(p: InputDistribution, a: ChannelMatrix) -> float:
    """I(X; Z) in bits for input mass p over the binary channel a."""
    q0 = p.p0 * a.a11 + p.p1 * (1.0 - a.a22)
    value = (
        binary_entropy(q0)
        - p.p0 * binary_entropy(a.a11)
        - p.p1 * binary_entropy(a.a22)
    )
    return max(float(value), 0.0)
