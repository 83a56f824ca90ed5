"""Ground-truth machinery independent of the ratio-level pipeline.

`brute_force` maximizes the mutual information jointly over explicit
threshold placements (all sorted k-subsets of a uniform grid), both
membership parities, and a uniform grid of input masses. Its channel
matrices come from the same exact CDF differences as the analytic
pipeline, so grid placement is its only approximation; that makes it a
true arbiter for the level-set search. Cost is combinatorial and meant
for desk-scale instances only.

`mc_mutual_information` validates any quantizer by straight simulation:
draw inputs, pass them through the channel, quantize, and compute the
plug-in mutual information of the empirical joint distribution.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numba import njit, prange

from .channel import InputDistribution, ThresholdVector
from .density import ChannelSpec

_INV_LN2 = 1.0 / math.log(2.0)


@dataclass(frozen=True)
class OracleResult:
    best_thresholds: tuple[float, ...]
    best_mask: tuple[bool, ...]
    best_p0: float
    best_capacity_bits: float


@dataclass(frozen=True)
class McEstimate:
    i_hat_bits: float
    std_error_bits: float
    n_samples: int
    seed: int


@njit(cache=True, inline="always")
def _h2(w):
    if w <= 0.0 or w >= 1.0:
        return 0.0
    return -(w * math.log(w) + (1.0 - w) * math.log(1.0 - w)) * _INV_LN2


@njit(cache=True, inline="always")
def _best_p(a11, a22, p_grid):
    """Max of I(p, A) over the input grid; first grid point wins ties."""
    h1 = _h2(a11)
    h2 = _h2(a22)
    best = -1.0
    best_p0 = 0.0
    for k in range(p_grid.shape[0]):
        p0 = p_grid[k]
        q0 = p0 * a11 + (1.0 - p0) * (1.0 - a22)
        val = _h2(q0) - p0 * h1 - (1.0 - p0) * h2
        if val > best:
            best = val
            best_p0 = p0
    return best, best_p0


@njit(cache=True)
def _best_singles(f0, f1, p_grid):
    n = f0.shape[0]
    cap = np.full(n, -1.0)
    p0s = np.zeros(n)
    par = np.zeros(n, dtype=np.int8)
    for i in range(n):
        for parity in range(2):
            if parity == 0:  # z=0 region is (-inf, h)
                a11 = f0[i]
                a22 = 1.0 - f1[i]
            else:
                a11 = 1.0 - f0[i]
                a22 = f1[i]
            val, p0 = _best_p(a11, a22, p_grid)
            if val > cap[i]:
                cap[i] = val
                p0s[i] = p0
                par[i] = parity
    return cap, p0s, par


@njit(cache=True, parallel=True)
def _best_pairs(f0, f1, p_grid):
    n = f0.shape[0]
    cap = np.full(n, -1.0)
    p0s = np.zeros(n)
    js = np.zeros(n, dtype=np.int64)
    par = np.zeros(n, dtype=np.int8)
    for i in prange(n - 1):
        for j in range(i + 1, n):
            d0 = f0[j] - f0[i]
            d1 = f1[j] - f1[i]
            for parity in range(2):
                if parity == 0:  # z=0 region is the two outer segments
                    a11 = 1.0 - d0
                    a22 = d1
                else:
                    a11 = d0
                    a22 = 1.0 - d1
                val, p0 = _best_p(a11, a22, p_grid)
                if val > cap[i]:
                    cap[i] = val
                    p0s[i] = p0
                    js[i] = j
                    par[i] = parity
    return cap, p0s, js, par


@njit(cache=True, parallel=True)
def _best_triples(f0, f1, p_grid):
    n = f0.shape[0]
    cap = np.full(n, -1.0)
    p0s = np.zeros(n)
    js = np.zeros(n, dtype=np.int64)
    ks = np.zeros(n, dtype=np.int64)
    par = np.zeros(n, dtype=np.int8)
    for i in prange(n - 2):
        for j in range(i + 1, n - 1):
            for k in range(j + 1, n):
                for parity in range(2):
                    if parity == 0:  # mask (T, F, T, F)
                        a11 = f0[i] + (f0[k] - f0[j])
                        a22 = (f1[j] - f1[i]) + (1.0 - f1[k])
                    else:  # mask (F, T, F, T)
                        a11 = (f0[j] - f0[i]) + (1.0 - f0[k])
                        a22 = f1[i] + (f1[k] - f1[j])
                    val, p0 = _best_p(a11, a22, p_grid)
                    if val > cap[i]:
                        cap[i] = val
                        p0s[i] = p0
                        js[i] = j
                        ks[i] = k
                        par[i] = parity
    return cap, p0s, js, ks, par


def _alternating_mask(n_segments: int, parity: int) -> tuple[bool, ...]:
    return tuple((s % 2 == 0) if parity == 0 else (s % 2 == 1) for s in range(n_segments))


def brute_force(
    spec: ChannelSpec,
    max_thresholds: int = 2,
    grid_points: int = 2001,
    p_grid_points: int = 201,
) -> OracleResult:
    """Exhaustive joint maximization on uniform threshold and input grids.

    Enumerates every sorted k-subset (k <= max_thresholds) of a uniform
    grid over the scan support, both parities of the membership mask and
    every input mass on a uniform grid. The reduction is deterministic:
    on exact capacity ties the fewest thresholds win, then the smallest
    threshold tuple, then parity 0, then the smallest p0.
    """
    if max_thresholds not in (1, 2, 3):
        raise ValueError(f"max_thresholds must be 1, 2 or 3, got {max_thresholds}")
    if grid_points < 32:
        raise ValueError(f"grid_points must be >= 32, got {grid_points}")
    if p_grid_points < 11:
        raise ValueError(f"p_grid_points must be >= 11, got {p_grid_points}")

    lo, hi = spec.support
    grid = np.linspace(lo, hi, grid_points)
    f0 = np.asarray(spec.phi0.cdf(grid))
    f1 = np.asarray(spec.phi1.cdf(grid))
    p_grid = np.linspace(0.0, 1.0, p_grid_points)

    best_cap = -1.0
    best = None

    cap1, p01, par1 = _best_singles(f0, f1, p_grid)
    i = int(np.argmax(cap1))
    if cap1[i] > best_cap:
        best_cap = float(cap1[i])
        best = ((float(grid[i]),), int(par1[i]), float(p01[i]))

    if max_thresholds >= 2:
        cap2, p02, js2, par2 = _best_pairs(f0, f1, p_grid)
        i = int(np.argmax(cap2))
        if cap2[i] > best_cap:
            best_cap = float(cap2[i])
            best = ((float(grid[i]), float(grid[js2[i]])), int(par2[i]), float(p02[i]))

    if max_thresholds >= 3:
        cap3, p03, js3, ks3, par3 = _best_triples(f0, f1, p_grid)
        i = int(np.argmax(cap3))
        if cap3[i] > best_cap:
            best_cap = float(cap3[i])
            best = (
                (float(grid[i]), float(grid[js3[i]]), float(grid[ks3[i]])),
                int(par3[i]),
                float(p03[i]),
            )

    thresholds, parity, p0 = best
    return OracleResult(
        best_thresholds=thresholds,
        best_mask=_alternating_mask(len(thresholds) + 1, parity),
        best_p0=p0,
        best_capacity_bits=max(best_cap, 0.0),
    )


def mc_mutual_information(
    spec: ChannelSpec,
    tv: ThresholdVector,
    p: InputDistribution,
    n: int,
    seed: int,
) -> McEstimate:
    """Plug-in mutual information of a simulated run through the quantizer.

    Uses numpy's PCG64 generator, so the estimate is reproducible across
    platforms for a fixed seed. Inputs are drawn first, then the class-0
    outputs, then the class-1 outputs, in that fixed order. The reported
    standard error is the delta-method (influence function) estimate for
    the plug-in statistic, no bootstrap involved.
    """
    if n < 1000:
        raise ValueError(f"n must be >= 1000, got {n}")
    rng = np.random.default_rng(seed)
    x = (rng.random(n) >= p.p0).astype(np.int8)  # P(X=0) = p0
    y = np.empty(n)
    zero = x == 0
    n0 = int(np.count_nonzero(zero))
    y[zero] = spec.phi0.sample(rng, n0)
    y[~zero] = spec.phi1.sample(rng, n - n0)

    if tv.thresholds:
        seg = np.searchsorted(np.asarray(tv.thresholds), y, side="right")
    else:
        seg = np.zeros(n, dtype=np.int64)
    mask = np.asarray(tv.segment_maps_to_zero)
    z = np.where(mask[seg], 0, 1).astype(np.int8)

    joint = np.bincount(2 * x + z, minlength=4).reshape(2, 2) / n
    px = joint.sum(axis=1)
    pz = joint.sum(axis=0)
    i_hat = 0.0
    second = 0.0
    for xi in range(2):
        for zi in range(2):
            pxz = joint[xi, zi]
            if pxz > 0.0:
                t = math.log2(pxz / (px[xi] * pz[zi]))
                i_hat += pxz * t
                second += pxz * t * t
    se = math.sqrt(max(second - i_hat * i_hat, 0.0) / n)
    return McEstimate(i_hat_bits=i_hat, std_error_bits=se, n_samples=n, seed=seed)
