"""Find all solutions of phi0(y)/phi1(y) = r on the scan support.

The level equation is solved in log space: g(y) = log-ratio(y) - log r.
A uniform scan locates every strict sign change of g; each bracket is
then refined by bisection. Bisection is deliberate: it cannot diverge on
a sign-changing bracket and needs no derivative, and speed is irrelevant
at these problem sizes.

Scanning is resolution-bounded: crossings closer together than the scan
step can be missed. For the smooth ratio families this package targets
(Gaussian pairs have at most two crossings) the default 4096-point scan
leaves a wide safety margin.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .density import ChannelSpec, log_likelihood_ratio

DEFAULT_N_SCAN = 4096
DEFAULT_TOL = 1e-10

# Stand-in magnitude for +/- infinite log-ratios at scan points; only the
# sign matters for bracketing.
LOG_SENTINEL = 1e12


@dataclass(frozen=True)
class Bracket:
    """An interval with a sign change of g, or a zero-width exact hit."""

    lo: float
    hi: float
    g_lo: float
    g_hi: float

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError("bracket needs lo <= hi")
        if self.lo < self.hi and not self.g_lo * self.g_hi < 0.0:
            raise ValueError("non-degenerate bracket needs a strict sign change")

    @property
    def degenerate(self) -> bool:
        return self.lo == self.hi


def _level_values(spec: ChannelSpec, ys, r: float):
    g = np.atleast_1d(log_likelihood_ratio(spec, ys))
    g = np.clip(g, -LOG_SENTINEL, LOG_SENTINEL)
    return g - math.log(r)


def scan_brackets(spec: ChannelSpec, r: float, n_scan: int = DEFAULT_N_SCAN) -> list[Bracket]:
    """Locate sign changes of log-ratio - log r on a uniform grid.

    Returns one bracket per strict sign change, in increasing order.
    Grid points where g is exactly zero with opposite signs on both
    sides come back as zero-width degenerate brackets; zeros that the
    sign merely touches (tangencies) produce no bracket, because a touch
    point does not change which set a neighborhood belongs to.
    """
    if not r > 0.0:
        raise ValueError(f"ratio level must be > 0, got {r}")
    if n_scan < 64:
        raise ValueError(f"n_scan must be >= 64, got {n_scan}")
    lo, hi = spec.support
    ys = np.linspace(lo, hi, n_scan + 1)
    g = _level_values(spec, ys, r)
    signs = np.sign(g)

    nonzero = np.nonzero(signs)[0]
    if nonzero.size < 2:
        return []
    s = signs[nonzero]
    flips = np.nonzero(s[:-1] * s[1:] < 0)[0]  # same sign across zeros = tangency
    brackets: list[Bracket] = []
    for k in flips:
        a, b = int(nonzero[k]), int(nonzero[k + 1])
        if b == a + 1:
            brackets.append(Bracket(float(ys[a]), float(ys[b]), float(g[a]), float(g[b])))
        else:
            # a run of exact zeros flanked by opposite signs; report its
            # middle grid point as the crossing
            mid = (a + b) // 2
            brackets.append(Bracket(float(ys[mid]), float(ys[mid]), 0.0, 0.0))
    return brackets


def _bisect(spec: ChannelSpec, bracket: Bracket, r: float, tol: float) -> float:
    log_r = math.log(r)
    lo, hi, g_lo = bracket.lo, bracket.hi, bracket.g_lo
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        g_mid = min(max(log_likelihood_ratio(spec, mid), -LOG_SENTINEL), LOG_SENTINEL) - log_r
        if g_mid == 0.0:
            return mid
        if g_lo * g_mid < 0.0:
            hi = mid
        else:
            lo, g_lo = mid, g_mid
    return 0.5 * (lo + hi)


def solve_ratio_equation(
    spec: ChannelSpec,
    r: float,
    tol: float = DEFAULT_TOL,
    n_scan: int = DEFAULT_N_SCAN,
) -> list[float]:
    """All roots of phi0(y)/phi1(y) = r, strictly increasing.

    Every bracket from the scan is refined by bisection until its width
    falls below `tol`. Returns an empty list when the ratio never
    reaches the level.
    """
    if not tol > 0.0:
        raise ValueError(f"tol must be > 0, got {tol}")
    roots = []
    for bracket in scan_brackets(spec, r, n_scan):
        if bracket.degenerate:
            roots.append(bracket.lo)
        else:
            roots.append(_bisect(spec, bracket, r, tol))
    return roots
