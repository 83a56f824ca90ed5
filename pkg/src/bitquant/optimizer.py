"""Global search for the capacity-optimal ratio level.

The search variable is the ratio level r: every level induces its full
crossing set as the threshold vector (using all crossings is at least as
good as any subset), so the joint optimization over thresholds and input
distribution collapses to a one-dimensional exhaustive sweep of the
closed-form capacity as a function of r.

`search_bounds` narrows the sweep range by solving f(r) = 1/e and
g(r) = 1/e, where f and g are the diagonal entries as functions of the
level (f non-increasing, g non-decreasing). That narrowing is a
heuristic: the claim that the optimum always satisfies f, g > 1/e fails
for strongly asymmetric channels (see RESULTS.md for a worked case), so
`solve` extends the sweep beyond the narrowed range whenever the maximum
lands on its edge, guaranteeing the global optimum is still found.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .capacity import CapacityResult, capacity_closed_form, optimal_input
from .channel import ChannelMatrix, InputDistribution, ThresholdVector, channel_matrix_from_r
from .density import ChannelSpec
from .errors import MembershipAmbiguous, NoInformativeQuantizer
from .rootfind import DEFAULT_N_SCAN, DEFAULT_TOL

INV_E = 1.0 / math.e

DEFAULT_STEP = 0.01
DEFAULT_REFINE_TOL = 1e-6
DEFAULT_BOUNDS_TOL = 1e-6

# geometric expansion cap while hunting for the 1/e crossings
_EXPANSION_CAP = 2.0**60

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class SweepPoint:
    r: float
    a11: float
    a22: float
    capacity_bits: float
    thresholds: tuple[float, ...]


@dataclass
class SolveReport:
    """Everything the solver found, plus the sweep trace and diagnostics."""

    r_star: float
    thresholds: tuple[float, ...]
    segment_maps_to_zero: tuple[bool, ...]
    matrix: ChannelMatrix
    p_star: InputDistribution
    capacity_bits: float
    bounds: tuple[float, float]
    sweep: list[SweepPoint] = field(default_factory=list)
    diagnostics: dict = field(default_factory=dict)

    @property
    def threshold_vector(self) -> ThresholdVector:
        return ThresholdVector(self.thresholds, self.segment_maps_to_zero)


def _matrix_at(spec, r, tol, n_scan):
    """Channel matrix at level r, retrying once across a tangency."""
    try:
        return channel_matrix_from_r(spec, r, tol=tol, n_scan=n_scan), r
    except MembershipAmbiguous:
        r = r * (1.0 + 1e-9)
        return channel_matrix_from_r(spec, r, tol=tol, n_scan=n_scan), r


def _geometric_bisect(eval_fn, lo, hi, tol):
    """Root of a monotone sign change on [lo, hi], to relative width tol."""
    s_lo = eval_fn(lo)
    while hi / lo - 1.0 > tol:
        mid = math.sqrt(lo * hi)
        s_mid = eval_fn(mid)
        if s_mid == 0.0:
            return mid
        if (s_lo > 0.0) == (s_mid > 0.0):
            lo, s_lo = mid, s_mid
        else:
            hi = mid
    return math.sqrt(lo * hi)


def search_bounds(
    spec: ChannelSpec,
    tol: float = DEFAULT_BOUNDS_TOL,
    n_scan: int = DEFAULT_N_SCAN,
    root_tol: float = DEFAULT_TOL,
) -> tuple[float, float]:
    """Solve f(r) = 1/e and g(r) = 1/e by monotone bisection.

    The bisection interval is found by doubling or halving from r = 1
    until the target is straddled. Channels so separable that f (or g)
    stays above 1/e for every level get a conventional padded range
    instead of an unbounded one; channels where the two crossings meet
    or cross (no level keeps both entries above 1/e) raise
    NoInformativeQuantizer.
    """
    if not tol > 0.0:
        raise ValueError(f"tol must be > 0, got {tol}")

    def f_of(r):
        (m, _), _ = _matrix_at(spec, r, root_tol, n_scan)
        return m.a11

    def g_of(r):
        (m, _), _ = _matrix_at(spec, r, root_tol, n_scan)
        return m.a22

    def crossing(value_at, fall_side):
        """Smallest bracket [lo, hi] with value > 1/e at one end.

        fall_side=+1 hunts upward for a decreasing quantity (f),
        fall_side=-1 hunts downward for an increasing one (g).
        Returns None when the quantity stays above 1/e out to the cap.
        """
        r = 1.0
        v = value_at(r)
        if v > INV_E:
            # move toward the crossing
            while v > INV_E:
                nxt = r * 2.0 if fall_side > 0 else r / 2.0
                if nxt > _EXPANSION_CAP or nxt < 1.0 / _EXPANSION_CAP:
                    return None
                r, v = nxt, value_at(nxt)
            lo, hi = (r / 2.0, r) if fall_side > 0 else (r, r * 2.0)
        else:
            # already past the crossing; back up until above 1/e
            while v <= INV_E:
                nxt = r / 2.0 if fall_side > 0 else r * 2.0
                if nxt > _EXPANSION_CAP or nxt < 1.0 / _EXPANSION_CAP:
                    raise NoInformativeQuantizer(
                        "no ratio level keeps both diagonal entries above 1/e"
                    )
                r, v = nxt, value_at(nxt)
            lo, hi = (r, r * 2.0) if fall_side > 0 else (r / 2.0, r)
        return _geometric_bisect(lambda x: value_at(x) - INV_E, lo, hi, tol)

    r_hi = crossing(f_of, +1)
    r_lo = crossing(g_of, -1)

    if r_hi is None and r_lo is None:
        # both entries stay informative at every level (separable supports)
        r_lo, r_hi = 0.5, 2.0
    elif r_hi is None:
        r_hi = max(4.0 * r_lo, 2.0)
    elif r_lo is None:
        r_lo = min(r_hi / 4.0, 0.5)

    if r_lo >= r_hi * (1.0 - 1e-12):
        raise NoInformativeQuantizer(
            f"level bounds collapsed (r_lo={r_lo!r} >= r_hi={r_hi!r})"
        )
    return r_lo, r_hi


def sweep(
    spec: ChannelSpec,
    bounds: tuple[float, float],
    step: float = DEFAULT_STEP,
    n_scan: int = DEFAULT_N_SCAN,
    root_tol: float = DEFAULT_TOL,
) -> list[SweepPoint]:
    """Evaluate the capacity at r = lo, lo+step, ..., hi.

    Points that land exactly on a tangency are recorded at a perturbed
    level r * (1 + 1e-9) instead.
    """
    lo, hi = bounds
    if not (lo > 0.0 and hi > lo):
        raise ValueError(f"bounds must satisfy 0 < lo < hi, got {bounds}")
    if not step > 0.0:
        raise ValueError(f"step must be > 0, got {step}")
    count = int(math.floor((hi - lo) / step + 1e-9)) + 1
    points = []
    for k in range(count):
        (matrix, tv), r_used = _matrix_at(spec, lo + k * step, root_tol, n_scan)
        points.append(
            SweepPoint(r_used, matrix.a11, matrix.a22, capacity_closed_form(matrix), tv.thresholds)
        )
    return points


def _capacity_at(spec, r, root_tol, n_scan):
    (matrix, _), _ = _matrix_at(spec, r, root_tol, n_scan)
    return capacity_closed_form(matrix)


def _golden_max(fn, lo, hi, tol):
    """Golden-section maximization; returns the best point seen."""
    c = hi - _GOLDEN * (hi - lo)
    d = lo + _GOLDEN * (hi - lo)
    fc, fd = fn(c), fn(d)
    while hi - lo > tol:
        if fc >= fd:
            hi, d, fd = d, c, fc
            c = hi - _GOLDEN * (hi - lo)
            fc = fn(c)
        else:
            lo, c, fc = c, d, fd
            d = lo + _GOLDEN * (hi - lo)
            fd = fn(d)
    return (c, fc) if fc >= fd else (d, fd)


def _degenerate_report(bounds) -> SolveReport:
    p = InputDistribution(0.5)
    return SolveReport(
        r_star=1.0,
        thresholds=(),
        segment_maps_to_zero=(False,),
        matrix=ChannelMatrix(0.0, 1.0),
        p_star=p,
        capacity_bits=0.0,
        bounds=bounds,
        sweep=[],
        diagnostics={"no_informative_quantizer": True},
    )


def solve(
    spec: ChannelSpec,
    step: float = DEFAULT_STEP,
    refine_tol: float = DEFAULT_REFINE_TOL,
    n_scan: int = DEFAULT_N_SCAN,
    root_tol: float = DEFAULT_TOL,
    bounds_tol: float = DEFAULT_BOUNDS_TOL,
) -> SolveReport:
    """Joint optimum over quantizer and input distribution.

    Sweeps the narrowed level range on a uniform grid (ties broken
    toward the smaller level), extends the sweep while the maximum sits
    on a range edge, then refines the winning grid cell by golden
    section down to `refine_tol` and recovers the optimal input mass.
    Channels with no informative quantizer yield a zero-capacity report
    flagged in the diagnostics.
    """
    if not (step > 0.0 and refine_tol > 0.0):
        raise ValueError("step and refine_tol must be > 0")
    try:
        one_over_e = search_bounds(spec, tol=bounds_tol, n_scan=n_scan, root_tol=root_tol)
    except NoInformativeQuantizer:
        return _degenerate_report((math.nan, math.nan))

    points = sweep(spec, one_over_e, step=step, n_scan=n_scan, root_tol=root_tol)
    extended = False
    prev_best = -1.0
    for _ in range(64):
        caps = [p.capacity_bits for p in points]
        best = int(np.argmax(caps))  # first max wins: smallest r on ties
        if extended and caps[best] - prev_best < 1e-12:
            break  # asymptote: further range buys nothing measurable
        prev_best = caps[best]
        width = min(max(points[-1].r - points[0].r, 50.0 * step), 4000.0 * step)
        if best == len(points) - 1:
            lo = points[-1].r + step
            points += sweep(spec, (lo, lo + width), step=step, n_scan=n_scan, root_tol=root_tol)
            extended = True
            continue
        if best == 0 and points[0].r > step:
            hi = points[0].r - step
            lo = max(points[0].r - width, step * 1e-3, points[0].r / 64.0)
            if hi > lo:
                points = (
                    sweep(spec, (lo, hi), step=step, n_scan=n_scan, root_tol=root_tol) + points
                )
                extended = True
                continue
        break

    caps = [p.capacity_bits for p in points]
    best = int(np.argmax(caps))
    cell_lo = points[best - 1].r if best > 0 else max(points[0].r - step, points[0].r / 2.0)
    cell_hi = points[best + 1].r if best < len(points) - 1 else points[best].r + step
    r_star, cap_star = _golden_max(
        lambda r: _capacity_at(spec, r, root_tol, n_scan), cell_lo, cell_hi, refine_tol
    )
    if caps[best] > cap_star:
        r_star, cap_star = points[best].r, caps[best]

    (matrix, tv), r_star = _matrix_at(spec, r_star, root_tol, n_scan)
    cap_star = capacity_closed_form(matrix)
    opt: CapacityResult = optimal_input(matrix)

    swept = (points[0].r, points[-1].r)
    p0 = opt.p_star.p0
    diagnostics = {
        "no_informative_quantizer": False,
        "one_over_e_level_bounds": one_over_e,
        "swept_range": swept,
        "range_extended": extended,
        "diagonal_sum_minus_one": matrix.a11 + matrix.a22 - 1.0,
        "diagonal_minus_input": (matrix.a11 - p0, matrix.a22 - (1.0 - p0)),
        "diagonal_dominates_input": bool(
            matrix.a11 >= p0 - 1e-9 and matrix.a22 >= (1.0 - p0) - 1e-9
        ),
        "output_mass": opt.q0_star,
        "output_mass_in_majani_range": bool(INV_E < opt.q0_star < 1.0 - INV_E),
        "input_mass_in_majani_range": bool(INV_E < p0 < 1.0 - INV_E),
        "one_over_e_margin": (matrix.a11 - INV_E, matrix.a22 - INV_E),
        "diagonal_above_one_over_e": bool(
            matrix.a11 > INV_E - 1e-6 and matrix.a22 > INV_E - 1e-6
        ),
    }
    return SolveReport(
        r_star=r_star,
        thresholds=tv.thresholds,
        segment_maps_to_zero=tv.segment_maps_to_zero,
        matrix=matrix,
        p_star=opt.p_star,
        capacity_bits=max(cap_star, opt.capacity_bits),
        bounds=swept,
        sweep=points,
        diagnostics=diagnostics,
    )
