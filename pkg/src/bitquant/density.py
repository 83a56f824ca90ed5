"""Conditional densities of the channel output and their likelihood ratio.

A channel instance is a pair of probability densities on the real line:
phi0 governs the output when the input bit is 0, phi1 when it is 1.
Supported density families are a single Gaussian, a finite Gaussian
mixture, and a tabulated density (piecewise-linear between nodes).

All evaluations are pure functions; models are immutable after
construction and safe to share across threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import erfc, logsumexp

from .errors import SpecInvalid

SINGLE_GAUSSIAN = "single_gaussian"
GAUSSIAN_MIXTURE = "gaussian_mixture"
TABULATED = "tabulated"

# Beyond 12 sigma a Gaussian tail is below 1e-30 and contributes nothing
# at working precision; used for the auto-derived scan support.
TAIL_SIGMAS = 12.0

_SQRT2 = math.sqrt(2.0)
_LOG_SQRT_2PI = 0.5 * math.log(2.0 * math.pi)


@dataclass(frozen=True)
class GaussianComponent:
    """One Gaussian component: N(mean, std_dev^2) carrying `weight` mass."""

    mean: float
    std_dev: float
    weight: float = 1.0

    def __post_init__(self):
        if not (self.std_dev > 0.0):
            raise SpecInvalid(f"std_dev must be > 0, got {self.std_dev}")
        if not (0.0 < self.weight <= 1.0):
            raise SpecInvalid(f"weight must be in (0, 1], got {self.weight}")


def _as_scalar_or_array(x, scalar: bool):
    return float(x) if scalar else x


@dataclass(frozen=True)
class DensityModel:
    """A probability density on the real line with an exact or numeric CDF.

    Use the factory classmethods `gaussian`, `mixture` and `tabulated`
    rather than the raw constructor.
    """

    kind: str
    components: tuple[GaussianComponent, ...] = ()
    table_y: np.ndarray | None = field(default=None, repr=False)
    table_density: np.ndarray | None = field(default=None, repr=False)
    # cumulative masses at the table nodes, precomputed at construction
    _table_cdf: np.ndarray | None = field(default=None, repr=False, compare=False)

    @classmethod
    def gaussian(cls, mean: float, std_dev: float) -> "DensityModel":
        return cls(SINGLE_GAUSSIAN, (GaussianComponent(mean, std_dev, 1.0),))

    @classmethod
    def mixture(cls, components) -> "DensityModel":
        return cls(GAUSSIAN_MIXTURE, tuple(components))

    @classmethod
    def tabulated(cls, points) -> "DensityModel":
        """Build from (y, density) pairs; linear interpolation between nodes."""
        pts = np.asarray(points, dtype=float)
        if pts.ndim != 2 or pts.shape[1] != 2 or pts.shape[0] < 2:
            raise SpecInvalid("tabulated density needs at least two (y, density) pairs")
        return cls(TABULATED, (), table_y=pts[:, 0].copy(), table_density=pts[:, 1].copy())

    def __post_init__(self):
        if self.kind in (SINGLE_GAUSSIAN, GAUSSIAN_MIXTURE):
            if not self.components:
                raise SpecInvalid("Gaussian model needs at least one component")
            if self.kind == SINGLE_GAUSSIAN and len(self.components) != 1:
                raise SpecInvalid("single_gaussian must have exactly one component")
            total = sum(c.weight for c in self.components)
            if abs(total - 1.0) > 1e-12:
                raise SpecInvalid(f"mixture weights sum to {total!r}, expected 1 within 1e-12")
        elif self.kind == TABULATED:
            y = self.table_y
            d = self.table_density
            if y is None or d is None:
                raise SpecInvalid("tabulated model needs a table")
            if np.any(np.diff(y) <= 0.0):
                raise SpecInvalid("table y values must be strictly increasing")
            if np.any(d < 0.0):
                raise SpecInvalid("table densities must be >= 0")
            mass = np.concatenate([[0.0], np.cumsum(0.5 * (d[1:] + d[:-1]) * np.diff(y))])
            # Tables are rejected, never silently renormalized.
            if abs(mass[-1] - 1.0) > 1e-6:
                raise SpecInvalid(
                    f"table integrates to {mass[-1]!r}, expected 1 within 1e-6"
                )
            object.__setattr__(self, "_table_cdf", mass)
            self.table_y.setflags(write=False)
            self.table_density.setflags(write=False)
        else:
            raise SpecInvalid(f"unknown density kind {self.kind!r}")

    # -- evaluation ---------------------------------------------------------

    def pdf(self, y):
        """Density at y; vectorized, returns 0 outside a table's range."""
        scalar = np.isscalar(y)
        y = np.atleast_1d(np.asarray(y, dtype=float))
        if self.kind == TABULATED:
            out = np.interp(y, self.table_y, self.table_density, left=0.0, right=0.0)
        else:
            out = np.zeros_like(y)
            for c in self.components:
                z = (y - c.mean) / c.std_dev
                out += c.weight / (c.std_dev * math.sqrt(2.0 * math.pi)) * np.exp(-0.5 * z * z)
        return _as_scalar_or_array(out[0] if scalar else out, scalar)

    def _log_pdf_scalar(self, y: float) -> float:
        # math-only path: bisection probes this thousands of times per solve
        if self.kind == TABULATED:
            p = float(np.interp(y, self.table_y, self.table_density, left=0.0, right=0.0))
            return math.log(p) if p > 0.0 else -math.inf
        if len(self.components) == 1:
            c = self.components[0]
            z = (y - c.mean) / c.std_dev
            return -0.5 * z * z - math.log(c.std_dev) - _LOG_SQRT_2PI
        terms = []
        for c in self.components:
            z = (y - c.mean) / c.std_dev
            terms.append(math.log(c.weight) - 0.5 * z * z - math.log(c.std_dev) - _LOG_SQRT_2PI)
        top = max(terms)
        return top + math.log(sum(math.exp(t - top) for t in terms))

    def log_pdf(self, y):
        """log density at y, -inf where the density vanishes.

        Computed in log space for Gaussian kinds so the ratio of two
        densities stays finite far in the tails.
        """
        scalar = np.isscalar(y)
        if scalar:
            return self._log_pdf_scalar(float(y))
        y = np.atleast_1d(np.asarray(y, dtype=float))
        if self.kind == TABULATED:
            p = np.interp(y, self.table_y, self.table_density, left=0.0, right=0.0)
            with np.errstate(divide="ignore"):
                out = np.log(p)
        elif len(self.components) == 1:
            c = self.components[0]
            z = (y - c.mean) / c.std_dev
            out = -0.5 * z * z - math.log(c.std_dev) - _LOG_SQRT_2PI
        else:
            terms = np.empty((len(self.components), y.size))
            for i, c in enumerate(self.components):
                z = (y - c.mean) / c.std_dev
                terms[i] = (
                    math.log(c.weight) - 0.5 * z * z - math.log(c.std_dev) - _LOG_SQRT_2PI
                )
            out = logsumexp(terms, axis=0)
        return _as_scalar_or_array(out[0] if scalar else out, scalar)

    def cdf(self, y):
        """P(Y <= y); exact via erfc for Gaussian kinds, trapezoid for tables."""
        scalar = np.isscalar(y)
        y = np.atleast_1d(np.asarray(y, dtype=float))
        if self.kind == TABULATED:
            out = self._table_cdf_at(y)
        else:
            out = np.zeros_like(y)
            for c in self.components:
                z = (y - c.mean) / c.std_dev
                # erfc keeps full precision in whichever tail z falls in
                out += c.weight * 0.5 * erfc(-z / _SQRT2)
            out = np.clip(out, 0.0, 1.0)
        return _as_scalar_or_array(out[0] if scalar else out, scalar)

    def _table_cdf_at(self, y):
        ty, td, F = self.table_y, self.table_density, self._table_cdf
        idx = np.clip(np.searchsorted(ty, y, side="right") - 1, 0, len(ty) - 2)
        t = np.clip(y - ty[idx], 0.0, ty[idx + 1] - ty[idx])
        slope = (td[idx + 1] - td[idx]) / (ty[idx + 1] - ty[idx])
        out = F[idx] + td[idx] * t + 0.5 * slope * t * t
        out = np.where(y < ty[0], 0.0, out)
        out = np.where(y >= ty[-1], 1.0, out)
        return np.clip(out, 0.0, 1.0)

    def support_hint(self) -> tuple[float, float]:
        """Interval outside which the density is negligible (or zero)."""
        if self.kind == TABULATED:
            return float(self.table_y[0]), float(self.table_y[-1])
        lo = min(c.mean - TAIL_SIGMAS * c.std_dev for c in self.components)
        hi = max(c.mean + TAIL_SIGMAS * c.std_dev for c in self.components)
        return lo, hi

    def sample(self, rng: np.random.Generator, n: int) -> np.ndarray:
        """Draw n variates; inverse-CDF for tables, normal draws otherwise."""
        if self.kind == TABULATED:
            return self._sample_table(rng, n)
        if len(self.components) == 1:
            c = self.components[0]
            return rng.normal(c.mean, c.std_dev, size=n)
        w = np.array([c.weight for c in self.components])
        means = np.array([c.mean for c in self.components])
        stds = np.array([c.std_dev for c in self.components])
        comp = np.searchsorted(np.cumsum(w), rng.random(n), side="right")
        comp = np.clip(comp, 0, len(w) - 1)
        return means[comp] + stds[comp] * rng.standard_normal(n)

    def _sample_table(self, rng: np.random.Generator, n: int) -> np.ndarray:
        ty, td, F = self.table_y, self.table_density, self._table_cdf
        u = rng.random(n) * F[-1]
        idx = np.clip(np.searchsorted(F, u, side="right") - 1, 0, len(ty) - 2)
        dy = ty[idx + 1] - ty[idx]
        slope = (td[idx + 1] - td[idx]) / dy
        rem = u - F[idx]
        # invert F_i + d_i t + slope t^2 / 2 = u on each segment
        with np.errstate(invalid="ignore", divide="ignore"):
            disc = np.sqrt(np.maximum(td[idx] ** 2 + 2.0 * slope * rem, 0.0))
            t = np.where(
                np.abs(slope) > 1e-300,
                (disc - td[idx]) / slope,
                np.where(td[idx] > 0.0, rem / np.where(td[idx] > 0.0, td[idx], 1.0), 0.0),
            )
        return ty[idx] + np.clip(t, 0.0, dy)


@dataclass(frozen=True)
class ChannelSpec:
    """The full problem instance: the density pair plus a finite scan support.

    The support is the window used for root scanning; when omitted it is
    derived so that every component's mean +/- 12 std_dev is covered
    (Gaussian kinds) or the table range is used (tabulated kind).
    Densities can still be integrated exactly to +/- infinity through
    their CDFs, so the support only has to contain every ratio crossing
    that carries probability mass.
    """

    phi0: DensityModel
    phi1: DensityModel
    support: tuple[float, float] | None = None

    def __post_init__(self):
        if self.support is None:
            lo0, hi0 = self.phi0.support_hint()
            lo1, hi1 = self.phi1.support_hint()
            object.__setattr__(self, "support", (min(lo0, lo1), max(hi0, hi1)))
        else:
            lo, hi = float(self.support[0]), float(self.support[1])
            if not lo < hi:
                raise SpecInvalid(f"support must satisfy lo < hi, got ({lo}, {hi})")
            object.__setattr__(self, "support", (lo, hi))


def log_likelihood_ratio(spec: ChannelSpec, y):
    """log(phi0(y) / phi1(y)) with the conventions for vanishing densities.

    Returns +inf where only phi1 vanishes, -inf where only phi0 vanishes,
    and 0 where both vanish (such points carry no probability mass, the
    value only affects set membership on measure-zero regions).
    """
    scalar = np.isscalar(y)
    if scalar:
        lp0 = spec.phi0._log_pdf_scalar(float(y))
        lp1 = spec.phi1._log_pdf_scalar(float(y))
        if lp0 == -math.inf and lp1 == -math.inf:
            return 0.0
        return lp0 - lp1
    y_arr = np.atleast_1d(np.asarray(y, dtype=float))
    lp0 = np.atleast_1d(spec.phi0.log_pdf(y_arr))
    lp1 = np.atleast_1d(spec.phi1.log_pdf(y_arr))
    with np.errstate(invalid="ignore"):
        out = lp0 - lp1
    both_zero = np.isneginf(lp0) & np.isneginf(lp1)
    out[both_zero] = 0.0
    return _as_scalar_or_array(out[0] if scalar else out, scalar)
