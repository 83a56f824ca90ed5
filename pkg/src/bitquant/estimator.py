"""scikit-learn style wrapper around the solver.

The fitted object is the quantizer itself: `fit` runs the global search
for the configured channel and `transform`/`predict` map continuous
received samples to bits, so the quantizer drops into pipelines and
other estimator-shaped tooling. The channel is part of the
configuration (it is a model of the medium, not something inferred from
data), so `fit` ignores X and y.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .density import ChannelSpec, DensityModel
from .optimizer import solve


class CapacityQuantizer(TransformerMixin, BaseEstimator):
    """Mutual-information-maximizing single-bit quantizer.

    Parameters
    ----------
    phi0, phi1 : DensityModel
        Conditional densities of the channel output given input bit 0 / 1.
    support : (float, float), optional
        Scan window for ratio crossings; derived from the densities when
        omitted.
    step : float
        Level-sweep resolution.
    refine_tol : float
        Width of the golden-section refinement around the winning cell.
    n_scan : int
        Grid size of the crossing scan per level.
    root_tol : float
        Bisection width for individual crossings.

    Attributes
    ----------
    thresholds_ : ndarray
        Sorted cut points of the optimal quantizer.
    segment_mask_ : ndarray of bool
        True for segments quantized to 0.
    r_star_ : float
        Optimal ratio level.
    capacity_bits_ : float
        Mutual information achieved at the joint optimum.
    p0_star_ : float
        Capacity-achieving input mass on bit 0.
    a11_, a22_ : float
        Diagonal entries of the induced channel.
    report_ : SolveReport
        Full solver output including the sweep trace and diagnostics.
    """

    def __init__(
        self,
        phi0: DensityModel | None = None,
        phi1: DensityModel | None = None,
        support=None,
        step: float = 0.01,
        refine_tol: float = 1e-6,
        n_scan: int = 4096,
        root_tol: float = 1e-10,
    ):
        self.phi0 = phi0
        self.phi1 = phi1
        self.support = support
        self.step = step
        self.refine_tol = refine_tol
        self.n_scan = n_scan
        self.root_tol = root_tol

    def fit(self, X=None, y=None):
        """Solve for the optimal quantizer of the configured channel."""
        if self.phi0 is None or self.phi1 is None:
            raise ValueError("phi0 and phi1 must be set before fitting")
        spec = ChannelSpec(self.phi0, self.phi1, self.support)
        report = solve(
            spec,
            step=self.step,
            refine_tol=self.refine_tol,
            n_scan=self.n_scan,
            root_tol=self.root_tol,
        )
        self.report_ = report
        self.thresholds_ = np.asarray(report.thresholds)
        self.segment_mask_ = np.asarray(report.segment_maps_to_zero, dtype=bool)
        self.r_star_ = report.r_star
        self.capacity_bits_ = report.capacity_bits
        self.p0_star_ = report.p_star.p0
        self.a11_ = report.matrix.a11
        self.a22_ = report.matrix.a22
        return self

    def _quantize(self, values):
        if self.thresholds_.size:
            seg = np.searchsorted(self.thresholds_, values, side="right")
        else:
            seg = np.zeros(values.shape, dtype=np.int64)
        return np.where(self.segment_mask_[seg], 0, 1).astype(np.int64)

    def predict(self, X):
        """Quantize received samples to bits; accepts 1D or single-column X."""
        check_is_fitted(self, "thresholds_")
        values = check_array(X, ensure_2d=False, dtype=float)
        if values.ndim == 2:
            if values.shape[1] != 1:
                raise ValueError("expected a single feature column of received samples")
            values = values[:, 0]
        return self._quantize(values)

    def transform(self, X):
        """Same as predict but shaped (n, 1) for pipeline composition."""
        return self.predict(X).reshape(-1, 1)
