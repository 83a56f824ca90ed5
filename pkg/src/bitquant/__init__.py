"""Capacity-optimal single-bit quantization of binary-input channels.

Given the two conditional densities of a continuous channel output, this
package finds the quantizer thresholds and the input distribution that
jointly maximize the mutual information between the binary input and the
quantized binary output, using a one-dimensional search over likelihood
ratio levels, and ships an independent brute-force oracle plus a Monte
Carlo validator to check the result.
"""

__version__ = "0.1.0"

from .capacity import CapacityResult, capacity_closed_form, optimal_input
from .channel import (
    ChannelMatrix,
    InputDistribution,
    ThresholdVector,
    binary_entropy,
    channel_matrix_from_r,
    mutual_information,
    segment_membership,
)
from .density import ChannelSpec, DensityModel, GaussianComponent, log_likelihood_ratio
from .errors import (
    MembershipAmbiguous,
    NoInformativeQuantizer,
    SpecInvalid,
    SpecParseError,
)
from .estimator import CapacityQuantizer
from .optimizer import SolveReport, SweepPoint, search_bounds, solve, sweep
from .oracle import McEstimate, OracleResult, brute_force, mc_mutual_information
from .rootfind import Bracket, scan_brackets, solve_ratio_equation

__all__ = [
    "__version__",
    "Bracket",
    "CapacityQuantizer",
    "CapacityResult",
    "ChannelMatrix",
    "ChannelSpec",
    "DensityModel",
    "GaussianComponent",
    "InputDistribution",
    "McEstimate",
    "MembershipAmbiguous",
    "NoInformativeQuantizer",
    "OracleResult",
    "SolveReport",
    "SpecInvalid",
    "SpecParseError",
    "SweepPoint",
    "ThresholdVector",
    "binary_entropy",
    "brute_force",
    "capacity_closed_form",
    "channel_matrix_from_r",
    "log_likelihood_ratio",
    "mc_mutual_information",
    "mutual_information",
    "optimal_input",
    "scan_brackets",
    "search_bounds",
    "segment_membership",
    "solve",
    "solve_ratio_equation",
    "sweep",
]
