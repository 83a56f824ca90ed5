"""Exception types shared across the package."""


class SpecParseError(ValueError):
    """Channel spec file is malformed (bad JSON, missing or unknown fields)."""


class SpecInvalid(ValueError):
    """Channel spec violates a model invariant (bad std_dev, weights, table...)."""


class MembershipAmbiguous(RuntimeError):
    """A segment midpoint sits numerically on the ratio level itself.

    Signals a tangency that slipped through root scanning; callers retry
    with a slightly perturbed level.
    """


class NoInformativeQuantizer(RuntimeError):
    """No ratio level yields a channel with both diagonal entries above 1/e.

    Raised for channels whose likelihood ratio never separates the two
    conditional densities (e.g. identical densities); capacity is 0.
    """
