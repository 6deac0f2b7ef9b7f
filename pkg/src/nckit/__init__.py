"""nckit: exact moment-cumulant transforms driven by weighted noncrossing partitions.

The package computes, over exact rationals, the transforms between a moment
sequence and its cumulant sequence relative to a sequence of formal gap
weights d1, d2, ...  Specializing every weight to 1 recovers free cumulants;
specializing every weight to 0 recovers boolean cumulants.  Supporting
machinery: noncrossing partition combinatorics (arcs, gap weights, Kreweras
complement, zeta and Mobius functions), Schroder tree expansions with their
arrangement counterpart, and a truncated Laurent series engine with Lagrange
inversion.
"""

__version__ = "0.1.0"

from .poly import (  # noqa: F401
    CUMULANT,
    DELTA,
    MOMENT,
    Polynomial,
    Variable,
    cumulant,
    delta,
    moment,
)
from .ncpart import (  # noqa: F401
    NoncrossingPartition,
    enumerate_interval,
    enumerate_nc,
    kreweras,
    kreweras_inv,
)
from .series import LaurentSeries, standard_series  # noqa: F401
from .trees import (  # noqa: F401
    Arrangement,
    enumerate_arrangements,
    enumerate_prime,
    enumerate_schroder,
)
from .cumulants import (  # noqa: F401
    TransformTable,
    boolean_cumulants,
    cumulants_from_moments,
    free_cumulants,
    moments_from_cumulants,
    numeric_convert,
)
