"""Robust dispersion, concentration estimation and anomaly detection for circular data.

Angles are radians on [−π, π).  The main entry points are re-exported here::

    >>> import circrobust as cr
    >>> x = cr.ingest("frogs").angles
    >>> round(cr.estimate(x, "clms", "vm").parameter, 2)
    3.89
"""

__version__ = "0.1.0"

from .core import (  # noqa: E402
    arc_distance,
    canonicalize,
    circular_mean,
    circular_quartiles,
    csd,
    frechet_median,
    resultant_length,
    summarize,
)
from .detection import DetectionConfig, DetectionReport, cutoff, detect  # noqa: E402
from .dispersion import (  # noqa: E402
    classical_wn_sigma,
    clms,
    clts,
    cmad,
    estimate,
    mle_vonmises_kappa,
)
from .distributions import (  # noqa: E402
    Dispersion,
    Family,
    VonMises,
    WrappedNormal,
    eta_inverse,
    population_dispersion,
)
from .efficiency import are, asymptotic_variance, cmad_breakdown_bound, fisher_information  # noqa: E402
from .errors import *  # noqa: E402,F401,F403
from .influence import influence_function, transformed_influence_function  # noqa: E402
from .io import ingest  # noqa: E402
from .simulation import bias_curve, contamination_study  # noqa: E402
from .violin import violin_geometry, violin_svg  # noqa: E402
