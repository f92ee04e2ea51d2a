"""Ambiguity functions, Wigner distributions, MIMO correlation fields and
numerical checks of their uncertainty relations."""

__version__ = "0.1.0"

from .signal import (  # noqa: E402
    Lattice,
    SampledSignal,
    SignalSet,
    SpectrumGrid,
    default_lattice,
    energy,
    fourier_transform,
    gen_waveform,
    inner_product,
    lp_norm,
    moment,
    random_smooth_set,
    unit_gaussian,
)
from .ambiguity import (  # noqa: E402
    AmbiguityGrid,
    GridSpec,
    Region,
    ambiguity_direct,
    cross_ambiguity,
    default_grid,
    epsilon_support,
    grid_lp_integral,
    symmetric_ambiguity,
    wigner,
)
from .mimo import (  # noqa: E402
    CorrelationMatrixField,
    NormField,
    SteeringSpec,
    correlation_matrix_field,
    matrix_norm_field,
    mimo_ambiguity,
    mimo_l2_energy,
)
from .uncertainty import (  # noqa: E402
    InequalityResult,
    SuiteConfig,
    check_heisenberg,
    check_lieb,
    check_local_uncertainty,
    run_full_suite,
    run_mimo_suite,
    support_lower_bound,
)
