"""Non-backtracking random walks on locally finite multigraphs.

The package exposes four layers: multigraphs and neighbor oracles
(multigraph, sources, builtins), the oriented-edge transition kernel and
its structure (edge_space), walk distributions with their limits and
growth rates (walks), and generating-function and isoperimetric
diagnostics (cogrowth, amenability). The command line lives in cli.
"""

from .amenability import (
    AmenabilityDiagnostic,
    FolnerTrend,
    IsoperimetricReport,
    area_vol,
    diagnose,
    folner_trend,
    iota_bruteforce,
)
from .builtins import (
    BUILTIN_NAMES,
    builtin_graph,
    butterfly,
    complete,
    complete_bipartite,
    cycle,
    petersen,
    random_multigraph,
)
from .cogrowth import (
    CogrowthSeries,
    FunctionalEquationReport,
    cogrowth_rate,
    cogrowth_series,
    functional_equation_check,
    green_series,
    sphere_counts,
)
from .edge_space import (
    NbrwKernel,
    OlgStructure,
    OrientedEdgeSpace,
    ReversalSymmetryReport,
    analyze_structure,
    build_kernel,
    check_reversal_symmetry,
    oriented_edges,
    solg_distance,
    turnaround_bound,
)
from .errors import (
    AllZeroError,
    BadParamsError,
    BudgetExceededError,
    DegreeError,
    DenseCyclesUnverified,
    DisconnectedError,
    NbrwError,
    NoConvergenceError,
    NotRegularError,
    ParseError,
    PrerequisiteUnverified,
    UnknownVertexError,
)
from .multigraph import (
    BallView,
    BipartitenessReport,
    Multigraph,
    ball,
    contains_cycle,
    distance,
    is_bipartite,
    load_multigraph,
    make_multigraph,
    small_cycle_radius,
)
from .powerseries import PowerSeries
from .sources import FreeGroupSource, GraphSource, GridZ2Source, RegularTreeSource
from .walks import (
    LimitProfile,
    SpectralEstimate,
    UniformIrreducibilityReport,
    VertexDistribution,
    monte_carlo_nbrw,
    nbrw_limit_profile,
    nbrw_nstep,
    nbrw_return_sequence,
    probe_dense_cycles,
    qe_operator_norm,
    root_test_estimate,
    spectral_radius_nbrw,
    spectral_radius_srw,
    srw_limit_profile,
    srw_nstep,
    uniform_irreducibility_check,
)

__version__ = "0.1.0"
