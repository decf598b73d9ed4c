"""Symplectic invariants of parabolic orbits and cuspidal tori.

Numerical and exact-algebraic tooling for two-degree-of-freedom integrable
systems near a cusp singularity: period integrals and action variables on
the model fibrations, Puiseux and logarithmic asymptotics, the Brieskorn
reduction of polynomial densities, equivalence criteria, and Hamiltonian
flows with period-lattice verification.
"""

from .series import (
    DEFAULT_ORDER,
    PuiseuxTriple,
    TruncatedSeries,
    phi_r_apply,
    phi_r_invert,
    series_arith,
)
from .specfun import gamma, hyp2F1, puiseux_constants, reference_Jj
from .model import (
    CUSP_COMPACT,
    CUSP_LOCAL,
    NODE,
    ONE_DOF,
    BifurcationDiagram,
    CanonicalBaseTransform,
    Density,
    FibrationModel,
    ParabolicVerdict,
    Poly2,
    base_change_parabolic_test,
    bifurcation_diagram,
    canonicalize_base,
    cusp_compact_model,
    cusp_local_model,
    is_parabolic,
    node_model,
    one_dof_model,
)
from .brieskorn import BrieskornPair, reduce, reduce_batch
from .quadrature import (
    ActionChart,
    ActionChartRow,
    OnSigmaError,
    StratumError,
    action_chart,
    loop_action,
    loop_period,
    oval_bounds,
    passage_time,
    separatrix_action,
    wide_action,
)
from .asymptotics import (
    FitReport,
    extract_log_coeff,
    fit_puiseux,
    hyperbolic_log_coeff,
    node_complex_period,
    node_passage,
    verify_node_log_identity,
)
from .equivalence import (
    EquivalenceVerdict,
    InvariantReport,
    OneDofVerdict,
    RescaleMap,
    cusp_torus_equivalent,
    invariant_report,
    normalize_invariant,
    one_dof_equivalent,
    parabolic_equivalent,
    rescale_r_h,
    verify_relations,
    verify_relations_numeric,
)
from .flows import (
    BumpPushforward,
    PeriodLattice,
    SymplecticModel,
    flow,
    hamiltonian_field,
    period_lattice,
    pullback_residual,
    trajectory_csv,
    transport_map,
    verify_lattice,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
