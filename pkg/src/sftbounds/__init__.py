"""Certified entropy bounds for symmetric nearest-neighbor subshifts of
finite type, computed from exact counts of locally admissible patterns."""

from .models import (
    Alphabet,
    ModelFormatError,
    SftModel,
    builtin_model,
    drop_last_axis,
    model_from_doc,
    model_to_doc,
    parse_model,
    symmetrize,
    validate_symmetry,
)
from .patterns import (
    CubePattern,
    SurfaceState,
    compose_flips,
    flip,
    format_pattern,
    is_locally_admissible,
    parse_pattern,
    restrict,
    surface_state,
)
from .enumeration import (
    BudgetExceededError,
    count_by_state,
    count_patterns_dfs,
    enumerate_patterns,
    oracle_count_naive,
)
from .transfer import (
    SliceStateSpace,
    TransitionStructure,
    build_slice_space,
    build_transitions,
    count_patterns,
    count_via_transfer,
    upper_bound_stream,
)
from .gluing import (
    GlueError,
    GlueInput,
    extend_to_plus_one,
    glue,
    glue_single,
    opposite_faces_equal,
    periodic_core,
    tiling_witness,
    verify_key_inequality,
)
from .bounds import (
    BoundsRow,
    ConvergenceReport,
    build_report,
    entropy_bounds,
    leading_gap_coefficient,
    q_poly,
    report_to_csv,
    report_to_json_dict,
    verify_doubling_monotonicity,
    verify_power_mean_bound,
    verify_qd_recurrence,
)
from .sampling import (
    SamplingError,
    sample_admissible,
    sample_same_state_group,
    sample_with_state,
)

__version__ = "0.1.0"
