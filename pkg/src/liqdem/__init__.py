"""Delegation optimization for liquid democracy.

Voters sit in a directed social network and either vote directly or
delegate to a neighbor; the toolkit evaluates how likely such an electorate
is to reach the correct outcome, searches for good delegation structures,
and runs the batch experiments comparing them.
"""

__version__ = "0.1.0"

from .exact import exhaustive_optimum, search_space
from .flows import (
    CirculationResult,
    FlowNetwork,
    FractionalDelegation,
    feasible_circulation,
    fractional_delegation,
)
from .generators import (
    DEFAULT_ACCURACY_MODEL,
    AccuracyModel,
    component_counts,
    gen_ba,
    gen_gnm,
    gen_ws,
    quantize,
    quantize_network,
    sample_accuracies,
)
from .harness import (
    CSV_COLUMNS,
    METHODS,
    ExperimentConfig,
    RunRecord,
    delegation_measures,
    run_experiment,
    run_experiment_to_csv,
    write_csv,
)
from .milp import MilpModel, build_milp, check_assignment, delegation_assignment, export_lp
from .model import (
    DelegationError,
    DelegationFunction,
    GuruProfile,
    InstanceError,
    SocialNetwork,
    ValidationReport,
    delegation_from_json,
    delegation_to_json,
    guru_profile,
    instance_from_json,
    instance_to_json,
    resolve_gurus,
    validate_delegation,
)
from .probability import (
    delegation_score,
    election_probability,
    election_probability_bruteforce,
    majority_threshold,
    recursion_table,
)
from .reduction import (
    MarginReport,
    ReductionParams,
    build_reduction,
    gadget_margins,
    random_cover,
    verify_margins,
)
from .strategies import (
    ASSIGNERS,
    StrategyParams,
    best_guru,
    cap_value,
    direct_democracy,
    emerging_delegation,
    greedy_cap,
    greedy_delegation,
    greedy_strategy,
    local_search_strategy,
    voronoi_delegation,
)
