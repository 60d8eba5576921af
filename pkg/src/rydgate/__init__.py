"""Error budgets and pulse simulation for multi-control blockade gates."""

from .budget import ErrorBudget
from .lattice import LatticeGeometry, PairSets, build_layout, pair_sets
from .model import (
    GateParams,
    InteractionModel,
    InvalidModelError,
    OutOfRangeError,
    RydbergLevel,
    dmin_resonance_rule,
    fit_single_anchor,
    pair_shift,
)
from .optimize import (
    OptimizationResult,
    e_opt_analytic,
    minimize_error,
    omega_opt_analytic,
)
from .sequential import (
    budget_grover_uniform,
    budget_sequential_lattice,
    budget_sequential_uniform,
    gate_duration_grover,
    gate_duration_sequential,
    sum_oracle_grover,
    sum_oracle_sequential,
    worst_case_detuned_inv_sq,
)
from .simulator import (
    PulseStep,
    SimResult,
    SimState,
    canonical_sequence,
    computational_state,
    evolve,
    gate_error_sim,
    ideal_output_index,
    ideal_output_phase,
    sequence_duration,
    simultaneous_interactions,
    uniform_interactions,
)
from .simultaneous import (
    BlockadeRegimeWarning,
    SimultaneousParams,
    budget_simultaneous_lattice,
    budget_simultaneous_uniform,
    cc_rotation_weight,
    gate_duration_simultaneous,
    subset_inverse_square_expectations,
    target_blockade_sums,
)

__version__ = "0.1.0"

__all__ = [
    "BlockadeRegimeWarning",
    "ErrorBudget",
    "GateParams",
    "InteractionModel",
    "InvalidModelError",
    "LatticeGeometry",
    "OptimizationResult",
    "OutOfRangeError",
    "PairSets",
    "PulseStep",
    "RydbergLevel",
    "SimResult",
    "SimState",
    "SimultaneousParams",
    "budget_grover_uniform",
    "budget_sequential_lattice",
    "budget_sequential_uniform",
    "budget_simultaneous_lattice",
    "budget_simultaneous_uniform",
    "build_layout",
    "canonical_sequence",
    "cc_rotation_weight",
    "computational_state",
    "dmin_resonance_rule",
    "e_opt_analytic",
    "evolve",
    "fit_single_anchor",
    "gate_duration_grover",
    "gate_duration_sequential",
    "gate_duration_simultaneous",
    "gate_error_sim",
    "ideal_output_index",
    "ideal_output_phase",
    "minimize_error",
    "omega_opt_analytic",
    "pair_sets",
    "pair_shift",
    "sequence_duration",
    "simultaneous_interactions",
    "subset_inverse_square_expectations",
    "sum_oracle_grover",
    "sum_oracle_sequential",
    "target_blockade_sums",
    "uniform_interactions",
    "worst_case_detuned_inv_sq",
]
