"""Generalized quantum search: exact simulation, closed-form success
probabilities, and optimal restart / parallel strategies.

The amplitude-amplification operator Q acts on an arbitrary start state
with reflections about an arbitrary averaging axis; `statevector` evolves
it exactly, `analytic` carries the two-dimensional rotation picture and
its closed-form probability model, `strategy` plans optimal punctuated
and k-agent runs, and `montecarlo` checks the cost formulas with seeded
restart experiments.  `cli` exposes all of it as the `gqsearch` command.
"""

from .analytic import (
    BihamMapping,
    Decomposition,
    biham_mapping,
    decompose,
    first_maximum,
    grover_case_prob,
    optimal_iterations_analytic,
    rotation_angle,
    success_prob_analytic,
)
from .errors import (
    DegenerateOverlapError,
    FlatProbabilityError,
    GQSearchError,
    InvalidDimensionError,
    InvalidTargetError,
    NeverSucceedsError,
    NonTerminatingError,
    NonUnitAxisError,
    NonUnitStateError,
    NoOverlapError,
    NoRotationError,
    RegimeError,
    TrialCapError,
    ValidityError,
)
from .montecarlo import (
    Estimate,
    parallel_trial_costs,
    punctuated_trial_costs,
    run_parallel,
    run_punctuated,
    run_punctuated_statevector,
    statevector_trial_costs,
    trial_uniforms,
)
from .statevector import (
    SearchInstance,
    StateVector,
    TargetSet,
    grover_power,
    oracle_reflect,
    random_state,
    reflect_about,
    success_probability,
    success_trajectory,
    uniform_instance,
    uniform_state,
)
from .strategy import (
    CostStddev,
    ParallelPlan,
    PunctuatedPlan,
    cost_stddev,
    expected_cost,
    max_probability_cost,
    optimal_x_parallel_approx,
    optimal_x_single,
    parallel_cost_derivative,
    parallel_expected_cost,
    parallel_plan,
    parallel_success,
    punctuated_plan,
    punctuated_success_prob,
)

__version__ = "0.1.0"

__all__ = [
    "BihamMapping",
    "CostStddev",
    "Decomposition",
    "DegenerateOverlapError",
    "Estimate",
    "FlatProbabilityError",
    "GQSearchError",
    "InvalidDimensionError",
    "InvalidTargetError",
    "NeverSucceedsError",
    "NonTerminatingError",
    "NonUnitAxisError",
    "NonUnitStateError",
    "NoOverlapError",
    "NoRotationError",
    "ParallelPlan",
    "PunctuatedPlan",
    "RegimeError",
    "SearchInstance",
    "StateVector",
    "TargetSet",
    "TrialCapError",
    "ValidityError",
    "biham_mapping",
    "cost_stddev",
    "decompose",
    "expected_cost",
    "first_maximum",
    "grover_case_prob",
    "grover_power",
    "max_probability_cost",
    "optimal_iterations_analytic",
    "optimal_x_parallel_approx",
    "optimal_x_single",
    "oracle_reflect",
    "parallel_cost_derivative",
    "parallel_expected_cost",
    "parallel_plan",
    "parallel_success",
    "parallel_trial_costs",
    "punctuated_plan",
    "punctuated_success_prob",
    "punctuated_trial_costs",
    "random_state",
    "reflect_about",
    "rotation_angle",
    "run_parallel",
    "run_punctuated",
    "run_punctuated_statevector",
    "statevector_trial_costs",
    "success_prob_analytic",
    "success_probability",
    "success_trajectory",
    "trial_uniforms",
    "uniform_instance",
    "uniform_state",
]
