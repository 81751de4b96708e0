"""Tests for the seeded Monte Carlo restart experiments."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from scipy.stats import chisquare

from gqsearch import (
    NonTerminatingError,
    SearchInstance,
    StateVector,
    TargetSet,
    TrialCapError,
    cost_stddev,
    expected_cost,
    grover_power,
    parallel_success,
    parallel_trial_costs,
    punctuated_plan,
    punctuated_trial_costs,
    random_state,
    rotation_angle,
    run_parallel,
    run_punctuated,
    run_punctuated_statevector,
    statevector_trial_costs,
    success_probability,
    trial_uniforms,
    uniform_instance,
    uniform_state,
)


def test_certain_success_is_deterministic():
    est = run_punctuated(1.0, 7, 100, seed=0)
    assert est.mean == 7.0
    assert est.stderr == 0.0
    assert est.trials == 100
    assert np.all(punctuated_trial_costs(1.0, 7, 100, seed=0) == 7.0)


def test_mean_matches_closed_form():
    p, n = 0.3, 5
    est = run_punctuated(p, n, 200_000, seed=123)
    closed = expected_cost(n, p)
    assert abs(est.mean - closed) < 3.0 * est.stderr
    assert est.stderr > 0.0


def test_single_trial_has_zero_stderr():
    est = run_punctuated(0.5, 2, 1, seed=9)
    assert est.trials == 1
    assert est.stderr == 0.0


def test_trial_stream_partition_is_exact():
    full = trial_uniforms(9, 0, 100)
    parts = np.concatenate([trial_uniforms(9, 0, 37), trial_uniforms(9, 37, 63)])
    assert np.array_equal(full, parts)
    costs_full = punctuated_trial_costs(0.4, 3, 100, seed=9)
    costs_parts = np.concatenate(
        [
            punctuated_trial_costs(0.4, 3, 50, seed=9),
            punctuated_trial_costs(0.4, 3, 50, seed=9, trial_start=50),
        ]
    )
    assert np.array_equal(costs_full, costs_parts)


def test_parallel_equals_punctuated_at_boosted_bias():
    # a k-agent round is one coin of bias 1 - (1-p)^k; the trial costs
    # must coincide draw for draw
    p, n, k = 0.2, 4, 6
    a = parallel_trial_costs(p, n, k, 500, seed=21)
    b = punctuated_trial_costs(parallel_success(p, k), n, 500, seed=21)
    assert np.array_equal(a, b)


def test_parallel_mean_matches_closed_form():
    p, n, k = 0.1, 8, 4
    est = run_parallel(p, n, k, 150_000, seed=5)
    closed = expected_cost(n, parallel_success(p, k))
    assert abs(est.mean - closed) < 3.0 * est.stderr


def test_reset_cost_surcharge():
    base = punctuated_trial_costs(0.5, 4, 50, seed=5)
    rounds = base / 4.0
    charged = punctuated_trial_costs(0.5, 4, 50, seed=5, reset_cost=1.5)
    assert np.array_equal(charged, base + (rounds - 1.0) * 1.5)
    with pytest.raises(ValueError):
        punctuated_trial_costs(0.5, 4, 50, seed=5, reset_cost=-1.0)


def test_zero_probability_never_terminates():
    with pytest.raises(NonTerminatingError):
        run_punctuated(0.0, 3, 10, seed=0)
    with pytest.raises(NonTerminatingError):
        run_parallel(0.0, 3, 4, 10, seed=0)


def test_round_cap_raises():
    # at p = 1e-12 a median trial needs ~7e11 rounds, far past the cap
    with pytest.raises(TrialCapError):
        punctuated_trial_costs(1e-12, 1, 4, seed=0)


def test_runs_are_reproducible_and_seed_sensitive():
    a = run_punctuated(0.25, 3, 20_000, seed=77)
    b = run_punctuated(0.25, 3, 20_000, seed=77)
    assert a == b
    c = run_punctuated(0.25, 3, 20_000, seed=78)
    assert c.mean != a.mean


def test_statevector_variant_matches_born_statistics():
    inst = uniform_instance(16, 1)
    n = 3
    p = success_probability(grover_power(inst, n), inst.targets)
    est, counts = run_punctuated_statevector(
        inst, n, 3000, seed=2, return_outcome_counts=True
    )
    closed = expected_cost(n, p)
    assert abs(est.mean - closed) < 4.0 * est.stderr
    # every trial ends in exactly one success, and every measurement is
    # tallied: rounds total = total cost / n
    assert int(counts[0]) == 3000
    assert int(counts.sum()) == round(est.mean * 3000 / n)
    # unconditionally, measurement outcomes follow the Born weights
    frac = counts[0] / counts.sum()
    se = math.sqrt(p * (1.0 - p) / counts.sum())
    assert abs(frac - p) < 6.0 * se


def test_statevector_variant_partition_and_reproducibility():
    inst = uniform_instance(8, 2)
    full, _ = statevector_trial_costs(inst, 1, 60, seed=4)
    head, _ = statevector_trial_costs(inst, 1, 30, seed=4)
    tail, _ = statevector_trial_costs(inst, 1, 30, seed=4, trial_start=30)
    assert np.array_equal(full, np.concatenate([head, tail]))
    again, _ = statevector_trial_costs(inst, 1, 60, seed=4)
    assert np.array_equal(full, again)


def test_statevector_variant_rejects_zero_support():
    # start and averaging both orthogonal to the target: p stays 0
    off = StateVector(np.array([0.0, 1.0, 1.0, 1.0]) / math.sqrt(3.0))
    inst = SearchInstance(
        n_items=4, targets=TargetSet.first(1), averaging=off, start=off
    )
    with pytest.raises(NonTerminatingError):
        statevector_trial_costs(inst, 1, 5, seed=0)


def test_validation_errors():
    with pytest.raises(ValueError):
        run_punctuated(0.5, 0, 10, seed=0)
    with pytest.raises(ValueError):
        run_punctuated(0.5, 3, 0, seed=0)
    with pytest.raises(ValueError):
        run_punctuated(1.5, 3, 10, seed=0)
    with pytest.raises(ValueError):
        parallel_trial_costs(0.5, 3, 0, 10, seed=0)
    with pytest.raises(ValueError):
        trial_uniforms(0, -1, 10)


@settings(max_examples=25, deadline=None)
@given(
    p=st.floats(0.05, 1.0),
    n=st.integers(1, 20),
    trials=st.integers(1, 200),
    seed=st.integers(0, 2**31),
)
def test_cost_structure(p, n, trials, seed):
    costs = punctuated_trial_costs(p, n, trials, seed=seed)
    assert costs.shape == (trials,)
    assert np.all(costs >= n)
    # with free resets every cost is a whole number of n-iteration rounds
    assert np.all(costs % float(n) == 0.0)


def test_punctuated_mean_large_sample():
    est = run_punctuated(0.5, 3, 10**6, seed=42)
    assert abs(est.mean - 6.0) <= 3.0 * est.stderr


def test_sample_sd_arbitrates_geometric_form():
    # a seeded bootstrap supplies the standard error of the sample SD;
    # the geometric form n sqrt(1-p)/p matches, the alternative does not
    costs = punctuated_trial_costs(0.5, 1, 10**6, seed=24)
    sd_hat = float(costs.std(ddof=1))
    rng = np.random.default_rng(2024)
    boots = np.empty(120)
    for b in range(120):
        idx = rng.integers(0, costs.size, costs.size)
        boots[b] = costs[idx].std(ddof=1)
    se = float(boots.std(ddof=1))
    forms = cost_stddev(1, 0.5)
    assert abs(sd_hat - forms.geometric) < 3.0 * se
    assert abs(sd_hat - forms.alt) > 3.0 * se


def test_parallel_k1_statistically_matches_punctuated():
    par = run_parallel(0.3, 5, 1, 200000, seed=77)
    pun = run_punctuated(0.3, 5, 200000, seed=77)
    assert abs(par.mean - pun.mean) <= 3.0 * max(par.stderr, pun.stderr)


def test_parallel_closed_form_points():
    two = run_parallel(0.5, 1, 2, 10**6, seed=99)
    assert abs(two.mean - 1.0 / 0.75) <= 3.0 * two.stderr
    eight = run_parallel(0.1, 10, 8, 10**5, seed=101)
    assert abs(eight.mean - 10.0 / (1.0 - 0.9**8)) <= 3.0 * eight.stderr


def test_statevector_certain_small_case():
    # N=4, r=1, uniform: one iteration succeeds with certainty
    inst = uniform_instance(4, TargetSet((2,)))
    costs, counts = statevector_trial_costs(inst, 1, 400, seed=3)
    assert np.all(costs == 1.0)
    assert counts[2] == 400 and counts.sum() == 400
    est = run_punctuated_statevector(inst, 1, 400, seed=3)
    assert est.mean == 1.0 and est.stderr == 0.0


def test_statevector_mean_at_punctuated_optimum():
    inst = uniform_instance(64, TargetSet((7,)))
    plan = punctuated_plan(rotation_angle(math.sqrt(1.0 / 64.0)))
    p_round = success_probability(grover_power(inst, plan.n_int), inst.targets)
    closed = expected_cost(plan.n_int, p_round)
    est = run_punctuated_statevector(inst, plan.n_int, 10**5, seed=6)
    assert abs(est.mean - closed) <= 3.0 * est.stderr


def test_statevector_outcome_distribution_chi_square():
    # failed measurements land on non-target indices in proportion to
    # their Born weights; chi-square on the tallied failures confirms it
    inst = SearchInstance(
        n_items=8,
        targets=TargetSet((2,)),
        averaging=uniform_state(8),
        start=random_state(8, 301),
    )
    _, counts = run_punctuated_statevector(
        inst, 2, 20000, seed=7, return_outcome_counts=True
    )
    weights = np.abs(grover_power(inst, 2).amplitudes) ** 2
    non_target = np.ones(8, dtype=bool)
    non_target[2] = False
    observed = counts[non_target]
    expected = observed.sum() * weights[non_target] / weights[non_target].sum()
    assert expected.min() > 5.0
    assert chisquare(observed, expected).pvalue > 0.001


def test_consistency_grid_coverage():
    # across the (p, k) grid at least 95 of 100 seeded replications land
    # within tolerance of n / (1 - (1-p)^k); the near-point-mass cell
    # (stderr can be exactly 0) gets a relative floor instead
    for p in (0.05, 0.2, 0.5, 0.9):
        for k in (1, 2, 8):
            closed = expected_cost(7, parallel_success(p, k))
            hits = 0
            for rep in range(100):
                est = run_parallel(p, 7, k, 10**4, seed=rep)
                tol = max(3.0 * est.stderr, 1e-6 * closed)
                hits += abs(est.mean - closed) <= tol
            assert hits >= 95, f"p={p} k={k}: only {hits}/100 within tolerance"
