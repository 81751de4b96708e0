"""Command-line front end: simulation, planning, figure data, verification.

Subcommands
-----------
simulate        simulator and closed form side by side over an iteration range
plan            punctuated and k-parallel plans for a uniform instance
heatmap         success-probability grid p(n, r) for uniform search
parallel-sweep  numeric vs closed-form parallel optima over (r, k)
montecarlo      seeded restart experiments against the closed-form cost
verify          special-case identities and constants, with exit status

Every command is deterministic given its flags (seeds included); re-running
writes byte-identical output.  Validation happens before any file is
written.

File formats
------------
State vector files are plain text: line 1 holds N, then N lines of
"re im" in full double precision (Python repr, round-trips exactly).
PGM output is binary P5 with maxval 255 (255 = probability 1), rows are
iteration counts ascending, columns are target counts r ascending.
JSON is the default output format everywhere.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass

import numpy as np

from .analytic import (
    biham_mapping,
    decompose,
    first_maximum,
    grover_case_prob,
    rotation_angle,
    success_prob_analytic,
)
from .errors import (
    DegenerateOverlapError,
    GQSearchError,
    NoOverlapError,
    ValidityError,
)
from .montecarlo import run_parallel, run_punctuated_statevector
from .statevector import (
    SearchInstance,
    StateVector,
    TargetSet,
    grover_power,
    random_state,
    success_probability,
    success_trajectory,
    uniform_instance,
    uniform_state,
)
from .strategy import (
    expected_cost,
    max_probability_cost,
    optimal_x_single,
    parallel_expected_cost,
    parallel_plan,
    parallel_success,
    punctuated_plan,
)


@dataclass(frozen=True)
class RunConfig:
    """Parsed and normalized command-line configuration."""

    command: str
    n_items: int | None = None
    targets: tuple | None = None
    num_targets: int | None = None
    start: str = "uniform"
    averaging: str = "uniform"
    iterations: str | None = None
    agents: int = 1
    trials: int = 100_000
    seed: int = 0
    out: str | None = None
    fmt: str = "json"


# ---------------------------------------------------------------------------
# parsing and IO helpers


def _parse_target_list(text: str) -> tuple:
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError as exc:
        raise ValueError(f"bad --targets value {text!r}: {exc}") from exc


def _parse_iteration_range(text: str) -> tuple:
    """'a..b' or a single 'n' (meaning n..n); both ends inclusive."""
    try:
        if ".." in text:
            lo_text, hi_text = text.split("..", 1)
            lo, hi = int(lo_text), int(hi_text)
        else:
            lo = hi = int(text)
    except ValueError as exc:
        raise ValueError(f"bad --iterations value {text!r}: {exc}") from exc
    if lo < 0 or hi < lo:
        raise ValueError(f"bad --iterations range {text!r}")
    return lo, hi


def _parse_iteration_single(text: str) -> int:
    lo, hi = _parse_iteration_range(text)
    if lo != hi:
        raise ValueError(f"--iterations must be a single value here, got {text!r}")
    return lo


def read_state_file(path: str) -> StateVector:
    """Read the plain-text state format: N, then N lines of 're im'."""
    with open(path, "r", encoding="ascii") as fh:
        tokens = fh.read().split()
    if not tokens:
        raise ValueError(f"state file {path!r} is empty")
    try:
        n = int(tokens[0])
        values = [float(tok) for tok in tokens[1:]]
    except ValueError as exc:
        raise ValueError(f"state file {path!r} is malformed: {exc}") from exc
    if len(values) != 2 * n:
        raise ValueError(
            f"state file {path!r} declares {n} amplitudes but holds {len(values) / 2}"
        )
    re = np.asarray(values[0::2])
    im = np.asarray(values[1::2])
    return StateVector(re + 1j * im)


def write_state_file(path: str, state: StateVector) -> None:
    """Write the plain-text state format with full-precision repr floats."""
    lines = [str(state.dim)]
    lines.extend(f"{float(z.real)!r} {float(z.imag)!r}" for z in state.amplitudes)
    with open(path, "w", encoding="ascii") as fh:
        fh.write("\n".join(lines) + "\n")


def _resolve_targets(cfg: RunConfig) -> TargetSet:
    if cfg.targets is not None:
        return TargetSet(cfg.targets)
    if cfg.num_targets is not None:
        return TargetSet.first(cfg.num_targets)
    raise ValueError("one of --targets or --num-targets is required")


def _resolve_state(spec: str, n_items: int, allow_random: bool) -> StateVector:
    if spec == "uniform":
        return uniform_state(n_items)
    if spec.startswith("random:") and allow_random:
        return random_state(n_items, int(spec.split(":", 1)[1]))
    if spec.startswith("file:"):
        state = read_state_file(spec.split(":", 1)[1])
        if state.dim != n_items:
            raise ValueError(
                f"state file dimension {state.dim} does not match --n-items {n_items}"
            )
        return state
    raise ValueError(f"bad state specification {spec!r}")


def _build_instance(cfg: RunConfig) -> SearchInstance:
    targets = _resolve_targets(cfg)
    averaging = _resolve_state(cfg.averaging, cfg.n_items, allow_random=False)
    start = _resolve_state(cfg.start, cfg.n_items, allow_random=True)
    return SearchInstance(
        n_items=cfg.n_items, targets=targets, averaging=averaging, start=start
    )


def _json_text(payload) -> str:
    return json.dumps(payload, indent=2) + "\n"


def _csv_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _csv_text(columns, rows) -> str:
    lines = [",".join(columns)]
    for row in rows:
        lines.append(",".join(_csv_cell(row[col]) for col in columns))
    return "\n".join(lines) + "\n"


def _write_output(data, out_path) -> None:
    if isinstance(data, bytes):
        with open(out_path, "wb") as fh:
            fh.write(data)
        return
    if out_path is None:
        sys.stdout.write(data)
    else:
        with open(out_path, "w", encoding="ascii", newline="\n") as fh:
            fh.write(data)


# ---------------------------------------------------------------------------
# pure grid/table builders (importable without the CLI)


def default_heatmap_n_max(n_items: int) -> int:
    """Two full r=1 quarter-period ceilings, so two periods are visible."""
    phi1 = rotation_angle(math.sqrt(1.0 / n_items))
    return 2 * math.ceil(0.5 * math.pi / phi1)


def heatmap_grid(n_items: int, n_max: int) -> np.ndarray:
    """p(n, r) for n = 0..n_max (rows) and r = 1..N (columns), uniform case."""
    if n_items < 1:
        raise ValueError(f"n_items must be >= 1, got {n_items}")
    if n_max < 0:
        raise ValueError(f"n_max must be >= 0, got {n_max}")
    ns = np.arange(n_max + 1, dtype=float)
    grid = np.empty((n_max + 1, n_items), dtype=float)
    for r in range(1, n_items + 1):
        if r == n_items:
            # v = 1: every index is a target, so p = r/N = 1 for all n.
            grid[:, r - 1] = 1.0
        else:
            phi = rotation_angle(math.sqrt(r / n_items))
            grid[:, r - 1] = 0.5 * (1.0 - np.cos((2.0 * ns + 1.0) * phi))
    return np.clip(grid, 0.0, 1.0)


def heatmap_to_pgm(grid: np.ndarray) -> bytes:
    """Binary P5 image of the grid; 255 = probability 1."""
    pixels = np.rint(np.clip(grid, 0.0, 1.0) * 255.0).astype(np.uint8)
    height, width = pixels.shape
    header = f"P5\n{width} {height}\n255\n".encode("ascii")
    return header + pixels.tobytes(order="C")


SWEEP_COLUMNS = (
    "r",
    "k",
    "n_numeric",
    "n_formula",
    "cost_numeric",
    "cost_formula",
    "cost_exact_at_n_formula",
)


def sweep_rows(n_items: int, r_max: int, k_max: int) -> list:
    """Numeric vs closed-form parallel optima for r = 1..r_max, k = 1..k_max.

    Formula columns are None for k < 2 (and whenever the closed form is out
    of validity); cost_exact_at_n_formula re-evaluates the exact cost at the
    rounded formula n so discrepancies between the two cost expressions are
    visible side by side.
    """
    rows = []
    for r in range(1, r_max + 1):
        for k in range(1, k_max + 1):
            numeric = parallel_plan(r, n_items, k, method="numeric")
            row = {
                "r": r,
                "k": k,
                "n_numeric": numeric.n_int,
                "n_formula": None,
                "cost_numeric": numeric.expected_cost,
                "cost_formula": None,
                "cost_exact_at_n_formula": None,
            }
            if k >= 2:
                try:
                    formula = parallel_plan(r, n_items, k, method="closed_form")
                except ValidityError:
                    pass
                else:
                    row["n_formula"] = formula.n_opt
                    row["cost_formula"] = formula.expected_cost
                    row["cost_exact_at_n_formula"] = parallel_expected_cost(
                        formula.n_int, r, n_items, k
                    )
            rows.append(row)
    return rows


# ---------------------------------------------------------------------------
# commands

SIMULATE_COLUMNS = (
    "n", "p_simulated", "p_analytic",
    "v", "phi", "alpha", "beta", "b", "psi", "w_t", "w_l",
)


def cmd_simulate(cfg: RunConfig):
    instance = _build_instance(cfg)
    lo, hi = _parse_iteration_range(cfg.iterations or "0..10")
    trajectory = success_trajectory(instance, hi)
    ns = np.arange(lo, hi + 1)

    try:
        dec = decompose(instance)
        dec_dict = {
            "v": dec.v, "phi": dec.phi, "alpha": dec.alpha, "beta": dec.beta,
            "b": dec.b, "psi": dec.psi, "w_t": dec.w_t, "w_l": dec.w_l,
        }
        p_analytic = success_prob_analytic(dec, ns)
    except DegenerateOverlapError as err:
        # v = 1: targets absorb the averaging state; the target residual is
        # fixed by Q, so the success probability is constant.
        dec_dict = {
            "v": 1.0, "phi": math.pi, "alpha": err.alpha, "beta": None,
            "b": None, "psi": None, "w_t": err.w_t, "w_l": None,
        }
        p_analytic = np.full(ns.shape, min(err.alpha**2 + err.w_t, 1.0))
    except NoOverlapError:
        # v = 0: Q never transfers weight onto the targets.
        dec_dict = {
            "v": 0.0, "phi": 0.0, "alpha": None, "beta": None,
            "b": None, "psi": None, "w_t": None, "w_l": None,
        }
        p_analytic = np.full(
            ns.shape, success_probability(instance.start, instance.targets)
        )

    rows = [
        {
            "n": int(n),
            "p_simulated": float(trajectory[n]),
            "p_analytic": float(p),
        }
        for n, p in zip(ns, p_analytic)
    ]
    payload = {
        "command": "simulate",
        "n_items": cfg.n_items,
        "targets": list(instance.targets.indices),
        "start": cfg.start,
        "averaging": cfg.averaging,
        "decomposition": dec_dict,
        "rows": rows,
    }
    if cfg.fmt == "csv":
        flat = [dict(row, **dec_dict) for row in payload["rows"]]
        return _csv_text(SIMULATE_COLUMNS, flat)
    return _json_text(payload)


PLAN_COLUMNS = (
    "n_items", "r", "v", "phi", "agents",
    "punct_n_opt", "punct_n_int", "punct_expected_cost",
    "punct_stddev_alt", "punct_stddev_geometric",
    "max_probability_cost", "speedup_ratio",
    "par_num_n", "par_num_cost",
    "par_cf_x", "par_cf_n_opt", "par_cf_n_int", "par_cf_cost",
    "par_cf_cost_exact",
)


def cmd_plan(cfg: RunConfig):
    targets = _resolve_targets(cfg)
    if targets.indices[-1] >= cfg.n_items:
        raise ValueError(
            f"target index {targets.indices[-1]} out of range for --n-items {cfg.n_items}"
        )
    r = targets.r
    v = math.sqrt(r / cfg.n_items)
    phi = rotation_angle(v)
    plan = punctuated_plan(phi)
    baseline = max_probability_cost(phi)

    punct = {
        "n_opt": plan.n_opt,
        "n_int": plan.n_int,
        "expected_cost": plan.expected_cost,
        "stddev_alt": plan.stddev_alt,
        "stddev_geometric": plan.stddev_geometric,
        "max_probability_cost": baseline,
        "speedup_ratio": plan.expected_cost / baseline,
    }
    par_numeric = None
    par_closed = None
    if cfg.agents >= 2:
        numeric = parallel_plan(r, cfg.n_items, cfg.agents, method="numeric")
        par_numeric = {
            "agents": numeric.agents,
            "x": numeric.x,
            "n_int": numeric.n_int,
            "expected_cost": numeric.expected_cost,
        }
        try:
            formula = parallel_plan(r, cfg.n_items, cfg.agents, method="closed_form")
        except ValidityError:
            pass
        else:
            par_closed = {
                "agents": formula.agents,
                "x": formula.x,
                "n_opt": formula.n_opt,
                "n_int": formula.n_int,
                "expected_cost": formula.expected_cost,
                "cost_exact_at_n": parallel_expected_cost(
                    formula.n_int, r, cfg.n_items, cfg.agents
                ),
            }

    payload = {
        "command": "plan",
        "n_items": cfg.n_items,
        "r": r,
        "v": v,
        "phi": phi,
        "agents": cfg.agents,
        "punctuated": punct,
        "parallel_numeric": par_numeric,
        "parallel_closed_form": par_closed,
    }
    if cfg.fmt == "csv":
        row = {
            "n_items": cfg.n_items, "r": r, "v": v, "phi": phi,
            "agents": cfg.agents,
            "punct_n_opt": punct["n_opt"], "punct_n_int": punct["n_int"],
            "punct_expected_cost": punct["expected_cost"],
            "punct_stddev_alt": punct["stddev_alt"],
            "punct_stddev_geometric": punct["stddev_geometric"],
            "max_probability_cost": baseline,
            "speedup_ratio": punct["speedup_ratio"],
            "par_num_n": par_numeric["n_int"] if par_numeric else None,
            "par_num_cost": par_numeric["expected_cost"] if par_numeric else None,
            "par_cf_x": par_closed["x"] if par_closed else None,
            "par_cf_n_opt": par_closed["n_opt"] if par_closed else None,
            "par_cf_n_int": par_closed["n_int"] if par_closed else None,
            "par_cf_cost": par_closed["expected_cost"] if par_closed else None,
            "par_cf_cost_exact": par_closed["cost_exact_at_n"] if par_closed else None,
        }
        return _csv_text(PLAN_COLUMNS, [row])
    return _json_text(payload)


def cmd_heatmap(cfg: RunConfig):
    n_items = cfg.n_items if cfg.n_items is not None else 64
    n_max = (
        _parse_iteration_single(cfg.iterations)
        if cfg.iterations is not None
        else default_heatmap_n_max(n_items)
    )
    grid = heatmap_grid(n_items, n_max)
    if cfg.fmt == "pgm":
        return heatmap_to_pgm(grid)
    if cfg.fmt == "csv":
        columns = ["n"] + [f"r={r}" for r in range(1, n_items + 1)]
        rows = []
        for n in range(n_max + 1):
            row = {"n": n}
            for r in range(1, n_items + 1):
                row[f"r={r}"] = float(grid[n, r - 1])
            rows.append(row)
        return _csv_text(columns, rows)
    payload = {
        "command": "heatmap",
        "n_items": n_items,
        "n_max": n_max,
        "grid": [[float(x) for x in row] for row in grid],
    }
    return _json_text(payload)


def cmd_parallel_sweep(cfg: RunConfig):
    n_items = cfg.n_items if cfg.n_items is not None else 2**20
    r_max = cfg.num_targets if cfg.num_targets is not None else 5
    k_max = cfg.agents
    if r_max < 1 or k_max < 1:
        raise ValueError("r and k sweep bounds must be >= 1")
    rows = sweep_rows(n_items, r_max, k_max)
    if cfg.fmt == "csv":
        return _csv_text(SWEEP_COLUMNS, rows)
    payload = {
        "command": "parallel-sweep",
        "n_items": n_items,
        "r_max": r_max,
        "k_max": k_max,
        "rows": rows,
    }
    return _json_text(payload)


MONTECARLO_COLUMNS = (
    "n_items", "r", "iterations", "agents", "trials", "seed", "model",
    "p_round", "closed_form_cost", "mean", "stderr", "z", "agent_time_mean",
)


def cmd_montecarlo(cfg: RunConfig):
    instance = _build_instance(cfg)
    if cfg.iterations is not None:
        n = _parse_iteration_single(cfg.iterations)
        if n < 1:
            raise ValueError("--iterations must be >= 1 for montecarlo")
    else:
        dec = decompose(instance)
        n = max(1, round(optimal_x_single() / (2.0 * dec.phi)))

    p = success_probability(grover_power(instance, n), instance.targets)
    closed = expected_cost(n, parallel_success(p, cfg.agents))
    if cfg.agents == 1:
        model = "statevector-born"
        est = run_punctuated_statevector(instance, n, cfg.trials, cfg.seed)
    else:
        model = "coin"
        est = run_parallel(p, n, cfg.agents, cfg.trials, cfg.seed)
    z = (est.mean - closed) / est.stderr if est.stderr > 0 else None

    payload = {
        "command": "montecarlo",
        "n_items": cfg.n_items,
        "targets": list(instance.targets.indices),
        "iterations": n,
        "agents": cfg.agents,
        "trials": cfg.trials,
        "seed": cfg.seed,
        "model": model,
        "p_round": p,
        "closed_form_cost": closed,
        "mean": est.mean,
        "stderr": est.stderr,
        "z": z,
        "agent_time_mean": cfg.agents * est.mean,
    }
    if cfg.fmt == "csv":
        row = dict(payload)
        row["r"] = instance.targets.r
        return _csv_text(MONTECARLO_COLUMNS, [row])
    return _json_text(payload)


def _verify_checks(seed: int) -> list:
    """(name, measured, expected, tolerance) tuples for cmd_verify."""
    checks = []

    x = optimal_x_single()
    checks.append(("optimal_x_single", x, 2.3311, 1e-4))
    checks.append(("optimal_x_single_residual", abs(x - math.tan(0.5 * x)), 0.0, 1e-10))

    phi = 0.01
    plan = punctuated_plan(phi)
    checks.append(("n_opt_times_phi", plan.n_opt * phi, 1.1655, 1e-3))
    checks.append(("expected_cost_times_phi", plan.expected_cost * phi, 1.3801, 1e-3))

    big_n = 2**20
    plan_big = punctuated_plan(rotation_angle(math.sqrt(1.0 / big_n)))
    checks.append(
        (
            "single_target_cost_over_sqrt_n",
            plan_big.expected_cost / math.sqrt(big_n),
            0.6900,
            0.005 * 0.6900,
        )
    )

    instance = uniform_instance(16, 1)  # v = 1/4
    trajectory = success_trajectory(instance, 20)
    closed = np.array([grover_case_prob(0.25, n) for n in range(21)])
    checks.append(
        ("grover_case_v_quarter_max_dev", float(np.max(np.abs(trajectory - closed))), 0.0, 1e-10)
    )
    dec = decompose(instance)
    n_first, _ = first_maximum(dec)
    checks.append(
        (
            "grover_first_max_dev",
            abs(n_first - (0.5 * math.pi / dec.phi - 0.5)),
            0.0,
            1e-9,
        )
    )

    dev = 0.0
    for r, n_items in ((1, 64), (2, 256), (1, 1024)):
        v = math.sqrt(r / n_items)
        for n in range(1, 11):
            lhs = parallel_expected_cost(n, r, n_items, 1)
            rhs = expected_cost(n, grover_case_prob(v, n))
            dev = max(dev, abs(lhs - rhs))
    checks.append(("k1_reduction_max_dev", dev, 0.0, 1e-12))

    norm_dev = alpha_dev = beta_dev = 0.0
    n_items = 64
    r_cycle = (1, 4, 16)
    for i in range(20):
        r = r_cycle[i % 3]
        start = random_state(n_items, seed + i)
        targets = TargetSet.first(r)
        mapping = biham_mapping(start, targets)
        total = (
            r * abs(mapping.k_bar) ** 2
            + r * mapping.sigma_k**2
            + (n_items - r) * abs(mapping.l_bar) ** 2
            + (n_items - r) * mapping.sigma_l**2
        )
        norm_dev = max(norm_dev, abs(total - 1.0))
        dec_i = decompose(
            SearchInstance(
                n_items=n_items,
                targets=targets,
                averaging=uniform_state(n_items),
                start=start,
            )
        )
        alpha_dev = max(alpha_dev, abs(dec_i.alpha - abs(mapping.k_bar) * math.sqrt(r)))
        beta_dev = max(
            beta_dev, abs(dec_i.beta - abs(mapping.l_bar) * math.sqrt(n_items - r))
        )
    checks.append(("mean_amplitude_normalization_max_dev", norm_dev, 0.0, 1e-10))
    checks.append(("alpha_vs_mean_target_amplitude_max_dev", alpha_dev, 0.0, 1e-10))
    checks.append(("beta_vs_mean_other_amplitude_max_dev", beta_dev, 0.0, 1e-10))
    return checks


def cmd_verify(cfg: RunConfig):
    checks = _verify_checks(cfg.seed)
    lines = []
    all_pass = True
    for name, measured, expected, tol in checks:
        ok = abs(measured - expected) <= tol
        all_pass = all_pass and ok
        lines.append(
            f"{name} = {measured:.10g} (expected {expected:g} +/- {tol:g}): "
            f"{'PASS' if ok else 'FAIL'}"
        )
    lines.append("all checks passed" if all_pass else "some checks FAILED")
    return "\n".join(lines) + "\n", 0 if all_pass else 1


# ---------------------------------------------------------------------------
# argument parsing


def _add_output_args(parser, formats) -> None:
    parser.add_argument("--out", metavar="PATH", help="output file (default: stdout)")
    parser.add_argument(
        "--format", choices=formats, default="json", help="output format"
    )


def _add_target_args(parser) -> None:
    group = parser.add_mutually_exclusive_group(required=True)
    group.add_argument(
        "--targets", metavar="I,J,...", help="explicit comma-separated target indices"
    )
    group.add_argument(
        "--num-targets", type=int, metavar="R",
        help="number of targets, placed at indices 0..R-1",
    )


def _add_state_args(parser) -> None:
    parser.add_argument(
        "--start", default="uniform", metavar="SPEC",
        help="start state: uniform | random:<seed> | file:<path> (default uniform)",
    )
    parser.add_argument(
        "--averaging", default="uniform", metavar="SPEC",
        help="averaging state: uniform | file:<path> (default uniform)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gqsearch",
        description="Generalized quantum search: exact simulation, closed-form "
        "probability model, and optimal restart/parallel strategies.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_sim = sub.add_parser(
        "simulate",
        help="simulator vs closed form over an iteration range",
        description="Emit p_simulated and p_analytic for each n, plus the "
        "rotation-plane decomposition. CSV columns: "
        + ",".join(SIMULATE_COLUMNS),
    )
    p_sim.add_argument("--n-items", type=int, required=True, metavar="N")
    _add_target_args(p_sim)
    _add_state_args(p_sim)
    p_sim.add_argument(
        "--iterations", default="0..10", metavar="A..B",
        help="iteration range, single n or a..b (default 0..10)",
    )
    _add_output_args(p_sim, ["json", "csv"])

    p_plan = sub.add_parser(
        "plan",
        help="optimal punctuated and k-parallel plans (uniform case)",
        description="Plans assume uniform averaging and restart states "
        "(v = sqrt(r/N)). CSV columns: " + ",".join(PLAN_COLUMNS),
    )
    p_plan.add_argument("--n-items", type=int, required=True, metavar="N")
    _add_target_args(p_plan)
    p_plan.add_argument(
        "--agents", type=int, default=1, metavar="K",
        help="agent count; K >= 2 adds the parallel plans (default 1)",
    )
    _add_output_args(p_plan, ["json", "csv"])

    p_heat = sub.add_parser(
        "heatmap",
        help="success-probability grid p(n, r), uniform search",
        description="Grid rows are n = 0..n_max, columns r = 1..N. "
        "--iterations sets n_max (default: two r=1 periods). "
        "CSV columns: n,r=1,...,r=N. PGM is binary P5, maxval 255.",
    )
    p_heat.add_argument("--n-items", type=int, default=64, metavar="N")
    p_heat.add_argument(
        "--iterations", default=None, metavar="NMAX", help="largest iteration count"
    )
    _add_output_args(p_heat, ["json", "csv", "pgm"])

    p_sweep = sub.add_parser(
        "parallel-sweep",
        help="numeric vs closed-form parallel optima over (r, k)",
        description="Sweeps r = 1..R (via --num-targets, default 5) and "
        "k = 1..K (via --agents, default 64). Formula columns are empty "
        "for k < 2. CSV columns: " + ",".join(SWEEP_COLUMNS),
    )
    p_sweep.add_argument("--n-items", type=int, default=2**20, metavar="N")
    p_sweep.add_argument(
        "--num-targets", type=int, default=5, metavar="R", help="largest r (default 5)"
    )
    p_sweep.add_argument(
        "--agents", type=int, default=64, metavar="K", help="largest k (default 64)"
    )
    _add_output_args(p_sweep, ["json", "csv"])

    p_mc = sub.add_parser(
        "montecarlo",
        help="seeded restart experiment vs the closed-form cost",
        description="agents=1 measures Q^n|s> with full Born sampling per "
        "round; agents>=2 races k coins with p taken from the simulated "
        "state. Default --iterations is the punctuated optimum. "
        "CSV columns: " + ",".join(MONTECARLO_COLUMNS),
    )
    p_mc.add_argument("--n-items", type=int, required=True, metavar="N")
    _add_target_args(p_mc)
    _add_state_args(p_mc)
    p_mc.add_argument("--iterations", default=None, metavar="N")
    p_mc.add_argument("--agents", type=int, default=1, metavar="K")
    p_mc.add_argument("--trials", type=int, default=100_000, metavar="T")
    p_mc.add_argument("--seed", type=int, default=0, metavar="S")
    _add_output_args(p_mc, ["json", "csv"])

    p_verify = sub.add_parser(
        "verify",
        help="run the special-case identity and constant checks",
        description="Prints one line per check with measured vs expected; "
        "exit status 0 iff all pass.",
    )
    p_verify.add_argument("--seed", type=int, default=0, metavar="S")
    p_verify.add_argument("--out", metavar="PATH", help="output file (default: stdout)")

    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    targets = getattr(args, "targets", None)
    return RunConfig(
        command=args.command,
        n_items=getattr(args, "n_items", None),
        targets=_parse_target_list(targets) if targets is not None else None,
        num_targets=getattr(args, "num_targets", None),
        start=getattr(args, "start", "uniform"),
        averaging=getattr(args, "averaging", "uniform"),
        iterations=getattr(args, "iterations", None),
        agents=getattr(args, "agents", 1),
        trials=getattr(args, "trials", 100_000),
        seed=getattr(args, "seed", 0),
        out=getattr(args, "out", None),
        fmt=getattr(args, "format", "json"),
    )


_COMMANDS = {
    "simulate": cmd_simulate,
    "plan": cmd_plan,
    "heatmap": cmd_heatmap,
    "parallel-sweep": cmd_parallel_sweep,
    "montecarlo": cmd_montecarlo,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _config_from_args(args)
        if cfg.fmt == "pgm" and cfg.out is None:
            raise ValueError("--format pgm requires --out (binary output)")
        if cfg.command == "verify":
            text, code = cmd_verify(cfg)
            _write_output(text, cfg.out)
            return code
        data = _COMMANDS[cfg.command](cfg)
        _write_output(data, cfg.out)
        return 0
    except (GQSearchError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
