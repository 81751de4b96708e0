"""Exact dense simulation of the generalized amplitude-amplification iteration.

One iteration of the operator Q first flips the phase of every target basis
state (the oracle reflection) and then reflects about the averaging state
|a>.  Both factors are applied as O(N) passes over the amplitude array; no
N x N matrix is ever materialized, so dimensions up to 2**20 stay cheap.

All operations are pure: they return new values and never mutate inputs.
Norm drift is checked after every iteration and raises instead of being
repaired silently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    InvalidDimensionError,
    InvalidTargetError,
    NonUnitAxisError,
    NonUnitStateError,
)

# Drift beyond this raises NonUnitStateError / NonUnitAxisError.
NORM_TOL = 1e-9


class StateVector:
    """Unit-norm complex amplitude vector over N measurement-basis states.

    Parameters
    ----------
    amplitudes : array_like of complex
        Length-N amplitude vector; must already be unit norm.  The input
        is copied, never aliased.
    """

    __slots__ = ("dim", "amplitudes")

    def __init__(self, amplitudes):
        amps = np.array(amplitudes, dtype=np.complex128)
        if amps.ndim != 1 or amps.size < 1:
            raise InvalidDimensionError(
                "amplitudes must be a non-empty one-dimensional array"
            )
        nrm = float(np.linalg.norm(amps))
        if abs(nrm - 1.0) > NORM_TOL:
            raise NonUnitStateError(f"state norm is {nrm!r}, not 1")
        self.dim = int(amps.size)
        self.amplitudes = amps

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def __repr__(self) -> str:  # pragma: no cover
        return f"StateVector(dim={self.dim})"


@dataclass(frozen=True)
class TargetSet:
    """Sorted set of distinct marked basis indices.

    Indices are canonicalized to a sorted tuple.  Duplicates are an error,
    not a normalization.  Range checks against a dimension happen at the
    point of use, since a TargetSet alone carries no N.
    """

    indices: tuple

    def __post_init__(self):
        try:
            idx = tuple(sorted(int(i) for i in self.indices))
        except (TypeError, ValueError) as exc:
            raise InvalidTargetError(f"bad target indices: {exc}") from exc
        if not idx:
            raise InvalidTargetError("target set is empty")
        if idx[0] < 0:
            raise InvalidTargetError(f"negative target index {idx[0]}")
        if len(set(idx)) != len(idx):
            raise InvalidTargetError("duplicate target indices")
        object.__setattr__(self, "indices", idx)

    @property
    def r(self) -> int:
        return len(self.indices)

    @classmethod
    def first(cls, r: int) -> "TargetSet":
        """Targets at indices 0..r-1 (count-style specification)."""
        return cls(tuple(range(r)))


@dataclass(frozen=True)
class SearchInstance:
    """Full problem definition: (N, targets, averaging state, start state)."""

    n_items: int
    targets: TargetSet
    averaging: StateVector
    start: StateVector

    def __post_init__(self):
        if self.n_items < 1:
            raise InvalidDimensionError(f"n_items must be >= 1, got {self.n_items}")
        if self.averaging.dim != self.n_items or self.start.dim != self.n_items:
            raise InvalidDimensionError(
                f"state dimensions ({self.averaging.dim}, {self.start.dim}) "
                f"do not match n_items={self.n_items}"
            )
        if self.targets.indices[-1] >= self.n_items:
            raise InvalidTargetError(
                f"target index {self.targets.indices[-1]} out of range "
                f"for n_items={self.n_items}"
            )


def uniform_state(n_items: int) -> StateVector:
    """The uniform superposition: every amplitude 1/sqrt(N), real."""
    if n_items < 1:
        raise InvalidDimensionError(f"n_items must be >= 1, got {n_items}")
    return StateVector(np.full(n_items, 1.0 / math.sqrt(n_items), dtype=np.complex128))


def random_state(n_items: int, seed: int) -> StateVector:
    """Haar-like random state: complex-Gaussian components, normalized.

    Deterministic for a fixed seed; the distribution is rotation invariant,
    so test states are unbiased over the unit sphere.
    """
    if n_items < 1:
        raise InvalidDimensionError(f"n_items must be >= 1, got {n_items}")
    rng = np.random.default_rng(seed)
    z = rng.standard_normal(n_items) + 1j * rng.standard_normal(n_items)
    return StateVector(z / np.linalg.norm(z))


def uniform_instance(n_items: int, targets) -> SearchInstance:
    """Uniform averaging and start states; targets may be a TargetSet or a count."""
    if isinstance(targets, int):
        targets = TargetSet.first(targets)
    u = uniform_state(n_items)
    return SearchInstance(n_items=n_items, targets=targets, averaging=u, start=u)


def _target_index_array(targets: TargetSet, dim: int) -> np.ndarray:
    if targets.indices[-1] >= dim:
        raise InvalidTargetError(
            f"target index {targets.indices[-1]} out of range for dim={dim}"
        )
    return np.asarray(targets.indices, dtype=np.intp)


def oracle_reflect(state: StateVector, targets: TargetSet) -> StateVector:
    """Flip the phase of every target amplitude; all others unchanged."""
    idx = _target_index_array(targets, state.dim)
    amps = state.amplitudes.copy()
    amps[idx] = -amps[idx]
    return StateVector(amps)


def reflect_about(state: StateVector, axis: StateVector) -> StateVector:
    """Inversion about the axis: 2 <axis|state> |axis> - |state>."""
    if axis.dim != state.dim:
        raise InvalidDimensionError(
            f"axis dim {axis.dim} does not match state dim {state.dim}"
        )
    anorm = float(np.linalg.norm(axis.amplitudes))
    if abs(anorm - 1.0) > NORM_TOL:
        raise NonUnitAxisError(f"axis norm is {anorm!r}, not 1")
    inner = np.vdot(axis.amplitudes, state.amplitudes)
    return StateVector(2.0 * inner * axis.amplitudes - state.amplitudes)


def _q_step(amps: np.ndarray, idx: np.ndarray, a: np.ndarray) -> np.ndarray:
    # Oracle first, then the averaging reflection.
    out = amps.copy()
    out[idx] = -out[idx]
    inner = np.vdot(a, out)
    return 2.0 * inner * a - out


def _check_drift(amps: np.ndarray, step: int) -> None:
    nrm = float(np.linalg.norm(amps))
    if abs(nrm - 1.0) > NORM_TOL:
        raise NonUnitStateError(f"norm drifted to {nrm!r} after {step} iterations")


def grover_power(instance: SearchInstance, n: int) -> StateVector:
    """Q^n applied to the start state; n = 0 returns the start unchanged."""
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    idx = _target_index_array(instance.targets, instance.n_items)
    a = instance.averaging.amplitudes
    amps = instance.start.amplitudes.copy()
    for step in range(1, n + 1):
        amps = _q_step(amps, idx, a)
        _check_drift(amps, step)
    return StateVector(amps)


def success_trajectory(instance: SearchInstance, n_max: int) -> np.ndarray:
    """Success probability after n iterations for n = 0..n_max (one sweep)."""
    if n_max < 0:
        raise ValueError(f"n_max must be non-negative, got {n_max}")
    idx = _target_index_array(instance.targets, instance.n_items)
    a = instance.averaging.amplitudes
    amps = instance.start.amplitudes.copy()
    probs = np.empty(n_max + 1, dtype=float)
    probs[0] = float(np.sum(np.abs(amps[idx]) ** 2))
    for step in range(1, n_max + 1):
        amps = _q_step(amps, idx, a)
        _check_drift(amps, step)
        probs[step] = float(np.sum(np.abs(amps[idx]) ** 2))
    return probs


def success_probability(state: StateVector, targets: TargetSet) -> float:
    """Total probability of measuring any target index."""
    idx = _target_index_array(targets, state.dim)
    return float(np.sum(np.abs(state.amplitudes[idx]) ** 2))
