"""Brute-force 2^n-amplitude simulation of the imperfect Grover iteration.

Qubit ``k`` is bit ``k`` of the basis index (little-endian).  The Walsh-Hadamard
transform is a product of one-qubit gates

    R(eps) = [[cos(pi/4 + eps),  sin(pi/4 + eps)],
              [sin(pi/4 + eps), -cos(pi/4 + eps)]]

which is a real reflection: unitary and self-inverse for every ``eps``, and
the ordinary Hadamard gate at ``eps = 0``.

The global sign of ``Q = -I_gamma U^-1 I_tau U`` is dropped.  States live in
the measurement frame: the run starts from ``U|0...0>`` and each iteration
applies ``U I_gamma U^-1 I_tau``, i.e. ``Q`` conjugated by ``U``.  The marked
amplitude of the state is then ``<tau|U Q^j|gamma>``, matching the reduced
model.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import ConfigurationError, DomainError
from .reduced_model import PhaseAngles, Trajectory, clamp_probabilities

MAX_QUBITS = 26


@dataclass(frozen=True)
class StateVector:
    amplitudes: np.ndarray
    n: int

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex)
        if amps.shape != (2**self.n,):
            raise DomainError(f"expected {2**self.n} amplitudes, got shape {amps.shape}")
        object.__setattr__(self, "amplitudes", amps)

    def norm(self) -> float:
        return float(np.vdot(self.amplitudes, self.amplitudes).real)


@dataclass(frozen=True)
class HadamardGateSpec:
    """Per-qubit angle offsets of the Walsh-Hadamard gates (0 is ideal)."""

    per_qubit_angle_offset: tuple[float, ...]

    def __post_init__(self):
        eps = tuple(float(e) for e in self.per_qubit_angle_offset)
        for e in eps:
            if not math.isfinite(e) or abs(e) >= math.pi / 4:
                raise DomainError(f"angle offset must be finite with |eps| < pi/4, got {e!r}")
        object.__setattr__(self, "per_qubit_angle_offset", eps)

    @classmethod
    def ideal(cls, n: int) -> "HadamardGateSpec":
        return cls((0.0,) * n)

    @classmethod
    def uniform(cls, n: int, eps: float) -> "HadamardGateSpec":
        return cls((eps,) * n)

    @property
    def n(self) -> int:
        return len(self.per_qubit_angle_offset)

    def overlap(self, index: int) -> float:
        """``<index|U|0...0>``, the overlap that replaces ``1/sqrt(N)``."""
        out = 1.0
        for k, eps in enumerate(self.per_qubit_angle_offset):
            angle = math.pi / 4 + eps
            out *= math.sin(angle) if (index >> k) & 1 else math.cos(angle)
        return out


def _check_qubits(n: int):
    if int(n) != n or n < 1:
        raise DomainError(f"qubit count must be an integer >= 1, got {n!r}")
    if n > MAX_QUBITS:
        raise ConfigurationError(f"full simulation is capped at {MAX_QUBITS} qubits, got {n}")


def _check_index(n: int, index: int):
    if not 0 <= index < 2**n:
        raise DomainError(f"basis index {index} out of range for {n} qubits")


def prepare_basis_state(n: int, index: int) -> StateVector:
    _check_qubits(n)
    _check_index(n, index)
    amps = np.zeros(2**n, dtype=complex)
    amps[index] = 1.0
    return StateVector(amps, n)


def _walsh_hadamard_inplace(amps: np.ndarray, n: int, offsets: Sequence[float]):
    for k, eps in enumerate(offsets):
        c = math.cos(math.pi / 4 + eps)
        s = math.sin(math.pi / 4 + eps)
        view = amps.reshape(-1, 2, 2**k)
        lo = view[:, 0, :].copy()
        hi = view[:, 1, :]
        view[:, 0, :] = c * lo + s * hi
        view[:, 1, :] = s * lo - c * hi


def apply_walsh_hadamard(state: StateVector, spec: HadamardGateSpec) -> StateVector:
    """Apply the (possibly imperfect) gate to every qubit; O(n 2^n)."""
    if spec.n != state.n:
        raise DomainError(f"gate spec covers {spec.n} qubits, state has {state.n}")
    amps = state.amplitudes.copy()
    _walsh_hadamard_inplace(amps, state.n, spec.per_qubit_angle_offset)
    return StateVector(amps, state.n)


def apply_selective_phase(state: StateVector, index: int, angle: float) -> StateVector:
    """Multiply the amplitude at ``index`` by ``exp(i angle)``."""
    _check_index(state.n, index)
    amps = state.amplitudes.copy()
    amps[index] *= np.exp(1j * angle)
    return StateVector(amps, state.n)


def _iterate_inplace(amps, n, marked, theta, phi, offsets):
    amps[marked] *= np.exp(1j * phi)
    _walsh_hadamard_inplace(amps, n, offsets)
    amps[0] *= np.exp(1j * theta)
    _walsh_hadamard_inplace(amps, n, offsets)


def grover_iteration_full(state: StateVector, marked: int, angles: PhaseAngles,
                          spec: HadamardGateSpec) -> StateVector:
    """One iteration ``U I_gamma(theta) U^-1 I_tau(phi)`` with ``|gamma> = |0...0>``."""
    _check_index(state.n, marked)
    if spec.n != state.n:
        raise DomainError(f"gate spec covers {spec.n} qubits, state has {state.n}")
    amps = state.amplitudes.copy()
    _iterate_inplace(amps, state.n, marked, angles.theta, angles.phi, spec.per_qubit_angle_offset)
    return StateVector(amps, state.n)


def success_probability(state: StateVector, marked: int) -> float:
    _check_index(state.n, marked)
    return float(clamp_probabilities(abs(state.amplitudes[marked]) ** 2))


def run_full_search(n: int, marked: int, angles: PhaseAngles | Sequence[PhaseAngles],
                    spec: HadamardGateSpec | None = None, j_max: int = 0) -> Trajectory:
    """Prepare ``U|0...0>`` and iterate ``j_max`` times, recording the marked probability.

    ``angles`` is either one ``PhaseAngles`` reused every step or a schedule
    with at least ``j_max`` entries.
    """
    _check_qubits(n)
    _check_index(n, marked)
    if spec is None:
        spec = HadamardGateSpec.ideal(n)
    if spec.n != n:
        raise DomainError(f"gate spec covers {spec.n} qubits, need {n}")
    if j_max < 0:
        raise DomainError("j_max must be non-negative")
    if isinstance(angles, PhaseAngles):
        schedule = [angles] * j_max
    else:
        schedule = list(angles)
        if len(schedule) < j_max:
            raise DomainError(f"schedule has {len(schedule)} entries, need {j_max}")

    offsets = spec.per_qubit_angle_offset
    amps = np.zeros(2**n, dtype=complex)
    amps[0] = 1.0
    _walsh_hadamard_inplace(amps, n, offsets)
    probs = np.empty(j_max + 1)
    probs[0] = abs(amps[marked]) ** 2
    for j in range(j_max):
        a = schedule[j]
        _iterate_inplace(amps, n, marked, a.theta, a.phi, offsets)
        probs[j + 1] = abs(amps[marked]) ** 2
    return Trajectory(probs)
