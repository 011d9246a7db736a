"""Phase-mismatch error regimes and the imperfect-Hadamard leakage model.

Phase models
    ``EM1``  constant mismatch ``delta0``
    ``EM2``  fresh Gaussian mismatch each iteration, mean 0, std ``s``
    ``EM3``  fresh Gaussian mismatch each iteration, mean ``delta0``, std ``s``

Hadamard models
    ``HadamardSystematic``  every one-qubit gate offset by ``epsilon``
    ``HadamardLeakage``     per-iteration amplitude loss ``delta1`` out of the
                            search plane
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import ClassVar, Union

import numpy as np

from .errors import DomainError, RegimeError
from .reduced_model import PhaseAngles, Trajectory, clamp_probabilities
from .rng import RngStream


def _finite(**values):
    for name, v in values.items():
        if not math.isfinite(v):
            raise DomainError(f"{name} must be finite, got {v!r}")


def _spread(s):
    _finite(s=s)
    if s < 0:
        raise DomainError(f"standard deviation must be >= 0, got {s!r}")


@dataclass(frozen=True)
class EM1:
    delta0: float
    name: ClassVar[str] = "EM1"

    def __post_init__(self):
        _finite(delta0=self.delta0)

    @property
    def params(self):
        return self.delta0, 0.0


@dataclass(frozen=True)
class EM2:
    s: float
    name: ClassVar[str] = "EM2"

    def __post_init__(self):
        _spread(self.s)

    @property
    def delta0(self) -> float:
        return 0.0

    @property
    def params(self):
        return 0.0, self.s


@dataclass(frozen=True)
class EM3:
    delta0: float
    s: float
    name: ClassVar[str] = "EM3"

    def __post_init__(self):
        _finite(delta0=self.delta0)
        _spread(self.s)

    @property
    def params(self):
        return self.delta0, self.s


@dataclass(frozen=True)
class HadamardSystematic:
    epsilon: float
    name: ClassVar[str] = "HSYS"

    def __post_init__(self):
        _finite(epsilon=self.epsilon)
        if abs(self.epsilon) >= math.pi / 4:
            raise DomainError(f"|epsilon| must be < pi/4, got {self.epsilon!r}")

    @property
    def params(self):
        return self.epsilon, 0.0


@dataclass(frozen=True)
class HadamardLeakage:
    delta1: float
    name: ClassVar[str] = "HLEAK"

    def __post_init__(self):
        _finite(delta1=self.delta1)
        if not 0.0 <= self.delta1 < 1.0:
            raise DomainError(f"delta1 must lie in [0, 1), got {self.delta1!r}")

    @property
    def params(self):
        return self.delta1, 0.0


PhaseModel = Union[EM1, EM2, EM3]
ErrorModel = Union[EM1, EM2, EM3, HadamardSystematic, HadamardLeakage]
PHASE_MODELS = (EM1, EM2, EM3)


def is_deterministic(model: ErrorModel) -> bool:
    """True when repeated runs of ``model`` are identical (no random draws)."""
    if isinstance(model, (EM2, EM3)):
        return model.s == 0.0
    return True


def sample_phase_mismatches(model: PhaseModel, rng: RngStream, count: int) -> np.ndarray:
    """Draw ``count`` successive mismatches from ``model``; EM1 consumes no randomness."""
    if isinstance(model, EM1):
        return np.full(count, float(model.delta0))
    if isinstance(model, (EM2, EM3)):
        return model.delta0 + model.s * rng.normals(count)
    raise DomainError(f"{type(model).__name__} is not a phase-mismatch model")


def sample_phase_mismatch(model: PhaseModel, rng: RngStream) -> float:
    return float(sample_phase_mismatches(model, rng, 1)[0])


def split_mismatch_into_angles(delta: float) -> PhaseAngles:
    """Symmetric split ``theta = pi + delta/2``, ``phi = pi - delta/2``."""
    return PhaseAngles(math.pi + delta / 2.0, math.pi - delta / 2.0)


def split_mismatch_arrays(delta):
    """Vectorised :func:`split_mismatch_into_angles`; returns ``(theta, phi)`` arrays."""
    delta = np.asarray(delta, dtype=float)
    return math.pi + delta / 2.0, math.pi - delta / 2.0


# --- leakage out of the search plane ---------------------------------------


def build_leakage_operator(beta: float, delta1: float) -> np.ndarray:
    """Rotation by ``beta`` whose second column is damped by ``1 - delta1``.

    Not unitary for ``delta1 > 0``; its spectral norm is at most 1.
    """
    if not 0.0 <= delta1 < 1.0:
        raise DomainError(f"delta1 must lie in [0, 1), got {delta1!r}")
    c, s = math.cos(beta), math.sin(beta)
    return np.array([[c, s * (1.0 - delta1)],
                     [-s, c * (1.0 - delta1)]])


def leakage_amplitude_first_order(j: int, beta: float, delta1: float) -> float:
    if j < 1:
        raise DomainError("j must be >= 1")
    if (j - 1) * delta1 / 2.0 >= 1.0:
        raise RegimeError("first-order leakage amplitude requires (j-1) delta1 / 2 < 1")
    return abs((1.0 - (j - 1) * delta1 / 2.0) * math.sin(j * beta))


def _leakage_x(N, delta1):
    x = math.pi * math.sqrt(N) * delta1 / 4.0
    if x >= 1.0:
        raise RegimeError(f"pi sqrt(N) delta1 / 4 = {x:.4g} must be < 1")
    return x


def leakage_success_rate(N: float, delta1: float) -> float:
    """Success rate ``1 - pi sqrt(N) delta1 / 4`` at ``j ~ pi sqrt(N) / 4``."""
    return 1.0 - _leakage_x(N, delta1)


def leakage_success_rate_squared(N: float, delta1: float) -> float:
    """Unexpanded form ``(1 - pi sqrt(N) delta1 / 8)^2`` of :func:`leakage_success_rate`."""
    return (1.0 - _leakage_x(N, delta1) / 2.0) ** 2


def max_database_size_hadamard(delta1: float) -> float:
    """Largest ``N`` with leakage success rate >= 1/2: ``4 / (pi^2 delta1^2)``."""
    if delta1 == 0:
        return math.inf
    return 4.0 / (math.pi**2 * delta1 * delta1)


def leakage_optimal_j(N: float) -> int:
    return math.ceil(math.pi * math.sqrt(N) / 4.0)


def simulate_leakage_trajectory(N: int, delta1: float, j_max: int,
                                return_norms: bool = False):
    """Iterate the leakage operator from the prepared state.

    Each step rotates by the ideal Grover angle ``2 arcsin(1/sqrt(N))``.  The
    start vector is ``(cos b, -sin b)`` with ``b = arcsin(1/sqrt(N))``: the
    prepared state in the orientation where the operator rotates it toward
    the marked axis, so ``delta1 = 0`` reproduces ``sin^2((2j + 1) b)``.
    Returns the trajectory of ``|component 2|^2`` (and the state norms if
    ``return_norms``).
    """
    if N < 2:
        raise DomainError(f"N must be >= 2, got {N!r}")
    if j_max < 0:
        raise DomainError("j_max must be non-negative")
    b = math.asin(1.0 / math.sqrt(N))
    op = build_leakage_operator(2.0 * b, delta1)
    v = np.array([math.cos(b), -math.sin(b)])
    probs = np.empty(j_max + 1)
    norms = np.empty(j_max + 1)
    probs[0], norms[0] = v[1] ** 2, 1.0
    for j in range(1, j_max + 1):
        v = op @ v
        probs[j] = v[1] ** 2
        norms[j] = math.hypot(v[0], v[1])
    traj = Trajectory(clamp_probabilities(probs))
    return (traj, norms) if return_norms else traj
