"""Grover iteration with imperfect phase inversions, restricted to its 2D invariant subspace.

With an exact (unitary, self-inverse) Walsh-Hadamard transform ``U``, the
iteration ``Q = -I_gamma U^-1 I_tau U`` leaves the plane spanned by

    |1> = (|gamma> - u U^-1|tau>) / sqrt(1 - u^2)
    |2> = U^-1 |tau>,            u = <tau|U|gamma>

invariant.  :func:`build_grover_operator_2d` returns ``Q`` in that basis in
the row-major layout ``[[Q11, Q12], [Q21, Q22]]`` with

    Q11 = -e^{i theta} - u^2 (1 - e^{i theta})
    Q12 = (1 - e^{i theta}) u sqrt(1 - u^2)
    Q21 = e^{i phi} (1 - e^{i theta}) u* sqrt(1 - u^2)
    Q22 = -e^{i phi} [1 - (1 - e^{i theta}) u^2]

Sign and orientation convention
-------------------------------
This layout is the *transpose* of the column-vector matrix of ``Q``: the
entry ``Q12`` is ``<2|Q|1>`` and ``Q21`` is ``<1|Q|2>``.  States are therefore
propagated as row vectors, ``psi_{j+1} = psi_j @ Q``, starting from the
prepared state ``psi_0 = (sqrt(1 - u^2), u)``.  The success probability after
``j`` iterations is ``|psi_j[1]|^2``, which for ``theta = phi = pi`` equals
``sin^2((2j + 1) arcsin u)``.  This is the only place the convention is fixed;
every other routine in the package goes through :func:`evolve_batch`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import DomainError, ProbabilityError

PROBABILITY_SLACK = 1e-9
_SERIES_LIMIT = 1e-12


def clamp_probabilities(p):
    """Clamp rounding overshoot in ``(1, 1 + 1e-9]`` to 1; reject larger values."""
    p = np.asarray(p, dtype=float)
    if np.any(p > 1.0 + PROBABILITY_SLACK):
        raise ProbabilityError(f"probability {float(np.max(p))!r} exceeds 1")
    return np.minimum(p, 1.0)


def _require_finite(**values):
    for name, value in values.items():
        if not np.all(np.isfinite(value)):
            raise DomainError(f"{name} must be finite, got {value!r}")


@dataclass(frozen=True)
class PhaseAngles:
    """Inversion angles: ``theta`` acts on the prepared state, ``phi`` on the marked one."""

    theta: float
    phi: float

    def __post_init__(self):
        _require_finite(theta=self.theta, phi=self.phi)

    @classmethod
    def from_offsets(cls, theta0: float, phi0: float) -> "PhaseAngles":
        return cls(math.pi + theta0, math.pi + phi0)

    @property
    def theta0(self) -> float:
        return self.theta - math.pi

    @property
    def phi0(self) -> float:
        return self.phi - math.pi

    @property
    def delta(self) -> float:
        return self.theta - self.phi


IDEAL = PhaseAngles(math.pi, math.pi)


@dataclass(frozen=True)
class ReducedParams:
    """Size-dependent quantities of the reduced model.

    ``beta`` is the small-angle rate ``sqrt(N-1)/N`` used by the closed forms;
    ``beta_arcsin`` is ``arcsin(u)``, the exact half-rotation per ideal step.
    """

    n: int
    u_tau_gamma: float | None = None
    delta: float = 0.0

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 1:
            raise DomainError(f"qubit count must be an integer >= 1, got {self.n!r}")
        if self.u_tau_gamma is None:
            object.__setattr__(self, "u_tau_gamma", 1.0 / math.sqrt(self.N))
        _require_finite(u_tau_gamma=self.u_tau_gamma, delta=self.delta)
        if not 0.0 < self.u_tau_gamma <= 1.0:
            raise DomainError(f"u_tau_gamma must lie in (0, 1], got {self.u_tau_gamma!r}")

    @property
    def N(self) -> int:
        return 2**self.n

    @property
    def beta(self) -> float:
        return math.sqrt(self.N - 1) / self.N

    @property
    def beta_arcsin(self) -> float:
        return math.asin(self.u_tau_gamma)

    @property
    def beta_prime(self) -> float:
        return 2.0 * self.beta

    @property
    def lam(self) -> float:
        return math.hypot(self.delta, self.beta_prime)


@dataclass(frozen=True)
class Trajectory:
    """Success probability after ``j = 0, 1, ...`` iterations."""

    probabilities: np.ndarray
    peak_j: int = field(init=False)
    peak_p: float = field(init=False)

    def __post_init__(self):
        p = clamp_probabilities(self.probabilities)
        p.setflags(write=False)
        object.__setattr__(self, "probabilities", p)
        j, best = find_peak(p)
        object.__setattr__(self, "peak_j", j)
        object.__setattr__(self, "peak_p", best)

    def __len__(self):
        return len(self.probabilities)


def find_peak(probabilities) -> tuple[int, float]:
    """First index of the maximum probability, and that maximum."""
    if isinstance(probabilities, Trajectory):
        probabilities = probabilities.probabilities
    p = np.asarray(probabilities, dtype=float)
    if p.size == 0:
        raise DomainError("cannot locate the peak of an empty trajectory")
    j = int(np.argmax(p))
    return j, float(p[j])


def _operator_entries(theta, phi, u):
    e = np.exp(1j * np.asarray(theta, dtype=float))
    f = np.exp(1j * np.asarray(phi, dtype=float))
    r = math.sqrt(1.0 - u * u)
    q11 = -e - u * u * (1.0 - e)
    q12 = (1.0 - e) * u * r
    q21 = f * (1.0 - e) * u * r
    q22 = -f * (1.0 - (1.0 - e) * u * u)
    return q11, q12, q21, q22


def build_grover_operator_2d(angles: PhaseAngles, params: ReducedParams) -> np.ndarray:
    """The exact 2x2 Grover operator in the ``{|1>, |2>}`` basis (row-vector layout)."""
    u = params.u_tau_gamma
    if params.N < 2 or not 0.0 < u < 1.0:
        raise DomainError(f"need N >= 2 and 0 < u < 1, got N={params.N}, u={u!r}")
    q11, q12, q21, q22 = _operator_entries(angles.theta, angles.phi, u)
    return np.array([[q11, q12], [q21, q22]], dtype=complex)


def initial_state(u: float) -> np.ndarray:
    """The prepared state ``|gamma>`` in the ``{|1>, |2>}`` basis."""
    return np.array([math.sqrt(1.0 - u * u), u], dtype=complex)


def evolve_batch(theta, phi, u: float, j_max: int, block: int = 1024) -> np.ndarray:
    """Propagate a batch of independent runs with exact per-step operators.

    ``theta`` and ``phi`` have shape ``(B,)`` (constant angles) or
    ``(B, j_max)`` (one pair per iteration).  Returns success probabilities of
    shape ``(B, j_max + 1)``, column ``j`` holding the value after ``j`` steps.
    """
    if j_max < 0:
        raise DomainError("j_max must be non-negative")
    if not 0.0 < u < 1.0:
        raise DomainError(f"u must lie in (0, 1), got {u!r}")
    theta = np.atleast_1d(np.asarray(theta, dtype=float))
    phi = np.atleast_1d(np.asarray(phi, dtype=float))
    _require_finite(theta=theta, phi=phi)
    theta, phi = np.broadcast_arrays(theta, phi)
    per_step = theta.ndim == 2
    if per_step and theta.shape[1] < j_max:
        raise DomainError(f"schedule has {theta.shape[1]} steps, need {j_max}")
    batch = theta.shape[0]

    psi0 = initial_state(u)
    a = np.full(batch, psi0[0])
    b = np.full(batch, psi0[1])
    probs = np.empty((batch, j_max + 1))
    probs[:, 0] = (b * b.conjugate()).real
    if not per_step:
        q11, q12, q21, q22 = _operator_entries(theta, phi, u)
    for start in range(0, j_max, block):
        stop = min(start + block, j_max)
        if per_step:
            # step-major copies keep each per-step slice contiguous
            q11, q12, q21, q22 = (np.ascontiguousarray(q.T) for q in _operator_entries(
                theta[:, start:stop], phi[:, start:stop], u))
        for j in range(start, stop):
            if per_step:
                k = j - start
                m11, m12, m21, m22 = q11[k], q12[k], q21[k], q22[k]
            else:
                m11, m12, m21, m22 = q11, q12, q21, q22
            a, b = a * m11 + b * m21, a * m12 + b * m22
            probs[:, j + 1] = (b * b.conjugate()).real
    return clamp_probabilities(probs)


def default_j_max(params: ReducedParams, delta: float | None = None) -> int:
    """Iteration cap covering one and a half oscillations of the marked amplitude."""
    if delta is None:
        delta = params.delta
    lam = math.hypot(delta, params.beta_prime)
    if lam > 0.0:
        return 3 * math.ceil(math.pi / (2.0 * lam))
    return 3 * math.ceil(math.pi / 4.0 * math.sqrt(params.N))


def simulate_reduced(schedule: PhaseAngles | Sequence[PhaseAngles],
                     params: ReducedParams, j_max: int | None = None) -> Trajectory:
    """Iterate the exact 2x2 operator; a single ``PhaseAngles`` is reused every step."""
    if isinstance(schedule, PhaseAngles):
        schedule = [schedule]
    schedule = list(schedule)
    if not schedule:
        raise DomainError("empty angle schedule")
    if j_max is None:
        j_max = default_j_max(params, schedule[0].delta)
    if len(schedule) == 1:
        theta, phi = schedule[0].theta, schedule[0].phi
    else:
        if len(schedule) < j_max:
            raise DomainError(f"schedule has {len(schedule)} entries, need {j_max}")
        theta = np.array([[a.theta for a in schedule[:j_max]]])
        phi = np.array([[a.phi for a in schedule[:j_max]]])
    probs = evolve_batch(theta, phi, params.u_tau_gamma, j_max)
    return Trajectory(probs[0])


# --- closed forms in the small-angle regime --------------------------------


def _sinc_ratio(j: int, lam: float) -> float:
    # sin(j lam) / lam, with its j -> limit as lam -> 0
    if lam < _SERIES_LIMIT:
        return float(j)
    return math.sin(j * lam) / lam


def closed_form_power(delta: float, beta_prime: float, j: int) -> np.ndarray:
    """``exp(i j G)`` for ``G = delta sigma_z + beta_prime sigma_y``, written out in closed form."""
    _require_finite(delta=delta, beta_prime=beta_prime)
    if j < 0:
        raise DomainError("j must be non-negative")
    lam = math.hypot(delta, beta_prime)
    c = math.cos(j * lam)
    s = _sinc_ratio(j, lam)
    return np.array([[c + 1j * delta * s, beta_prime * s],
                     [-beta_prime * s, c - 1j * delta * s]], dtype=complex)


def marked_amplitude_norm(delta: float, beta_prime: float, j: int) -> float:
    """``(beta'/lambda) |sin(j lambda)|``: marked amplitude after ``j`` steps from ``|1>``."""
    _require_finite(delta=delta, beta_prime=beta_prime)
    lam = math.hypot(delta, beta_prime)
    return abs(beta_prime * _sinc_ratio(j, lam))


def _beta_prime(N) -> float:
    if N < 2:
        raise DomainError(f"N must be >= 2, got {N!r}")
    return 2.0 * math.sqrt(N - 1) / N


def p_max_small_angle(delta: float, N: float) -> float:
    """``beta'^2 / (beta'^2 + delta^2)`` with ``beta' = 2 sqrt(N-1)/N``."""
    bp2 = _beta_prime(N) ** 2
    return bp2 / (bp2 + delta * delta)


def p_max_half_angle(delta: float, N: float) -> float:
    """Peak probability of the exact iteration, ``beta'^2 / (beta'^2 + (delta/2)^2)``.

    For small ``u`` the exact operator is ``diag(e^{i theta0}, e^{i phi0})`` up
    to a global phase, so the ``sigma_z`` weight of its generator is
    ``delta/2``.  The exact simulation tracks this form, not
    :func:`p_max_small_angle`.
    """
    return p_max_small_angle(delta / 2.0, N)


def p_max_asymptotic(delta: float, N: float) -> float:
    """Large-``N`` estimate ``4 / (N delta^2)``, clamped to ``[0, 1]``."""
    if delta == 0:
        raise DomainError("asymptotic estimate is undefined for delta = 0")
    return min(1.0, 4.0 / (N * delta * delta))


def max_database_size_phase(delta: float) -> float:
    """Largest ``N`` keeping the asymptotic peak probability at 1/2: ``8 / delta^2``."""
    if delta == 0:
        return math.inf
    return 8.0 / (delta * delta)


def max_database_size_combined(Delta: float) -> float:
    """Bound ``64 / Delta^2`` for the combined uncertainty ``Delta = 2 delta``."""
    if Delta == 0:
        return math.inf
    return 64.0 / (Delta * Delta)


def rotation_angle_per_iteration(theta: float, beta: float) -> float:
    return 2.0 * math.sin(theta / 2.0) * beta


def ideal_probability(j, N) -> np.ndarray:
    """``sin^2((2j + 1) arcsin(1/sqrt(N)))`` for the unperturbed search."""
    return np.sin((2 * np.asarray(j) + 1) * math.asin(1.0 / math.sqrt(N))) ** 2
