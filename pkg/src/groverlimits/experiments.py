"""Monte Carlo sweeps of peak success probability against database size."""

from __future__ import annotations

import io
import math
import os
from dataclasses import dataclass, field

import numpy as np

from . import error_models as em
from .errors import ConfigurationError, DomainError
from .reduced_model import (
    PhaseAngles,
    default_j_max,
    evolve_batch,
    p_max_asymptotic,
    p_max_half_angle,
    p_max_small_angle,
    ReducedParams,
)
from .rng import RngStream, stream_index
from .statevector import MAX_QUBITS, HadamardGateSpec, run_full_search

ENGINES = ("reduced", "full")
CSV_HEADER = ("n,N,model,param1,param2,samples,mean_pmax,std_pmax,"
              "min_pmax,max_pmax,mean_j_opt,seed")


@dataclass(frozen=True)
class SweepConfig:
    model: em.ErrorModel
    n_values: tuple[int, ...]
    samples_per_n: int | None = None
    seed: int = 0
    j_cap_policy: float = 3.0
    engine: str = "reduced"
    marked: int | None = None  # None: the all-ones index 2**n - 1

    def __post_init__(self):
        object.__setattr__(self, "n_values", tuple(int(n) for n in self.n_values))
        if self.samples_per_n is None:
            object.__setattr__(self, "samples_per_n", 1 if em.is_deterministic(self.model) else 200)
        ns = self.n_values
        if not ns:
            raise ConfigurationError("n_values must not be empty")
        if ns[0] < 1 or any(b <= a for a, b in zip(ns, ns[1:])):
            raise ConfigurationError(f"n_values must be >= 1 and strictly increasing, got {ns}")
        if self.samples_per_n < 1:
            raise ConfigurationError("samples_per_n must be >= 1")
        if not 0 <= self.seed < 2**64:
            raise ConfigurationError("seed must be an unsigned 64-bit integer")
        if not self.j_cap_policy > 0:
            raise ConfigurationError("j_cap_policy must be positive")
        if self.engine not in ENGINES:
            raise ConfigurationError(f"engine must be one of {ENGINES}, got {self.engine!r}")
        if self.engine == "full":
            if ns[-1] > MAX_QUBITS:
                raise ConfigurationError(
                    f"engine 'full' is limited to n <= {MAX_QUBITS}, got n = {ns[-1]}")
            if isinstance(self.model, em.HadamardLeakage):
                raise ConfigurationError("the leakage model has no full-space engine")
        if self.marked is not None and not 0 <= self.marked < 2 ** ns[0]:
            raise ConfigurationError(f"marked index {self.marked} out of range for n = {ns[0]}")

    def marked_for(self, n: int) -> int:
        return 2**n - 1 if self.marked is None else self.marked


@dataclass(frozen=True)
class SweepPoint:
    n: int
    N: int
    samples: int
    mean_pmax: float
    std_pmax: float
    min_pmax: float
    max_pmax: float
    mean_j_opt: float


@dataclass(frozen=True)
class SweepResult:
    config: SweepConfig
    points: tuple[SweepPoint, ...] = field(default_factory=tuple)

    @property
    def seed(self) -> int:
        return self.config.seed

    @property
    def n_values(self) -> tuple[int, ...]:
        return tuple(p.n for p in self.points)

    @property
    def mean_pmax(self) -> np.ndarray:
        return np.array([p.mean_pmax for p in self.points])

    def point(self, n: int) -> SweepPoint:
        for p in self.points:
            if p.n == n:
                return p
        raise KeyError(n)


def iteration_cap(config: SweepConfig, n: int) -> int:
    """Iterations scanned per run at qubit count ``n``."""
    N = 2**n
    model = config.model
    if isinstance(model, em.HadamardSystematic):
        u = HadamardGateSpec.uniform(n, model.epsilon).overlap(config.marked_for(n))
        return math.ceil(config.j_cap_policy * math.ceil(math.pi / (4.0 * math.asin(u))))
    cap = math.ceil(config.j_cap_policy * math.ceil(math.pi / 4.0 * math.sqrt(N)))
    if isinstance(model, em.PHASE_MODELS) and em.is_deterministic(model):
        cap = min(cap, default_j_max(ReducedParams(n), model.delta0))
    return cap


def _phase_deltas(config: SweepConfig, n: int, samples: int, j_cap: int) -> np.ndarray:
    deltas = np.empty((samples, j_cap))
    for k in range(samples):
        rng = RngStream(config.seed, stream_index(n, k))
        deltas[k] = em.sample_phase_mismatches(config.model, rng, j_cap)
    return deltas


def _peaks_phase(config: SweepConfig, n: int, samples: int, j_cap: int):
    deltas = _phase_deltas(config, n, samples, j_cap)
    theta, phi = em.split_mismatch_arrays(deltas)
    if config.engine == "reduced":
        probs = evolve_batch(theta, phi, 1.0 / math.sqrt(2**n), j_cap)
        j_opt = np.argmax(probs, axis=1)
        return probs[np.arange(samples), j_opt], j_opt
    peaks = np.empty(samples)
    j_opt = np.empty(samples, dtype=int)
    marked = config.marked_for(n)
    for k in range(samples):
        schedule = [PhaseAngles(t, p) for t, p in zip(theta[k], phi[k])]
        traj = run_full_search(n, marked, schedule, HadamardGateSpec.ideal(n), j_cap)
        peaks[k], j_opt[k] = traj.peak_p, traj.peak_j
    return peaks, j_opt


def _peak_hadamard(config: SweepConfig, n: int, j_cap: int):
    model = config.model
    if isinstance(model, em.HadamardLeakage):
        traj = em.simulate_leakage_trajectory(2**n, model.delta1, j_cap)
        return traj.peak_p, traj.peak_j
    spec = HadamardGateSpec.uniform(n, model.epsilon)
    marked = config.marked_for(n)
    if config.engine == "full":
        traj = run_full_search(n, marked, PhaseAngles(math.pi, math.pi), spec, j_cap)
        return traj.peak_p, traj.peak_j
    probs = evolve_batch(math.pi, math.pi, spec.overlap(marked), j_cap)[0]
    j = int(np.argmax(probs))
    return float(probs[j]), j


def _aggregate(n: int, peaks: np.ndarray, j_opt: np.ndarray) -> SweepPoint:
    lo, hi = float(peaks.min()), float(peaks.max())
    mean = min(max(float(np.mean(peaks)), lo), hi)
    return SweepPoint(n=n, N=2**n, samples=len(peaks), mean_pmax=mean,
                      std_pmax=float(np.std(peaks)), min_pmax=lo, max_pmax=hi,
                      mean_j_opt=float(np.mean(j_opt)))


def run_sweep(config: SweepConfig) -> SweepResult:
    """Peak success probability statistics for every qubit count in the config.

    Sample ``k`` at qubit count ``n`` draws from stream
    ``stream_index(n, k)``, so results do not depend on evaluation order.
    Deterministic models are simulated once and the run is replicated.
    """
    samples = config.samples_per_n
    deterministic = em.is_deterministic(config.model)
    points = []
    for n in config.n_values:
        j_cap = iteration_cap(config, n)
        if isinstance(config.model, em.PHASE_MODELS):
            peaks, j_opt = _peaks_phase(config, n, 1 if deterministic else samples, j_cap)
        else:
            p, j = _peak_hadamard(config, n, j_cap)
            peaks, j_opt = np.array([p]), np.array([j])
        if deterministic:
            peaks = np.repeat(peaks, samples)
            j_opt = np.repeat(j_opt, samples)
        points.append(_aggregate(n, peaks, j_opt))
    return SweepResult(config, tuple(points))


def transition_point(result: SweepResult, threshold: float = 0.5) -> int | None:
    """Smallest ``n`` whose mean peak probability falls below ``threshold``."""
    for p in result.points:
        if p.mean_pmax < threshold:
            return p.n
    return None


@dataclass(frozen=True)
class AnalyticRow:
    n: int
    N: int
    simulated: float
    small_angle: float        # beta'^2 / (beta'^2 + delta^2)
    asymptotic: float         # 4 / (N delta^2), clamped to 1
    asymptotic_clamped: bool
    half_angle: float         # beta'^2 / (beta'^2 + delta^2 / 4)

    @property
    def diff_small_angle(self) -> float:
        return abs(self.simulated - self.small_angle)

    @property
    def diff_asymptotic(self) -> float:
        return abs(self.simulated - self.asymptotic)

    @property
    def diff_half_angle(self) -> float:
        return abs(self.simulated - self.half_angle)


def compare_analytic(result: SweepResult) -> list[AnalyticRow]:
    """Closed-form peak probabilities next to the simulated ones (constant mismatch only)."""
    model = result.config.model
    if not isinstance(model, em.EM1):
        raise DomainError(f"closed forms exist only for EM1, got {model.name}")
    d = model.delta0
    rows = []
    for p in result.points:
        if d == 0:
            asym, clamped = 1.0, True
        else:
            raw = 4.0 / (p.N * d * d)
            asym, clamped = p_max_asymptotic(d, p.N), raw > 1.0
        rows.append(AnalyticRow(p.n, p.N, p.mean_pmax, p_max_small_angle(d, p.N), asym,
                                clamped, p_max_half_angle(d, p.N)))
    return rows


def analytic_crossing(delta: float, threshold: float = 0.5) -> float:
    """``log2 N`` where the small-angle peak probability equals ``threshold``.

    Solves ``beta'^2 (1 - t) = t delta^2`` with ``beta'^2 = 4 (N - 1) / N^2``.
    """
    if delta == 0:
        return math.inf
    k = threshold * delta * delta / (4.0 * (1.0 - threshold))
    # k N^2 - N + 1 = 0, larger root
    N = (1.0 + math.sqrt(1.0 - 4.0 * k)) / (2.0 * k)
    return math.log2(N)


def format_float(x: float) -> str:
    """12 significant digits, printed in shortest round-trip form."""
    return repr(float(f"{x:.12g}"))


def csv_text(result: SweepResult) -> str:
    cfg = result.config
    p1, p2 = cfg.model.params
    lines = [CSV_HEADER]
    for p in result.points:
        lines.append(",".join([
            str(p.n), str(p.N), cfg.model.name, format_float(p1), format_float(p2),
            str(p.samples), format_float(p.mean_pmax), format_float(p.std_pmax),
            format_float(p.min_pmax), format_float(p.max_pmax), format_float(p.mean_j_opt),
            str(cfg.seed),
        ]))
    return "\n".join(lines) + "\n"


def emit_csv(result: SweepResult, destination: str | os.PathLike | io.TextIOBase) -> None:
    """Write the sweep as CSV to a path or an open text stream."""
    text = csv_text(result)
    if hasattr(destination, "write"):
        destination.write(text)
        return
    try:
        with open(destination, "w", newline="", encoding="ascii") as fh:
            fh.write(text)
    except OSError as exc:
        raise OSError(f"cannot write CSV to {os.fspath(destination)!r}: {exc.strerror}") from exc


def parse_n_values(text: str) -> tuple[int, ...]:
    """Parse ``"4..24"``, ``"4,8,12"`` or ``"16"``."""
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            return tuple(range(int(lo), int(hi) + 1))
        return tuple(int(t) for t in text.split(",") if t.strip())
    except ValueError:
        raise ConfigurationError(f"cannot parse qubit range {text!r}") from None
