"""Grover search under imperfect phase inversions and Walsh-Hadamard transforms."""

from .errors import ConfigurationError, DomainError, ProbabilityError, RegimeError
from .reduced_model import (
    IDEAL,
    PhaseAngles,
    ReducedParams,
    Trajectory,
    build_grover_operator_2d,
    closed_form_power,
    find_peak,
    marked_amplitude_norm,
    max_database_size_combined,
    max_database_size_phase,
    p_max_asymptotic,
    p_max_half_angle,
    p_max_small_angle,
    rotation_angle_per_iteration,
    simulate_reduced,
)
from .error_models import EM1, EM2, EM3, HadamardLeakage, HadamardSystematic
from .rng import RngStream
from .experiments import SweepConfig, SweepResult, run_sweep, transition_point

__version__ = "0.1.0"
