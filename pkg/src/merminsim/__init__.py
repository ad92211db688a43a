"""Statevector simulation and shot-level analysis of Mermin inequality tests
on GHZ states of 3 to 5 qubits."""

from .circuits import (
    Circuit,
    Setup,
    SetupConfig,
    all_setup_configs,
    ghz_circuit,
    measurement_transform,
    permute_qubits,
    run,
    setup_config,
)
from .harness import (
    ExchangeReport,
    ExperimentConfig,
    ExperimentReport,
    InvariantError,
    TermEstimate,
    render_exchange_report,
    render_report,
    run_experiment,
    run_exchange_test,
    verify_invariants,
)
from .lhv import GENUINE_FOURPARTY_BOUND, lr_bound_bruteforce, lr_bound_formula
from .noise import NoiseModel, run_noisy_trajectory, sample_noisy_shots
from .pauli import PauliString, apply_pauli, exact_expectation
from .polynomials import (
    EigencheckError,
    MerminPolynomial,
    SymmetryClass,
    alsina_recursive,
    collapse,
    eigencheck,
    mermin_direct,
    primed,
)
from .sampling import (
    Estimate,
    ShotCounts,
    derive_seed,
    exchange_spread,
    expectation_from_counts,
    polynomial_estimate,
    polynomial_estimate_expanded,
    round_error,
    sample_shots,
)
from .statevector import (
    Gate,
    Statevector,
    apply_gate,
    ghz_state,
    init_zero,
    probabilities,
)

__version__ = "0.1.0"

__all__ = [
    "Circuit",
    "Setup",
    "SetupConfig",
    "all_setup_configs",
    "ghz_circuit",
    "measurement_transform",
    "permute_qubits",
    "run",
    "setup_config",
    "ExchangeReport",
    "ExperimentConfig",
    "ExperimentReport",
    "InvariantError",
    "TermEstimate",
    "render_exchange_report",
    "render_report",
    "run_experiment",
    "run_exchange_test",
    "verify_invariants",
    "GENUINE_FOURPARTY_BOUND",
    "lr_bound_bruteforce",
    "lr_bound_formula",
    "NoiseModel",
    "run_noisy_trajectory",
    "sample_noisy_shots",
    "PauliString",
    "apply_pauli",
    "exact_expectation",
    "EigencheckError",
    "MerminPolynomial",
    "SymmetryClass",
    "alsina_recursive",
    "collapse",
    "eigencheck",
    "mermin_direct",
    "primed",
    "Estimate",
    "ShotCounts",
    "derive_seed",
    "exchange_spread",
    "expectation_from_counts",
    "polynomial_estimate",
    "polynomial_estimate_expanded",
    "round_error",
    "sample_shots",
    "Gate",
    "Statevector",
    "apply_gate",
    "ghz_state",
    "init_zero",
    "probabilities",
    "__version__",
]
