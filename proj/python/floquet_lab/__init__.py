"""Floquet numerics for the driven disordered Ising chain.

Physics kernels take and return numpy arrays; ``sweep`` and ``analyze`` drive
the same harness as the ``fpl`` command-line tool.
"""

from ._core import (
    ArgumentError,
    ConfigError,
    ConvergenceError,
    Ensemble,
    IoError,
    SpinChainSpec,
    ValidationError,
    __version__,
    analyze,
    anti_concentration_fraction,
    build_h0,
    build_hamiltonian,
    default_config,
    draw_disorder,
    effective_config,
    eigenphases,
    entanglement_entropy,
    evolve,
    floquet_unitary,
    initial_state,
    kld_to_pt,
    magnus_defect,
    magnus_h1,
    magnus_h2,
    matched_time_axis,
    output_probabilities,
    r_statistics,
    recipe_names,
    reduced_density_matrix,
    reference_density,
    reference_mean,
    run_circuit,
    support_size,
    sweep,
)

__all__ = [name for name in dir() if not name.startswith("_")]
