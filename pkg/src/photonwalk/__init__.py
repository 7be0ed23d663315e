"""Coined quantum walk on a line: state-vector engine, linear-optics
network backend, dephasing Monte Carlo, and comparison statistics."""

from .dephasing import (
    DephasingConfig,
    EnsembleResult,
    TrajectoryResult,
    classical_walk,
    dephased_step,
    run_ensemble,
    run_trajectory,
    trajectory_rng,
)
from .optics import (
    Element,
    EquivalenceReport,
    LayoutError,
    NetworkLayout,
    build_network,
    equivalence_report,
    insert_phase_layer,
    layout_dump,
    pbs_scatter,
    pbsbar_scatter,
    pbsbar_scatter_composite,
    propagate,
    propagate_with_trace,
)
from .stats import (
    CompareReport,
    Distribution,
    compare_report,
    parity_ok,
    std_dev,
    tv_distance,
)
from .walk import (
    CapacityError,
    InitialSpec,
    WalkState,
    apply_coin,
    distribution,
    evolve,
    hadamard_coin,
    hwp_coin,
    make_initial,
    shift,
    step,
)

__version__ = "0.1.0"

__all__ = [
    "CapacityError",
    "CompareReport",
    "DephasingConfig",
    "Distribution",
    "Element",
    "EnsembleResult",
    "EquivalenceReport",
    "InitialSpec",
    "LayoutError",
    "NetworkLayout",
    "TrajectoryResult",
    "WalkState",
    "apply_coin",
    "build_network",
    "classical_walk",
    "compare_report",
    "dephased_step",
    "distribution",
    "equivalence_report",
    "evolve",
    "hadamard_coin",
    "hwp_coin",
    "insert_phase_layer",
    "layout_dump",
    "make_initial",
    "parity_ok",
    "pbs_scatter",
    "pbsbar_scatter",
    "pbsbar_scatter_composite",
    "propagate",
    "propagate_with_trace",
    "run_ensemble",
    "run_trajectory",
    "shift",
    "std_dev",
    "step",
    "trajectory_rng",
    "tv_distance",
]
