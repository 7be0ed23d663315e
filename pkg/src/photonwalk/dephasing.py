"""Phase-noise Monte Carlo for the coined walk, plus the classical limit.

Physically, noise enters as a random optical path phase on every arm of the
network between consecutive steps.  Between steps each (position, coin)
mode occupies its own arm, so one trajectory multiplies every amplitude by
``exp(i*phi)`` with ``phi`` drawn independently and uniformly from
``[-pi*gamma, +pi*gamma]`` after each step.  ``gamma = 0`` leaves the walk
coherent; ``gamma = 1`` scrambles phases completely and the trajectory
average collapses onto the classical random walk.

Reproducibility contract: trajectory ``i`` of a run with master seed ``s``
draws its phases from ``numpy.random.Generator(PCG64)`` seeded with
``SeedSequence(entropy=s, spawn_key=(i,))``, consuming one uniform block of
shape ``(n_steps, 2, 2*n_steps + 1)`` in C order (phases are drawn for every
lattice mode, occupied or not, which keeps the stream layout independent of
the walk state).  Because each trajectory's stream is fixed by ``(s, i)``
alone and the ensemble mean is a pairwise sum over the trajectory-indexed
array, results are byte-identical for any chunk size or execution order.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .stats import Distribution
from .walk import H, V, InitialSpec, WalkState, make_initial, step
from .walk import distribution as walk_distribution
from .walk import evolve

__all__ = [
    "DephasingConfig",
    "TrajectoryResult",
    "EnsembleResult",
    "trajectory_rng",
    "dephased_step",
    "run_trajectory",
    "run_ensemble",
    "classical_walk",
]


@dataclass(frozen=True)
class DephasingConfig:
    """Dephasing strength and Monte Carlo bookkeeping.

    ``gamma`` in [0, 1] scales the phase window to ``+-pi*gamma``;
    ``trajectories`` is the ensemble size; ``seed`` the master seed.
    """

    gamma: float
    trajectories: int
    seed: int

    def __post_init__(self) -> None:
        if not 0.0 <= self.gamma <= 1.0:
            raise ValueError(f"gamma must lie in [0, 1], got {self.gamma}")
        if self.trajectories < 1:
            raise ValueError("trajectories must be >= 1")


@dataclass(frozen=True)
class TrajectoryResult:
    """Distribution of a single noise trajectory."""

    distribution: Distribution
    trajectory_index: int


@dataclass(frozen=True)
class EnsembleResult:
    """Trajectory-averaged distribution with per-position standard errors."""

    distribution: Distribution
    std_error: dict[int, float]
    trajectories: int


def trajectory_rng(seed: int, index: int) -> np.random.Generator:
    """The PCG64 stream for trajectory ``index`` of master seed ``seed``."""
    return np.random.default_rng(
        np.random.SeedSequence(entropy=seed, spawn_key=(index,))
    )


def dephased_step(
    state: WalkState, coin: np.ndarray, gamma: float, rng: np.random.Generator
) -> WalkState:
    """One walk step followed by an independent random phase on every mode.

    Consumes one ``uniform`` block of the full amplitude-array shape from
    ``rng``; at ``gamma = 0`` the phases are all zero and the result is
    bit-identical to the noiseless step.
    """
    if not 0.0 <= gamma <= 1.0:
        raise ValueError(f"gamma must lie in [0, 1], got {gamma}")
    new = step(state, coin)
    phases = rng.uniform(-np.pi * gamma, np.pi * gamma, size=new.amplitudes.shape)
    new.amplitudes *= np.exp(1j * phases)
    return new


def run_trajectory(
    initial: InitialSpec,
    coin: np.ndarray,
    n_steps: int,
    config: DephasingConfig,
    index: int,
) -> TrajectoryResult:
    """Evolve one trajectory of the ensemble defined by ``config``."""
    rng = trajectory_rng(config.seed, index)
    state = make_initial(initial, n_steps)
    for _ in range(n_steps):
        state = dephased_step(state, coin, config.gamma, rng)
    return TrajectoryResult(walk_distribution(state), index)


def run_ensemble(
    initial: InitialSpec,
    coin: np.ndarray,
    n_steps: int,
    config: DephasingConfig,
    chunk_size: int = 1024,
) -> EnsembleResult:
    """Average ``config.trajectories`` dephased walks.

    Trajectories are evolved in vectorized chunks; per-trajectory streams
    follow the module reproducibility contract, so the result does not depend
    on ``chunk_size``.  Standard errors are the per-position sample standard
    deviation over trajectories divided by sqrt(trajectories).
    """
    if chunk_size < 1:
        raise ValueError("chunk_size must be >= 1")
    m_total = config.trajectories
    positions = list(
        range(initial.start_position - n_steps, initial.start_position + n_steps + 1, 2)
    )

    if config.gamma == 0.0:
        # Every trajectory is bit-identical to the coherent walk, so the mean
        # is the coherent distribution with zero spread.
        dist = walk_distribution(
            evolve(make_initial(initial, n_steps), coin, n_steps)
        )
        return EnsembleResult(
            distribution=dist,
            std_error={x: 0.0 for x in positions},
            trajectories=m_total,
        )

    width = 2 * n_steps + 1
    base = make_initial(initial, n_steps).amplitudes
    coin = np.asarray(coin, dtype=np.complex128)
    # after n_steps steps from the center column the support sits on columns
    # 0, 2, ..., 2*n_steps regardless of parity
    cols = np.arange(0, width, 2)
    probs = np.empty((m_total, n_steps + 1), dtype=np.float64)

    for lo in range(0, m_total, chunk_size):
        hi_idx = min(lo + chunk_size, m_total)
        m = hi_idx - lo
        amps = np.broadcast_to(base, (m, 2, width)).copy()
        phases = np.empty((m, n_steps, 2, width), dtype=np.float64)
        for j, i in enumerate(range(lo, hi_idx)):
            phases[j] = trajectory_rng(config.seed, i).uniform(
                -np.pi * config.gamma,
                np.pi * config.gamma,
                size=(n_steps, 2, width),
            )
        kicks = np.exp(1j * phases)
        for t in range(n_steps):
            amps = np.matmul(coin, amps)
            out = np.zeros_like(amps)
            out[:, H, 1:] = amps[:, H, :-1]
            out[:, V, :-1] = amps[:, V, 1:]
            amps = out * kicks[:, t]
        probs[lo:hi_idx] = np.sum(np.abs(amps[:, :, cols]) ** 2, axis=1)

    mean = np.sum(probs, axis=0) / m_total
    if m_total > 1:
        se = np.std(probs, axis=0, ddof=1) / np.sqrt(m_total)
    else:
        se = np.zeros(n_steps + 1)
    dist = Distribution(
        probabilities={x: float(p) for x, p in zip(positions, mean)},
        step_count=n_steps,
    )
    return EnsembleResult(
        distribution=dist,
        std_error={x: float(s) for x, s in zip(positions, se)},
        trajectories=m_total,
    )


def classical_walk(n_steps: int, start_position: int = 0) -> Distribution:
    """Unbiased classical random walk: n-fold convolution of a fair coin flip.

    ``P_{t+1}(x) = (P_t(x-1) + P_t(x+1)) / 2``, which after n steps is the
    binomial distribution over the parity-allowed sites.
    """
    if n_steps < 0:
        raise ValueError("n_steps must be >= 0")
    probs = np.zeros(2 * n_steps + 1)
    probs[n_steps] = 1.0
    for _ in range(n_steps):
        nxt = np.zeros_like(probs)
        nxt[1:] += 0.5 * probs[:-1]
        nxt[:-1] += 0.5 * probs[1:]
        probs = nxt
    offsets = np.arange(-n_steps, n_steps + 1, 2)
    return Distribution(
        probabilities={
            int(start_position + d): float(probs[d + n_steps]) for d in offsets
        },
        step_count=n_steps,
    )
