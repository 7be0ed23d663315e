"""Coined discrete-time quantum walk on the integer line.

The walker carries a two-level coin encoded in photon polarization: the
horizontal component (index ``H``) moves one site to the right per step, the
vertical component (index ``V``) moves one site to the left.  A step is a
coin rotation followed by the conditional shift.

The coin is realized as a half-wave plate.  With the plate axis at angle
``alpha`` to the horizontal, the Jones matrix is::

    [[cos 2a,  sin 2a],
     [sin 2a, -cos 2a]]

so ``alpha = pi/8`` (22.5 degrees) gives the balanced (Hadamard) coin and
``alpha = pi/4`` swaps the two polarizations.

Amplitudes are stored in a dense complex array of shape ``(2, 2*capacity+1)``
pre-allocated for a fixed number of steps.  Sites outside the reachable light
cone stay exactly zero: the shift moves amplitudes by slice assignment only,
so the wrong-parity half of the lattice is bitwise zero after every step.
Stepping past the pre-allocated capacity raises :class:`CapacityError` rather
than silently truncating or reallocating.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .stats import Distribution

__all__ = [
    "H",
    "V",
    "CapacityError",
    "InitialSpec",
    "WalkState",
    "make_initial",
    "hwp_coin",
    "hadamard_coin",
    "apply_coin",
    "shift",
    "step",
    "evolve",
    "distribution",
]

H = 0
V = 1

# Rejection threshold for apply_coin.  Plate matrices built here sit at the
# 1e-16 level; 1e-12 leaves headroom for coins composed from several unitaries
# while still catching anything genuinely non-unitary.
_UNITARY_TOL = 1e-12


class CapacityError(RuntimeError):
    """Raised when a shift would move amplitude past the allocated lattice."""


@dataclass(frozen=True)
class InitialSpec:
    """Initial coin state cos(theta)|H> + e^{i phi} sin(theta)|V> at one site.

    Angles are radians and are taken modulo 2*pi by the trigonometry itself.
    """

    theta: float
    phi: float
    start_position: int = 0

    def coin_vector(self) -> np.ndarray:
        return np.array(
            [np.cos(self.theta), np.exp(1j * self.phi) * np.sin(self.theta)],
            dtype=np.complex128,
        )


@dataclass
class WalkState:
    """Dense walker state.

    ``amplitudes[H]`` and ``amplitudes[V]`` hold the two coin components over
    positions ``min_position .. min_position + L - 1`` where ``L`` is the
    allocated width.  States built by :func:`make_initial` are centered on the
    start position, which therefore sits at the middle column.
    """

    amplitudes: np.ndarray
    min_position: int
    step_count: int

    @property
    def n_sites(self) -> int:
        return self.amplitudes.shape[1]

    @property
    def max_position(self) -> int:
        return self.min_position + self.n_sites - 1

    @property
    def capacity(self) -> int:
        return (self.n_sites - 1) // 2

    @property
    def start_position(self) -> int:
        return self.min_position + self.capacity

    def norm(self) -> float:
        return float(np.sum(np.abs(self.amplitudes) ** 2))


def make_initial(spec: InitialSpec, capacity_steps: int) -> WalkState:
    """Allocate a state for at most ``capacity_steps`` steps from ``spec``.

    The lattice spans ``start_position +- capacity_steps`` and the walker
    starts at the center with coin state ``spec.coin_vector()``.
    """
    if capacity_steps < 0:
        raise ValueError("capacity_steps must be >= 0")
    width = 2 * capacity_steps + 1
    amps = np.zeros((2, width), dtype=np.complex128)
    amps[:, capacity_steps] = spec.coin_vector()
    return WalkState(
        amplitudes=amps,
        min_position=spec.start_position - capacity_steps,
        step_count=0,
    )


def hwp_coin(axis_angle: float) -> np.ndarray:
    """Half-wave plate Jones matrix for a plate axis at ``axis_angle`` radians."""
    c = np.cos(2.0 * axis_angle)
    s = np.sin(2.0 * axis_angle)
    return np.array([[c, s], [s, -c]], dtype=np.complex128)


def hadamard_coin() -> np.ndarray:
    """The balanced coin, a half-wave plate at 22.5 degrees."""
    return hwp_coin(np.pi / 8.0)


def _require_unitary(coin: np.ndarray) -> None:
    coin = np.asarray(coin)
    if coin.shape != (2, 2):
        raise ValueError(f"coin must be a 2x2 matrix, got shape {coin.shape}")
    defect = np.max(np.abs(coin.conj().T @ coin - np.eye(2)))
    if defect > _UNITARY_TOL:
        raise ValueError(f"coin matrix is not unitary (defect {defect:.3e})")


def apply_coin(state: WalkState, coin: np.ndarray) -> WalkState:
    """Apply a unitary coin matrix to the coin space at every site."""
    _require_unitary(coin)
    return WalkState(
        amplitudes=np.asarray(coin, dtype=np.complex128) @ state.amplitudes,
        min_position=state.min_position,
        step_count=state.step_count,
    )


def shift(state: WalkState) -> WalkState:
    """Conditional shift: H amplitudes move right, V amplitudes move left."""
    if state.step_count >= state.capacity:
        raise CapacityError(
            f"cannot shift: state has taken {state.step_count} steps, "
            f"allocated capacity is {state.capacity}"
        )
    amps = state.amplitudes
    out = np.zeros_like(amps)
    out[H, 1:] = amps[H, :-1]
    out[V, :-1] = amps[V, 1:]
    return WalkState(
        amplitudes=out,
        min_position=state.min_position,
        step_count=state.step_count + 1,
    )


def step(state: WalkState, coin: np.ndarray) -> WalkState:
    """One walk step: coin rotation, then conditional shift."""
    return shift(apply_coin(state, coin))


def evolve(state: WalkState, coin: np.ndarray, n_steps: int) -> WalkState:
    """Apply ``n_steps`` walk steps.

    Equivalent to iterating :func:`step`; the capacity check and the coin
    unitarity check are hoisted out of the loop.
    """
    if n_steps < 0:
        raise ValueError("n_steps must be >= 0")
    if state.step_count + n_steps > state.capacity:
        raise CapacityError(
            f"evolving {n_steps} steps from step {state.step_count} exceeds "
            f"allocated capacity {state.capacity}"
        )
    _require_unitary(coin)
    coin = np.asarray(coin, dtype=np.complex128)
    amps = state.amplitudes
    for _ in range(n_steps):
        amps = coin @ amps
        out = np.zeros_like(amps)
        out[H, 1:] = amps[H, :-1]
        out[V, :-1] = amps[V, 1:]
        amps = out
    return WalkState(
        amplitudes=amps,
        min_position=state.min_position,
        step_count=state.step_count + n_steps,
    )


def distribution(state: WalkState) -> Distribution:
    """Position distribution over the reachable, parity-allowed sites.

    The support is every position ``start +- k`` with ``k`` ranging over the
    parity class of ``step_count`` inside the light cone, i.e. exactly
    ``step_count + 1`` entries, including any that happen to be zero.
    """
    n = state.step_count
    start_col = state.capacity
    cols = np.arange(start_col - n, start_col + n + 1, 2)
    probs = np.sum(np.abs(state.amplitudes[:, cols]) ** 2, axis=0)
    positions = cols + state.min_position
    return Distribution(
        probabilities={int(x): float(p) for x, p in zip(positions, probs)},
        step_count=n,
    )
