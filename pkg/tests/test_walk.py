"""State-vector engine: coins, shifts, frozen distributions, invariants."""

import math

import numpy as np
import pytest

from photonwalk.walk import (
    CapacityError,
    InitialSpec,
    apply_coin,
    distribution,
    evolve,
    hadamard_coin,
    hwp_coin,
    make_initial,
    shift,
    step,
)

from _oracle import binomial_walk, path_sum_distribution

SQ2 = 1 / math.sqrt(2)


def random_unitary(rng):
    """Haar-ish 2x2 unitary via QR of a random complex matrix."""
    z = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_spec(rng):
    return InitialSpec(theta=rng.uniform(0, np.pi / 2),
                       phi=rng.uniform(0, 2 * np.pi))


# ---------------------------------------------------------------------------
# coins


def test_hwp_at_22_5_degrees_is_hadamard():
    expected = np.array([[SQ2, SQ2], [SQ2, -SQ2]])
    assert np.max(np.abs(hwp_coin(np.pi / 8) - expected)) < 1e-15
    assert np.array_equal(hadamard_coin(), hwp_coin(np.pi / 8))


def test_hwp_at_45_degrees_swaps_polarizations():
    swap = np.array([[0.0, 1.0], [1.0, 0.0]])
    assert np.max(np.abs(hwp_coin(np.pi / 4) - swap)) < 1e-14


def test_hwp_at_zero_is_exact_polarization_flip():
    assert np.array_equal(hwp_coin(0.0), np.array([[1.0, 0.0], [0.0, -1.0]]))


def test_hwp_family_is_unitary():
    rng = np.random.default_rng(42)
    for _ in range(1000):
        u = hwp_coin(rng.uniform(-np.pi, np.pi))
        defect = np.max(np.abs(u.conj().T @ u - np.eye(2)))
        assert defect <= 1e-14


def test_apply_coin_rejects_nonunitary():
    state = make_initial(InitialSpec(0.0, 0.0), 2)
    with pytest.raises(ValueError):
        apply_coin(state, np.array([[1.0, 1.0], [0.0, 1.0]]))
    with pytest.raises(ValueError):
        apply_coin(state, np.eye(3))


# ---------------------------------------------------------------------------
# initial states


def test_initial_spec_coin_vector():
    assert np.array_equal(InitialSpec(0.0, 0.0).coin_vector(),
                          np.array([1.0 + 0j, 0.0 + 0j]))
    v = InitialSpec(np.pi / 2, 0.0).coin_vector()
    assert abs(v[0]) < 1e-15 and abs(v[1] - 1.0) < 1e-15
    sym = InitialSpec(np.pi / 4, np.pi / 2).coin_vector()
    assert abs(sym[0] - SQ2) < 1e-15
    assert abs(sym[1] - 1j * SQ2) < 1e-15


def test_initial_spec_vector_is_normalized():
    rng = np.random.default_rng(7)
    for _ in range(100):
        v = random_spec(rng).coin_vector()
        assert abs(np.vdot(v, v).real - 1.0) < 1e-14


def test_make_initial_layout():
    state = make_initial(InitialSpec(0.0, 0.0, start_position=3), 5)
    assert state.amplitudes.shape == (2, 11)
    assert state.capacity == 5
    assert state.step_count == 0
    assert state.start_position == 3
    assert state.min_position == -2
    assert state.max_position == 8
    assert abs(state.norm() - 1.0) < 1e-15
    # everything off-center is exactly zero
    occupied = np.nonzero(state.amplitudes)[1]
    assert set(occupied) == {5}


# ---------------------------------------------------------------------------
# shift / step mechanics


def test_shift_moves_h_right_and_v_left():
    state = make_initial(InitialSpec(np.pi / 3, 0.5), 2)
    a, b = state.amplitudes[0, 2], state.amplitudes[1, 2]
    out = shift(state)
    assert out.step_count == 1
    assert out.amplitudes[0, 3] == a
    assert out.amplitudes[1, 1] == b
    # exactly two nonzero entries; the rest are bitwise zero
    assert np.count_nonzero(out.amplitudes) == 2


def test_shift_beyond_capacity_raises():
    state = make_initial(InitialSpec(0.0, 0.0), 2)
    state = shift(shift(state))
    with pytest.raises(CapacityError):
        shift(state)
    with pytest.raises(CapacityError):
        step(state, hadamard_coin())
    with pytest.raises(CapacityError):
        evolve(make_initial(InitialSpec(0.0, 0.0), 3), hadamard_coin(), 4)


def test_evolve_matches_repeated_step_bitwise():
    rng = np.random.default_rng(11)
    for _ in range(10):
        coin = random_unitary(rng)
        spec = random_spec(rng)
        looped = make_initial(spec, 6)
        for _ in range(6):
            looped = step(looped, coin)
        direct = evolve(make_initial(spec, 6), coin, 6)
        assert np.array_equal(direct.amplitudes, looped.amplitudes)
        assert direct.step_count == looped.step_count == 6


# ---------------------------------------------------------------------------
# frozen distributions (values pinned by the path-sum oracle in _oracle.py)


def test_two_step_hadamard_from_h():
    frozen = {-2: 0.25, 0: 0.5, 2: 0.25}
    oracle = path_sum_distribution([[SQ2, SQ2], [SQ2, -SQ2]], [1, 0], 2)
    for x, p in frozen.items():
        assert abs(oracle[x] - p) < 1e-12
    d = distribution(evolve(make_initial(InitialSpec(0.0, 0.0), 2),
                            hadamard_coin(), 2))
    assert set(d.probabilities) == set(frozen)
    for x, p in frozen.items():
        assert abs(d.probability(x) - p) < 1e-12


def test_three_step_hadamard_from_h():
    # first step count where the quantum walk departs from the binomial
    frozen = {-3: 0.125, -1: 0.125, 1: 0.625, 3: 0.125}
    oracle = path_sum_distribution([[SQ2, SQ2], [SQ2, -SQ2]], [1, 0], 3)
    for x, p in frozen.items():
        assert abs(oracle[x] - p) < 1e-12
    d = distribution(evolve(make_initial(InitialSpec(0.0, 0.0), 3),
                            hadamard_coin(), 3))
    assert set(d.probabilities) == set(frozen)
    for x, p in frozen.items():
        assert abs(d.probability(x) - p) < 1e-12


def test_matches_binomial_for_definite_chirality_up_to_two_steps():
    for theta in (0.0, np.pi / 2):  # |H> and |V>
        for n in (1, 2):
            d = distribution(evolve(make_initial(InitialSpec(theta, 0.0), n),
                                    hadamard_coin(), n))
            binom = binomial_walk(n)
            assert set(d.probabilities) == set(binom)
            for x, p in binom.items():
                assert abs(d.probability(x) - p) < 1e-15


def test_symmetric_input_matches_binomial_up_to_three_steps():
    spec = InitialSpec(np.pi / 4, np.pi / 2)
    for n in (1, 2, 3):
        d = distribution(evolve(make_initial(spec, n), hadamard_coin(), n))
        for x, p in binomial_walk(n).items():
            assert abs(d.probability(x) - p) < 1e-15


# ---------------------------------------------------------------------------
# property checks against the oracle


def test_engine_matches_path_sum_oracle():
    rng = np.random.default_rng(123)
    for _ in range(50):
        n = int(rng.integers(1, 9))
        spec = random_spec(rng)
        if rng.uniform() < 0.5:
            coin = hwp_coin(rng.uniform(-np.pi, np.pi))
        else:
            coin = random_unitary(rng)
        d = distribution(evolve(make_initial(spec, n), coin, n))
        oracle = path_sum_distribution(coin.tolist(),
                                       spec.coin_vector().tolist(), n)
        for x in set(d.probabilities) | set(oracle):
            assert abs(d.probability(x) - oracle.get(x, 0.0)) < 1e-12


def test_norm_conserved_under_random_unitaries():
    rng = np.random.default_rng(99)
    for _ in range(20):
        state = evolve(make_initial(random_spec(rng), 12),
                       random_unitary(rng), 12)
        assert abs(state.norm() - 1.0) < 1e-12


def test_wrong_parity_amplitudes_are_exact_zeros():
    rng = np.random.default_rng(5)
    for n in (1, 2, 7, 24, 25):
        state = evolve(make_initial(random_spec(rng), n), hadamard_coin(), n)
        width = state.amplitudes.shape[1]
        center = (width - 1) // 2
        wrong = [c for c in range(width) if (c - center - n) % 2 != 0]
        assert np.count_nonzero(state.amplitudes[:, wrong]) == 0


def test_distribution_contains_exactly_parity_allowed_sites():
    state = evolve(make_initial(InitialSpec(0.3, 1.0, start_position=-4), 5),
                   hadamard_coin(), 5)
    d = distribution(state)
    assert d.positions() == list(range(-9, 2, 2))
    assert abs(d.total() - 1.0) < 1e-12
    assert d.step_count == 5
