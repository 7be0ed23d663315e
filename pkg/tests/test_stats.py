"""Distribution statistics: spread, total variation, parity, comparison."""

import numpy as np
import pytest

from photonwalk.dephasing import classical_walk
from photonwalk.stats import (
    Distribution,
    compare_report,
    parity_ok,
    std_dev,
    tv_distance,
)
from photonwalk.walk import InitialSpec, distribution, evolve, hadamard_coin, make_initial


def quantum_dist(n, theta=0.0, phi=0.0):
    spec = InitialSpec(theta, phi)
    return distribution(evolve(make_initial(spec, n), hadamard_coin(), n))


def random_dist(rng, n):
    xs = range(-n, n + 1, 2)
    w = rng.uniform(0.0, 1.0, size=n + 1)
    w /= w.sum()
    return Distribution({x: float(p) for x, p in zip(xs, w)}, step_count=n)


def test_std_dev_point_mass_is_zero():
    assert std_dev(Distribution({4: 1.0}, step_count=0)) == 0.0


def test_std_dev_of_classical_walk_is_sqrt_n():
    assert abs(std_dev(classical_walk(100)) - 10.0) < 1e-12
    assert abs(std_dev(classical_walk(25)) - 5.0) < 1e-12


def test_std_dev_is_translation_covariant():
    # a one-pass E[x^2] - E[x]^2 formula loses ~8 digits under these offsets
    rng = np.random.default_rng(60)
    for _ in range(20):
        base = random_dist(rng, 12)
        offset = int(rng.integers(-10**6, 10**6))
        moved = Distribution(
            {x + offset: p for x, p in base.probabilities.items()},
            step_count=base.step_count)
        assert abs(std_dev(moved) - std_dev(base)) < 1e-12


def test_tv_distance_basic_properties():
    d = quantum_dist(3)
    assert tv_distance(d, d) == 0.0
    disjoint_a = Distribution({0: 1.0}, 0)
    disjoint_b = Distribution({5: 1.0}, 0)
    assert abs(tv_distance(disjoint_a, disjoint_b) - 1.0) < 1e-15


def test_tv_distance_quantum_vs_classical_three_steps():
    # {1/8, 1/8, 5/8, 1/8} against {1/8, 3/8, 3/8, 1/8}
    assert abs(tv_distance(quantum_dist(3), classical_walk(3)) - 0.25) < 1e-12


def test_tv_distance_metric_properties():
    rng = np.random.default_rng(61)
    for _ in range(25):
        a, b, c = (random_dist(rng, 8) for _ in range(3))
        ab, ba = tv_distance(a, b), tv_distance(b, a)
        assert ab == ba
        assert 0.0 <= ab <= 1.0
        assert tv_distance(a, c) <= ab + tv_distance(b, c) + 1e-15


def test_parity_ok():
    assert parity_ok(quantum_dist(3))
    assert parity_ok(quantum_dist(4))
    # probability at the origin after an odd number of steps is forbidden
    assert not parity_ok(Distribution({0: 1.0}, step_count=3))
    shifted = Distribution({4: 0.5, 6: 0.5}, step_count=2)
    assert parity_ok(shifted, start_position=4)
    assert not parity_ok(shifted, start_position=1)


def test_compare_report_two_steps_has_zero_tv():
    report = compare_report(quantum_dist(2), classical_walk(2))
    assert report.tv < 1e-15
    assert report.step_count == 2


def test_compare_report_three_steps():
    report = compare_report(quantum_dist(3), classical_walk(3))
    assert abs(report.tv - 0.25) < 1e-12
    assert abs(report.sigma_classical - np.sqrt(3)) < 1e-12
    positions = [row[0] for row in report.table]
    assert positions == [-3, -1, 1, 3]
    quantum_col = {x: q for x, q, _c in report.table}
    assert abs(quantum_col[1] - 0.625) < 1e-12


def test_compare_report_shows_ballistic_separation():
    report = compare_report(quantum_dist(100, theta=np.pi / 4, phi=np.pi / 2),
                            classical_walk(100))
    assert report.sigma_ratio > 4.0


def test_compare_report_rejects_mismatched_lengths():
    with pytest.raises(ValueError):
        compare_report(quantum_dist(2), classical_walk(3))


def test_quantum_spread_grows_linearly():
    # ballistic scaling: sigma/n settles near a constant, so doubling n
    # roughly doubles sigma
    ratios = []
    for n in (50, 100, 200):
        d = quantum_dist(n, theta=np.pi / 4, phi=np.pi / 2)
        ratios.append(std_dev(d) / n)
    assert abs(ratios[1] - ratios[0]) / ratios[1] < 0.05
    assert abs(ratios[2] - ratios[1]) / ratios[2] < 0.05
