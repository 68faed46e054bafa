"""Channel model: LOS sigmoid, mean path loss, coverage radius, altitude search."""

import math
import random

import pytest

from dronecell.channel import (
    ENVIRONMENTS,
    MAX_RADIUS_M,
    RADIUS_TOLERANCE_M,
    ChannelConfig,
    Environment,
    coverage_radius,
    free_space_path_loss,
    los_probability,
    optimal_altitude,
    path_loss,
)

CFG = ChannelConfig()
URBAN = ENVIRONMENTS["urban"]


def test_free_space_loss_reference_value():
    # 20*log10(4*pi*f*d/c) at 2 GHz and 1 km
    assert free_space_path_loss(1000.0, 2.0e9) == pytest.approx(98.4684, abs=5e-4)


def test_free_space_loss_slope_is_six_db_per_doubling():
    l1 = free_space_path_loss(500.0, 2.0e9)
    l2 = free_space_path_loss(1000.0, 2.0e9)
    assert l2 - l1 == pytest.approx(20.0 * math.log10(2.0), abs=1e-9)


def test_free_space_loss_rejects_nonpositive_distance():
    with pytest.raises(ValueError):
        free_space_path_loss(0.0, 2.0e9)


def test_los_probability_at_nadir_is_nearly_one():
    assert los_probability(90.0, URBAN) == pytest.approx(0.99997, abs=1e-5)
    for env in ENVIRONMENTS.values():
        assert 0.8 < los_probability(90.0, env) <= 1.0


def test_los_probability_increases_with_elevation():
    rng = random.Random(1)
    for env in ENVIRONMENTS.values():
        for _ in range(50):
            a = rng.uniform(0.1, 89.0)
            b = rng.uniform(a + 0.5, 90.0)
            assert los_probability(a, env) < los_probability(b, env)


def test_los_probability_rejects_out_of_range_angles():
    for bad in (0.0, -5.0, 90.0001, 180.0):
        with pytest.raises(ValueError):
            los_probability(bad, URBAN)


def test_environment_presets_are_exposed():
    assert set(ENVIRONMENTS) == {"suburban", "urban", "dense_urban", "highrise_urban"}
    for env in ENVIRONMENTS.values():
        assert 0.0 <= env.eta_los_db <= env.eta_nlos_db


def test_environment_validation():
    with pytest.raises(ValueError):
        Environment("bad", -1.0, 0.1, 1.0, 20.0)
    with pytest.raises(ValueError):
        Environment("bad", 9.61, 0.16, 5.0, 2.0)
    with pytest.raises(ValueError):
        ChannelConfig(frequency_hz=0.0)
    with pytest.raises(ValueError):
        ChannelConfig(max_path_loss_db=-3.0)


def test_path_loss_between_pure_los_and_nlos_bounds():
    for env in ENVIRONMENTS.values():
        for h, r in ((100.0, 0.0), (100.0, 500.0), (50.0, 2000.0)):
            fspl = free_space_path_loss(math.hypot(h, r), CFG.frequency_hz)
            loss = path_loss(h, r, env, CFG)
            assert fspl + env.eta_los_db <= loss <= fspl + env.eta_nlos_db


def test_path_loss_increases_with_ground_range():
    for env in ENVIRONMENTS.values():
        for h in (30.0, 120.0, 600.0):
            probes = [10.0 * k for k in range(201)]
            losses = [path_loss(h, r, env, CFG) for r in probes]
            assert all(a < b for a, b in zip(losses, losses[1:]))


def test_path_loss_rejects_bad_geometry():
    with pytest.raises(ValueError):
        path_loss(0.0, 10.0, URBAN, CFG)
    with pytest.raises(ValueError):
        path_loss(100.0, -1.0, URBAN, CFG)


def test_coverage_radius_is_zero_when_nadir_fails():
    assert coverage_radius(100.0, 10.0, URBAN, CFG) == 0.0


def test_coverage_radius_boundary_contract():
    # The loss at the returned radius never exceeds the threshold and stays
    # within a hundredth of a dB of it.
    for env in ENVIRONMENTS.values():
        for h in (20.0, 50.0, 120.0, 400.0, 1500.0):
            r = coverage_radius(h, 100.0, env, CFG)
            if r == 0.0 or r >= MAX_RADIUS_M:
                continue
            loss = path_loss(h, r, env, CFG)
            assert loss <= 100.0
            assert 100.0 - loss <= 0.01
            assert path_loss(h, r + RADIUS_TOLERANCE_M, env, CFG) > 100.0


def test_coverage_radius_hits_cap_for_huge_thresholds():
    assert coverage_radius(100.0, 500.0, URBAN, CFG) == MAX_RADIUS_M


def test_coverage_radius_monotone_in_threshold():
    radii = [coverage_radius(100.0, t, URBAN, CFG) for t in (90.0, 95.0, 100.0, 105.0)]
    assert all(a <= b for a, b in zip(radii, radii[1:]))


def test_coverage_radius_validation():
    with pytest.raises(ValueError):
        coverage_radius(-1.0, 100.0, URBAN, CFG)
    with pytest.raises(ValueError):
        coverage_radius(100.0, 0.0, URBAN, CFG)


def test_optimal_altitude_interior_maximum_for_urban():
    h_star, r_star = optimal_altitude(100.0, URBAN, CFG, (1.0, 3000.0))
    assert 1.0 < h_star < 3000.0
    assert r_star > 0.0
    # No scanned altitude may beat the reported optimum by more than the
    # radius tolerance.
    for k in range(301):
        h = 1.0 + k * (3000.0 - 1.0) / 300.0
        assert coverage_radius(h, 100.0, URBAN, CFG) <= r_star + RADIUS_TOLERANCE_M


def test_optimal_altitude_clips_to_range():
    h_star, r_star = optimal_altitude(100.0, URBAN, CFG, (20.0, 80.0))
    assert h_star == 80.0  # radius still climbing at the top of this window
    assert r_star == coverage_radius(80.0, 100.0, URBAN, CFG)


def test_optimal_altitude_degenerate_range():
    h_star, r_star = optimal_altitude(100.0, URBAN, CFG, (60.0, 60.0))
    assert h_star == 60.0
    assert r_star == coverage_radius(60.0, 100.0, URBAN, CFG)


def test_optimal_altitude_no_coverage():
    assert optimal_altitude(5.0, URBAN, CFG, (20.0, 80.0)) == (20.0, 0.0)


def test_optimal_altitude_validation():
    with pytest.raises(ValueError):
        optimal_altitude(100.0, URBAN, CFG, (0.0, 100.0))
    with pytest.raises(ValueError):
        optimal_altitude(100.0, URBAN, CFG, (100.0, 50.0))


def test_optimal_altitude_deterministic():
    a = optimal_altitude(100.0, URBAN, CFG, (1.0, 3000.0))
    b = optimal_altitude(100.0, URBAN, CFG, (1.0, 3000.0))
    assert a == b
