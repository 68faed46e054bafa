"""Placement engine: covered sets, exact solve, and the grid oracle."""

import math
import random

import pytest

from dronecell.channel import ENVIRONMENTS, ChannelConfig, optimal_altitude, path_loss
from dronecell.scenario import (
    ObjectiveWeights,
    PlacementRegion,
    Scenario,
    ScenarioProfile,
    TenancyTargets,
    User,
    generate_scenario,
    mvno_counts,
)
from dronecell.solver import (
    InfeasibleRegionError,
    ResourceGuardError,
    brute_force,
    covered_set,
    objective_value,
    select_users,
    solve,
)

URBAN = ENVIRONMENTS["urban"]
CFG = ChannelConfig()
# Slack for users sitting exactly on a coverage-circle boundary candidate.
QOS_SLACK_DB = 1e-6


def make_scenario(
    users,
    num_mvnos=2,
    targets=None,
    weights=None,
    capacity=None,
    region=None,
    env=URBAN,
):
    users = tuple(users)
    if targets is None:
        base, rest = divmod(len(users), num_mvnos)
        targets = tuple(base + (1 if j < rest else 0) for j in range(num_mvnos))
    return Scenario(
        users=users,
        num_mvnos=num_mvnos,
        targets=TenancyTargets(tuple(targets)),
        weights=weights or ObjectiveWeights(),
        capacity=capacity if capacity is not None else float(max(len(users), 1)),
        region=region or PlacementRegion((-1000.0, 1000.0), (-1000.0, 1000.0), (20.0, 80.0)),
        environment=env,
        channel=ChannelConfig(),
    )


def test_covered_set_empty_when_threshold_unreachable():
    users = [User(id=0, x=0.0, y=0.0, mvno_id=0, max_path_loss_db=10.0)]
    sc = make_scenario(users, num_mvnos=1)
    assert covered_set(sc, (0.0, 0.0, 50.0)) == set()


def test_covered_set_user_under_platform():
    users = [User(id=0, x=0.0, y=0.0, mvno_id=0)]
    sc = make_scenario(users, num_mvnos=1)
    h_star, _ = optimal_altitude(100.0, URBAN, CFG, sc.region.h_bounds)
    assert path_loss(h_star, 0.0, URBAN, CFG) < 100.0
    assert covered_set(sc, (0.0, 0.0, h_star)) == {0}


def test_covered_set_shrinks_as_qos_tightens():
    rng = random.Random(77)
    for _ in range(20):
        n = rng.randint(1, 10)
        base = [
            User(
                id=i,
                x=rng.uniform(-500, 500),
                y=rng.uniform(-500, 500),
                mvno_id=0,
                max_path_loss_db=100.0,
            )
            for i in range(n)
        ]
        tighter = [
            User(
                id=u.id,
                x=u.x,
                y=u.y,
                mvno_id=0,
                max_path_loss_db=u.max_path_loss_db - rng.uniform(0.0, 10.0),
            )
            for u in base
        ]
        placement = (rng.uniform(-500, 500), rng.uniform(-500, 500), rng.uniform(20, 80))
        loose = covered_set(make_scenario(base, num_mvnos=1), placement)
        tight = covered_set(make_scenario(tighter, num_mvnos=1), placement)
        assert tight <= loose


def test_solve_single_user_places_at_nadir():
    users = [User(id=0, x=123.0, y=-45.0, mvno_id=0)]
    sc = make_scenario(users, num_mvnos=1)
    result = solve(sc)
    assert result.placement[0] == 123.0
    assert result.placement[1] == -45.0
    assert result.assignment.served == (1,)
    assert result.objective == 1.0


def test_solve_empty_scenario_pays_full_tenancy_gap():
    sc = make_scenario([], num_mvnos=2, targets=(12, 12), weights=ObjectiveWeights(1.0, 1.0))
    result = solve(sc)
    assert result.assignment.served == ()
    assert result.objective == -24.0
    assert result.placement[0] == -1000.0 and result.placement[1] == -1000.0


def test_solve_no_coverable_users_returns_zero_assignment():
    users = [User(id=i, x=float(i), y=0.0, mvno_id=0, max_path_loss_db=20.0) for i in range(4)]
    sc = make_scenario(users, num_mvnos=1, weights=ObjectiveWeights(1.0, 0.0))
    result = solve(sc)
    assert result.assignment.served == (0, 0, 0, 0)
    assert result.objective == 0.0


def test_solve_rejects_empty_or_underground_regions():
    users = [User(id=0, x=0.0, y=0.0, mvno_id=0)]
    sc = make_scenario(users, num_mvnos=1, region=PlacementRegion((10.0, -10.0), (-10.0, 10.0), (20.0, 80.0)))
    with pytest.raises(InfeasibleRegionError):
        solve(sc)
    sc = make_scenario(users, num_mvnos=1, region=PlacementRegion((-10.0, 10.0), (-10.0, 10.0), (0.0, 80.0)))
    with pytest.raises(InfeasibleRegionError):
        solve(sc)


def test_solve_tie_breaks_toward_lexicographic_center():
    # Two identical single-user cells far apart: the west option wins.
    users = [User(id=0, x=-900.0, y=0.0, mvno_id=0), User(id=1, x=900.0, y=0.0, mvno_id=0)]
    sc = make_scenario(users, num_mvnos=1, weights=ObjectiveWeights(1.0, 0.0))
    result = solve(sc)
    assert result.assignment.served_ids(sc) == (0,)
    assert result.placement[0] < 0.0


def test_solve_result_invariants_on_random_instances():
    rng = random.Random(424242)
    for trial in range(15):
        n = rng.randint(1, 14)
        j = rng.randint(1, 2)
        profile = ScenarioProfile(
            capacity=float(rng.randint(1, n)) if rng.random() < 0.4 else None,
            weights=ObjectiveWeights(
                w1=1.0, w2=float(rng.randint(0, 2)), w3=0.0, w4=0.0
            ),
        )
        sc = generate_scenario(
            9000 + trial, n, j, URBAN, field_size_m=1200.0, profile=profile
        )
        result = solve(sc)
        x, y, h = result.placement
        assert sc.region.x_bounds[0] <= x <= sc.region.x_bounds[1]
        assert sc.region.y_bounds[0] <= y <= sc.region.y_bounds[1]
        assert sc.region.h_bounds[0] <= h <= sc.region.h_bounds[1]
        demand = sum(
            u.resource_demand for u, s in zip(sc.users, result.assignment.served) if s
        )
        assert demand <= sc.capacity + 1e-9
        for u, s in zip(sc.users, result.assignment.served):
            if s:
                loss = path_loss(h, math.hypot(u.x - x, u.y - y), URBAN, CFG)
                assert loss <= u.max_path_loss_db + QOS_SLACK_DB
        obj, breakdown = objective_value(sc, result.assignment)
        assert result.objective == obj
        assert result.term_breakdown == breakdown
        assert result.mvno_counts == mvno_counts(sc, result.assignment)


def test_solve_is_deterministic():
    sc = generate_scenario(77, 18, 2, URBAN)
    assert solve(sc) == solve(sc)


def test_solve_matches_oracle_with_count_objective():
    # Pure coverage maximization: the exact count must match the oracle's.
    profile = ScenarioProfile(weights=ObjectiveWeights(1.0, 0.0, 0.0, 0.0))
    for seed in (501, 502, 503):
        sc = generate_scenario(seed, 10, 2, URBAN, field_size_m=600.0, profile=profile)
        got = solve(sc)
        want = brute_force(sc, 10.0, 10.0)
        assert got.total_served == want.total_served
        assert got.objective >= want.objective


def test_coverage_monotonicity_of_selection():
    # Growing the eligible set never lowers the best objective.
    rng = random.Random(31)
    sc = generate_scenario(88, 12, 2, URBAN)
    ids = [u.id for u in sc.users]
    for _ in range(25):
        small = {i for i in ids if rng.random() < 0.4}
        extra = {i for i in ids if rng.random() < 0.3}
        big = small | extra
        obj_small, _ = objective_value(sc, select_users(sc, small))
        obj_big, _ = objective_value(sc, select_users(sc, big))
        assert obj_big >= obj_small


def test_fairness_dominance_at_returned_placement():
    # With fairness on, the returned counts minimize the tenancy gap among
    # all feasible assignments with the same total at that placement.
    import itertools

    for seed in (61, 62, 63):
        sc = generate_scenario(seed, 9, 2, URBAN, field_size_m=800.0)
        result = solve(sc)
        eligible = sorted(covered_set(sc, result.placement))
        total = result.total_served
        best_gap = None
        for combo in itertools.combinations(eligible, total):
            counts = [0, 0]
            for i in combo:
                counts[sc.user_by_id(i).mvno_id] += 1
            gap = sum(abs(c - t) for c, t in zip(counts, sc.targets.counts))
            best_gap = gap if best_gap is None else min(best_gap, gap)
        assert result.term_breakdown.tenancy_gap == best_gap


def test_brute_force_single_point_region():
    users = [User(id=0, x=5.0, y=5.0, mvno_id=0)]
    region = PlacementRegion((5.0, 5.0), (5.0, 5.0), (60.0, 60.0))
    sc = make_scenario(users, num_mvnos=1, region=region)
    result = brute_force(sc, 10.0, 10.0)
    assert result.placement == (5.0, 5.0, 60.0)
    assert result.assignment.served == (1,)


def test_brute_force_empty_scenario():
    sc = make_scenario([], num_mvnos=2, targets=(3, 4), weights=ObjectiveWeights(1.0, 2.0))
    result = brute_force(sc, 100.0, 20.0)
    assert result.objective == -2.0 * 7.0
    assert result.assignment.served == ()


def test_brute_force_resource_guard():
    sc = generate_scenario(1, 3, 2, URBAN)
    with pytest.raises(ResourceGuardError):
        brute_force(sc, 0.1, 0.1)


def test_brute_force_rejects_bad_steps():
    sc = generate_scenario(1, 3, 2, URBAN)
    with pytest.raises(ValueError):
        brute_force(sc, 0.0, 10.0)


def test_brute_force_is_deterministic():
    sc = generate_scenario(12, 8, 2, URBAN, field_size_m=600.0)
    assert brute_force(sc, 25.0, 20.0) == brute_force(sc, 25.0, 20.0)


def test_solve_handles_heterogeneous_qos():
    # Mixed per-user thresholds: the result must stay feasible and at least
    # match a coarse oracle.
    users = [
        User(id=0, x=-50.0, y=0.0, mvno_id=0, max_path_loss_db=95.0),
        User(id=1, x=60.0, y=10.0, mvno_id=1, max_path_loss_db=100.0),
        User(id=2, x=0.0, y=-40.0, mvno_id=0, max_path_loss_db=90.0),
        User(id=3, x=400.0, y=300.0, mvno_id=1, max_path_loss_db=98.0),
    ]
    sc = make_scenario(users, num_mvnos=2, region=PlacementRegion((-500.0, 500.0), (-500.0, 500.0), (20.0, 80.0)))
    result = solve(sc)
    x, y, h = result.placement
    for u, s in zip(sc.users, result.assignment.served):
        if s:
            loss = path_loss(h, math.hypot(u.x - x, u.y - y), URBAN, CFG)
            assert loss <= u.max_path_loss_db + QOS_SLACK_DB
    oracle = brute_force(sc, 20.0, 10.0)
    assert result.objective >= oracle.objective - 1e-9
