import random

import pytest

from fairfaucet.cmf import CmfDistributor
from fairfaucet.oracle import AllocationProblem, waterfill


def distribute(demands, capacity):
    dist = CmfDistributor(capacity)
    for user, amount in enumerate(demands, 1):
        dist.submit_demand(user, amount)
    return dist, dist.distribute(epoch=1)


def test_worked_table_is_reproduced_exactly():
    dist, report = distribute([4, 11, 15], 30)
    assert report.shares == [10, 3, 2]
    assert report.grant_matrix([1, 2, 3]) == [[4, 10, 10], [0, 1, 3], [0, 0, 2]]
    assert report.allocations == {1: 4, 2: 11, 3: 15}
    assert report.capacity_before == 30
    assert report.capacity_after == 0
    assert dist.balances == {1: 4, 2: 11, 3: 15}


def test_worked_table_csv_rows():
    _, report = distribute([4, 11, 15], 30)
    assert report.csv_rows() == [
        (1, 1, 1, 4, 10, 26),
        (1, 1, 2, 10, 10, 16),
        (1, 1, 3, 10, 10, 6),
        (1, 2, 2, 1, 3, 5),
        (1, 2, 3, 3, 3, 2),
        (1, 3, 3, 2, 2, 0),
    ]


def test_underdemanders_leave_leftover_capacity():
    dist, report = distribute([5, 5, 5], 30)
    assert report.iterations == 1
    assert report.allocations == {1: 5, 2: 5, 3: 5}
    assert dist.capacity == 15  # carried to the next epoch


def test_symmetric_depletion():
    dist, report = distribute([10, 10, 10], 15)
    assert report.shares == [5]
    assert report.allocations == {1: 5, 2: 5, 3: 5}
    assert dist.capacity == 0


def test_rejects_empty_and_duplicate_demands():
    dist = CmfDistributor(30)
    with pytest.raises(ValueError, match="empty demand"):
        dist.submit_demand(1, 0)
    dist.submit_demand(1, 5)
    with pytest.raises(ValueError, match="already demanded"):
        dist.submit_demand(1, 7)
    # a new epoch starts after distribution, so the user may demand again
    dist.distribute()
    dist.submit_demand(1, 7)


def test_distribute_with_no_demands_still_accrues_capacity():
    dist = CmfDistributor(20)
    report = dist.distribute()
    assert report.iterations == 0
    assert report.allocations == {}
    assert dist.capacity == 20


def test_unsatisfied_demands_are_discarded_on_depletion():
    dist, report = distribute([10, 10], 5)
    assert dist.capacity == 0
    assert sum(report.allocations.values()) == 5
    assert dist.pending_demands() == 0
    # next epoch starts from a clean slate
    dist.submit_demand(1, 3)
    second = dist.distribute()
    assert second.allocations == {1: 3}


def random_instance(rng):
    n = rng.randrange(1, 201)
    demands = [rng.randrange(1, 51) for _ in range(n)]
    capacity = rng.randrange(1, sum(demands) + 25)
    return demands, capacity


def test_matches_water_filling_oracle_on_randomized_instances():
    rng = random.Random(2024)
    for _ in range(120):
        demands, capacity = random_instance(rng)
        _, report = distribute(demands, capacity)
        oracle = waterfill(AllocationProblem(
            demands=tuple(enumerate(demands, 1)), capacity=capacity))
        got = {u: report.allocations.get(u, 0) for u in oracle}
        assert got == oracle, (demands, capacity)


def test_conservation_demand_cap_and_share_positivity():
    rng = random.Random(77)
    for _ in range(150):
        demands, capacity = random_instance(rng)
        dist, report = distribute(demands, capacity)
        granted = sum(report.allocations.values())
        assert granted == report.capacity_before - report.capacity_after
        assert dist.capacity >= 0
        for user, amount in enumerate(demands, 1):
            assert report.allocations.get(user, 0) <= amount
        assert all(s >= 1 for s in report.shares)


def test_outer_iterations_bounded_by_distinct_demand_values():
    rng = random.Random(31)
    for _ in range(150):
        demands, capacity = random_instance(rng)
        _, report = distribute(demands, capacity)
        assert report.iterations <= len(set(demands)) + 1
