"""Reference integer max-min allocation, used as ground truth.

The functions here are deliberately structured differently from the
production distributor (plain sorted lists, no heap) so the two can
cross-check each other.  ``waterfill`` raises all unsatisfied demands in
passes until the capacity runs dry; ``is_maxmin_fair`` checks the result
locally (no single unit can be moved to improve the worst-off user); and
``leximin_brute_force`` enumerates every feasible integer allocation for
tiny instances to validate the other two.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Optional, Sequence, Tuple


@dataclass(frozen=True)
class AllocationProblem:
    """Demands (user id, amount >= 1), an integer capacity and optional
    positive weights aligned with the demands."""

    demands: Sequence[Tuple[int, int]]
    capacity: int
    weights: Optional[Sequence[int]] = None

    def __post_init__(self):
        ids = [u for u, _ in self.demands]
        if len(set(ids)) != len(ids):
            raise ValueError("duplicate user ids")
        if any(a < 1 for _, a in self.demands):
            raise ValueError("demands must be >= 1")
        if self.capacity < 0:
            raise ValueError("capacity must be >= 0")
        if self.weights is not None:
            if len(self.weights) != len(self.demands):
                raise ValueError("weights must align with demands")
            if any(w < 1 for w in self.weights):
                raise ValueError("weights must be positive")

    def weight_of(self, user: int) -> int:
        if self.weights is None:
            return 1
        for (u, _), w in zip(self.demands, self.weights):
            if u == user:
                return w
        raise KeyError(user)


def waterfill(problem: AllocationProblem) -> dict:
    """Integer max-min allocation by water-filling.

    Unweighted: repeated passes over the unsatisfied demands in ascending
    (remaining, id) order, each granting min(quantum, remaining, capacity)
    where the quantum is floor(c / active count) at pass start, dropping
    to one unit when c is smaller than the active count.

    Weighted: the exact continuous water level is solved with rational
    arithmetic (multiply before divide, no precision scaling), each user
    takes min(demand, floor(weight * level)), and the sub-unit remainder
    goes one unit at a time to whoever sits at the lowest normalized
    level.
    """
    if problem.weights is not None:
        return _weighted_waterfill(problem)
    remaining = {u: a for u, a in problem.demands}
    alloc = {u: 0 for u, _ in problem.demands}
    c = problem.capacity
    while c > 0:
        active = sorted((u for u in remaining if remaining[u] > 0),
                        key=lambda u: (remaining[u], u))
        if not active:
            break
        share = 1 if c < len(active) else c // len(active)
        for u in active:
            if c == 0:
                break
            grant = min(share, remaining[u], c)
            alloc[u] += grant
            remaining[u] -= grant
            c -= grant
    return alloc


def _weighted_waterfill(problem: AllocationProblem) -> dict:
    demands = dict(problem.demands)
    users = sorted(demands)
    weight = {u: problem.weight_of(u) for u in users}
    c = problem.capacity
    if c >= sum(demands.values()):
        return dict(demands)

    # continuous solve: users cap out in order of demand/weight while the
    # common level rises until the capacity is exactly consumed
    order = sorted(users, key=lambda u: (Fraction(demands[u], weight[u]), u))
    active_weight = sum(weight.values())
    level = Fraction(0)
    budget = Fraction(c)
    for u in order:
        cap_level = Fraction(demands[u], weight[u])
        needed = (cap_level - level) * active_weight
        if needed > budget:
            break
        budget -= needed
        level = cap_level
        active_weight -= weight[u]
    level += Fraction(budget, active_weight)

    alloc = {u: min(demands[u],
                    (weight[u] * level.numerator) // level.denominator)
             for u in users}
    leftover = c - sum(alloc.values())
    while leftover > 0:
        needy = [u for u in users if alloc[u] < demands[u]]
        if not needy:
            break
        lowest = min(needy, key=lambda v: (Fraction(alloc[v], weight[v]), v))
        alloc[lowest] += 1
        leftover -= 1
    return alloc


def is_maxmin_fair(problem: AllocationProblem, alloc: dict):
    """Check an allocation against the max-min criterion.

    Returns (True, None) when no single unit can be moved -- either from
    leftover capacity or from a better-off user v -- to an unsatisfied
    user u without leaving the donor below u's new level.  On failure
    returns (False, (u, v)) with v None for the leftover-capacity case.
    Levels are weight-normalized (compared as exact cross-products) when
    the problem carries weights.  Infeasible allocations raise ValueError.
    """
    demands = dict(problem.demands)
    for u, a in alloc.items():
        if u not in demands:
            raise ValueError(f"allocation for unknown user {u}")
        if a < 0:
            raise ValueError(f"negative allocation for user {u}")
        if a > demands[u]:
            raise ValueError(f"allocation exceeds demand for user {u}")
    total = sum(alloc.values())
    if total > problem.capacity:
        raise ValueError("allocation exceeds capacity")

    unsatisfied = [u for u in demands if alloc.get(u, 0) < demands[u]]
    if problem.capacity - total >= 1 and unsatisfied:
        return False, (min(unsatisfied), None)
    for u in unsatisfied:
        wu = problem.weight_of(u)
        for v in demands:
            if v == u or alloc.get(v, 0) < 1:
                continue
            wv = problem.weight_of(v)
            # donor still at or above the recipient after moving one unit
            if (alloc[v] - 1) * wu >= (alloc.get(u, 0) + 1) * wv:
                return False, (u, v)
    return True, None


def leximin_brute_force(problem: AllocationProblem):
    """Exhaustively find the best sorted (normalized) allocation vector.

    Enumerates every feasible integer allocation (intended for n <= 4 and
    small capacities) and returns (best_vector, one optimal allocation),
    where vectors are compared lexicographically after sorting ascending.
    Levels are Fractions alloc/weight in the weighted case.
    """
    users = [u for u, _ in problem.demands]
    caps = [min(a, problem.capacity) for _, a in problem.demands]
    best_vec = None
    best_alloc = None
    for combo in product(*(range(cap + 1) for cap in caps)):
        if sum(combo) > problem.capacity:
            continue
        vec = tuple(sorted(
            Fraction(amount, problem.weight_of(u))
            for u, amount in zip(users, combo)))
        if best_vec is None or vec > best_vec:
            best_vec = vec
            best_alloc = dict(zip(users, combo))
    return best_vec, best_alloc


def sorted_levels(problem: AllocationProblem, alloc: dict):
    """Sorted normalized level vector of an allocation, for comparisons
    against ``leximin_brute_force``."""
    return tuple(sorted(
        Fraction(alloc.get(u, 0), problem.weight_of(u))
        for u, _ in problem.demands))
