"""Cross-check a run against the independent water-filling oracle.

Each claim epoch is an allocation problem of its own: the demands
registered in the previous epoch plus the capacity in force when claims
began.  The oracle's answer must match the grants the run actually made,
with two documented exceptions:

* depletion: when the pool hit zero before every demand was met, the
  remaining units went to claimants in arrival order rather than
  ascending-demand order, so per-user grants may differ from the oracle
  while the epoch totals must still agree;
* exhausted rounds: when the scheduled claim rounds ended with capacity
  left and demand unserved, the epoch is reported as a finding and not
  compared user by user (the next epoch's comparison re-anchors on the
  actual capacity, so nothing cascades).
"""

from dataclasses import dataclass, field

from .oracle import AllocationProblem, waterfill
from .sim import RunResult


@dataclass
class EpochCheck:
    epoch: int
    ok: bool
    note: str = ""
    first_diff: tuple = None  # (epoch, user, got, want)


@dataclass
class VerifyReport:
    ok: bool
    checks: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    @property
    def first_diff(self):
        for check in self.checks:
            if check.first_diff is not None:
                return check.first_diff
        return None


def oracle_problem(summary, weighted: bool) -> AllocationProblem:
    demands = sorted(summary.demands.items())
    weights = None
    if weighted:
        weights = [summary.weights[u] for u, _ in demands]
    return AllocationProblem(demands=tuple(demands),
                             capacity=summary.capacity_start,
                             weights=weights)


def verify_run(result: RunResult) -> VerifyReport:
    """Compare every claim epoch of a run to the oracle allocation."""
    weighted = result.scenario.variant == "WAMF"
    report = VerifyReport(ok=True)
    for summary in result.epoch_summaries:
        if not summary.demands:
            report.checks.append(EpochCheck(summary.epoch, True, "no demands"))
            continue
        if summary.incomplete:
            report.checks.append(EpochCheck(
                summary.epoch, True, "rounds exhausted before completion"))
            report.notes.append(
                f"epoch {summary.epoch}: claim rounds ran out with capacity "
                f"left; per-user comparison skipped")
            continue
        want = waterfill(oracle_problem(summary, weighted))
        got = {u: summary.granted.get(u, 0) for u in want}
        if got == want:
            report.checks.append(EpochCheck(summary.epoch, True))
            continue
        if summary.depleted and sum(got.values()) == sum(want.values()):
            report.checks.append(EpochCheck(
                summary.epoch, True, "depletion round served in arrival order"))
            report.notes.append(
                f"epoch {summary.epoch}: capacity depleted; final-round "
                f"grants follow arrival order, totals match the oracle")
            continue
        diff = None
        for user in sorted(want):
            if got.get(user, 0) != want[user]:
                diff = (summary.epoch, user, got.get(user, 0), want[user])
                break
        report.ok = False
        report.checks.append(EpochCheck(summary.epoch, False,
                                        "allocation mismatch", diff))
    return report
