"""Authority-driven max-min distribution over two alternating min-heaps.

Demands accumulate in the working heap during an epoch.  At the epoch
boundary the authority runs :meth:`CmfDistributor.distribute`, which tops
up the capacity pool and then repeatedly drains the active heap in
ascending demand order, granting each user the minimum of the iteration's
unit share and the user's remaining demand.  Partially served demands are
reinserted into the other heap, the heaps swap roles, and the loop runs
until every demand is met or the pool is empty.  Whatever demand is still
unserved at that point is discarded; leftover capacity carries over.
"""

from dataclasses import dataclass, field

from .costs import CostMeter
from .heap import HeapNode, MinHeap


@dataclass(frozen=True)
class GrantRow:
    iteration: int  # 1-based within one distribution
    user: int
    granted: int
    share: int
    capacity_after: int


@dataclass
class DistributionReport:
    """Everything one distribution did: the per-iteration unit shares,
    one row per individual grant and the per-user totals."""

    epoch: int
    shares: list = field(default_factory=list)
    rows: list = field(default_factory=list)
    allocations: dict = field(default_factory=dict)
    capacity_before: int = 0
    capacity_after: int = 0

    @property
    def iterations(self) -> int:
        return len(self.shares)

    def total_granted(self) -> int:
        return sum(self.allocations.values())

    def csv_rows(self):
        """Rows of (epoch, iteration, user, allocated, share,
        remaining_capacity), one per grant."""
        return [(self.epoch, r.iteration, r.user, r.granted, r.share,
                 r.capacity_after) for r in self.rows]

    def grant_matrix(self, users):
        """Per-iteration grants for the given user order, zeros filled in;
        mirrors the layout of a distribution table."""
        matrix = []
        for it in range(1, self.iterations + 1):
            row = {r.user: r.granted for r in self.rows if r.iteration == it}
            matrix.append([row.get(u, 0) for u in users])
        return matrix


class CmfDistributor:
    """Serial state machine holding the demand heaps, the capacity pool
    and the user balances."""

    def __init__(self, epoch_capacity: int, meter: CostMeter = None):
        if epoch_capacity < 1:
            raise ValueError("epoch_capacity must be positive")
        self.epoch_capacity = epoch_capacity
        self.capacity = 0
        self.balances: dict = {}
        self._meter = meter if meter is not None else CostMeter()
        self._heaps = [MinHeap(self._meter), MinHeap(self._meter)]
        self._demanded: set = set()

    def pending_demands(self) -> int:
        return len(self._heaps[0])

    def submit_demand(self, user: int, amount: int) -> None:
        """Queue one demand for the next distribution.  A user may demand
        once per epoch and zero demands are rejected outright."""
        if amount < 1:
            raise ValueError("empty demand")
        self._meter.read()
        if user in self._demanded:
            raise ValueError("already demanded")
        self._demanded.add(user)
        self._meter.write()
        self._heaps[0].insert(HeapNode(amount, user))

    def distribute(self, epoch: int = 0) -> DistributionReport:
        """Run one full distribution; returns the report.  ``epoch`` only
        labels the report rows."""
        m = self._meter
        m.read(2)
        m.arith()
        self.capacity += self.epoch_capacity
        m.write()
        report = DistributionReport(epoch=epoch,
                                    capacity_before=self.capacity)

        heaps = self._heaps
        c = self.capacity
        i = 0
        iteration = 0
        m.read()
        while len(heaps[i]) > 0 and c > 0:
            iteration += 1
            size = len(heaps[i])
            m.arith(2)
            share = 1 if c < size else c // size
            report.shares.append(share)
            while len(heaps[i]) > 0 and c > 0:
                node = heaps[i].del_min()
                m.arith(2)
                # clamped by c so the pool can never go negative
                granted = min(share, node.demand, c)
                m.read()
                self.balances[node.user] = (
                    self.balances.get(node.user, 0) + granted)
                m.write()
                c -= granted
                if node.demand > share:
                    heaps[1 - i].insert(
                        HeapNode(node.demand - share, node.user))
                report.rows.append(GrantRow(iteration, node.user, granted,
                                            share, c))
                report.allocations[node.user] = (
                    report.allocations.get(node.user, 0) + granted)
            i = 1 - i

        # depletion discards whatever is left in either heap
        self._heaps = [MinHeap(m), MinHeap(m)]
        self._demanded.clear()
        self.capacity = c
        m.write()
        report.capacity_after = c
        return report
