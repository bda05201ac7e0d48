"""User-driven max-min faucet with parity-buffered demands (AMF/WAMF).

Demands registered during epoch E become claimable during epoch E+1, one
claim per round.  Per-user demand slots are double-buffered by epoch
parity so the demand being collected never overwrites the demand being
claimed.  Every public entry point first refreshes the epoch/round
counters from the block number; the unit share is recomputed only at
epoch and round boundaries, exactly as a contract would do it.

Weights are fixed-point reciprocals of each user's cumulative demand
(or constant 1 in unweighted mode).  The weight captured when a demand
is registered is stored with the slot and used for all additions to and
subtractions from the running weight totals, keeping those totals exact
even when the user's live weight changes in between.
"""

import logging
from dataclasses import dataclass, field

from .clock import ClockParams, locate
from .costs import CostMeter

logger = logging.getLogger(__name__)


def reciprocal_weight(precision: int, cumulative_demand: int) -> int:
    """Fixed-point weight floor(precision / cumulative_demand)."""
    if cumulative_demand < 1:
        raise ValueError("cumulative demand must be >= 1")
    return precision // cumulative_demand


@dataclass(frozen=True)
class WeightPolicy:
    """Weighting rule: either everyone weighs 1, or weights are the
    scaled reciprocal of lifetime demand.  ``precision`` must stay above
    any user's lifetime demand for weights to remain non-zero."""

    weighted: bool = False
    precision: int = 10 ** 9

    def __post_init__(self):
        if self.precision < 1:
            raise ValueError("precision must be positive")

    @classmethod
    def unweighted(cls):
        return cls(weighted=False)

    @classmethod
    def reciprocal(cls, precision: int = 10 ** 9):
        return cls(weighted=True, precision=precision)

    @property
    def scale(self) -> int:
        # unweighted mode degenerates to weight 1 at scale 1
        return self.precision if self.weighted else 1

    def weight_for(self, cumulative_demand: int) -> int:
        if not self.weighted:
            return 1
        return reciprocal_weight(self.precision, cumulative_demand)


@dataclass
class UserAccount:
    uid: int
    balance: int = 0
    # parity-indexed circular buffers
    pending: list = field(default_factory=lambda: [0, 0])
    demand_epoch: list = field(default_factory=lambda: [-1, -1])
    slot_weight: list = field(default_factory=lambda: [0, 0])
    last_claim_epoch: int = -1
    last_claim_round: int = -1
    cumulative_demand: int = 0


@dataclass(frozen=True)
class DemandResult:
    accepted: bool
    reason: str = ""
    weight: int = 0


@dataclass(frozen=True)
class ClaimResult:
    granted: int = 0
    reason: str = ""
    share: int = 0
    floored: bool = False
    satisfied: bool = False

    @property
    def ok(self) -> bool:
        return self.granted > 0


@dataclass(frozen=True)
class FaucetEvent:
    epoch: int
    round: int
    user: int
    action: str  # demand | claim | no-op
    amount: int
    share: int
    capacity: int


class AutonomousFaucet:
    """Serial faucet state machine; all mutations happen inside simulated
    transactions applied in block order."""

    def __init__(self, clock: ClockParams, epoch_capacity: int,
                 policy: WeightPolicy = None, meter: CostMeter = None):
        if epoch_capacity < 1:
            raise ValueError("epoch_capacity must be positive")
        self.clock = clock
        self.epoch_capacity = epoch_capacity
        self.policy = policy if policy is not None else WeightPolicy.unweighted()
        self.capacity = 0
        self.epoch = 0
        self.round = 0
        self.unit_share = 0
        self.weight_total = [0, 0]
        self.reset_epoch = -1
        self.users: dict = {}
        self.events: list = []
        self.injections = 0  # epoch boundaries that topped up the pool
        self._meter = meter if meter is not None else CostMeter()
        self._last_block = clock.offset

    # -- bookkeeping ------------------------------------------------------

    def register(self) -> int:
        """Create a zero-initialized account; ids are assigned in call
        order starting at 1."""
        uid = len(self.users) + 1
        self.users[uid] = UserAccount(uid)
        self._meter.write(2)
        return uid

    def final_balances(self) -> dict:
        return {uid: acct.balance for uid, acct in sorted(self.users.items())}

    def live_weight(self, parity: int) -> int:
        """Recompute the weight total for a parity slot from first
        principles: snapshot weights of the most recent demand window for
        that parity, counting only still-unsatisfied demands.  Reference
        implementation for invariant checks."""
        epochs = [a.demand_epoch[parity] for a in self.users.values()
                  if a.demand_epoch[parity] >= 0]
        if not epochs:
            return 0
        window = max(epochs)
        return sum(a.slot_weight[parity] for a in self.users.values()
                   if a.demand_epoch[parity] == window and a.pending[parity] > 0)

    def _event(self, user, action, amount, share):
        self.events.append(FaucetEvent(self.epoch, self.round, user, action,
                                       amount, share, self.capacity))

    def trace_csv(self) -> str:
        """Event history as CSV (epoch,round,user,action,amount,share,
        capacity), one row per demand/claim/no-op."""
        lines = ["epoch,round,user,action,amount,share,capacity"]
        for e in self.events:
            lines.append(f"{e.epoch},{e.round},{e.user},{e.action},"
                         f"{e.amount},{e.share},{e.capacity}")
        return "\n".join(lines) + "\n"

    # -- the three contract functions -------------------------------------

    def update_state(self, block: int) -> None:
        """Refresh epoch/round from the block number.  An epoch advance
        tops up the capacity pool (once, regardless of how many epochs
        elapsed) and recomputes the unit share; a round advance recomputes
        the share only.  Otherwise a no-op."""
        if block < self._last_block:
            raise ValueError("blocks must be non-decreasing")
        self._last_block = block
        pos = locate(self.clock, block)
        m = self._meter
        m.read(2)
        m.arith(4)
        if self.epoch < pos.epoch:
            self.epoch = pos.epoch
            self.round = pos.round
            m.read(2)
            self.capacity += self.epoch_capacity
            self.injections += 1
            self._refresh_share()
            m.write(4)
        elif self.round < pos.round:
            self.round = pos.round
            self._refresh_share()
            m.write(2)

    def _refresh_share(self):
        i = self.epoch % 2
        total = self.weight_total[i]
        self._meter.read(2)
        self._meter.arith(2)
        if total == 0:
            self.unit_share = 0
        else:
            self.unit_share = (self.capacity * self.policy.scale) // total

    def demand(self, user: int, amount: int, block: int) -> DemandResult:
        """Register a demand for the next epoch.  One demand per user per
        epoch; repeats, zero amounts and unknown users are rejected
        without state changes."""
        self.update_state(block)
        m = self._meter
        m.arith()
        i = (self.epoch + 1) % 2
        acct = self.users.get(user)
        m.read()
        if acct is None:
            return DemandResult(False, "unregistered user")
        if amount < 1:
            return DemandResult(False, "empty demand")
        m.read()
        if acct.demand_epoch[i] == self.epoch:
            self._event(user, "no-op", 0, 0)
            return DemandResult(False, "already demanded this epoch")

        m.read()
        acct.cumulative_demand += amount
        weight = self.policy.weight_for(acct.cumulative_demand)
        m.arith()
        acct.pending[i] = amount
        acct.demand_epoch[i] = self.epoch
        acct.slot_weight[i] = weight
        m.write(4)
        m.read()
        if self.reset_epoch < self.epoch:
            # first accepted demand of the epoch starts a fresh total
            self.weight_total[i] = weight
            self.reset_epoch = self.epoch
            m.write(2)
        else:
            self.weight_total[i] += weight
            m.read()
            m.write()
        self._event(user, "demand", amount, 0)
        return DemandResult(True, weight=weight)

    def claim(self, user: int, block: int) -> ClaimResult:
        """Claim this round's share of the demand registered last epoch.

        All failure paths are explicit no-ops with a reason.  A passing
        claim grants min(remaining demand, user share, capacity); the user
        share is the unit share scaled by the slot's snapshot weight, with
        a floor of one unit so a live demand always makes progress (the
        floor event is logged)."""
        self.update_state(block)
        m = self._meter
        m.arith()
        i = self.epoch % 2
        acct = self.users.get(user)
        m.read()
        if acct is None:
            return ClaimResult(reason="unregistered user")
        m.read(3)
        if acct.demand_epoch[i] != self.epoch - 1:
            self._event(user, "no-op", 0, 0)
            return ClaimResult(reason="no demand from previous epoch")
        if self.capacity == 0:
            self._event(user, "no-op", 0, 0)
            return ClaimResult(reason="capacity depleted")
        if acct.pending[i] == 0:
            self._event(user, "no-op", 0, 0)
            return ClaimResult(reason="demand already satisfied")
        m.read(2)
        if (acct.last_claim_epoch == self.epoch
                and acct.last_claim_round == self.round):
            self._event(user, "no-op", 0, 0)
            return ClaimResult(reason="already claimed this round")
        acct.last_claim_epoch = self.epoch
        acct.last_claim_round = self.round
        m.write(2)

        m.read(2)
        m.arith(2)
        share = (self.unit_share * acct.slot_weight[i]) // self.policy.scale
        floored = share < 1
        if floored:
            share = 1
            logger.debug("share floored to 1 for user %d (epoch %d round %d)",
                         user, self.epoch, self.round)
        granted = min(acct.pending[i], share, self.capacity)
        m.read(3)
        acct.balance += granted
        acct.pending[i] -= granted
        self.capacity -= granted
        m.write(3)
        satisfied = acct.pending[i] == 0
        if satisfied:
            m.read()
            self.weight_total[i] -= acct.slot_weight[i]
            m.write()
        self._event(user, "claim", granted, share)
        return ClaimResult(granted=granted, share=share, floored=floored,
                           satisfied=satisfied)
