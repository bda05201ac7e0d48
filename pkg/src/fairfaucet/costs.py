"""Abstract per-transaction cost accounting.

Costs are counted in abstract units per primitive (storage reads/writes,
heap node moves, arithmetic, plus a flat per-transaction base) instead of
any chain-specific gas definition.  Only the relative magnitudes matter:
storage writes dwarf reads, reads and heap moves are comparable, and
arithmetic is nearly free.  A block budget caps what a single simulated
transaction may cost before it is flagged infeasible.
"""

from dataclasses import dataclass, field


@dataclass(frozen=True)
class CostModel:
    storage_read: int = 800
    storage_write: int = 5000
    heap_move: int = 800
    arithmetic_op: int = 5
    tx_base: int = 21000
    block_budget: int = 8_000_000

    def __post_init__(self):
        for name in ("storage_read", "storage_write", "heap_move",
                     "arithmetic_op", "tx_base"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be >= 0")
        if self.block_budget <= self.tx_base:
            raise ValueError("block_budget must exceed tx_base")


class CostMeter:
    """Counts primitive operations; converted to cost units by a model."""

    __slots__ = ("reads", "writes", "heap_moves", "ariths", "bases")

    def __init__(self):
        self.reset()

    def reset(self):
        self.reads = 0
        self.writes = 0
        self.heap_moves = 0
        self.ariths = 0
        self.bases = 0

    def read(self, n=1):
        self.reads += n

    def write(self, n=1):
        self.writes += n

    def heap_move(self, n=1):
        self.heap_moves += n

    def arith(self, n=1):
        self.ariths += n

    def base(self):
        self.bases += 1

    def total(self, model: CostModel) -> int:
        return (self.reads * model.storage_read
                + self.writes * model.storage_write
                + self.heap_moves * model.heap_move
                + self.ariths * model.arithmetic_op
                + self.bases * model.tx_base)


@dataclass(frozen=True)
class TxReceipt:
    block: int
    epoch: int
    round: int
    kind: str  # register | demand | claim | distribute | noop
    actor: int
    cost: int
    over_budget: bool
    summary: str = ""


@dataclass
class ActionStats:
    count: int = 0
    total: int = 0

    @property
    def mean(self) -> float:
        return self.total / self.count if self.count else 0.0


@dataclass
class CostSummary:
    by_action: dict = field(default_factory=dict)     # kind -> ActionStats
    claim_by_round: dict = field(default_factory=dict)  # round -> ActionStats
    over_budget: int = 0

    def mean(self, kind: str) -> float:
        return self.by_action.get(kind, ActionStats()).mean

    def render(self) -> str:
        lines = []
        lines.append(f"{'action':>12} {'count':>8} {'total':>14} {'mean':>12}")
        for kind in sorted(self.by_action):
            st = self.by_action[kind]
            lines.append(f"{kind:>12} {st.count:>8} {st.total:>14} {st.mean:>12.1f}")
        if self.claim_by_round:
            lines.append("claim cost by round:")
            for rnd in sorted(self.claim_by_round):
                st = self.claim_by_round[rnd]
                lines.append(f"{'round ' + str(rnd + 1):>12} {st.count:>8} "
                             f"{st.total:>14} {st.mean:>12.1f}")
        lines.append(f"over-budget transactions: {self.over_budget}")
        return "\n".join(lines)


def cost_report(receipts) -> CostSummary:
    """Aggregate receipts into mean/total cost per action kind and, for
    claims, per round.  Empty input yields an empty summary."""
    summary = CostSummary()
    for r in receipts:
        st = summary.by_action.setdefault(r.kind, ActionStats())
        st.count += 1
        st.total += r.cost
        if r.kind == "claim":
            rst = summary.claim_by_round.setdefault(r.round, ActionStats())
            rst.count += 1
            rst.total += r.cost
        if r.over_budget:
            summary.over_budget += 1
    return summary
