"""Deterministic instant-seal chain simulator.

Every transaction occupies its own block, so the block number doubles as
a transaction counter.  A scenario describes one experiment: the
algorithm variant, the user count, the epoch geometry, the demand stream
(seeded PRNG or scripted amounts) and the cost model.  Running a scenario
replays the canonical block schedule:

  epoch 0:   one registration block per user, filler blocks, then one
             demand block per user in the last round;
  epoch e>0: one claim block per user in every round but the last
             (CMF instead runs a single authority distribute block at the
             epoch boundary), then one demand block per user in the last
             round.

Identical scenarios produce bit-identical traces and receipts.
"""

import json
from dataclasses import dataclass, field, replace

from .clock import ClockParams, locate
from .cmf import CmfDistributor
from .costs import CostMeter, CostModel, TxReceipt
from .faucet import AutonomousFaucet, WeightPolicy

MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB

VARIANTS = ("CMF", "AMF", "WAMF")

AUTHORITY = 0  # actor id for distribute and filler transactions


class ScenarioError(ValueError):
    pass


def next_demand(state: int, lo: int, hi: int):
    """Advance the splitmix64 counter and draw an amount in [lo, hi).

    The generator is pinned bit-for-bit: counter increment by the 64-bit
    golden gamma, then the xor-shift/multiply finalizer.
    """
    if hi <= lo:
        raise ScenarioError("demand range is empty")
    if lo < 1:
        raise ScenarioError("demand range must start at 1 or above")
    state = (state + _GAMMA) & MASK64
    z = state
    z ^= z >> 30
    z = (z * _MIX1) & MASK64
    z ^= z >> 27
    z = (z * _MIX2) & MASK64
    z ^= z >> 31
    return state, lo + (z % (hi - lo))


@dataclass(frozen=True)
class Scenario:
    """Declarative experiment description.  ``scripted_demands`` (one row
    per epoch, one entry per user, None meaning no demand) replaces the
    PRNG stream entirely when present; epochs beyond the scripted rows
    get no demands."""

    variant: str
    n: int
    epoch_capacity: int
    epoch_span: int
    round_span: int
    demand_lo: int = 10
    demand_hi: int = 30
    epochs: int = 4
    seed: int = 0
    precision: int = 10 ** 9
    cost_model: CostModel = field(default_factory=CostModel)
    scripted_demands: tuple = None

    @classmethod
    def benchmark_defaults(cls, variant: str, n: int, **overrides):
        """The benchmark parameterization: capacity 20n, epoch span 4n,
        round span n, demands from [10, 30)."""
        params = dict(variant=variant, n=n, epoch_capacity=20 * n,
                      epoch_span=4 * n, round_span=n)
        params.update(overrides)
        return cls(**params)

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise ScenarioError(f"unknown variant {self.variant!r}")
        if self.n < 0:
            raise ScenarioError("n must be >= 0")
        if self.epochs < 0:
            raise ScenarioError("epochs must be >= 0")
        try:
            clock = ClockParams(0, self.epoch_span, self.round_span)
        except ValueError as exc:
            raise ScenarioError(str(exc)) from exc
        if clock.rounds_per_epoch < 2:
            raise ScenarioError("need at least two rounds per epoch "
                                "(claims plus a demand window)")
        if self.round_span < self.n:
            raise ScenarioError("round_span must be >= n so every user "
                                "gets a block per round")
        if self.demand_lo < 1 or self.demand_hi <= self.demand_lo:
            raise ScenarioError("demand range must satisfy 1 <= lo < hi")
        if not (0 <= self.seed <= MASK64):
            raise ScenarioError("seed must fit in 64 bits")
        if self.precision < 1:
            raise ScenarioError("precision must be positive")
        if self.scripted_demands is not None:
            object.__setattr__(self, "scripted_demands",
                               tuple(tuple(row) for row in self.scripted_demands))
            for row in self.scripted_demands:
                if len(row) > self.n:
                    raise ScenarioError("scripted demand row longer than n")
                for a in row:
                    if a is not None and (not isinstance(a, int) or a < 1):
                        raise ScenarioError("scripted demands must be "
                                            "positive integers or null")
        if self.variant == "WAMF" and self.precision <= self._worst_cumulative():
            raise ScenarioError("precision must exceed the worst-case "
                                "cumulative demand per user")

    def _worst_cumulative(self) -> int:
        if self.scripted_demands is not None:
            worst = 0
            for k in range(self.n):
                worst = max(worst, sum(row[k] or 0 for row in self.scripted_demands
                                       if k < len(row)))
            return worst
        return self.epochs * (self.demand_hi - 1)

    @property
    def clock(self) -> ClockParams:
        return ClockParams(0, self.epoch_span, self.round_span)

    def with_n(self, n: int):
        """Rescale to a different user count, rederiving the n-coupled
        defaults (capacity 20n, spans 4n/n)."""
        return replace(self, n=n, epoch_capacity=20 * n, epoch_span=4 * n,
                       round_span=n)


def scenario_to_dict(sc: Scenario) -> dict:
    out = {
        "variant": sc.variant, "n": sc.n,
        "epoch_capacity": sc.epoch_capacity,
        "epoch_span": sc.epoch_span, "round_span": sc.round_span,
        "demand_lo": sc.demand_lo, "demand_hi": sc.demand_hi,
        "epochs": sc.epochs, "seed": sc.seed, "precision": sc.precision,
        "cost_model": {
            "storage_read": sc.cost_model.storage_read,
            "storage_write": sc.cost_model.storage_write,
            "heap_move": sc.cost_model.heap_move,
            "arithmetic_op": sc.cost_model.arithmetic_op,
            "tx_base": sc.cost_model.tx_base,
            "block_budget": sc.cost_model.block_budget,
        },
    }
    if sc.scripted_demands is not None:
        out["scripted_demands"] = [list(row) for row in sc.scripted_demands]
    return out


_SCENARIO_KEYS = {"variant", "n", "epoch_capacity", "epoch_span",
                  "round_span", "demand_lo", "demand_hi", "epochs", "seed",
                  "precision", "cost_model", "scripted_demands"}


def scenario_from_dict(data: dict) -> Scenario:
    unknown = set(data) - _SCENARIO_KEYS
    if unknown:
        raise ScenarioError(f"unknown scenario keys: {sorted(unknown)}")
    if "variant" not in data or "n" not in data:
        raise ScenarioError("scenario requires 'variant' and 'n'")
    kwargs = dict(data)
    n = kwargs["n"]
    kwargs.setdefault("epoch_capacity", 20 * n)
    kwargs.setdefault("epoch_span", 4 * n)
    kwargs.setdefault("round_span", n)
    model = kwargs.pop("cost_model", None)
    if model is not None:
        try:
            kwargs["cost_model"] = CostModel(**model)
        except (TypeError, ValueError) as exc:
            raise ScenarioError(f"bad cost_model: {exc}") from exc
    scripted = kwargs.get("scripted_demands")
    if scripted is not None:
        kwargs["scripted_demands"] = tuple(tuple(row) for row in scripted)
    try:
        return Scenario(**kwargs)
    except TypeError as exc:
        raise ScenarioError(str(exc)) from exc


def load_scenario(path) -> Scenario:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ScenarioError(f"invalid scenario JSON: {exc}") from exc
    return scenario_from_dict(data)


@dataclass(frozen=True)
class TraceRow:
    block: int
    epoch: int
    round: int
    actor: int
    action: str
    amount: int
    share: int
    capacity: int
    cost: int
    over_budget: bool


@dataclass
class EpochSummary:
    """What one claim epoch distributed, plus the matching allocation
    problem (demands from the previous epoch and the capacity in force
    when claims began)."""

    epoch: int
    demands: dict
    weights: dict
    capacity_start: int
    granted: dict = field(default_factory=dict)
    capacity_end: int = 0

    @property
    def unsatisfied(self) -> int:
        return sum(self.demands.values()) - sum(self.granted.values())

    @property
    def depleted(self) -> bool:
        return self.capacity_end == 0 and self.unsatisfied > 0

    @property
    def incomplete(self) -> bool:
        # a further claim round would have granted more
        return self.capacity_end > 0 and self.unsatisfied > 0


@dataclass
class RunResult:
    scenario: Scenario
    trace: list
    receipts: list
    balances: dict
    reports: list            # CMF distribution reports
    epoch_summaries: list
    findings: list
    final_capacity: int
    injected: int

    def conservation_ok(self) -> bool:
        return sum(self.balances.values()) + self.final_capacity == self.injected

    def over_budget_receipts(self):
        return [r for r in self.receipts if r.over_budget]


def _demand_plan(sc: Scenario):
    """Amount each user demands in each epoch (None = no demand)."""
    plan = []
    if sc.scripted_demands is not None:
        for e in range(sc.epochs):
            row = sc.scripted_demands[e] if e < len(sc.scripted_demands) else ()
            plan.append([row[k] if k < len(row) else None
                         for k in range(sc.n)])
        return plan
    state = sc.seed
    for _ in range(sc.epochs):
        row = []
        for _ in range(sc.n):
            state, amount = next_demand(state, sc.demand_lo, sc.demand_hi)
            row.append(amount)
        plan.append(row)
    return plan


class _Runner:
    def __init__(self, sc: Scenario):
        self.sc = sc
        self.clock = sc.clock
        self.meter = CostMeter()
        self.trace = []
        self.receipts = []
        self.reports = []
        self.findings = []
        self.plan = _demand_plan(sc)

    def _close_tx(self, block, actor, action, amount, share, capacity,
                  summary=""):
        cost = self.meter.total(self.sc.cost_model)
        over = cost > self.sc.cost_model.block_budget
        pos = locate(self.clock, block)
        self.receipts.append(TxReceipt(block, pos.epoch, pos.round, action,
                                       actor, cost, over, summary))
        self.trace.append(TraceRow(block, pos.epoch, pos.round, actor,
                                   action, amount, share, capacity, cost,
                                   over))

    def _noop(self, block, capacity, share=0):
        self.meter.reset()
        self.meter.base()
        self._close_tx(block, AUTHORITY, "noop", 0, share, capacity)


def run_scenario(sc: Scenario) -> RunResult:
    """Execute a scenario block by block.  Returns the full trace, the
    per-transaction receipts, the final balances and per-epoch summaries
    suitable for oracle verification."""
    if sc.variant == "CMF":
        return _run_cmf(sc)
    return _run_amf(sc)


def _run_amf(sc: Scenario) -> RunResult:
    runner = _Runner(sc)
    policy = (WeightPolicy.reciprocal(sc.precision) if sc.variant == "WAMF"
              else WeightPolicy.unweighted())
    faucet = AutonomousFaucet(runner.clock, sc.epoch_capacity, policy,
                              runner.meter)
    rounds = runner.clock.rounds_per_epoch
    demands_made = [dict() for _ in range(sc.epochs)]   # epoch -> user -> amount
    weights_made = [dict() for _ in range(sc.epochs)]
    grants = [dict() for _ in range(sc.epochs)]
    prev_capacity_end = 0
    summaries = []

    for epoch in range(sc.epochs):
        epoch_start = epoch * sc.epoch_span
        for rnd in range(rounds):
            round_start = epoch_start + rnd * sc.round_span
            for offset in range(sc.round_span):
                block = round_start + offset
                user = offset + 1
                if epoch == 0 and rnd == 0 and offset < sc.n:
                    runner.meter.reset()
                    runner.meter.base()
                    uid = faucet.register()
                    runner._close_tx(block, uid, "register", 0, 0,
                                     faucet.capacity, f"user={uid}")
                elif rnd == rounds - 1 and offset < sc.n:
                    amount = runner.plan[epoch][offset]
                    if amount is None:
                        runner._noop(block, faucet.capacity,
                                     faucet.unit_share)
                        continue
                    runner.meter.reset()
                    runner.meter.base()
                    res = faucet.demand(user, amount, block)
                    if res.accepted:
                        demands_made[epoch][user] = amount
                        weights_made[epoch][user] = res.weight
                        summary = f"amount={amount} weight={res.weight}"
                    else:
                        summary = f"rejected: {res.reason}"
                    runner._close_tx(block, user, "demand",
                                     amount if res.accepted else 0,
                                     0, faucet.capacity, summary)
                elif epoch >= 1 and rnd < rounds - 1 and offset < sc.n:
                    runner.meter.reset()
                    runner.meter.base()
                    res = faucet.claim(user, block)
                    if res.granted:
                        grants[epoch][user] = (grants[epoch].get(user, 0)
                                               + res.granted)
                        summary = f"granted={res.granted}"
                        if res.floored:
                            summary += " floor1"
                    else:
                        summary = f"no-op: {res.reason}"
                    runner._close_tx(block, user, "claim", res.granted,
                                     res.share, faucet.capacity, summary)
                else:
                    runner._noop(block, faucet.capacity, faucet.unit_share)
        if epoch >= 1 and sc.n > 0:
            capacity_start = prev_capacity_end + sc.epoch_capacity
            summary = EpochSummary(epoch=epoch,
                                   demands=dict(demands_made[epoch - 1]),
                                   weights=dict(weights_made[epoch - 1]),
                                   capacity_start=capacity_start,
                                   granted=dict(grants[epoch]),
                                   capacity_end=faucet.capacity)
            summaries.append(summary)
            if summary.incomplete:
                runner.findings.append(
                    f"epoch {epoch}: distribution incomplete after "
                    f"{rounds - 1} claim rounds (a further round was needed)")
        prev_capacity_end = faucet.capacity

    return RunResult(scenario=sc, trace=runner.trace,
                     receipts=runner.receipts,
                     balances=faucet.final_balances(), reports=[],
                     epoch_summaries=summaries, findings=runner.findings,
                     final_capacity=faucet.capacity,
                     injected=faucet.injections * sc.epoch_capacity)


def _run_cmf(sc: Scenario) -> RunResult:
    runner = _Runner(sc)
    dist = CmfDistributor(sc.epoch_capacity, runner.meter)
    rounds = runner.clock.rounds_per_epoch
    demands_made = [dict() for _ in range(sc.epochs)]
    summaries = []

    for epoch in range(sc.epochs):
        epoch_start = epoch * sc.epoch_span
        for rnd in range(rounds):
            round_start = epoch_start + rnd * sc.round_span
            for offset in range(sc.round_span):
                block = round_start + offset
                user = offset + 1
                if epoch == 0 and rnd == 0 and offset < sc.n:
                    runner.meter.reset()
                    runner.meter.base()
                    runner.meter.write(2)  # account bookkeeping
                    runner._close_tx(block, user, "register", 0, 0,
                                     dist.capacity, f"user={user}")
                elif epoch >= 1 and rnd == 0 and offset == 0:
                    runner.meter.reset()
                    runner.meter.base()
                    report = dist.distribute(epoch=epoch)
                    runner.reports.append(report)
                    total = report.total_granted()
                    runner._close_tx(block, AUTHORITY, "distribute", total,
                                     0, dist.capacity,
                                     f"granted={total} "
                                     f"iterations={report.iterations}")
                    summaries.append(EpochSummary(
                        epoch=epoch,
                        demands=dict(demands_made[epoch - 1]),
                        weights={u: 1 for u in demands_made[epoch - 1]},
                        capacity_start=report.capacity_before,
                        granted=dict(report.allocations),
                        capacity_end=report.capacity_after))
                elif rnd == rounds - 1 and offset < sc.n:
                    amount = runner.plan[epoch][offset]
                    if amount is None:
                        runner._noop(block, dist.capacity)
                        continue
                    runner.meter.reset()
                    runner.meter.base()
                    dist.submit_demand(user, amount)
                    demands_made[epoch][user] = amount
                    runner._close_tx(block, user, "demand", amount, 0,
                                     dist.capacity, f"amount={amount}")
                else:
                    runner._noop(block, dist.capacity)

    balances = {u: dist.balances.get(u, 0) for u in range(1, sc.n + 1)}
    return RunResult(scenario=sc, trace=runner.trace,
                     receipts=runner.receipts, balances=balances,
                     reports=runner.reports, epoch_summaries=summaries,
                     findings=runner.findings,
                     final_capacity=dist.capacity,
                     injected=len(runner.reports) * sc.epoch_capacity)


def worked_example_scenarios() -> dict:
    """The two worked-table scenarios used as golden fixtures: a 3-user
    scripted AMF run over five epochs and the matching single-distribution
    CMF run.  Both are fully scripted, so seeds are irrelevant."""
    amf = Scenario(variant="AMF", n=3, epoch_capacity=30, epoch_span=12,
                   round_span=3, epochs=5, seed=1,
                   scripted_demands=((4, 11, 15), (11, 3, 8), (7, 8, 12),
                                     (17, 13, 5)))
    cmf = Scenario(variant="CMF", n=3, epoch_capacity=30, epoch_span=12,
                   round_span=3, epochs=2, seed=1,
                   scripted_demands=((4, 11, 15),))
    return {"amf_worked_example": amf, "cmf_worked_example": cmf}


# -- CSV rendering ---------------------------------------------------------

TRACE_HEADER = "block,epoch,round,actor,action,amount,share,capacity,cost,over_budget"


def trace_csv(result: RunResult) -> str:
    lines = [TRACE_HEADER]
    for r in result.trace:
        lines.append(f"{r.block},{r.epoch},{r.round},{r.actor},{r.action},"
                     f"{r.amount},{r.share},{r.capacity},{r.cost},"
                     f"{1 if r.over_budget else 0}")
    return "\n".join(lines) + "\n"


def receipts_csv(result: RunResult) -> str:
    lines = ["block,epoch,round,action,actor,cost,over_budget,summary"]
    for r in result.receipts:
        lines.append(f"{r.block},{r.epoch},{r.round},{r.kind},{r.actor},"
                     f"{r.cost},{1 if r.over_budget else 0},{r.summary}")
    return "\n".join(lines) + "\n"


def balances_csv(result: RunResult) -> str:
    lines = ["user,balance"]
    for user in sorted(result.balances):
        lines.append(f"{user},{result.balances[user]}")
    return "\n".join(lines) + "\n"


def distributions_csv(result: RunResult) -> str:
    lines = ["epoch,iteration,user,allocated,share,remaining_capacity"]
    for report in result.reports:
        for row in report.csv_rows():
            lines.append(",".join(str(v) for v in row))
    return "\n".join(lines) + "\n"
