"""Deterministic simulators of parallel block execution on c workers.

One gas unit equals one logical time unit; wall-clock conversion lives in
the harness. Conflicts between transactions induce precedence edges in block
order. Rather than testing every pair, the simulators track per-resource
state (last writer, readers since that writer), which yields the same ready
times because writers of a resource are totally ordered in time.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field

from .core import Block, Gas, Transaction


@dataclass
class ExecutionReport:
    """Outcome of simulating one block: logical runtime and re-execution cost."""

    makespan: Gas
    total_work: Gas
    reexecutions: int
    finish_time: dict[int, Gas] = field(default_factory=dict)


def _dependency_edges(txs: list[Transaction]) -> list[list[int]]:
    """Predecessor lists equivalent to "all earlier conflicting transactions".

    For each transaction the predecessors kept are the last earlier writer of
    every touched resource plus, for written resources, the readers since
    that writer. Earlier writers and pre-writer readers are dominated via
    chaining, so maxima over finish times (or chain costs) are unchanged.
    """
    last_writer: dict[int, int] = {}
    readers_since: dict[int, list[int]] = {}
    preds: list[list[int]] = []
    for j, tx in enumerate(txs):
        pred: set[int] = set()
        for r in tx.read_set | tx.write_set:
            if r in last_writer:
                pred.add(last_writer[r])
        for r in tx.write_set:
            pred.update(readers_since.get(r, ()))
        preds.append(sorted(pred))
        for r in tx.write_set:
            last_writer[r] = j
            readers_since[r] = []
        for r in tx.read_set - tx.write_set:
            readers_since.setdefault(r, []).append(j)
    return preds


def critical_path(block: Block) -> Gas:
    """Gas of the heaviest conflict-ordered chain in the block (0 if empty)."""
    writer_cost: dict[int, Gas] = {}
    reader_cost: dict[int, Gas] = {}
    best = 0
    for tx in block.txs:
        pred = 0
        for r in tx.read_set | tx.write_set:
            cost = writer_cost.get(r, 0)
            if cost > pred:
                pred = cost
        for r in tx.write_set:
            cost = reader_cost.get(r, 0)
            if cost > pred:
                pred = cost
        cost = pred + tx.gas
        for r in tx.write_set:
            writer_cost[r] = cost
            reader_cost[r] = 0
        for r in tx.read_set - tx.write_set:
            if cost > reader_cost.get(r, 0):
                reader_cost[r] = cost
        if cost > best:
            best = cost
    return best


def guided_makespan(block: Block, c: int) -> ExecutionReport:
    """List-schedule the block on c workers using the declared conflicts.

    Classic event-driven list scheduling: whenever a worker is idle it takes
    the first transaction in block order whose earlier conflicting
    transactions have all finished. Ties between idle workers go to the
    lowest worker index; simultaneously-ready transactions keep block order.
    Guided execution never aborts, so total work equals the block's gas.
    """
    if c < 1:
        raise ValueError("worker count must be >= 1")
    txs = block.txs
    n = len(txs)
    if n == 0:
        return ExecutionReport(makespan=0, total_work=0, reexecutions=0)

    preds = _dependency_edges(txs)
    succs: list[list[int]] = [[] for _ in range(n)]
    indegree = [0] * n
    for j, pred in enumerate(preds):
        indegree[j] = len(pred)
        for i in pred:
            succs[i].append(j)

    available = [j for j in range(n) if indegree[j] == 0]
    heapq.heapify(available)
    idle = list(range(min(c, n)))
    heapq.heapify(idle)
    running: list[tuple[Gas, int, int]] = []  # (finish, worker, tx index)
    finish = [0] * n
    now: Gas = 0
    done = 0
    while done < n:
        while available and idle:
            j = heapq.heappop(available)
            worker = heapq.heappop(idle)
            finish[j] = now + txs[j].gas
            heapq.heappush(running, (finish[j], worker, j))
        now = running[0][0]
        while running and running[0][0] == now:
            _, worker, j = heapq.heappop(running)
            heapq.heappush(idle, worker)
            done += 1
            for k in succs[j]:
                indegree[k] -= 1
                if indegree[k] == 0:
                    heapq.heappush(available, k)

    return ExecutionReport(
        makespan=max(finish),
        total_work=block.gas,
        reexecutions=0,
        finish_time={txs[j].tx_id: finish[j] for j in range(n)},
    )


def optimistic_execute(block: Block, c: int) -> ExecutionReport:
    """Speculative execution with abort-and-retry, in the abstract.

    Transactions are first packed greedily onto c workers in block order,
    ignoring conflicts. Then, in block order, any transaction that started
    before the current finish of an earlier conflicting transaction aborts
    and re-executes from that finish time, paying its full gas again. Passes
    repeat until nothing aborts; the earliest conflicting transaction never
    aborts, so this terminates. Retried transactions are not re-packed onto
    workers, which is the model's deliberate simplification.
    """
    if c < 1:
        raise ValueError("worker count must be >= 1")
    txs = block.txs
    n = len(txs)
    if n == 0:
        return ExecutionReport(makespan=0, total_work=0, reexecutions=0)

    free: list[tuple[Gas, int]] = [(0, w) for w in range(c)]
    heapq.heapify(free)
    start = [0] * n
    finish = [0] * n
    for j, tx in enumerate(txs):
        at, worker = heapq.heappop(free)
        start[j] = at
        finish[j] = at + tx.gas
        heapq.heappush(free, (finish[j], worker))

    reexecutions = 0
    total_work = block.gas
    while True:
        aborted = False
        writer_fin: dict[int, Gas] = {}
        reader_fin: dict[int, Gas] = {}
        for j, tx in enumerate(txs):
            commit = 0
            for r in tx.read_set | tx.write_set:
                t = writer_fin.get(r, 0)
                if t > commit:
                    commit = t
            for r in tx.write_set:
                t = reader_fin.get(r, 0)
                if t > commit:
                    commit = t
            if start[j] < commit:
                reexecutions += 1
                total_work += tx.gas
                start[j] = commit
                finish[j] = commit + tx.gas
                aborted = True
            for r in tx.write_set:
                writer_fin[r] = finish[j]
                reader_fin[r] = 0
            for r in tx.read_set - tx.write_set:
                if finish[j] > reader_fin.get(r, 0):
                    reader_fin[r] = finish[j]
        if not aborted:
            break

    return ExecutionReport(
        makespan=max(finish),
        total_work=total_work,
        reexecutions=reexecutions,
        finish_time={txs[j].tx_id: finish[j] for j in range(n)},
    )


_BRUTE_FORCE_MAX_LEN = 8
_BRUTE_FORCE_MAX_C = 3


def brute_force_min_makespan(block: Block, c: int) -> Gas:
    """Exact optimal makespan by exhaustive search; only for tiny blocks.

    Explores every precedence-respecting non-preemptive schedule, including
    deliberate idling, branching at task-finish events. Exponential, hence
    the enforced bounds len <= 8 and c <= 3.
    """
    if c < 1:
        raise ValueError("worker count must be >= 1")
    if block.len > _BRUTE_FORCE_MAX_LEN or c > _BRUTE_FORCE_MAX_C:
        raise ValueError(
            f"brute force limited to len <= {_BRUTE_FORCE_MAX_LEN} and c <= {_BRUTE_FORCE_MAX_C}"
        )
    txs = block.txs
    n = len(txs)
    if n == 0:
        return 0
    preds = _dependency_edges(txs)
    pred_mask = [0] * n
    for j, pred in enumerate(preds):
        for i in pred:
            pred_mask[j] |= 1 << i
    gas = [tx.gas for tx in txs]
    all_done = (1 << n) - 1
    memo: dict[tuple[int, tuple[tuple[Gas, int], ...]], Gas] = {}

    def solve(completed: int, running: tuple[tuple[Gas, int], ...]) -> Gas:
        # running holds (finish - now, task) pairs, sorted; value is the
        # additional time needed from "now".
        if completed == all_done:
            return 0
        key = (completed, running)
        cached = memo.get(key)
        if cached is not None:
            return cached
        running_mask = 0
        for _, j in running:
            running_mask |= 1 << j
        ready = [
            j
            for j in range(n)
            if not (completed >> j) & 1
            and not (running_mask >> j) & 1
            and (pred_mask[j] & completed) == pred_mask[j]
        ]
        slots = c - len(running)
        best: Gas | None = None
        # Choose any subset of ready tasks that fits the free workers
        # (the empty subset models deliberate idling while others run).
        for pick in range(1 << len(ready)):
            chosen = [ready[i] for i in range(len(ready)) if (pick >> i) & 1]
            if len(chosen) > slots:
                continue
            now_running = list(running) + [(gas[j], j) for j in chosen]
            if not now_running:
                continue  # nothing running and nothing started: stuck
            now_running.sort()
            delta = now_running[0][0]
            next_completed = completed
            next_running = []
            for rel, j in now_running:
                if rel == delta:
                    next_completed |= 1 << j
                else:
                    next_running.append((rel - delta, j))
            value = delta + solve(next_completed, tuple(next_running))
            if best is None or value < best:
                best = value
        memo[key] = best  # type: ignore[assignment]
        return best  # type: ignore[return-value]

    return solve(0, ())
