"""Independent reference implementations used as test oracles.

Everything here is written naively: pairwise conflict scans instead of
per-resource maps, plain dicts instead of instrumented types, straight-line
transcriptions of the scheduling rules. The production code must agree with
these on arbitrary inputs; the oracles stay deliberately unoptimized.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction


def ref_conflicts(a, b) -> bool:
    for r in a.write_set:
        if r in b.write_set or r in b.read_set:
            return True
    for r in a.read_set:
        if r in b.write_set:
            return True
    return False


@dataclass
class RefTrace:
    """Everything the reference scheduler observed, for invariant checks."""

    included_ids: list[int] = field(default_factory=list)
    # per included tx: (tx_id, chain_cost, seqlimit at inclusion, block gas after)
    inclusions: list[tuple[int, int, int, int]] = field(default_factory=list)
    # every resource-map store: (resource, old value, new value)
    stores: list[tuple[object, int, int]] = field(default_factory=list)
    relaxations: int = 0
    final_seqlimit: int = 0
    skipped_clients: set = field(default_factory=set)
    rates: list[Fraction] = field(default_factory=list)
    # examination order: client -> step of first skip / steps of inclusions
    first_skip_step: dict = field(default_factory=dict)
    inclusion_steps: list[tuple[int, object]] = field(default_factory=list)
    steps: int = 0


def ref_schedule(block_txs, block_gas, batch_txs, seqlimit, params, resmap, skipped, trace):
    """Straight-line transcription of the batch scheduling rules."""
    if not batch_txs:
        return Fraction(1), block_gas
    scheduled = 0
    for tx in batch_txs:
        trace.steps += 1
        if tx.sender in skipped:
            trace.first_skip_step.setdefault(tx.sender, trace.steps)
            continue
        chaincost = 0
        hot = 0
        for r in tx.read_set:
            if r in resmap:
                if resmap[r] > chaincost:
                    chaincost = resmap[r]
                if resmap[r] > block_gas // params.c:
                    hot += 1
        if hot >= params.maxhotr and params.lim < len(block_txs) < params.maxlen - params.lim:
            skipped.add(tx.sender)
            trace.first_skip_step.setdefault(tx.sender, trace.steps)
            continue
        if chaincost + tx.gas > seqlimit or block_gas + tx.gas > seqlimit * params.c:
            skipped.add(tx.sender)
            trace.first_skip_step.setdefault(tx.sender, trace.steps)
            continue
        if len(block_txs) == params.maxlen:
            break
        block_txs.append(tx)
        block_gas += tx.gas
        if params.literal_chain_update:
            value = chaincost
        else:
            value = chaincost + tx.gas
        for r in tx.write_set:
            old = resmap.get(r, 0)
            if value > old:
                resmap[r] = value
                trace.stores.append((r, old, value))
        trace.included_ids.append(tx.tx_id)
        trace.inclusions.append((tx.tx_id, chaincost, seqlimit, block_gas))
        trace.inclusion_steps.append((trace.steps, tx.sender))
        scheduled += 1
    return Fraction(scheduled, len(batch_txs)), block_gas


def ref_create_good_block(batches, params):
    """Drive ref_schedule over a list of (txs, is_full) batches.

    Returns (included transaction list, trace). ``batches`` plays the
    mempool: consumed front to back, never requeued (one construction only).
    """
    base = params.maxgas // params.c
    seqlimit = base
    resmap: dict = {}
    skipped: set = set()
    trace = RefTrace()
    block_txs: list = []
    block_gas = 0
    queue = list(batches)
    while len(block_txs) < params.maxlen:
        if not queue:
            break
        batch_txs, is_full = queue.pop(0)
        rate, block_gas = ref_schedule(
            block_txs, block_gas, batch_txs, seqlimit, params, resmap, skipped, trace
        )
        trace.rates.append(rate)
        if rate < params.target_inc_rate:
            if trace.relaxations >= params.maxrelaxnum or (rate == 0 and is_full):
                break
            seqlimit = math.floor(base * min(params.maxrelaxrate, float(rate) * params.target_scale))
            trace.relaxations += 1
    trace.final_seqlimit = seqlimit
    trace.skipped_clients = skipped
    return block_txs, trace


def ref_critical_path(txs) -> int:
    """Quadratic DP over the pairwise conflict DAG."""
    cost = []
    for j, tx in enumerate(txs):
        best = 0
        for i in range(j):
            if ref_conflicts(txs[i], tx) and cost[i] > best:
                best = cost[i]
        cost.append(best + tx.gas)
    return max(cost, default=0)


def ref_guided(txs, c) -> int:
    """Quadratic event-driven list schedule with explicit pairwise conflicts."""
    import heapq

    n = len(txs)
    if n == 0:
        return 0
    preds = [[i for i in range(j) if ref_conflicts(txs[i], txs[j])] for j in range(n)]
    succs = [[] for _ in range(n)]
    indeg = [len(p) for p in preds]
    for j, pred in enumerate(preds):
        for i in pred:
            succs[i].append(j)
    avail = [j for j in range(n) if indeg[j] == 0]
    heapq.heapify(avail)
    idle = list(range(c))
    heapq.heapify(idle)
    events: list = []
    finish = [0] * n
    now = 0
    done = 0
    while done < n:
        while avail and idle:
            j = heapq.heappop(avail)
            w = heapq.heappop(idle)
            finish[j] = now + txs[j].gas
            heapq.heappush(events, (finish[j], w, j))
        now = events[0][0]
        while events and events[0][0] == now:
            _, w, j = heapq.heappop(events)
            heapq.heappush(idle, w)
            done += 1
            for k in succs[j]:
                indeg[k] -= 1
                if indeg[k] == 0:
                    heapq.heappush(avail, k)
    return max(finish)


def ref_optimistic(txs, c):
    """Quadratic transcription of the abort-and-retry model.

    Returns (makespan, reexecutions, total_work).
    """
    import heapq

    n = len(txs)
    if n == 0:
        return 0, 0, 0
    free = [(0, w) for w in range(c)]
    heapq.heapify(free)
    start = [0] * n
    finish = [0] * n
    for j, tx in enumerate(txs):
        at, w = heapq.heappop(free)
        start[j] = at
        finish[j] = at + tx.gas
        heapq.heappush(free, (finish[j], w))
    reexec = 0
    total_work = sum(tx.gas for tx in txs)
    while True:
        changed = False
        for j, tx in enumerate(txs):
            commit = 0
            for i in range(j):
                if ref_conflicts(txs[i], tx) and finish[i] > commit:
                    commit = finish[i]
            if start[j] < commit:
                reexec += 1
                total_work += tx.gas
                start[j] = commit
                finish[j] = commit + tx.gas
                changed = True
        if not changed:
            break
    return max(finish), reexec, total_work
