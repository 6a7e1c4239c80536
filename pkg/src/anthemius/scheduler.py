"""Good-block construction: the batch handler and batch scheduler.

The scheduler walks each batch once, admitting a transaction only while the
longest dependency chain it would extend stays under the per-core gas budget
(``seqlimit``) and the block stays under ``seqlimit * c`` total gas. The
handler polls batches from the mempool and relaxes ``seqlimit`` when the
observed inclusion rate falls below the configured target, up to
``maxrelaxnum`` times. Work is linear in the number of declared resource
accesses; the resource map counts its own operations so tests can verify
that.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .core import Batch, Block, ClientId, Gas, ResourceMap, SchedulerParams, Transaction
from .mempool import Mempool


@dataclass
class ReadAnalysis:
    """Result of scanning one transaction's read set against the resource map."""

    chain_cost: Gas
    hot_resources: int


@dataclass
class SchedulingReport:
    """Instrumentation for one block construction.

    ``included + skipped`` equals the number of transactions examined;
    transactions left unexamined after a hard length stop count as neither.
    """

    included: int = 0
    skipped: int = 0
    relaxations_used: int = 0
    final_seqlimit: Gas = 0
    resmap_accesses: int = 0
    per_batch_inclusion_rates: list[Fraction] = field(default_factory=list)
    skipped_clients: set[ClientId] = field(default_factory=set)


def analyze_reads(tx: Transaction, resmap: ResourceMap, block_gas: Gas, c: int) -> ReadAnalysis:
    """Longest known chain feeding ``tx`` and how many of its reads are hot.

    A read is hot when the chain recorded for that resource exceeds the
    block's current per-core gas share, ``block_gas // c``.
    """
    share = block_gas // c
    chain_cost = 0
    hot = 0
    for resource in tx.read_set:
        cost = resmap.chain_cost(resource)
        if cost > chain_cost:
            chain_cost = cost
        if cost > share:
            hot += 1
    return ReadAnalysis(chain_cost=chain_cost, hot_resources=hot)


def schedule_batch(
    block: Block,
    batch: Batch,
    seqlimit: Gas,
    params: SchedulerParams,
    resmap: ResourceMap,
    skipped_clients: set[ClientId],
    report: SchedulingReport | None = None,
) -> Fraction:
    """Try to add one batch to the block; return the inclusion rate.

    Transactions are visited in batch order. A transaction is skipped when
    its sender already had one skipped (preserving per-client order), when it
    reads ``maxhotr`` or more hot resources in the middle region of the block
    (``lim < len < maxlen - lim``), or when it would push its dependency
    chain past ``seqlimit`` or the block past ``seqlimit * c`` gas. Skips add
    the sender to ``skipped_clients``. Hitting ``maxlen`` stops the batch
    outright. An empty batch counts as fully included.
    """
    if not batch.txs:
        rate = Fraction(1)
        if report is not None:
            report.per_batch_inclusion_rates.append(rate)
        return rate

    included = 0
    examined = 0
    for tx in batch.txs:
        if tx.sender in skipped_clients:
            examined += 1
            continue
        analysis = analyze_reads(tx, resmap, block.gas, params.c)
        if (
            analysis.hot_resources >= params.maxhotr
            and params.lim < block.len < params.maxlen - params.lim
        ):
            skipped_clients.add(tx.sender)
            examined += 1
            continue
        if analysis.chain_cost + tx.gas > seqlimit or block.gas + tx.gas > seqlimit * params.c:
            skipped_clients.add(tx.sender)
            examined += 1
            continue
        if block.len == params.maxlen:
            break
        block.append(tx)
        if params.literal_chain_update:
            new_chain = analysis.chain_cost
        else:
            new_chain = analysis.chain_cost + tx.gas
        for resource in tx.write_set:
            resmap.note_chain(resource, new_chain)
        included += 1
        examined += 1

    rate = Fraction(included, len(batch.txs))
    if report is not None:
        report.included += included
        report.skipped += examined - included
        report.per_batch_inclusion_rates.append(rate)
        report.resmap_accesses = resmap.accesses
    return rate


def create_good_block(mempool: Mempool, params: SchedulerParams) -> tuple[Block, SchedulingReport]:
    """Build one block from the mempool, relaxing the chain budget as needed.

    Construction ends when the mempool runs dry, the block reaches
    ``maxlen``, or a batch's inclusion rate stays under ``target_inc_rate``
    with no relaxations left (immediately, if a full batch contributed
    nothing). Every polled-but-not-included transaction is requeued at the
    front of the mempool in its original relative order.
    """
    base = params.base_seqlimit
    seqlimit = base
    resmap = ResourceMap()
    block = Block()
    report = SchedulingReport(final_seqlimit=seqlimit)
    leftovers: list[Transaction] = []

    while block.len < params.maxlen:
        batch = mempool.poll_batch()
        if not batch.txs:
            break
        length_before = block.len
        rate = schedule_batch(block, batch, seqlimit, params, resmap, report.skipped_clients, report)
        added = {tx.tx_id for tx in block.txs[length_before:]}
        leftovers.extend(tx for tx in batch.txs if tx.tx_id not in added)
        if rate < params.target_inc_rate:
            if report.relaxations_used >= params.maxrelaxnum or (rate == 0 and batch.is_full):
                break
            factor = min(params.maxrelaxrate, float(rate) * params.target_scale)
            seqlimit = math.floor(base * factor)
            report.relaxations_used += 1

    mempool.requeue(leftovers)
    report.final_seqlimit = seqlimit
    report.resmap_accesses = resmap.accesses
    return block, report


def fifo_block(mempool: Mempool, params: SchedulerParams) -> Block:
    """Dependency-blind baseline: fill the block strictly in arrival order.

    Stops at the first transaction that would exceed ``maxgas`` or once
    ``maxlen`` is reached; the remainder is requeued at the front.
    """
    block = Block()
    leftovers: list[Transaction] = []
    stopped = False
    while not stopped:
        batch = mempool.poll_batch()
        if not batch.txs:
            break
        for i, tx in enumerate(batch.txs):
            if block.len >= params.maxlen or block.gas + tx.gas > params.maxgas:
                leftovers.extend(batch.txs[i:])
                stopped = True
                break
            block.append(tx)
    mempool.requeue(leftovers)
    return block
