"""Shared helpers: compact transaction builders and random scenario generators."""

from __future__ import annotations

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from anthemius import SchedulerParams, Transaction
from anthemius.rng import SplitMix64

_counter = [0]


def tx(
    sender=0,
    reads=(),
    writes=(),
    gas=1,
    tx_id=None,
    fast_track=False,
) -> Transaction:
    """Build a transaction with an auto-incrementing id unless given one."""
    if tx_id is None:
        tx_id = _counter[0]
        _counter[0] += 1
    return Transaction(
        tx_id=tx_id,
        sender=sender,
        read_set=frozenset(reads),
        write_set=frozenset(writes),
        gas=gas,
        fast_track=fast_track,
    )


def random_txs(rng: SplitMix64, n: int, *, n_resources=8, n_clients=6, max_gas=9, max_reads=3, max_writes=2, id_base=0):
    """Small random transactions for invariant sweeps."""
    out = []
    for i in range(n):
        reads = frozenset(rng.next_below(n_resources) for _ in range(rng.next_int(0, max_reads)))
        writes = frozenset(rng.next_below(n_resources) for _ in range(rng.next_int(0, max_writes)))
        out.append(
            Transaction(
                tx_id=id_base + i,
                sender=rng.next_below(n_clients),
                read_set=reads,
                write_set=writes,
                gas=rng.next_int(1, max_gas),
            )
        )
    return out


def random_scenario(seed: int):
    """A random (transactions, params, batch capacity) triple for scheduler sweeps.

    Parameters are drawn so that every rule (hot reads, gas limits,
    relaxation, length caps) can trigger on small inputs.
    """
    rng = SplitMix64(seed)
    total = rng.next_int(0, 80)
    txs = random_txs(rng, total)
    capacity = rng.next_int(1, 30)
    maxlen = rng.next_int(4, 60)
    params = SchedulerParams(
        maxgas=rng.next_int(10, 200),
        c=rng.next_int(1, 6),
        maxlen=maxlen,
        lim=rng.next_int(0, maxlen // 2),
        maxhotr=rng.next_int(1, 4),
        maxrelaxnum=rng.next_int(0, 3),
        maxrelaxrate=float(rng.next_int(1, 100)),
        target_inc_rate=rng.next_int(1, 100) / 100.0,
        literal_chain_update=rng.next_below(4) == 0,
    )
    return txs, params, capacity


def chunk(txs, capacity):
    """Partition a transaction list the way a mempool of that capacity would."""
    return [
        (txs[i : i + capacity], len(txs[i : i + capacity]) == capacity)
        for i in range(0, len(txs), capacity)
    ]
