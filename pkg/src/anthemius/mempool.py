"""Ordered transaction store feeding fixed-size batches to the scheduler."""

from __future__ import annotations

from collections import deque
from typing import Iterable

from .core import Batch, Transaction


class Mempool:
    """FIFO pool of pending transactions.

    Per-client relative order always equals submission order: polls take a
    prefix, scheduler-skipped transactions are requeued at the front in their
    original relative order, and fast-tracking drags a client's earlier
    transactions along to the head.
    """

    def __init__(self, batch_capacity: int):
        if batch_capacity < 1:
            raise ValueError("batch_capacity must be >= 1")
        self.batch_capacity = batch_capacity
        self._pending: deque[Transaction] = deque()
        self._ids: set[int] = set()

    def __len__(self) -> int:
        return len(self._pending)

    @property
    def pending(self) -> tuple[Transaction, ...]:
        return tuple(self._pending)

    def push(self, txs: Iterable[Transaction]) -> None:
        """Append transactions in the given order; rejects duplicate tx_ids."""
        txs = list(txs)
        seen = set()
        for tx in txs:
            if tx.tx_id in self._ids or tx.tx_id in seen:
                raise ValueError(f"duplicate tx_id {tx.tx_id}")
            seen.add(tx.tx_id)
        self._pending.extend(txs)
        self._ids |= seen

    def poll_batch(self) -> Batch:
        """Remove and return up to ``batch_capacity`` transactions in order.

        The batch ``is_full`` only when exactly ``batch_capacity`` came out;
        an empty pool yields an empty, non-full batch.
        """
        take = min(self.batch_capacity, len(self._pending))
        txs = [self._pending.popleft() for _ in range(take)]
        for tx in txs:
            self._ids.discard(tx.tx_id)
        return Batch(txs, capacity=self.batch_capacity)

    def requeue(self, txs: Iterable[Transaction]) -> None:
        """Re-insert previously polled transactions at the front.

        ``txs`` must be in their original relative order; that order is
        preserved ahead of everything currently pending.
        """
        txs = list(txs)
        for tx in txs:
            if tx.tx_id in self._ids:
                raise ValueError(f"tx_id {tx.tx_id} is already pending")
            self._ids.add(tx.tx_id)
        self._pending.extendleft(reversed(txs))

    def fast_track(self, tx_id: int) -> None:
        """Move a pending transaction to the queue head.

        The client's earlier pending transactions move with it, as an
        in-order prefix, so per-client order survives the jump.
        """
        if tx_id not in self._ids:
            raise KeyError(f"unknown tx_id {tx_id}")
        pending = list(self._pending)
        idx = next(i for i, tx in enumerate(pending) if tx.tx_id == tx_id)
        client = pending[idx].sender
        head = [tx for tx in pending[: idx + 1] if tx.sender == client]
        head_ids = {tx.tx_id for tx in head}
        rest = [tx for tx in pending if tx.tx_id not in head_ids]
        self._pending = deque(head + rest)
