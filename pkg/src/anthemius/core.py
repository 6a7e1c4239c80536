"""Shared domain types: transactions, batches, blocks, and the conflict predicate.

Gas is a plain non-negative ``int``. Python integers are arbitrary precision,
so gas arithmetic cannot overflow; validation only guards against negative or
zero values where the invariants require it.
"""

from __future__ import annotations

from dataclasses import dataclass, field

# Abstract execution-cost units.
Gas = int
# Opaque identifier of a state address.
ResourceId = int
# Opaque sender identifier (no cryptographic content).
ClientId = int


@dataclass(frozen=True)
class Transaction:
    """A unit of scheduling: declared read/write sets plus a gas estimate.

    ``tx_id`` must be unique within a run and is assigned in submission
    order, so it doubles as the per-client sequence number.
    """

    tx_id: int
    sender: ClientId
    read_set: frozenset[ResourceId]
    write_set: frozenset[ResourceId]
    gas: Gas
    fast_track: bool = False

    def __post_init__(self):
        object.__setattr__(self, "read_set", frozenset(self.read_set))
        object.__setattr__(self, "write_set", frozenset(self.write_set))
        if self.gas <= 0:
            raise ValueError(f"transaction gas must be positive, got {self.gas}")


def conflicts(a: Transaction, b: Transaction) -> bool:
    """True iff the two transactions cannot run concurrently (WAW, RAW or WAR)."""
    return not (
        a.write_set.isdisjoint(b.write_set)
        and a.write_set.isdisjoint(b.read_set)
        and a.read_set.isdisjoint(b.write_set)
    )


@dataclass
class Batch:
    """An ordered slice of the mempool handed to the scheduler in one call."""

    txs: list[Transaction]
    capacity: int

    def __post_init__(self):
        if self.capacity < 0:
            raise ValueError("batch capacity must be >= 0")
        if len(self.txs) > self.capacity:
            raise ValueError("batch holds more transactions than its capacity")

    @property
    def is_full(self) -> bool:
        return len(self.txs) == self.capacity

    def __len__(self) -> int:
        return len(self.txs)


@dataclass
class Block:
    """Ordered transaction list with accumulated gas.

    Mutable, but confined to a single construction context; ``append`` is the
    only mutation and keeps ``gas`` consistent.
    """

    txs: list[Transaction] = field(default_factory=list)
    gas: Gas = 0

    @property
    def len(self) -> int:
        return len(self.txs)

    def __len__(self) -> int:
        return len(self.txs)

    def append(self, tx: Transaction) -> None:
        self.txs.append(tx)
        self.gas += tx.gas

    def check_invariants(self) -> None:
        """Raise ValueError if accumulated gas or per-client order is broken.

        Per-client order is checked through tx_id, which carries submission
        order within a run.
        """
        if self.gas != sum(tx.gas for tx in self.txs):
            raise ValueError("block gas does not match the sum of its transactions")
        last_seen: dict[ClientId, int] = {}
        for tx in self.txs:
            prev = last_seen.get(tx.sender)
            if prev is not None and tx.tx_id < prev:
                raise ValueError(f"client {tx.sender} transactions out of submission order")
            last_seen[tx.sender] = tx.tx_id


class ResourceMap:
    """Per-resource cost of the longest sequential chain ending in a write.

    Values only ever increase during one block construction. ``accesses``
    counts map operations (one per lookup, one per update) so the linear
    complexity of scheduling is observable.
    """

    def __init__(self):
        self._chain: dict[ResourceId, Gas] = {}
        self.accesses: int = 0

    def chain_cost(self, resource: ResourceId) -> Gas:
        self.accesses += 1
        return self._chain.get(resource, 0)

    def note_chain(self, resource: ResourceId, cost: Gas) -> None:
        """Record ``cost`` for ``resource`` unless a longer chain is already known."""
        self.accesses += 1
        if cost > self._chain.get(resource, 0):
            self._chain[resource] = cost

    def snapshot(self) -> dict[ResourceId, Gas]:
        return dict(self._chain)

    def __len__(self) -> int:
        return len(self._chain)


def default_target_inc_rate(c: int, maxlen: int, batch_capacity: int) -> float:
    """Default inclusion-rate threshold below which the gas limit is relaxed."""
    return min(1.0, 2.0 / c) * (maxlen / batch_capacity)


@dataclass(frozen=True)
class SchedulerParams:
    """Capacity knobs and tuning constants for block construction.

    ``maxgas`` is the total block gas budget and ``c`` the concurrency
    parameter; the per-core sequential budget starts at ``maxgas // c``.
    ``target_scale`` multiplies the observed inclusion rate when relaxing
    that budget and defaults to ``2 * maxlen / c``. ``literal_chain_update``
    switches the resource map update to store the pre-inclusion chain cost
    instead of chain cost plus the transaction's own gas; it exists only for
    differential testing.
    """

    maxgas: Gas
    c: int
    maxlen: int = 10_000
    lim: int = 1_000
    maxhotr: int = 4
    maxrelaxnum: int = 2
    maxrelaxrate: float = 100.0
    target_inc_rate: float | None = None
    target_scale: float | None = None
    literal_chain_update: bool = False

    def __post_init__(self):
        if self.c < 1:
            raise ValueError("concurrency parameter c must be >= 1")
        if self.maxgas < 1:
            raise ValueError("maxgas must be positive")
        if self.maxlen < 1:
            raise ValueError("maxlen must be positive")
        if not 0 <= self.lim * 2 <= self.maxlen:
            raise ValueError("lim must satisfy 0 <= lim <= maxlen/2")
        if self.maxhotr < 1:
            raise ValueError("maxhotr must be >= 1")
        if self.maxrelaxnum < 0:
            raise ValueError("maxrelaxnum must be >= 0")
        if self.maxrelaxrate <= 0:
            raise ValueError("maxrelaxrate must be positive")
        if self.target_inc_rate is None:
            object.__setattr__(
                self, "target_inc_rate", default_target_inc_rate(self.c, self.maxlen, self.maxlen)
            )
        if self.target_inc_rate <= 0:
            raise ValueError("target_inc_rate must be positive")
        if self.target_scale is None:
            object.__setattr__(self, "target_scale", 2.0 * self.maxlen / self.c)
        if self.target_scale <= 0:
            raise ValueError("target_scale must be positive")

    @property
    def base_seqlimit(self) -> Gas:
        """Initial per-core budget on the sequential path (floor division)."""
        return self.maxgas // self.c
