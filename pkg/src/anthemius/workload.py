"""Seeded generator of contended transaction batches.

Resources and senders are drawn from Zipf distributions so that a handful of
hot addresses and repeat senders dominate, mimicking the access patterns of
real chains. Five named presets cover the qualitative signatures of a
peer-to-peer, two exchange, an NFT-mint and a mixed workload; their numeric
values are tuned approximations, not measured ground truth.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from pathlib import Path

from .core import Batch, Transaction
from .rng import SplitMix64, ZipfSampler, derive_seed

PRESET_NAMES = ("p2ptx", "dexavg", "dexbursty", "nft", "mixed")


@dataclass(frozen=True)
class WorkloadConfig:
    """Knobs controlling one workload's contention profile.

    ``resource_zipf_s`` skews resource popularity (higher = hotter top
    addresses); ``client_zipf_s`` skews sender repetition. Ranges are
    inclusive ``(lo, hi)`` pairs. Writes are read-modify-write, as on real
    chains: every written resource also appears in the read set, and
    ``reads_per_tx`` counts the additional read-only accesses.
    """

    num_resources: int
    resource_zipf_s: float
    num_clients: int
    client_zipf_s: float
    reads_per_tx: tuple[int, int]
    writes_per_tx: tuple[int, int]
    gas_range: tuple[int, int]
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "reads_per_tx", tuple(self.reads_per_tx))
        object.__setattr__(self, "writes_per_tx", tuple(self.writes_per_tx))
        object.__setattr__(self, "gas_range", tuple(self.gas_range))
        if self.num_resources < 1 or self.num_clients < 1:
            raise ValueError("need at least one resource and one client")
        if self.resource_zipf_s < 0 or self.client_zipf_s < 0:
            raise ValueError("zipf skews must be non-negative")
        for name in ("reads_per_tx", "writes_per_tx", "gas_range"):
            lo, hi = getattr(self, name)
            if lo > hi:
                raise ValueError(f"{name} range is empty")
            if lo < 0:
                raise ValueError(f"{name} lower bound must be >= 0")
        if self.gas_range[0] < 1:
            raise ValueError("gas lower bound must be >= 1")
        if self.num_resources < self.reads_per_tx[1] + self.writes_per_tx[1]:
            raise ValueError("num_resources must cover the largest read+write draw")


# Samplers are pure functions of (n, s); cache them across batches.
_sampler_cache: dict[tuple[int, float], ZipfSampler] = {}


def _sampler(n: int, s: float) -> ZipfSampler:
    key = (n, s)
    sampler = _sampler_cache.get(key)
    if sampler is None:
        sampler = _sampler_cache[key] = ZipfSampler(n, s)
    return sampler


def _draw_distinct(sampler: ZipfSampler, rng: SplitMix64, k: int) -> frozenset[int]:
    # Rejection sampling; terminates because the config guarantees k <= n.
    out: set[int] = set()
    while len(out) < k:
        out.add(sampler.sample(rng))
    return frozenset(out)


def generate_batch(cfg: WorkloadConfig, size: int, batch_index: int = 0) -> Batch:
    """Deterministically generate ``size`` transactions for ``batch_index``.

    The per-batch stream is derived from (cfg.seed, batch_index), so batches
    can be generated independently and in any order. Transaction ids are
    ``batch_index * size + i``, unique across a run of equal-sized batches.

    Per transaction the draw order is fixed: sender, read-only count, write
    count, read-only set, write set, gas. The final read set is the union of
    the read-only draw and the write set (read-modify-write hints).
    """
    if size < 0:
        raise ValueError("batch size must be >= 0")
    rng = SplitMix64(derive_seed(cfg.seed, batch_index))
    resources = _sampler(cfg.num_resources, cfg.resource_zipf_s)
    clients = _sampler(cfg.num_clients, cfg.client_zipf_s)
    txs = []
    for i in range(size):
        sender = clients.sample(rng)
        n_reads = rng.next_int(*cfg.reads_per_tx)
        n_writes = rng.next_int(*cfg.writes_per_tx)
        read_only = _draw_distinct(resources, rng, n_reads)
        write_set = _draw_distinct(resources, rng, n_writes)
        gas = rng.next_int(*cfg.gas_range)
        txs.append(
            Transaction(
                tx_id=batch_index * size + i,
                sender=sender,
                read_set=read_only | write_set,
                write_set=write_set,
                gas=gas,
            )
        )
    return Batch(txs, capacity=size)


# Preset values are tuned approximations of the qualitative signatures the
# named scenarios are known for, not measured distributions. Contention lives
# almost entirely in the write sets (read-modify-write), which is where
# declared hints carry real scheduling information.
_PRESETS: dict[str, WorkloadConfig] = {
    # Transfers between mostly-unique account pairs: huge address space,
    # nearly uniform access, each transfer updates two accounts.
    "p2ptx": WorkloadConfig(
        num_resources=100_000,
        resource_zipf_s=0.2,
        num_clients=50_000,
        client_zipf_s=0.3,
        reads_per_tx=(0, 0),
        writes_per_tx=(2, 2),
        gas_range=(1, 10),
    ),
    # Exchange trading over a large pool universe with mild popularity skew.
    "dexavg": WorkloadConfig(
        num_resources=8_000,
        resource_zipf_s=0.45,
        num_clients=10_000,
        client_zipf_s=0.5,
        reads_per_tx=(0, 2),
        writes_per_tx=(1, 2),
        gas_range=(2, 20),
    ),
    # Bursty trading concentrated on a small set of hot pools, several of
    # which develop dependency chains at once.
    "dexbursty": WorkloadConfig(
        num_resources=200,
        resource_zipf_s=0.7,
        num_clients=10_000,
        client_zipf_s=0.5,
        reads_per_tx=(0, 1),
        writes_per_tx=(0, 3),
        gas_range=(2, 20),
    ),
    # Mint rush: one very hot contract address and heavily repeated senders.
    "nft": WorkloadConfig(
        num_resources=2_000,
        resource_zipf_s=1.6,
        num_clients=400,
        client_zipf_s=1.1,
        reads_per_tx=(0, 2),
        writes_per_tx=(1, 2),
        gas_range=(1, 12),
    ),
    # Union of everything: wide gas spread, moderately hot shared state.
    "mixed": WorkloadConfig(
        num_resources=200,
        resource_zipf_s=0.7,
        num_clients=5_000,
        client_zipf_s=0.7,
        reads_per_tx=(0, 2),
        writes_per_tx=(0, 4),
        gas_range=(1, 60),
    ),
}


def preset(name: str) -> WorkloadConfig:
    """Return the named workload preset; see module docstring for the roster."""
    try:
        return _PRESETS[name]
    except KeyError:
        raise ValueError(f"unknown preset {name!r}; choose one of {', '.join(PRESET_NAMES)}") from None


def load_config(path: str | Path) -> WorkloadConfig:
    """Parse a workload config file.

    Format: one ``key = value`` pair per line, ``#`` comments, blank lines
    ignored. Ranges are written ``lo..hi`` (or a single integer for a
    degenerate range). Keys match the WorkloadConfig field names; seed is
    optional and defaults to 0.
    """
    values: dict[str, object] = {}
    range_fields = {"reads_per_tx", "writes_per_tx", "gas_range"}
    float_fields = {"resource_zipf_s", "client_zipf_s"}
    int_fields = {"num_resources", "num_clients", "seed"}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected 'key = value', got {raw!r}")
        key, _, text = line.partition("=")
        key = key.strip()
        text = text.strip()
        try:
            if key in range_fields:
                lo, _, hi = text.partition("..")
                values[key] = (int(lo), int(hi) if hi else int(lo))
            elif key in float_fields:
                values[key] = float(text)
            elif key in int_fields:
                values[key] = int(text)
            else:
                raise ValueError(f"unknown key {key!r}")
        except ValueError as exc:
            raise ValueError(f"{path}:{lineno}: {exc}") from None
    missing = (
        {"num_resources", "resource_zipf_s", "num_clients", "client_zipf_s"}
        | range_fields
    ) - values.keys()
    if missing:
        raise ValueError(f"{path}: missing keys: {', '.join(sorted(missing))}")
    return WorkloadConfig(**values)  # type: ignore[arg-type]


def with_seed(cfg: WorkloadConfig, seed: int) -> WorkloadConfig:
    """Copy of ``cfg`` with a different seed."""
    return replace(cfg, seed=seed)
