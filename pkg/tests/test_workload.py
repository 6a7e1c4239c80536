"""Workload generator: determinism, Zipf sanity, presets, config files."""

import pytest

from anthemius import (
    Mempool,
    PRESET_NAMES,
    SchedulerParams,
    WorkloadConfig,
    create_good_block,
    generate_batch,
    load_config,
    preset,
)
from anthemius.rng import SplitMix64, ZipfSampler, derive_seed


def uniform_cfg(**overrides):
    base = dict(
        num_resources=200_000,
        resource_zipf_s=0.0,
        num_clients=100_000,
        client_zipf_s=0.0,
        reads_per_tx=(2, 2),
        writes_per_tx=(2, 2),
        gas_range=(1, 10),
        seed=1,
    )
    base.update(overrides)
    return WorkloadConfig(**base)


def test_size_zero_batch():
    batch = generate_batch(uniform_cfg(), 0)
    assert batch.txs == []
    assert batch.capacity == 0
    assert batch.is_full  # zero capacity is vacuously full


def test_generation_is_deterministic():
    cfg = uniform_cfg(seed=99)
    a = generate_batch(cfg, 50)
    b = generate_batch(cfg, 50)
    assert a.txs == b.txs
    # different batch index, different stream
    c = generate_batch(cfg, 50, batch_index=1)
    assert a.txs != c.txs
    assert {t.tx_id for t in c.txs} == set(range(50, 100))


def test_generated_txs_satisfy_invariants():
    cfg = preset("mixed")
    batch = generate_batch(cfg, 200)
    for tx in batch.txs:
        assert tx.gas >= cfg.gas_range[0]
        assert tx.gas <= cfg.gas_range[1]
        assert cfg.writes_per_tx[0] <= len(tx.write_set) <= cfg.writes_per_tx[1]
        # read-modify-write: written resources are declared as reads too
        assert tx.write_set <= tx.read_set
        assert len(tx.read_set - tx.write_set) <= cfg.reads_per_tx[1]
        assert all(0 <= r < cfg.num_resources for r in tx.read_set | tx.write_set)
        assert 0 <= tx.sender < cfg.num_clients


def test_uniform_workload_is_nearly_conflict_free():
    # Monte-Carlo oracle: with uniform draws over 200k resources the pairwise
    # conflict probability is ~4*(2*2)/200000 ~ 1e-4, so a 400-tx batch
    # schedules almost entirely.
    cfg = uniform_cfg()
    batch = generate_batch(cfg, 400)
    rng = SplitMix64(5)
    conflicts_found = 0
    samples = 20_000
    txs = batch.txs
    for _ in range(samples):
        a = txs[rng.next_below(len(txs))]
        b = txs[rng.next_below(len(txs))]
        if a.tx_id != b.tx_id and not (
            a.write_set.isdisjoint(b.write_set)
            and a.write_set.isdisjoint(b.read_set)
            and a.read_set.isdisjoint(b.write_set)
        ):
            conflicts_found += 1
    assert conflicts_found / samples < 0.005

    pool = Mempool(400)
    pool.push(txs)
    params = SchedulerParams(maxgas=400 * 6, c=4, maxlen=400, lim=40)
    block, report = create_good_block(pool, params)
    assert report.included >= 0.99 * len(txs)


def test_zipf_rank1_frequency_matches_harmonic():
    n = 50
    sampler = ZipfSampler(n, 1.0)
    rng = SplitMix64(12)
    draws = 100_000
    hits = sum(1 for _ in range(draws) if sampler.sample(rng) == 0)
    expected = 1.0 / sum(1 / k for k in range(1, n + 1))
    assert abs(hits / draws - expected) / expected < 0.10


def test_zipf_zero_skew_is_uniform():
    sampler = ZipfSampler(4, 0.0)
    rng = SplitMix64(3)
    counts = [0, 0, 0, 0]
    for _ in range(40_000):
        counts[sampler.sample(rng)] += 1
    for count in counts:
        assert abs(count - 10_000) < 600


def test_derive_seed_streams_differ():
    assert derive_seed(42, 0) != derive_seed(42, 1)
    assert derive_seed(42, 0) == derive_seed(42, 0)


def test_presets_validate_and_order():
    for name in PRESET_NAMES:
        cfg = preset(name)
        assert isinstance(cfg, WorkloadConfig)
    assert preset("nft").client_zipf_s > preset("p2ptx").client_zipf_s
    assert preset("dexbursty").resource_zipf_s > preset("dexavg").resource_zipf_s


def test_unknown_preset_rejected():
    with pytest.raises(ValueError):
        preset("warehouse")


def test_invalid_configs_rejected():
    with pytest.raises(ValueError):
        uniform_cfg(gas_range=(0, 5))
    with pytest.raises(ValueError):
        uniform_cfg(reads_per_tx=(3, 2))
    with pytest.raises(ValueError):
        uniform_cfg(num_resources=3, reads_per_tx=(2, 2), writes_per_tx=(2, 2))
    with pytest.raises(ValueError):
        uniform_cfg(resource_zipf_s=-0.5)


def test_config_file_round_trip(tmp_path):
    path = tmp_path / "wl.cfg"
    path.write_text(
        """
        # toy workload
        num_resources = 500
        resource_zipf_s = 0.7
        num_clients = 100
        client_zipf_s = 0.4
        reads_per_tx = 1..3
        writes_per_tx = 2       # degenerate range
        gas_range = 1..9
        seed = 11
        """
    )
    cfg = load_config(path)
    assert cfg.num_resources == 500
    assert cfg.reads_per_tx == (1, 3)
    assert cfg.writes_per_tx == (2, 2)
    assert cfg.seed == 11
    assert generate_batch(cfg, 10).txs == generate_batch(cfg, 10).txs


def test_config_file_errors(tmp_path):
    path = tmp_path / "bad.cfg"
    path.write_text("num_resources = many\n")
    with pytest.raises(ValueError):
        load_config(path)
    path.write_text("nonsense_key = 3\n")
    with pytest.raises(ValueError):
        load_config(path)
    path.write_text("num_resources = 10\n")
    with pytest.raises(ValueError):
        load_config(path)  # missing keys


def test_harmonic_gas_stays_in_range():
    cfg = uniform_cfg(gas_range=(7, 7))
    batch = generate_batch(cfg, 30)
    assert all(t.gas == 7 for t in batch.txs)
