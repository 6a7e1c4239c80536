"""Dependency- and gas-aware block assembly for parallel execution engines.

The package has three layers: domain types and the good-block scheduler
(``core``, ``scheduler``, ``mempool``), deterministic execution simulators
(``execsim``), and the workload generator plus benchmark harness
(``workload``, ``harness``, ``cli``).
"""

from .core import (
    Batch,
    Block,
    ClientId,
    Gas,
    ResourceId,
    ResourceMap,
    SchedulerParams,
    Transaction,
    conflicts,
    default_target_inc_rate,
)
from .execsim import (
    ExecutionReport,
    brute_force_min_makespan,
    critical_path,
    guided_makespan,
    optimistic_execute,
)
from .harness import (
    CSV_COLUMNS,
    ExperimentConfig,
    HarnessError,
    RunReport,
    RunRow,
    emit_report,
    merge_reports,
    percentile,
    read_report,
    run_latency,
    run_throughput,
)
from .mempool import Mempool
from .scheduler import (
    ReadAnalysis,
    SchedulingReport,
    analyze_reads,
    create_good_block,
    fifo_block,
    schedule_batch,
)
from .workload import PRESET_NAMES, WorkloadConfig, generate_batch, load_config, preset

__all__ = [
    "Batch",
    "Block",
    "ClientId",
    "CSV_COLUMNS",
    "ExecutionReport",
    "ExperimentConfig",
    "Gas",
    "HarnessError",
    "Mempool",
    "PRESET_NAMES",
    "ReadAnalysis",
    "ResourceId",
    "ResourceMap",
    "RunReport",
    "RunRow",
    "SchedulerParams",
    "SchedulingReport",
    "Transaction",
    "WorkloadConfig",
    "analyze_reads",
    "brute_force_min_makespan",
    "conflicts",
    "create_good_block",
    "critical_path",
    "default_target_inc_rate",
    "emit_report",
    "fifo_block",
    "generate_batch",
    "guided_makespan",
    "load_config",
    "merge_reports",
    "optimistic_execute",
    "percentile",
    "preset",
    "read_report",
    "run_latency",
    "run_throughput",
    "schedule_batch",
]
