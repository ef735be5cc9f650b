"""Output parameters per strategy, cross-experiment consolidation, ranking.

Value earned by a node for a completed request is the request's
service value times its weightage. The resource utilization factor
(RUF) of a VM is its busy slot-ticks divided by makespan times
connections, which lands in [0, 1] by construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .engine import SimulationResult
from .errors import ReqsimError
from .generation import Request
from .model import Service, VirtualMachine
from .strategies import StrategyId

FLAG_NO_ASSIGNMENTS = "NO_ASSIGNMENTS"

_STRATEGY_ORDER = {s: i for i, s in enumerate(StrategyId)}


@dataclass(frozen=True)
class StrategyMetrics:
    strategy: StrategyId
    avg_wait: float
    avg_response: float
    per_node_value: dict[int, int]
    per_node_service_value: dict[tuple[int, int], int]
    per_node_ruf: dict[int, float]
    mean_ruf: float
    rejection_count: int
    flags: tuple[str, ...] = ()


@dataclass(frozen=True)
class StrategyAggregate:
    """Cross-experiment summary for one strategy."""

    strategy: StrategyId
    experiments: int
    mean_avg_wait: float
    mean_avg_response: float
    mean_mean_ruf: float
    mean_rejection_count: float
    win_count: int


@dataclass(frozen=True)
class ConsolidatedMetrics:
    file_name: str
    rows: tuple[tuple[int, StrategyMetrics], ...]  # (experiment_id, metrics)
    aggregates: tuple[StrategyAggregate, ...]


def compute_metrics(
    result: SimulationResult,
    requests: Sequence[Request],
    services: Sequence[Service],
    vms: Sequence[VirtualMachine],
) -> StrategyMetrics:
    """Condense one simulation into the comparison parameters.

    Rejected requests are excluded from the time means (they have no
    wait) and surfaced as a count instead. With nothing assigned the
    means are reported as 0 with a NO_ASSIGNMENTS flag.
    """
    request_by_id = {r.request_id: r for r in requests}
    service_by_id = {s.service_id: s for s in services}

    per_node_value = {vm.vm_id: 0 for vm in vms}
    per_node_service_value: dict[tuple[int, int], int] = {}
    for timing in result.timings:
        service = service_by_id[request_by_id[timing.request_id].service_id]
        earned = service.value * service.weightage
        per_node_value[timing.vm_id] += earned
        key = (timing.vm_id, service.service_id)
        per_node_service_value[key] = per_node_service_value.get(key, 0) + earned

    flags: tuple[str, ...] = ()
    if result.timings:
        avg_wait = sum(t.wait_time for t in result.timings) / len(result.timings)
        avg_response = sum(t.response_time for t in result.timings) / len(result.timings)
    else:
        avg_wait = avg_response = 0.0
        flags = (FLAG_NO_ASSIGNMENTS,)

    per_node_ruf = {}
    for vm in vms:
        if result.makespan > 0:
            per_node_ruf[vm.vm_id] = result.per_vm_busy.get(vm.vm_id, 0) / (
                result.makespan * vm.connections
            )
        else:
            per_node_ruf[vm.vm_id] = 0.0
    healthy = [vm for vm in vms if not vm.faulty]
    if healthy:
        mean_ruf = sum(per_node_ruf[vm.vm_id] for vm in healthy) / len(healthy)
    else:
        mean_ruf = 0.0

    return StrategyMetrics(
        strategy=result.strategy,
        avg_wait=avg_wait,
        avg_response=avg_response,
        per_node_value=per_node_value,
        per_node_service_value=per_node_service_value,
        per_node_ruf=per_node_ruf,
        mean_ruf=mean_ruf,
        rejection_count=len(result.rejections),
        flags=flags,
    )


def rank_strategies(metrics: Sequence[StrategyMetrics]) -> list[StrategyId]:
    """Best first: highest mean RUF, then lowest average response time."""
    if not metrics:
        raise ReqsimError("NO_METRICS", "nothing to rank")
    ordered = sorted(
        metrics,
        key=lambda m: (-m.mean_ruf, m.avg_response, _STRATEGY_ORDER[m.strategy]),
    )
    return [m.strategy for m in ordered]


def consolidate(
    file_name: str,
    completed: Sequence[tuple[int, Sequence[StrategyMetrics]]],
) -> ConsolidatedMetrics:
    """Aggregate per-strategy metrics across a file's completed experiments.

    ``completed`` holds (experiment_id, metrics-per-strategy) pairs. A
    strategy's win count is the number of experiments it ranked first
    in; means cover only the experiments the strategy actually ran in.
    """
    if not completed:
        raise ReqsimError("NOTHING_TO_CONSOLIDATE", "no completed experiments")

    rows: list[tuple[int, StrategyMetrics]] = []
    per_strategy: dict[StrategyId, list[StrategyMetrics]] = {}
    wins: dict[StrategyId, int] = {}
    for experiment_id, experiment_metrics in completed:
        for m in experiment_metrics:
            rows.append((experiment_id, m))
            per_strategy.setdefault(m.strategy, []).append(m)
        if experiment_metrics:
            winner = rank_strategies(list(experiment_metrics))[0]
            wins[winner] = wins.get(winner, 0) + 1

    aggregates = []
    for strategy in StrategyId:
        runs = per_strategy.get(strategy)
        if not runs:
            continue
        n = len(runs)
        aggregates.append(
            StrategyAggregate(
                strategy=strategy,
                experiments=n,
                mean_avg_wait=sum(m.avg_wait for m in runs) / n,
                mean_avg_response=sum(m.avg_response for m in runs) / n,
                mean_mean_ruf=sum(m.mean_ruf for m in runs) / n,
                mean_rejection_count=sum(m.rejection_count for m in runs) / n,
                win_count=wins.get(strategy, 0),
            )
        )
    return ConsolidatedMetrics(
        file_name=file_name, rows=tuple(rows), aggregates=tuple(aggregates)
    )
