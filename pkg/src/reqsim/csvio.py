"""CSV builders for every exportable artifact.

Output is byte-stable for fixed inputs: rows have a documented order,
floats are always formatted with six fractional digits and a '.'
separator, and line endings are '\\n'. The zip builder pins member
timestamps so archives are reproducible too.
"""

from __future__ import annotations

import io
import zipfile
from typing import Iterable, Sequence

from .engine import SimulationResult
from .generation import Request
from .metrics import ConsolidatedMetrics, StrategyMetrics
from .strategies import AssignmentPlan

POOL_HEADER = "request_id,service_id,ip,zone_id,arrival_time,process_time,priority"
PLAN_HEADER = "strategy,request_id,vm_id_or_REJECTED,reason"
TIMINGS_HEADER = "strategy,request_id,vm_id,arrival,start,completion,wait,response"
METRICS_HEADER = "strategy,avg_wait,avg_response,mean_ruf,rejection_count,flags"
NODE_VALUE_HEADER = "strategy,vm_id,service_id,value_earned"
CONSOLIDATED_HEADER = (
    "strategy,experiments,avg_wait,avg_response,mean_ruf,rejection_count,win_count"
)


def _num(x: float) -> str:
    return f"{x:.6f}"


def _lines(header: str, rows: Iterable[str]) -> str:
    return "\n".join([header, *rows]) + "\n"


def pool_csv(pool: Sequence[Request]) -> str:
    """Pool rows in pool order (arrival_time, then request_id)."""
    return _lines(
        POOL_HEADER,
        (
            f"{r.request_id},{r.service_id},{r.ip},{r.zone_id},"
            f"{r.arrival_time},{r.process_time},{r.priority}"
            for r in pool
        ),
    )


def plans_csv(plans: Sequence[AssignmentPlan]) -> str:
    """One row per (strategy, request): assigned vm_id or REJECTED + reason.

    Strategies appear in the order they were run; within a strategy,
    rows are sorted by request_id.
    """
    rows = []
    for plan in plans:
        outcome: list[tuple[int, str]] = [
            (e.request_id, f"{e.request_id},{e.vm_id},") for e in plan.entries
        ]
        outcome += [
            (rej.request_id, f"{rej.request_id},REJECTED,{rej.reason}")
            for rej in plan.rejections
        ]
        outcome.sort()
        rows.extend(f"{plan.strategy.value},{line}" for _, line in outcome)
    return _lines(PLAN_HEADER, rows)


def timings_csv(results: Sequence[SimulationResult]) -> str:
    """Timings per strategy, sorted by request_id within each strategy."""
    rows = []
    for result in results:
        for t in result.timings:
            rows.append(
                f"{result.strategy.value},{t.request_id},{t.vm_id},"
                f"{t.arrival_time},{t.start_time},{t.completion_time},"
                f"{t.wait_time},{t.response_time}"
            )
    return _lines(TIMINGS_HEADER, rows)


def metrics_csv(metrics: Sequence[StrategyMetrics]) -> str:
    return _lines(
        METRICS_HEADER,
        (
            f"{m.strategy.value},{_num(m.avg_wait)},{_num(m.avg_response)},"
            f"{_num(m.mean_ruf)},{m.rejection_count},{';'.join(m.flags)}"
            for m in metrics
        ),
    )


def per_node_value_csv(metrics: Sequence[StrategyMetrics]) -> str:
    """Value earned per (strategy, vm, service); TOTAL rows sum each VM.

    Rows are ordered by strategy run order, then vm_id, then service_id
    with the TOTAL row last for each VM.
    """
    rows = []
    for m in metrics:
        for vm_id in sorted(m.per_node_value):
            per_service = sorted(
                (sid, earned)
                for (v, sid), earned in m.per_node_service_value.items()
                if v == vm_id
            )
            for service_id, earned in per_service:
                rows.append(f"{m.strategy.value},{vm_id},{service_id},{earned}")
            rows.append(f"{m.strategy.value},{vm_id},TOTAL,{m.per_node_value[vm_id]}")
    return _lines(NODE_VALUE_HEADER, rows)


def consolidated_csv(consolidated: ConsolidatedMetrics) -> str:
    """One aggregate row per strategy, in strategy enumeration order."""
    return _lines(
        CONSOLIDATED_HEADER,
        (
            f"{a.strategy.value},{a.experiments},{_num(a.mean_avg_wait)},"
            f"{_num(a.mean_avg_response)},{_num(a.mean_mean_ruf)},"
            f"{_num(a.mean_rejection_count)},{a.win_count}"
            for a in consolidated.aggregates
        ),
    )


def zip_csvs(members: dict[str, str]) -> bytes:
    """Deterministic zip: fixed timestamps, members in insertion order."""
    buffer = io.BytesIO()
    with zipfile.ZipFile(buffer, "w", zipfile.ZIP_DEFLATED) as archive:
        for name, text in members.items():
            info = zipfile.ZipInfo(name, date_time=(1980, 1, 1, 0, 0, 0))
            info.compress_type = zipfile.ZIP_DEFLATED
            archive.writestr(info, text)
    return buffer.getvalue()
