"""JSON persistence for experiment files.

One document per file under the data directory, written atomically
(temp file + rename). Access is serialized per file name: mutations
take the file's lock, load a consistent snapshot, and save it back.
"""

from __future__ import annotations

import json
import os
import re
import threading
from dataclasses import asdict
from pathlib import Path
from typing import Any, Iterator

from contextlib import contextmanager

from .engine import RequestTiming, SimulationResult
from .errors import ReqsimError
from .experiments import (
    EventRecord,
    Experiment,
    ExperimentFile,
    ExperimentStatus,
    StrategyRun,
)
from .generation import Request
from .metrics import StrategyMetrics
from .model import (
    CloudConfig,
    DataCenter,
    Options,
    Service,
    ServiceDemand,
    TimeRangeSettings,
    VirtualMachine,
)
from .quantification import QuantificationResult, QuantifyMode
from .strategies import AssignmentPlan, PlanEntry, Rejection, StrategyId

_NAME_RE = re.compile(r"^[A-Za-z0-9][A-Za-z0-9_. -]{0,63}$")


def config_to_dict(config: CloudConfig) -> dict[str, Any]:
    """CloudConfig as its documented JSON shape (plain lists and dicts)."""
    return asdict(config)


def config_from_dict(raw: dict[str, Any]) -> CloudConfig:
    return CloudConfig(
        data_centers=tuple(DataCenter(**dc) for dc in raw.get("data_centers", [])),
        vms=tuple(VirtualMachine(**vm) for vm in raw.get("vms", [])),
        services=tuple(Service(**s) for s in raw.get("services", [])),
        demands=tuple(ServiceDemand(**d) for d in raw.get("demands", [])),
        options=Options(**raw.get("options", {})),
        time_settings=TimeRangeSettings(**raw["time_settings"]),
    )


def _plan_to_dict(plan: AssignmentPlan) -> dict[str, Any]:
    data: dict[str, Any] = {
        "strategy": plan.strategy.value,
        "entries": [[e.request_id, e.vm_id] for e in plan.entries],
        "rejections": [[r.request_id, r.reason] for r in plan.rejections],
    }
    if plan.quantification is not None:
        q = plan.quantification
        data["quantification"] = {
            "capacities": list(q.capacities),
            "mean": q.mean,
            "stddev": q.stddev,
            "z_values": list(q.z_values),
            "percentages": list(q.percentages),
            "total_percentage": q.total_percentage,
            "mode": q.mode.value,
        }
    return data


def _plan_from_dict(raw: dict[str, Any]) -> AssignmentPlan:
    quantification = None
    if "quantification" in raw:
        q = raw["quantification"]
        quantification = QuantificationResult(
            capacities=tuple(q["capacities"]),
            mean=q["mean"],
            stddev=q["stddev"],
            z_values=tuple(q["z_values"]),
            percentages=tuple(q["percentages"]),
            total_percentage=q["total_percentage"],
            mode=QuantifyMode(q["mode"]),
        )
    return AssignmentPlan(
        strategy=StrategyId(raw["strategy"]),
        entries=tuple(PlanEntry(rid, vm) for rid, vm in raw["entries"]),
        rejections=tuple(Rejection(rid, reason) for rid, reason in raw["rejections"]),
        quantification=quantification,
    )


def _result_to_dict(result: SimulationResult) -> dict[str, Any]:
    return {
        "strategy": result.strategy.value,
        "timings": [
            [t.request_id, t.vm_id, t.arrival_time, t.start_time, t.completion_time]
            for t in result.timings
        ],
        "rejections": [[r.request_id, r.reason] for r in result.rejections],
        "makespan": result.makespan,
        "per_vm_busy": {str(k): v for k, v in sorted(result.per_vm_busy.items())},
    }


def _result_from_dict(raw: dict[str, Any]) -> SimulationResult:
    return SimulationResult(
        strategy=StrategyId(raw["strategy"]),
        timings=tuple(RequestTiming(*row) for row in raw["timings"]),
        rejections=tuple(Rejection(rid, reason) for rid, reason in raw["rejections"]),
        makespan=raw["makespan"],
        per_vm_busy={int(k): v for k, v in raw["per_vm_busy"].items()},
    )


def _metrics_to_dict(metrics: StrategyMetrics) -> dict[str, Any]:
    return {
        "strategy": metrics.strategy.value,
        "avg_wait": metrics.avg_wait,
        "avg_response": metrics.avg_response,
        "per_node_value": {str(k): v for k, v in sorted(metrics.per_node_value.items())},
        "per_node_service_value": [
            [vm_id, service_id, earned]
            for (vm_id, service_id), earned in sorted(
                metrics.per_node_service_value.items()
            )
        ],
        "per_node_ruf": {str(k): v for k, v in sorted(metrics.per_node_ruf.items())},
        "mean_ruf": metrics.mean_ruf,
        "rejection_count": metrics.rejection_count,
        "flags": list(metrics.flags),
    }


def _metrics_from_dict(raw: dict[str, Any]) -> StrategyMetrics:
    return StrategyMetrics(
        strategy=StrategyId(raw["strategy"]),
        avg_wait=raw["avg_wait"],
        avg_response=raw["avg_response"],
        per_node_value={int(k): v for k, v in raw["per_node_value"].items()},
        per_node_service_value={
            (vm_id, service_id): earned
            for vm_id, service_id, earned in raw["per_node_service_value"]
        },
        per_node_ruf={int(k): v for k, v in raw["per_node_ruf"].items()},
        mean_ruf=raw["mean_ruf"],
        rejection_count=raw["rejection_count"],
        flags=tuple(raw["flags"]),
    )


def _experiment_to_dict(experiment: Experiment) -> dict[str, Any]:
    return {
        "experiment_id": experiment.experiment_id,
        "config": config_to_dict(experiment.config),
        "status": experiment.status.value,
        "seed": experiment.seed,
        "pool": [asdict(r) for r in experiment.pool],
        "runs": [
            {
                "plan": _plan_to_dict(run.plan),
                "result": _result_to_dict(run.result),
                "metrics": _metrics_to_dict(run.metrics),
            }
            for run in experiment.runs
        ],
        "options_used": asdict(experiment.options_used)
        if experiment.options_used is not None
        else None,
        "mode_used": experiment.mode_used,
        "ranking": [s.value for s in experiment.ranking],
    }


def _experiment_from_dict(raw: dict[str, Any]) -> Experiment:
    return Experiment(
        experiment_id=raw["experiment_id"],
        config=config_from_dict(raw["config"]),
        status=ExperimentStatus(raw["status"]),
        seed=raw["seed"],
        pool=tuple(Request(**r) for r in raw["pool"]),
        runs=tuple(
            StrategyRun(
                plan=_plan_from_dict(run["plan"]),
                result=_result_from_dict(run["result"]),
                metrics=_metrics_from_dict(run["metrics"]),
            )
            for run in raw["runs"]
        ),
        options_used=Options(**raw["options_used"])
        if raw.get("options_used") is not None
        else None,
        mode_used=raw.get("mode_used"),
        ranking=tuple(StrategyId(s) for s in raw.get("ranking", [])),
    )


def file_to_dict(file: ExperimentFile) -> dict[str, Any]:
    return {
        "name": file.name,
        "created_at": file.created_at,
        "experiments": [_experiment_to_dict(e) for e in file.experiments],
        "event_log": [asdict(e) for e in file.event_log],
    }


def file_from_dict(raw: dict[str, Any]) -> ExperimentFile:
    return ExperimentFile(
        name=raw["name"],
        created_at=raw["created_at"],
        experiments=[_experiment_from_dict(e) for e in raw["experiments"]],
        event_log=[EventRecord(**e) for e in raw["event_log"]],
    )


class ExperimentStore:
    """Directory of experiment files with per-name write serialization."""

    def __init__(self, data_dir: str | Path):
        self.data_dir = Path(data_dir)
        self._locks: dict[str, threading.Lock] = {}
        self._registry_lock = threading.Lock()

    def _lock_for(self, name: str) -> threading.Lock:
        with self._registry_lock:
            return self._locks.setdefault(name, threading.Lock())

    def _path(self, name: str) -> Path:
        if not _NAME_RE.match(name):
            raise ReqsimError(
                "INVALID_NAME",
                "file names are 1-64 characters: letters, digits, '_', '.', '-', ' '",
            )
        return self.data_dir / f"{name}.json"

    def exists(self, name: str) -> bool:
        return self._path(name).exists()

    def create(self, file: ExperimentFile) -> None:
        with self._lock_for(file.name):
            path = self._path(file.name)
            if path.exists():
                raise ReqsimError("FILE_EXISTS", f"file {file.name!r} already exists")
            self._write(path, file)

    def load(self, name: str) -> ExperimentFile:
        path = self._path(name)
        if not path.exists():
            raise ReqsimError("FILE_NOT_FOUND", f"no file named {name!r}")
        return file_from_dict(json.loads(path.read_text()))

    def save(self, file: ExperimentFile) -> None:
        self._write(self._path(file.name), file)

    def _write(self, path: Path, file: ExperimentFile) -> None:
        self.data_dir.mkdir(parents=True, exist_ok=True)
        payload = json.dumps(file_to_dict(file), indent=2, sort_keys=True) + "\n"
        tmp = path.with_suffix(".json.tmp")
        tmp.write_text(payload)
        os.replace(tmp, path)

    def list_files(self) -> list[dict[str, Any]]:
        if not self.data_dir.exists():
            return []
        summaries = []
        for path in sorted(self.data_dir.glob("*.json")):
            raw = json.loads(path.read_text())
            summaries.append(
                {
                    "name": raw["name"],
                    "created_at": raw["created_at"],
                    "experiments": len(raw["experiments"]),
                }
            )
        return summaries

    @contextmanager
    def mutate(self, name: str) -> Iterator[ExperimentFile]:
        """Load, yield for mutation, save; all under the file's lock."""
        with self._lock_for(name):
            file = self.load(name)
            yield file
            self.save(file)
