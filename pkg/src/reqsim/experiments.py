"""Experiment lifecycle: named files of sequential, chained experiments.

A file accumulates experiments 1, 2, 3, ... with no gaps. Each
experiment snapshots its own configuration; a new experiment inherits
the previous one's setup, adds the entered demands onto the cumulative
counts, re-derives service values, and chains its arrival range onto
the previous upper bound. Statuses only move forward:
draft -> generated -> completed.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from datetime import datetime, timezone
from enum import Enum
from typing import Mapping, Sequence

from . import csvio
from .engine import SimulationResult, simulate
from .errors import ReqsimError
from .generation import Request, ZoneTable, generate_requests, refresh_pool
from .metrics import (
    ConsolidatedMetrics,
    StrategyMetrics,
    compute_metrics,
    consolidate,
    rank_strategies,
)
from .model import CloudConfig, Options, ServiceDemand, validate_config
from .quantification import QuantifyMode
from .strategies import AssignmentPlan, StrategyId, run_strategies

DEFAULT_ACTOR = "local"


class ExperimentStatus(str, Enum):
    DRAFT = "draft"
    GENERATED = "generated"
    COMPLETED = "completed"


@dataclass(frozen=True)
class EventRecord:
    timestamp: str
    actor: str
    action: str
    detail: str


@dataclass(frozen=True)
class StrategyRun:
    """Everything one strategy produced in one experiment."""

    plan: AssignmentPlan
    result: SimulationResult
    metrics: StrategyMetrics


@dataclass
class Experiment:
    experiment_id: int
    config: CloudConfig
    status: ExperimentStatus = ExperimentStatus.DRAFT
    seed: int | None = None
    pool: tuple[Request, ...] = ()
    runs: tuple[StrategyRun, ...] = ()
    options_used: Options | None = None
    mode_used: str | None = None
    ranking: tuple[StrategyId, ...] = ()


@dataclass
class ExperimentFile:
    name: str
    created_at: str
    experiments: list[Experiment] = field(default_factory=list)
    event_log: list[EventRecord] = field(default_factory=list)


def _now_iso(now: datetime | None = None) -> str:
    return (now or datetime.now(timezone.utc)).isoformat(timespec="seconds")


def _log(
    file: ExperimentFile,
    action: str,
    detail: str,
    actor: str = DEFAULT_ACTOR,
    now: datetime | None = None,
) -> None:
    file.event_log.append(EventRecord(_now_iso(now), actor, action, detail))


def get_experiment(file: ExperimentFile, experiment_id: int) -> Experiment:
    for experiment in file.experiments:
        if experiment.experiment_id == experiment_id:
            return experiment
    raise ReqsimError(
        "EXPERIMENT_NOT_FOUND",
        f"file {file.name!r} has no experiment {experiment_id}",
    )


def new_file(name: str, now: datetime | None = None) -> ExperimentFile:
    """A fresh file containing experiment 1 as an empty draft."""
    file = ExperimentFile(name=name, created_at=_now_iso(now))
    file.experiments.append(Experiment(experiment_id=1, config=CloudConfig()))
    _log(file, "file_created", f"file {name!r} created with experiment 1", now=now)
    return file


def set_config(
    file: ExperimentFile,
    experiment_id: int,
    config: CloudConfig,
    now: datetime | None = None,
) -> list:
    """Replace a draft experiment's configuration.

    Service values are re-derived from the demands before storing.
    Returns the validation report so callers can surface problems
    without blocking further edits.
    """
    experiment = get_experiment(file, experiment_id)
    if experiment.status is not ExperimentStatus.DRAFT:
        raise ReqsimError(
            "SEQUENCE", f"experiment {experiment_id} is {experiment.status.value}, not draft"
        )
    experiment.config = config.with_recomputed_values()
    _log(file, "config_updated", f"experiment {experiment_id} configuration replaced", now=now)
    return validate_config(experiment.config)


def generate(
    file: ExperimentFile,
    experiment_id: int,
    seed: int | None = None,
    zone_table: ZoneTable | None = None,
    now: datetime | None = None,
) -> Experiment:
    """Draw the request pool for a draft experiment.

    With no seed given, the experiment id is used, keeping the default
    reproducible. The configuration must be valid.
    """
    experiment = get_experiment(file, experiment_id)
    if experiment.status is not ExperimentStatus.DRAFT:
        raise ReqsimError(
            "SEQUENCE",
            f"experiment {experiment_id} is {experiment.status.value}; expected draft",
        )
    violations = validate_config(experiment.config)
    if violations:
        codes = ", ".join(v.code for v in violations)
        raise ReqsimError("INVALID_CONFIG", f"configuration not runnable: {codes}")
    if seed is None:
        seed = experiment_id
    experiment.pool = tuple(generate_requests(experiment.config, seed, zone_table))
    experiment.seed = seed
    experiment.status = ExperimentStatus.GENERATED
    _log(
        file,
        "pool_generated",
        f"experiment {experiment_id}: {len(experiment.pool)} requests, seed {seed}",
        now=now,
    )
    return experiment


def refresh(
    file: ExperimentFile,
    experiment_id: int,
    zone_table: ZoneTable | None = None,
    now: datetime | None = None,
) -> Experiment:
    """Redraw a generated pool: same counts, seed advanced by one."""
    experiment = get_experiment(file, experiment_id)
    if experiment.status is not ExperimentStatus.GENERATED:
        raise ReqsimError(
            "SEQUENCE",
            f"experiment {experiment_id} is {experiment.status.value}; expected generated",
        )
    assert experiment.seed is not None
    new_seed, pool = refresh_pool(experiment.config, experiment.seed, zone_table)
    experiment.seed = new_seed
    experiment.pool = tuple(pool)
    _log(
        file,
        "pool_refreshed",
        f"experiment {experiment_id}: {len(pool)} requests, seed {new_seed}",
        now=now,
    )
    return experiment


def run(
    file: ExperimentFile,
    experiment_id: int,
    selected: Sequence[StrategyId | str] = (),
    mode: QuantifyMode | str = QuantifyMode.EXACT,
    options_override: Options | None = None,
    now: datetime | None = None,
) -> Experiment:
    """Plan, simulate, and measure every selected strategy, then freeze.

    An empty selection runs the defaults. Options from the request
    override the configured ones for this run; whatever was used is
    recorded on the experiment.
    """
    experiment = get_experiment(file, experiment_id)
    if experiment.status is not ExperimentStatus.GENERATED:
        raise ReqsimError(
            "SEQUENCE",
            f"experiment {experiment_id} is {experiment.status.value}; expected generated",
        )
    config = experiment.config
    options = options_override if options_override is not None else config.options
    mode = QuantifyMode(mode)
    dc_zones = config.dc_zones()
    pool = list(experiment.pool)

    plans = run_strategies(selected, pool, config.vms, options, mode, dc_zones)
    _log(
        file,
        "strategies_planned",
        f"experiment {experiment_id}: {', '.join(p.strategy.value for p in plans)}",
        now=now,
    )
    runs: list[StrategyRun] = []
    for plan in plans:
        result = simulate(plan, pool, config.vms, config.services, options)
        strategy_metrics = compute_metrics(result, pool, config.services, config.vms)
        runs.append(StrategyRun(plan=plan, result=result, metrics=strategy_metrics))
        _log(
            file,
            "strategy_simulated",
            f"experiment {experiment_id}: {plan.strategy.value} "
            f"assigned {len(plan.entries)}, rejected {len(result.rejections)}",
            now=now,
        )
    experiment.runs = tuple(runs)
    experiment.ranking = tuple(rank_strategies([r.metrics for r in runs]))
    experiment.options_used = options
    experiment.mode_used = mode.value
    experiment.status = ExperimentStatus.COMPLETED
    _log(file, "experiment_completed", f"experiment {experiment_id} completed", now=now)
    return experiment


def next_experiment(
    file: ExperimentFile,
    added_demands: Mapping[int, int],
    new_arrival_hi: int,
    now: datetime | None = None,
) -> Experiment:
    """Open the follow-up experiment: accumulated demands, chained arrivals."""
    if not file.experiments:
        raise ReqsimError("SEQUENCE", "file has no experiments")
    prev = file.experiments[-1]
    if prev.status is not ExperimentStatus.COMPLETED:
        raise ReqsimError(
            "SEQUENCE",
            f"experiment {prev.experiment_id} is {prev.status.value}; complete it first",
        )
    prev_hi = prev.config.time_settings.arrival_hi
    if new_arrival_hi <= prev_hi:
        raise ReqsimError(
            "BAD_RANGE",
            f"new arrival upper bound {new_arrival_hi} must exceed previous bound {prev_hi}",
        )
    known = {s.service_id for s in prev.config.services}
    for service_id, count in added_demands.items():
        if service_id not in known:
            raise ReqsimError(
                "DANGLING_SERVICE_REF", f"unknown service_id {service_id} in added demands"
            )
        if count < 0:
            raise ReqsimError(
                "BAD_DEMAND", f"added demand for service {service_id} must be >= 0"
            )

    cumulative = {d.service_id: d.count for d in prev.config.demands}
    for service_id, count in added_demands.items():
        cumulative[service_id] = cumulative.get(service_id, 0) + count
    demands = tuple(
        ServiceDemand(service_id, cumulative[service_id]) for service_id in sorted(cumulative)
    )
    times = replace(
        prev.config.time_settings, arrival_lo=prev_hi, arrival_hi=new_arrival_hi
    )
    config = replace(prev.config, demands=demands, time_settings=times)
    experiment = Experiment(
        experiment_id=prev.experiment_id + 1,
        config=config.with_recomputed_values(),
    )
    file.experiments.append(experiment)
    _log(
        file,
        "experiment_opened",
        f"experiment {experiment.experiment_id} opened, arrival range "
        f"[{times.arrival_lo}, {times.arrival_hi}]",
        now=now,
    )
    return experiment


def consolidate_file(file: ExperimentFile) -> ConsolidatedMetrics:
    """Cross-experiment aggregation over the file's completed experiments."""
    completed = [
        (e.experiment_id, [r.metrics for r in e.runs])
        for e in file.experiments
        if e.status is ExperimentStatus.COMPLETED
    ]
    return consolidate(file.name, completed)


def export_bundle(file: ExperimentFile, experiment_id: int) -> dict[str, str]:
    """All CSV documents for one completed experiment, keyed by file name."""
    experiment = get_experiment(file, experiment_id)
    if experiment.status is not ExperimentStatus.COMPLETED:
        raise ReqsimError(
            "NOT_READY",
            f"experiment {experiment_id} is {experiment.status.value}; export needs completed",
        )
    plans = [r.plan for r in experiment.runs]
    results = [r.result for r in experiment.runs]
    metrics = [r.metrics for r in experiment.runs]
    return {
        "pool.csv": csvio.pool_csv(experiment.pool),
        "plans.csv": csvio.plans_csv(plans),
        "timings.csv": csvio.timings_csv(results),
        "metrics_per_strategy.csv": csvio.metrics_csv(metrics),
        "per_node_value.csv": csvio.per_node_value_csv(metrics),
    }


def export_consolidated_csv(file: ExperimentFile) -> str:
    return csvio.consolidated_csv(consolidate_file(file))
