"""Pydantic request/response models for the HTTP API.

These mirror the domain dataclasses field for field (lower_snake_case,
exactly the documented JSON schema) and carry the conversion helpers
between wire shape and domain objects.
"""

from __future__ import annotations

from pydantic import BaseModel, Field

from .engine import SimulationResult
from .experiments import EventRecord, Experiment
from .generation import Request
from .metrics import ConsolidatedMetrics, StrategyMetrics
from .model import (
    CloudConfig,
    DataCenter,
    Options,
    Service,
    ServiceDemand,
    TimeRangeSettings,
    VirtualMachine,
    Violation,
)
from .quantification import QuantificationResult
from .strategies import AssignmentPlan


class DataCenterModel(BaseModel):
    zone_id: int
    dc_id: int
    country: str
    city: str


class VirtualMachineModel(BaseModel):
    dc_id: int
    vm_id: int
    processor: str
    ram_gb: int
    hdd_gb: int
    connections: int
    nic: int
    traffic: int
    bandwidth: int
    os: str
    max_users: int
    faulty: bool = False


class ServiceModel(BaseModel):
    service_id: int
    file_name: str
    size: int
    type_label: str
    value: int = 0  # recomputed from demands on save
    weightage: int


class ServiceDemandModel(BaseModel):
    service_id: int
    count: int


class OptionsModel(BaseModel):
    priority_enabled: bool = False
    faulty_handling_enabled: bool = False
    zone_affinity_enabled: bool = False

    def to_domain(self) -> Options:
        return Options(**self.model_dump())


class TimeRangeModel(BaseModel):
    arrival_lo: int
    arrival_hi: int
    process_lo: int
    process_hi: int


class CloudConfigModel(BaseModel):
    data_centers: list[DataCenterModel] = Field(default_factory=list)
    vms: list[VirtualMachineModel] = Field(default_factory=list)
    services: list[ServiceModel] = Field(default_factory=list)
    demands: list[ServiceDemandModel] = Field(default_factory=list)
    options: OptionsModel = Field(default_factory=OptionsModel)
    time_settings: TimeRangeModel = Field(
        default_factory=lambda: TimeRangeModel(
            arrival_lo=0, arrival_hi=10, process_lo=1, process_hi=10
        )
    )

    def to_domain(self) -> CloudConfig:
        return CloudConfig(
            data_centers=tuple(DataCenter(**dc.model_dump()) for dc in self.data_centers),
            vms=tuple(VirtualMachine(**vm.model_dump()) for vm in self.vms),
            services=tuple(Service(**s.model_dump()) for s in self.services),
            demands=tuple(ServiceDemand(**d.model_dump()) for d in self.demands),
            options=self.options.to_domain(),
            time_settings=TimeRangeSettings(**self.time_settings.model_dump()),
        )

    @classmethod
    def from_domain(cls, config: CloudConfig) -> "CloudConfigModel":
        return cls(
            data_centers=[DataCenterModel(**vars(dc)) for dc in config.data_centers],
            vms=[VirtualMachineModel(**vars(vm)) for vm in config.vms],
            services=[ServiceModel(**vars(s)) for s in config.services],
            demands=[ServiceDemandModel(**vars(d)) for d in config.demands],
            options=OptionsModel(**vars(config.options)),
            time_settings=TimeRangeModel(**vars(config.time_settings)),
        )


class ViolationModel(BaseModel):
    code: str
    message: str

    @classmethod
    def from_domain(cls, violation: Violation) -> "ViolationModel":
        return cls(code=violation.code, message=violation.message)


class RequestModel(BaseModel):
    request_id: int
    service_id: int
    ip: str
    zone_id: int
    arrival_time: int
    process_time: int
    priority: int

    @classmethod
    def from_domain(cls, request: Request) -> "RequestModel":
        return cls(**vars(request))


class PlanEntryModel(BaseModel):
    request_id: int
    vm_id: int


class RejectionModel(BaseModel):
    request_id: int
    reason: str


class QuantificationModel(BaseModel):
    capacities: list[float]
    mean: float
    stddev: float
    z_values: list[float]
    percentages: list[float]
    total_percentage: float
    mode: str

    @classmethod
    def from_domain(cls, q: QuantificationResult) -> "QuantificationModel":
        return cls(
            capacities=list(q.capacities),
            mean=q.mean,
            stddev=q.stddev,
            z_values=list(q.z_values),
            percentages=list(q.percentages),
            total_percentage=q.total_percentage,
            mode=q.mode.value,
        )


class PlanModel(BaseModel):
    strategy: str
    entries: list[PlanEntryModel]
    rejections: list[RejectionModel]
    quantification: QuantificationModel | None = None

    @classmethod
    def from_domain(cls, plan: AssignmentPlan) -> "PlanModel":
        return cls(
            strategy=plan.strategy.value,
            entries=[PlanEntryModel(request_id=e.request_id, vm_id=e.vm_id) for e in plan.entries],
            rejections=[
                RejectionModel(request_id=r.request_id, reason=r.reason)
                for r in plan.rejections
            ],
            quantification=QuantificationModel.from_domain(plan.quantification)
            if plan.quantification
            else None,
        )


class TimingModel(BaseModel):
    request_id: int
    vm_id: int
    arrival_time: int
    start_time: int
    completion_time: int
    wait_time: int
    response_time: int


class ResultModel(BaseModel):
    strategy: str
    timings: list[TimingModel]
    rejections: list[RejectionModel]
    makespan: int
    per_vm_busy: dict[int, int]

    @classmethod
    def from_domain(cls, result: SimulationResult) -> "ResultModel":
        return cls(
            strategy=result.strategy.value,
            timings=[
                TimingModel(
                    request_id=t.request_id,
                    vm_id=t.vm_id,
                    arrival_time=t.arrival_time,
                    start_time=t.start_time,
                    completion_time=t.completion_time,
                    wait_time=t.wait_time,
                    response_time=t.response_time,
                )
                for t in result.timings
            ],
            rejections=[
                RejectionModel(request_id=r.request_id, reason=r.reason)
                for r in result.rejections
            ],
            makespan=result.makespan,
            per_vm_busy=dict(sorted(result.per_vm_busy.items())),
        )


class MetricsModel(BaseModel):
    strategy: str
    avg_wait: float
    avg_response: float
    per_node_value: dict[int, int]
    per_node_service_value: list[tuple[int, int, int]]  # (vm_id, service_id, earned)
    per_node_ruf: dict[int, float]
    mean_ruf: float
    rejection_count: int
    flags: list[str]

    @classmethod
    def from_domain(cls, m: StrategyMetrics) -> "MetricsModel":
        return cls(
            strategy=m.strategy.value,
            avg_wait=m.avg_wait,
            avg_response=m.avg_response,
            per_node_value=dict(sorted(m.per_node_value.items())),
            per_node_service_value=[
                (vm_id, service_id, earned)
                for (vm_id, service_id), earned in sorted(m.per_node_service_value.items())
            ],
            per_node_ruf=dict(sorted(m.per_node_ruf.items())),
            mean_ruf=m.mean_ruf,
            rejection_count=m.rejection_count,
            flags=list(m.flags),
        )


class StrategyRunModel(BaseModel):
    plan: PlanModel
    result: ResultModel
    metrics: MetricsModel


class ExperimentDetailModel(BaseModel):
    experiment_id: int
    status: str
    seed: int | None
    config: CloudConfigModel
    violations: list[ViolationModel]
    pool: list[RequestModel]


class FileSummaryModel(BaseModel):
    name: str
    created_at: str
    experiments: int


class FileDetailModel(BaseModel):
    name: str
    created_at: str
    experiments: list[ExperimentDetailModel]


class EventModel(BaseModel):
    timestamp: str
    actor: str
    action: str
    detail: str

    @classmethod
    def from_domain(cls, event: EventRecord) -> "EventModel":
        return cls(**vars(event))


class ResultsModel(BaseModel):
    experiment_id: int
    status: str
    seed: int | None
    mode_used: str | None
    options_used: OptionsModel | None
    ranking: list[str]
    pool: list[RequestModel]
    runs: list[StrategyRunModel]


class AggregateModel(BaseModel):
    strategy: str
    experiments: int
    mean_avg_wait: float
    mean_avg_response: float
    mean_mean_ruf: float
    mean_rejection_count: float
    win_count: int


class ConsolidatedRowModel(BaseModel):
    experiment_id: int
    metrics: MetricsModel


class ConsolidatedModel(BaseModel):
    file_name: str
    rows: list[ConsolidatedRowModel]
    aggregates: list[AggregateModel]

    @classmethod
    def from_domain(cls, c: ConsolidatedMetrics) -> "ConsolidatedModel":
        return cls(
            file_name=c.file_name,
            rows=[
                ConsolidatedRowModel(
                    experiment_id=experiment_id, metrics=MetricsModel.from_domain(m)
                )
                for experiment_id, m in c.rows
            ],
            aggregates=[
                AggregateModel(
                    strategy=a.strategy.value,
                    experiments=a.experiments,
                    mean_avg_wait=a.mean_avg_wait,
                    mean_avg_response=a.mean_avg_response,
                    mean_mean_ruf=a.mean_mean_ruf,
                    mean_rejection_count=a.mean_rejection_count,
                    win_count=a.win_count,
                )
                for a in c.aggregates
            ],
        )


class QuantifyResponseModel(BaseModel):
    capacities: list[float]
    mean: float
    stddev: float
    z_values: list[float]
    percentages: list[float]
    total_percentage: float
    mode: str
    requests: int | None = None
    counts: list[int] | None = None


def experiment_detail(experiment: Experiment) -> ExperimentDetailModel:
    from .model import validate_config

    return ExperimentDetailModel(
        experiment_id=experiment.experiment_id,
        status=experiment.status.value,
        seed=experiment.seed,
        config=CloudConfigModel.from_domain(experiment.config),
        violations=[ViolationModel.from_domain(v) for v in validate_config(experiment.config)],
        pool=[RequestModel.from_domain(r) for r in experiment.pool],
    )


def experiment_results(experiment: Experiment) -> ResultsModel:
    return ResultsModel(
        experiment_id=experiment.experiment_id,
        status=experiment.status.value,
        seed=experiment.seed,
        mode_used=experiment.mode_used,
        options_used=OptionsModel(**vars(experiment.options_used))
        if experiment.options_used
        else None,
        ranking=[s.value for s in experiment.ranking],
        pool=[RequestModel.from_domain(r) for r in experiment.pool],
        runs=[
            StrategyRunModel(
                plan=PlanModel.from_domain(r.plan),
                result=ResultModel.from_domain(r.result),
                metrics=MetricsModel.from_domain(r.metrics),
            )
            for r in experiment.runs
        ],
    )


# request bodies

class CreateFileRequest(BaseModel):
    name: str


class NextExperimentRequest(BaseModel):
    added_demands: dict[int, int] = Field(default_factory=dict)
    new_arrival_hi: int


class GenerateRequest(BaseModel):
    seed: int | None = None


class RunRequest(BaseModel):
    strategies: list[str] = Field(default_factory=list)
    mode: str = "exact"
    options: OptionsModel | None = None


class ErrorModel(BaseModel):
    code: str
    message: str
