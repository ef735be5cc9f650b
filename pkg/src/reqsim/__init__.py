"""Seedable simulator of request-to-VM assignment under pluggable
load-balancing principles, with an experiment-management service."""

from .errors import ReqsimError
from .model import (
    CloudConfig,
    DataCenter,
    Options,
    Service,
    ServiceDemand,
    TimeRangeSettings,
    VirtualMachine,
    compute_service_values,
    service_priority,
    validate_config,
)
from .generation import Request, ZoneTable, generate_requests, ip_to_zone, refresh_pool
from .quantification import QuantifyMode, apportion, normal_cdf, quantify, zscores
from .strategies import AssignmentPlan, StrategyId, eligible_vms, run_strategies
from .engine import SimulationResult, busy_accounting, simulate
from .metrics import StrategyMetrics, compute_metrics, consolidate, rank_strategies

__all__ = [
    "ReqsimError",
    "CloudConfig",
    "DataCenter",
    "Options",
    "Service",
    "ServiceDemand",
    "TimeRangeSettings",
    "VirtualMachine",
    "compute_service_values",
    "service_priority",
    "validate_config",
    "Request",
    "ZoneTable",
    "generate_requests",
    "ip_to_zone",
    "refresh_pool",
    "QuantifyMode",
    "apportion",
    "normal_cdf",
    "quantify",
    "zscores",
    "AssignmentPlan",
    "StrategyId",
    "eligible_vms",
    "run_strategies",
    "SimulationResult",
    "busy_accounting",
    "simulate",
    "StrategyMetrics",
    "compute_metrics",
    "consolidate",
    "rank_strategies",
]

__version__ = "0.1.0"
