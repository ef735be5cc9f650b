"""Domain types for the cloud configuration and its validation.

The configuration mirrors the four dashboard panels: data centers,
virtual machines, services, and per-service request demands. All types
are immutable value objects; operations return fresh instances.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace


@dataclass(frozen=True)
class DataCenter:
    """A data center located in one of the six world zones."""

    zone_id: int
    dc_id: int
    country: str
    city: str


@dataclass(frozen=True)
class VirtualMachine:
    """One VM and its capacity figures.

    ``connections`` is the load capacity (max concurrent requests) and
    ``ram_gb`` the storage capacity (max summed sizes of active requests);
    these two drive the engine. ``max_users`` caps the total number of
    requests a strategy may assign to the VM within one experiment.
    The remaining columns are informational labels.
    """

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


@dataclass(frozen=True)
class Service:
    """A hosted service; ``value`` is recomputed from demands, ``weightage`` is designer-assigned."""

    service_id: int
    file_name: str
    size: int
    type_label: str
    value: int
    weightage: int


@dataclass(frozen=True)
class ServiceDemand:
    """Cumulative number of requests demanded for one service in the experiment."""

    service_id: int
    count: int


@dataclass(frozen=True)
class Options:
    """Independent toggles altering assignment and queueing behavior."""

    priority_enabled: bool = False
    faulty_handling_enabled: bool = False
    zone_affinity_enabled: bool = False


@dataclass(frozen=True)
class TimeRangeSettings:
    """Inclusive integer ranges the generator draws arrival and process times from."""

    arrival_lo: int
    arrival_hi: int
    process_lo: int
    process_hi: int


@dataclass(frozen=True)
class CloudConfig:
    """The master configuration for one experiment."""

    data_centers: tuple[DataCenter, ...] = ()
    vms: tuple[VirtualMachine, ...] = ()
    services: tuple[Service, ...] = ()
    demands: tuple[ServiceDemand, ...] = ()
    options: Options = field(default_factory=Options)
    time_settings: TimeRangeSettings = TimeRangeSettings(0, 10, 1, 10)

    def dc_zones(self) -> dict[int, int]:
        """Map dc_id to its zone_id."""
        return {dc.dc_id: dc.zone_id for dc in self.data_centers}

    def service_by_id(self) -> dict[int, Service]:
        return {s.service_id: s for s in self.services}

    def total_demand(self) -> int:
        return sum(d.count for d in self.demands)

    def with_recomputed_values(self) -> "CloudConfig":
        """Return a copy whose service values are re-derived from the demands."""
        values = compute_service_values(self.demands)
        services = tuple(
            replace(s, value=values.get(s.service_id, s.value)) for s in self.services
        )
        return replace(self, services=services)


@dataclass(frozen=True)
class Violation:
    """One configuration invariant breach, reported as data rather than raised."""

    code: str
    message: str


def compute_service_values(demands: tuple[ServiceDemand, ...] | list[ServiceDemand]) -> dict[int, int]:
    """Rank services by demand count, ascending: least demanded gets value 1.

    Ties break by service_id ascending, so the result is always a
    bijection onto 1..S. An empty demand list yields an empty mapping.
    """
    ordered = sorted(demands, key=lambda d: (d.count, d.service_id))
    return {d.service_id: rank for rank, d in enumerate(ordered, start=1)}


def service_priority(service: Service) -> int:
    """Priority of a request for this service: value times weightage."""
    return service.value * service.weightage


def validate_config(config: CloudConfig) -> list[Violation]:
    """Check every configuration invariant; an empty list means valid.

    Violations are data, not failures: the caller decides whether a
    config with problems is usable (e.g. a draft being edited).
    """
    violations: list[Violation] = []

    def bad(code: str, message: str) -> None:
        violations.append(Violation(code, message))

    seen_dc: set[int] = set()
    for dc in config.data_centers:
        if not 1 <= dc.zone_id <= 6:
            bad("BAD_ZONE", f"data center {dc.dc_id}: zone_id {dc.zone_id} outside 1..6")
        if dc.dc_id in seen_dc:
            bad("DUP_DC_ID", f"duplicate dc_id {dc.dc_id}")
        seen_dc.add(dc.dc_id)

    if not config.vms:
        bad("NO_VMS", "configuration has no virtual machines")
    seen_vm: set[int] = set()
    for vm in config.vms:
        if vm.vm_id in seen_vm:
            bad("DUP_VM_ID", f"duplicate vm_id {vm.vm_id}")
        seen_vm.add(vm.vm_id)
        if vm.dc_id not in seen_dc:
            bad("DANGLING_DC_REF", f"vm {vm.vm_id}: unknown dc_id {vm.dc_id}")
        if vm.connections < 1:
            bad("BAD_CONNECTIONS", f"vm {vm.vm_id}: connections must be >= 1")
        if vm.max_users < 1:
            bad("BAD_MAX_USERS", f"vm {vm.vm_id}: max_users must be >= 1")
        if vm.ram_gb < 1:
            bad("BAD_RAM", f"vm {vm.vm_id}: ram_gb must be >= 1")

    if not config.services:
        bad("NO_SERVICES", "configuration has no services")
    seen_service: set[int] = set()
    for svc in config.services:
        if svc.service_id in seen_service:
            bad("DUP_SERVICE_ID", f"duplicate service_id {svc.service_id}")
        seen_service.add(svc.service_id)
        if svc.size < 1:
            bad("BAD_SERVICE_SIZE", f"service {svc.service_id}: size must be >= 1")
        if svc.weightage < 1:
            bad("BAD_WEIGHTAGE", f"service {svc.service_id}: weightage must be >= 1")

    seen_demand: set[int] = set()
    for demand in config.demands:
        if demand.service_id not in seen_service:
            bad(
                "DANGLING_SERVICE_REF",
                f"demand references unknown service_id {demand.service_id}",
            )
        if demand.service_id in seen_demand:
            bad("DUP_DEMAND", f"duplicate demand for service_id {demand.service_id}")
        seen_demand.add(demand.service_id)
        if demand.count < 0:
            bad("BAD_DEMAND", f"service {demand.service_id}: demand count must be >= 0")

    t = config.time_settings
    if t.arrival_lo < 0 or t.arrival_lo >= t.arrival_hi:
        bad(
            "BAD_ARRIVAL_RANGE",
            f"arrival range [{t.arrival_lo}, {t.arrival_hi}] must satisfy 0 <= lo < hi",
        )
    if t.process_lo < 1 or t.process_lo > t.process_hi:
        bad(
            "BAD_PROCESS_RANGE",
            f"process range [{t.process_lo}, {t.process_hi}] must satisfy 1 <= lo <= hi",
        )

    return violations
