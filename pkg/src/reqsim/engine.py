"""Queue simulation: turn an assignment plan into per-request timings.

Each VM serves its queue in strict order (no overtaking) with
``connections`` parallel slots, and the summed sizes of active services
may never exceed ``ram_gb``. Evaluation is event-driven over the sorted
completion times, which gives the same result as per-tick stepping in
O(E log E).
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Mapping, Sequence

from .generation import Request
from .model import Options, Service, VirtualMachine
from .strategies import AssignmentPlan, Rejection, StrategyId

REASON_OVERSIZED = "OVERSIZED"


@dataclass(frozen=True)
class RequestTiming:
    request_id: int
    vm_id: int
    arrival_time: int
    start_time: int
    completion_time: int

    @property
    def wait_time(self) -> int:
        return self.start_time - self.arrival_time

    @property
    def response_time(self) -> int:
        return self.completion_time - self.arrival_time


@dataclass(frozen=True)
class SimulationResult:
    strategy: StrategyId
    timings: tuple[RequestTiming, ...]
    rejections: tuple[Rejection, ...]
    makespan: int
    per_vm_busy: dict[int, int]


def _queue_order(request: Request, priority_enabled: bool) -> tuple:
    if priority_enabled:
        return (-request.priority, request.arrival_time, request.request_id)
    return (request.arrival_time, request.request_id)


def _simulate_vm(
    vm: VirtualMachine,
    queue: list[Request],
    sizes: Mapping[int, int],
) -> list[RequestTiming]:
    """Serve one VM's queue in order under the slot and storage bounds."""
    timings: list[RequestTiming] = []
    active: list[tuple[int, int]] = []  # heap of (completion_time, size)
    active_size = 0
    prev_start = 0
    for request in queue:
        size = sizes[request.service_id]
        t = max(request.arrival_time, prev_start)
        while True:
            while active and active[0][0] <= t:
                _, done_size = heapq.heappop(active)
                active_size -= done_size
            if len(active) < vm.connections and active_size + size <= vm.ram_gb:
                break
            t = active[0][0]
        completion = t + request.process_time
        heapq.heappush(active, (completion, size))
        active_size += size
        timings.append(
            RequestTiming(
                request_id=request.request_id,
                vm_id=vm.vm_id,
                arrival_time=request.arrival_time,
                start_time=t,
                completion_time=completion,
            )
        )
        prev_start = t
    return timings


def simulate(
    plan: AssignmentPlan,
    requests: Sequence[Request],
    vms: Sequence[VirtualMachine],
    services: Sequence[Service],
    options: Options,
) -> SimulationResult:
    """Run the plan through every VM's queue and collect timings.

    Queues order by (arrival, request_id), or by descending priority
    first when the priority option is on. A request whose service size
    exceeds its VM's ram_gb could never start; it becomes an OVERSIZED
    rejection instead of blocking the queue forever.
    """
    request_by_id = {r.request_id: r for r in requests}
    vm_by_id = {vm.vm_id: vm for vm in vms}
    sizes = {s.service_id: s.size for s in services}

    queues: dict[int, list[Request]] = {vm.vm_id: [] for vm in vms}
    rejections = list(plan.rejections)
    for entry in plan.entries:
        request = request_by_id[entry.request_id]
        vm = vm_by_id[entry.vm_id]
        if sizes[request.service_id] > vm.ram_gb:
            rejections.append(Rejection(request.request_id, REASON_OVERSIZED))
            continue
        queues[entry.vm_id].append(request)

    timings: list[RequestTiming] = []
    for vm_id, queue in queues.items():
        queue.sort(key=lambda r: _queue_order(r, options.priority_enabled))
        timings.extend(_simulate_vm(vm_by_id[vm_id], queue, sizes))

    timings.sort(key=lambda t: t.request_id)
    if timings:
        makespan = max(t.completion_time for t in timings) - min(
            t.arrival_time for t in timings
        )
    else:
        makespan = 0
    busy = {vm.vm_id: 0 for vm in vms}
    for t in timings:
        busy[t.vm_id] += t.completion_time - t.start_time
    return SimulationResult(
        strategy=plan.strategy,
        timings=tuple(timings),
        rejections=tuple(rejections),
        makespan=makespan,
        per_vm_busy=busy,
    )


def busy_accounting(result: SimulationResult) -> dict[int, int]:
    """Slot-ticks consumed per VM: the sum of its requests' process times."""
    return dict(result.per_vm_busy)
