"""Assignment strategies: map each request to a VM (or a rejection).

Each strategy produces an AssignmentPlan before any timing is computed.
Plans always partition the pool: every request lands in exactly one of
``entries`` or ``rejections``, no VM ever exceeds its ``max_users``
total, and faulty VMs receive nothing while faulty handling is on.

The scanning strategies (round robin, orderly circular, capacity
fill-in, throttled) honor per-request zone affinity. The two
target-based strategies (equal split, capacity proportioned) compute
per-VM targets up front, which is incompatible with per-request zone
restrictions; they apply the faulty filter only.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from enum import Enum
from heapq import heappop, heappush
from typing import Mapping, Sequence

from .generation import Request
from .model import Options, VirtualMachine
from .quantification import QuantificationResult, QuantifyMode, apportion, quantify

REASON_ALL_FULL = "ALL_FULL"
REASON_NO_ELIGIBLE_VM = "NO_ELIGIBLE_VM"


class StrategyId(Enum):
    """The supported load-balancing principles; order is the ranking tie-break."""

    ROUND_ROBIN = "ROUND_ROBIN"
    ORDERLY_CIRCULAR = "ORDERLY_CIRCULAR"
    CAPACITY_FILL_IN = "CAPACITY_FILL_IN"
    THROTTLED = "THROTTLED"
    EQUAL_SPLIT = "EQUAL_SPLIT"
    CAPACITY_PROPORTIONED = "CAPACITY_PROPORTIONED"


DEFAULT_STRATEGIES = (StrategyId.ROUND_ROBIN, StrategyId.ORDERLY_CIRCULAR)


@dataclass(frozen=True)
class PlanEntry:
    request_id: int
    vm_id: int


@dataclass(frozen=True)
class Rejection:
    request_id: int
    reason: str


@dataclass(frozen=True)
class AssignmentPlan:
    strategy: StrategyId
    entries: tuple[PlanEntry, ...]
    rejections: tuple[Rejection, ...]
    quantification: QuantificationResult | None = None


def eligible_vms(
    request: Request,
    vms: Sequence[VirtualMachine],
    options: Options,
    dc_zones: Mapping[int, int] | None = None,
) -> list[VirtualMachine]:
    """VMs this request may be placed on, in ascending vm_id order.

    Faulty VMs drop out when faulty handling is enabled. Zone affinity
    restricts to VMs whose data center shares the request's zone and
    falls back to all non-faulty VMs when that leaves nothing.
    """
    ordered = sorted(vms, key=lambda vm: vm.vm_id)
    pool = [vm for vm in ordered if not (options.faulty_handling_enabled and vm.faulty)]
    if options.zone_affinity_enabled:
        zones = dc_zones or {}
        same_zone = [vm for vm in pool if zones.get(vm.dc_id) == request.zone_id]
        if same_zone:
            return same_zone
        return [vm for vm in ordered if not vm.faulty]
    return pool


def _strategy_pool(
    vms: Sequence[VirtualMachine], options: Options
) -> list[VirtualMachine]:
    """Request-independent VM pool for the target-based strategies."""
    ordered = sorted(vms, key=lambda vm: vm.vm_id)
    return [vm for vm in ordered if not (options.faulty_handling_enabled and vm.faulty)]


def _finish(
    strategy: StrategyId,
    requests: Sequence[Request],
    assigned: Mapping[int, int],
    rejected: Mapping[int, str],
    quantification: QuantificationResult | None = None,
) -> AssignmentPlan:
    """Emit entries and rejections in pool (arrival) order."""
    entries = []
    rejections = []
    for r in requests:
        if r.request_id in assigned:
            entries.append(PlanEntry(r.request_id, assigned[r.request_id]))
        else:
            rejections.append(Rejection(r.request_id, rejected[r.request_id]))
    return AssignmentPlan(strategy, tuple(entries), tuple(rejections), quantification)


def _scan_assign(
    strategy: StrategyId,
    requests: Sequence[Request],
    vms: Sequence[VirtualMachine],
    options: Options,
    dc_zones: Mapping[int, int] | None,
    order_key,
    persistent_cursor: bool,
) -> AssignmentPlan:
    """Shared scan loop for the per-request strategies.

    ``order_key`` fixes the scan order over a request's eligible VMs.
    With a persistent cursor, each scan starts just past the previously
    assigned VM and wraps; otherwise it restarts from the front.
    """
    counts: dict[int, int] = {}
    assigned: dict[int, int] = {}
    rejected: dict[int, str] = {}
    cursor_after: tuple | None = None

    for r in requests:
        elig = sorted(eligible_vms(r, vms, options, dc_zones), key=order_key)
        if not elig:
            rejected[r.request_id] = REASON_NO_ELIGIBLE_VM
            continue
        start = 0
        if persistent_cursor and cursor_after is not None:
            start = next(
                (i for i, vm in enumerate(elig) if order_key(vm) > cursor_after), 0
            )
        placed = False
        for step in range(len(elig)):
            vm = elig[(start + step) % len(elig)]
            if counts.get(vm.vm_id, 0) < vm.max_users:
                counts[vm.vm_id] = counts.get(vm.vm_id, 0) + 1
                assigned[r.request_id] = vm.vm_id
                cursor_after = order_key(vm)
                placed = True
                break
        if not placed:
            rejected[r.request_id] = REASON_ALL_FULL
    return _finish(strategy, requests, assigned, rejected)


def assign_round_robin(
    requests: Sequence[Request],
    vms: Sequence[VirtualMachine],
    options: Options,
    dc_zones: Mapping[int, int] | None = None,
) -> AssignmentPlan:
    """Rotate over eligible VMs in vm_id order with a persistent cursor."""
    return _scan_assign(
        StrategyId.ROUND_ROBIN,
        requests,
        vms,
        options,
        dc_zones,
        order_key=lambda vm: (vm.vm_id,),
        persistent_cursor=True,
    )


def assign_orderly_circular(
    requests: Sequence[Request],
    vms: Sequence[VirtualMachine],
    options: Options,
    dc_zones: Mapping[int, int] | None = None,
) -> AssignmentPlan:
    """First-fit in fixed vm_id order; every scan restarts at the lowest id."""
    return _scan_assign(
        StrategyId.ORDERLY_CIRCULAR,
        requests,
        vms,
        options,
        dc_zones,
        order_key=lambda vm: (vm.vm_id,),
        persistent_cursor=False,
    )


def assign_capacity_fill_in(
    requests: Sequence[Request],
    vms: Sequence[VirtualMachine],
    options: Options,
    dc_zones: Mapping[int, int] | None = None,
) -> AssignmentPlan:
    """Fill the highest-connection VM to its max_users before moving on."""
    return _scan_assign(
        StrategyId.CAPACITY_FILL_IN,
        requests,
        vms,
        options,
        dc_zones,
        order_key=lambda vm: (-vm.connections, vm.vm_id),
        persistent_cursor=False,
    )


def _deal_to_targets(
    strategy: StrategyId,
    requests: Sequence[Request],
    vms_in_order: Sequence[VirtualMachine],
    targets: Mapping[int, int],
    quantification: QuantificationResult | None = None,
) -> AssignmentPlan:
    """Deal requests in arrival order, filling VM by VM in the given order."""
    assigned: dict[int, int] = {}
    rejected: dict[int, str] = {}
    request_iter = iter(requests)
    for vm in vms_in_order:
        for _ in range(targets.get(vm.vm_id, 0)):
            r = next(request_iter)
            assigned[r.request_id] = vm.vm_id
    for r in request_iter:
        rejected[r.request_id] = REASON_ALL_FULL
    return _finish(strategy, requests, assigned, rejected, quantification)


def _clip_and_resplit(
    vms_in_order: Sequence[VirtualMachine],
    n_requests: int,
    share_counts,
) -> dict[int, int]:
    """Clip targets at max_users, re-splitting overflow among VMs with room.

    ``share_counts(open_vms, n)`` returns the unclipped split of n
    requests over the still-open VMs; each pass either exhausts the
    overflow or closes at least one VM, so the loop terminates.
    """
    targets = {vm.vm_id: 0 for vm in vms_in_order}
    caps = {vm.vm_id: vm.max_users for vm in vms_in_order}
    remaining = n_requests
    open_vms = list(vms_in_order)
    while remaining > 0 and open_vms:
        want = share_counts(open_vms, remaining)
        remaining = 0
        still_open = []
        for vm, want_count in zip(open_vms, want):
            space = caps[vm.vm_id] - targets[vm.vm_id]
            take = min(want_count, space)
            targets[vm.vm_id] += take
            remaining += want_count - take
            if targets[vm.vm_id] < caps[vm.vm_id]:
                still_open.append(vm)
        open_vms = still_open
    return targets


def assign_equal_split(
    requests: Sequence[Request],
    vms: Sequence[VirtualMachine],
    options: Options,
    dc_zones: Mapping[int, int] | None = None,
) -> AssignmentPlan:
    """Split the pool as evenly as the caps allow, earlier ids taking the remainder."""
    pool = _strategy_pool(vms, options)
    if not pool:
        return _finish(
            StrategyId.EQUAL_SPLIT,
            requests,
            {},
            {r.request_id: REASON_NO_ELIGIBLE_VM for r in requests},
        )

    def equal_share(open_vms, n):
        base, extra = divmod(n, len(open_vms))
        return [base + (1 if i < extra else 0) for i in range(len(open_vms))]

    targets = _clip_and_resplit(pool, len(requests), equal_share)
    return _deal_to_targets(StrategyId.EQUAL_SPLIT, requests, pool, targets)


def assign_capacity_proportioned(
    requests: Sequence[Request],
    vms: Sequence[VirtualMachine],
    options: Options,
    mode: QuantifyMode | str = QuantifyMode.EXACT,
    dc_zones: Mapping[int, int] | None = None,
) -> AssignmentPlan:
    """Split the pool proportionally to quantified connection capacity."""
    pool = _strategy_pool(vms, options)
    if not pool:
        return _finish(
            StrategyId.CAPACITY_PROPORTIONED,
            requests,
            {},
            {r.request_id: REASON_NO_ELIGIBLE_VM for r in requests},
        )
    result = quantify([vm.connections for vm in pool], mode)
    pct = {vm.vm_id: p for vm, p in zip(pool, result.percentages)}

    def proportional_share(open_vms, n):
        return apportion([pct[vm.vm_id] for vm in open_vms], n)

    targets = _clip_and_resplit(pool, len(requests), proportional_share)
    return _deal_to_targets(
        StrategyId.CAPACITY_PROPORTIONED, requests, pool, targets, result
    )


def assign_throttled(
    requests: Sequence[Request],
    vms: Sequence[VirtualMachine],
    options: Options,
    dc_zones: Mapping[int, int] | None = None,
) -> AssignmentPlan:
    """Time-aware assignment: hold requests until a VM has a free connection slot.

    Runs a simulation of per-VM occupancy along the arrival timeline. A
    request takes the first eligible VM (id order) with a free slot at
    its arrival tick; otherwise it waits in a global FIFO and goes to
    the first VM that frees a slot. ``max_users`` still caps totals.
    """
    vm_by_id = {vm.vm_id: vm for vm in vms}
    active: dict[int, int] = {vm.vm_id: 0 for vm in vms}
    totals: dict[int, int] = {vm.vm_id: 0 for vm in vms}
    events: list[tuple[int, int, int]] = []  # (completion_time, vm_id, seq)
    seq = 0
    fifo: deque[tuple[Request, list[int]]] = deque()
    assigned: dict[int, int] = {}
    rejected: dict[int, str] = {}

    def start_on(vm_id: int, request: Request, start_time: int) -> None:
        nonlocal seq
        active[vm_id] += 1
        totals[vm_id] += 1
        assigned[request.request_id] = vm_id
        heappush(events, (start_time + request.process_time, vm_id, seq))
        seq += 1

    def drain_fifo_onto(vm_id: int, now: int) -> None:
        vm = vm_by_id[vm_id]
        while fifo and active[vm_id] < vm.connections and totals[vm_id] < vm.max_users:
            hit = next(
                (i for i, (_, elig) in enumerate(fifo) if vm_id in elig), None
            )
            if hit is None:
                return
            request, _ = fifo[hit]
            del fifo[hit]
            start_on(vm_id, request, now)

    def run_events(until: int | None) -> None:
        while events and (until is None or events[0][0] <= until):
            time, vm_id, _ = heappop(events)
            active[vm_id] -= 1
            drain_fifo_onto(vm_id, time)

    for r in requests:
        run_events(until=r.arrival_time)
        elig = eligible_vms(r, vms, options, dc_zones)
        if not elig:
            rejected[r.request_id] = REASON_NO_ELIGIBLE_VM
            continue
        with_headroom = [vm for vm in elig if totals[vm.vm_id] < vm.max_users]
        if not with_headroom:
            rejected[r.request_id] = REASON_ALL_FULL
            continue
        open_now = next(
            (vm for vm in with_headroom if active[vm.vm_id] < vm.connections), None
        )
        if open_now is not None:
            start_on(open_now.vm_id, r, r.arrival_time)
        else:
            fifo.append((r, [vm.vm_id for vm in with_headroom]))

    run_events(until=None)
    for request, _ in fifo:
        rejected[request.request_id] = REASON_ALL_FULL
    return _finish(StrategyId.THROTTLED, requests, assigned, rejected)


def run_strategies(
    selected: Sequence[StrategyId | str],
    requests: Sequence[Request],
    vms: Sequence[VirtualMachine],
    options: Options,
    mode: QuantifyMode | str = QuantifyMode.EXACT,
    dc_zones: Mapping[int, int] | None = None,
) -> list[AssignmentPlan]:
    """One plan per selected strategy over the shared pool.

    An empty selection runs the two defaults: round robin and orderly
    circular.
    """
    chosen = [StrategyId(s) for s in selected] or list(DEFAULT_STRATEGIES)
    plans = []
    for strategy in chosen:
        if strategy is StrategyId.ROUND_ROBIN:
            plans.append(assign_round_robin(requests, vms, options, dc_zones))
        elif strategy is StrategyId.ORDERLY_CIRCULAR:
            plans.append(assign_orderly_circular(requests, vms, options, dc_zones))
        elif strategy is StrategyId.CAPACITY_FILL_IN:
            plans.append(assign_capacity_fill_in(requests, vms, options, dc_zones))
        elif strategy is StrategyId.THROTTLED:
            plans.append(assign_throttled(requests, vms, options, dc_zones))
        elif strategy is StrategyId.EQUAL_SPLIT:
            plans.append(assign_equal_split(requests, vms, options, dc_zones))
        else:
            plans.append(
                assign_capacity_proportioned(requests, vms, options, mode, dc_zones)
            )
    return plans
