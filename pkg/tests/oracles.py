"""Independent reference implementations used as test oracles.

Each function here is a direct, naive transcription of the documented
behavior, kept deliberately separate from the production code: plain
loops, no shared helpers, per-tick time stepping instead of events.
They exist to be obviously correct, not fast.
"""

import math


def plan_outcome(plan):
    """Flatten an AssignmentPlan into {request_id: vm_id | ('REJ', reason)}."""
    outcome = {}
    for entry in plan.entries:
        outcome[entry.request_id] = entry.vm_id
    for rejection in plan.rejections:
        outcome[rejection.request_id] = ("REJ", rejection.reason)
    return outcome


def ref_eligible(request, vms, options, dc_zones):
    ordered = sorted(vms, key=lambda vm: vm.vm_id)
    pool = []
    for vm in ordered:
        if options.faulty_handling_enabled and vm.faulty:
            continue
        pool.append(vm)
    if options.zone_affinity_enabled:
        same_zone = [vm for vm in pool if dc_zones.get(vm.dc_id) == request.zone_id]
        if same_zone:
            return same_zone
        return [vm for vm in ordered if not vm.faulty]
    return pool


def ref_round_robin(requests, vms, options, dc_zones):
    outcome = {}
    counts = {vm.vm_id: 0 for vm in vms}
    last_assigned = None
    for r in requests:
        elig = ref_eligible(r, vms, options, dc_zones)
        if not elig:
            outcome[r.request_id] = ("REJ", "NO_ELIGIBLE_VM")
            continue
        ids = [vm.vm_id for vm in elig]
        start = 0
        if last_assigned is not None:
            start = len(ids)
            for i, vm_id in enumerate(ids):
                if vm_id > last_assigned:
                    start = i
                    break
            if start == len(ids):
                start = 0
        placed = False
        for k in range(len(elig)):
            vm = elig[(start + k) % len(elig)]
            if counts[vm.vm_id] < vm.max_users:
                counts[vm.vm_id] += 1
                outcome[r.request_id] = vm.vm_id
                last_assigned = vm.vm_id
                placed = True
                break
        if not placed:
            outcome[r.request_id] = ("REJ", "ALL_FULL")
    return outcome


def ref_orderly_circular(requests, vms, options, dc_zones):
    outcome = {}
    counts = {vm.vm_id: 0 for vm in vms}
    for r in requests:
        elig = ref_eligible(r, vms, options, dc_zones)
        if not elig:
            outcome[r.request_id] = ("REJ", "NO_ELIGIBLE_VM")
            continue
        for vm in elig:
            if counts[vm.vm_id] < vm.max_users:
                counts[vm.vm_id] += 1
                outcome[r.request_id] = vm.vm_id
                break
        else:
            outcome[r.request_id] = ("REJ", "ALL_FULL")
    return outcome


def ref_capacity_fill_in(requests, vms, options, dc_zones):
    outcome = {}
    counts = {vm.vm_id: 0 for vm in vms}
    for r in requests:
        elig = ref_eligible(r, vms, options, dc_zones)
        elig = sorted(elig, key=lambda vm: (-vm.connections, vm.vm_id))
        if not elig:
            outcome[r.request_id] = ("REJ", "NO_ELIGIBLE_VM")
            continue
        for vm in elig:
            if counts[vm.vm_id] < vm.max_users:
                counts[vm.vm_id] += 1
                outcome[r.request_id] = vm.vm_id
                break
        else:
            outcome[r.request_id] = ("REJ", "ALL_FULL")
    return outcome


def _ref_deal(requests, pool, targets):
    outcome = {}
    idx = 0
    for vm in pool:
        for _ in range(targets[vm.vm_id]):
            outcome[requests[idx].request_id] = vm.vm_id
            idx += 1
    while idx < len(requests):
        outcome[requests[idx].request_id] = ("REJ", "ALL_FULL")
        idx += 1
    return outcome


def _ref_clip(pool, n, share):
    """share(open_vms, n) -> unclipped counts; clip at max_users and re-split."""
    targets = {vm.vm_id: 0 for vm in pool}
    open_vms = list(pool)
    remaining = n
    while remaining > 0 and open_vms:
        want = share(open_vms, remaining)
        remaining = 0
        nxt = []
        for vm, w in zip(open_vms, want):
            space = vm.max_users - targets[vm.vm_id]
            take = min(w, space)
            targets[vm.vm_id] += take
            remaining += w - take
            if targets[vm.vm_id] < vm.max_users:
                nxt.append(vm)
        open_vms = nxt
    return targets


def ref_equal_split(requests, vms, options, dc_zones):
    pool = sorted(
        (vm for vm in vms if not (options.faulty_handling_enabled and vm.faulty)),
        key=lambda vm: vm.vm_id,
    )
    if not pool:
        return {r.request_id: ("REJ", "NO_ELIGIBLE_VM") for r in requests}

    def share(open_vms, n):
        base = n // len(open_vms)
        extra = n % len(open_vms)
        return [base + (1 if i < extra else 0) for i in range(len(open_vms))]

    targets = _ref_clip(pool, len(requests), share)
    return _ref_deal(list(requests), pool, targets)


def ref_largest_remainder(weights, n):
    total = sum(weights)
    quotas = [w / total * n for w in weights]
    counts = [int(math.floor(q)) for q in quotas]
    leftover = n - sum(counts)
    fractions = sorted(
        range(len(weights)), key=lambda i: (-(quotas[i] - math.floor(quotas[i])), i)
    )
    for i in fractions[:leftover]:
        counts[i] += 1
    return counts


def ref_percentages(capacities, mode):
    mu = sum(capacities) / len(capacities)
    if len(capacities) > 1:
        var = sum((x - mu) ** 2 for x in capacities) / (len(capacities) - 1)
        sigma = math.sqrt(var)
    else:
        sigma = 0.0
    pcts = []
    for x in capacities:
        z = (x - mu) / sigma if sigma > 0 else 0.0
        if mode == "paper_compat":
            z = math.trunc(z * 100) / 100
        pcts.append((0.5 * (1 + math.erf(z / math.sqrt(2)))) * 100)
    return pcts


def ref_capacity_proportioned(requests, vms, options, dc_zones, mode="exact"):
    pool = sorted(
        (vm for vm in vms if not (options.faulty_handling_enabled and vm.faulty)),
        key=lambda vm: vm.vm_id,
    )
    if not pool:
        return {r.request_id: ("REJ", "NO_ELIGIBLE_VM") for r in requests}
    pcts = ref_percentages([vm.connections for vm in pool], mode)
    weight = {vm.vm_id: p for vm, p in zip(pool, pcts)}

    def share(open_vms, n):
        return ref_largest_remainder([weight[vm.vm_id] for vm in open_vms], n)

    targets = _ref_clip(pool, len(requests), share)
    return _ref_deal(list(requests), pool, targets)


def ref_throttled(requests, vms, options, dc_zones):
    """Per-tick transcription of the throttle, including the global FIFO."""
    outcome = {}
    vm_list = sorted(vms, key=lambda vm: vm.vm_id)
    active = {vm.vm_id: [] for vm in vm_list}  # completion ticks
    totals = {vm.vm_id: 0 for vm in vm_list}
    fifo = []  # (request, eligible vm_ids with headroom at queue time)

    if not requests:
        return outcome
    horizon = max(r.arrival_time for r in requests) + sum(
        r.process_time for r in requests
    ) + 1
    arrivals_by_tick = {}
    for r in requests:
        arrivals_by_tick.setdefault(r.arrival_time, []).append(r)

    def try_start(vm, request, tick):
        if totals[vm.vm_id] >= vm.max_users:
            return False
        if len(active[vm.vm_id]) >= vm.connections:
            return False
        active[vm.vm_id].append(tick + request.process_time)
        totals[vm.vm_id] += 1
        outcome[request.request_id] = vm.vm_id
        return True

    for tick in range(horizon + 1):
        # completions first: freed VMs pull from the FIFO in id order
        for vm in vm_list:
            before = len(active[vm.vm_id])
            active[vm.vm_id] = [c for c in active[vm.vm_id] if c > tick]
            if len(active[vm.vm_id]) < before:
                i = 0
                while i < len(fifo):
                    request, elig_ids = fifo[i]
                    if vm.vm_id in elig_ids and try_start(vm, request, tick):
                        fifo.pop(i)
                        if len(active[vm.vm_id]) >= vm.connections:
                            break
                        if totals[vm.vm_id] >= vm.max_users:
                            break
                        continue
                    i += 1
        for r in arrivals_by_tick.get(tick, []):
            elig = ref_eligible(r, vms, options, dc_zones)
            if not elig:
                outcome[r.request_id] = ("REJ", "NO_ELIGIBLE_VM")
                continue
            with_headroom = [vm for vm in elig if totals[vm.vm_id] < vm.max_users]
            if not with_headroom:
                outcome[r.request_id] = ("REJ", "ALL_FULL")
                continue
            for vm in with_headroom:
                if try_start(vm, r, tick):
                    break
            else:
                fifo.append((r, [vm.vm_id for vm in with_headroom]))
    for request, _ in fifo:
        outcome[request.request_id] = ("REJ", "ALL_FULL")
    return outcome


REF_STRATEGIES = {
    "ROUND_ROBIN": ref_round_robin,
    "ORDERLY_CIRCULAR": ref_orderly_circular,
    "CAPACITY_FILL_IN": ref_capacity_fill_in,
    "THROTTLED": ref_throttled,
    "EQUAL_SPLIT": ref_equal_split,
    "CAPACITY_PROPORTIONED": ref_capacity_proportioned,
}


def ref_simulate(plan, requests, vms, services, options):
    """Per-tick brute-force engine: {request_id: (vm, arrival, start, completion)}."""
    request_by_id = {r.request_id: r for r in requests}
    sizes = {s.service_id: s.size for s in services}
    timings = {}
    rejected = {}
    for vm in sorted(vms, key=lambda v: v.vm_id):
        assigned = [
            request_by_id[e.request_id] for e in plan.entries if e.vm_id == vm.vm_id
        ]
        queue = []
        for r in assigned:
            if sizes[r.service_id] > vm.ram_gb:
                rejected[r.request_id] = "OVERSIZED"
            else:
                queue.append(r)
        if options.priority_enabled:
            queue.sort(key=lambda r: (-r.priority, r.arrival_time, r.request_id))
        else:
            queue.sort(key=lambda r: (r.arrival_time, r.request_id))
        if not queue:
            continue
        horizon = max(r.arrival_time for r in queue) + sum(r.process_time for r in queue) + 1
        started = {}  # request_id -> (start, completion, size)
        next_index = 0
        for tick in range(horizon + 1):
            if next_index >= len(queue):
                break
            while next_index < len(queue):
                r = queue[next_index]
                running = [
                    v for v in started.values() if v[0] <= tick < v[1]
                ]
                used = sum(v[2] for v in running)
                if (
                    r.arrival_time <= tick
                    and len(running) < vm.connections
                    and used + sizes[r.service_id] <= vm.ram_gb
                ):
                    started[r.request_id] = (
                        tick,
                        tick + r.process_time,
                        sizes[r.service_id],
                    )
                    next_index += 1
                else:
                    break
        for r in queue:
            start, completion, _ = started[r.request_id]
            timings[r.request_id] = (vm.vm_id, r.arrival_time, start, completion)
    return timings, rejected


def check_bounds_fast(result, requests, vms, services):
    """Event-sweep version of the bound check for large pools."""
    sizes = {s.service_id: s.size for s in services}
    request_by_id = {r.request_id: r for r in requests}
    problems = []
    for vm in vms:
        events = []
        for t in result.timings:
            if t.vm_id != vm.vm_id:
                continue
            size = sizes[request_by_id[t.request_id].service_id]
            events.append((t.start_time, 1, size))
            events.append((t.completion_time, -1, size))
        # completions release before same-tick starts claim
        events.sort(key=lambda e: (e[0], e[1]))
        running = 0
        used = 0
        for _, delta, size in events:
            running += delta
            used += delta * size
            if running > vm.connections:
                problems.append(f"vm {vm.vm_id}: {running} concurrent > {vm.connections}")
            if used > vm.ram_gb:
                problems.append(f"vm {vm.vm_id}: {used} storage > {vm.ram_gb}")
    return problems


def check_slot_and_storage_bounds(result, requests, vms, services):
    """Sweep every tick of a simulation; returns a list of violations."""
    sizes = {s.service_id: s.size for s in services}
    request_by_id = {r.request_id: r for r in requests}
    problems = []
    for vm in vms:
        spans = [
            (t.start_time, t.completion_time, sizes[request_by_id[t.request_id].service_id])
            for t in result.timings
            if t.vm_id == vm.vm_id
        ]
        if not spans:
            continue
        for tick in range(min(s for s, _, _ in spans), max(c for _, c, _ in spans)):
            running = [(s, c, z) for s, c, z in spans if s <= tick < c]
            if len(running) > vm.connections:
                problems.append(f"vm {vm.vm_id} tick {tick}: {len(running)} > connections")
            if sum(z for _, _, z in running) > vm.ram_gb:
                problems.append(f"vm {vm.vm_id} tick {tick}: storage over ram_gb")
    return problems
