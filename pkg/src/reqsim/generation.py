"""Seeded generation of the request pool.

Every request gets a random IPv4 origin (mapped to one of six world
zones by its first octet), an arrival time, and a process time, drawn
from the configured inclusive ranges. Generation is a pure function of
(config, seed): the RNG is splitmix64 with modulo range reduction, so
any implementation of the same recipe reproduces a pool bit for bit.
The exact draw order is documented in the README.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .errors import ReqsimError
from .model import CloudConfig, service_priority

_MASK64 = (1 << 64) - 1

# First octets 1..223 (public unicast space) are routable; 0 and the
# multicast/reserved blocks 224..255 are not.
OCTET_LO = 1
OCTET_HI = 223


class SplitMix64:
    """splitmix64: a tiny, portable 64-bit generator.

    Reference sequence (seed 0): 0xE220A8397B1DCDAF, 0x6E789E6AA1B965F4, ...
    ``randint`` reduces by modulo, which keeps the stream trivially
    reproducible in other languages at the cost of a bias that is
    negligible for the small ranges used here.
    """

    def __init__(self, seed: int):
        self._state = seed & _MASK64

    def next_u64(self) -> int:
        self._state = (self._state + 0x9E3779B97F4A7C15) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def randint(self, lo: int, hi: int) -> int:
        """Uniform integer in [lo, hi], both endpoints inclusive."""
        return lo + self.next_u64() % (hi - lo + 1)


@dataclass(frozen=True)
class Request:
    """One generated request, sorted into the pool by (arrival_time, request_id)."""

    request_id: int
    service_id: int
    ip: str
    zone_id: int
    arrival_time: int
    process_time: int
    priority: int


@dataclass(frozen=True)
class ZoneBand:
    """Maps a contiguous first-octet interval to a zone."""

    octet_lo: int
    octet_hi: int
    zone_id: int


class ZoneTable:
    """Disjoint first-octet intervals covering 1..223 across the six zones."""

    def __init__(self, bands: list[ZoneBand] | tuple[ZoneBand, ...]):
        self.bands = tuple(sorted(bands, key=lambda b: b.octet_lo))
        self._validate()

    def _validate(self) -> None:
        covered: set[int] = set()
        for band in self.bands:
            if not 1 <= band.zone_id <= 6:
                raise ReqsimError("BAD_ZONE", f"zone_id {band.zone_id} outside 1..6")
            if band.octet_lo > band.octet_hi:
                raise ReqsimError(
                    "BAD_BAND", f"empty band [{band.octet_lo}, {band.octet_hi}]"
                )
            for octet in range(band.octet_lo, band.octet_hi + 1):
                if octet in covered:
                    raise ReqsimError("OVERLAP", f"first octet {octet} mapped twice")
                covered.add(octet)
        if covered != set(range(OCTET_LO, OCTET_HI + 1)):
            missing = sorted(set(range(OCTET_LO, OCTET_HI + 1)) - covered)
            raise ReqsimError("GAPS", f"first octets uncovered: {missing[:5]}...")

    def zone_of(self, first_octet: int) -> int | None:
        for band in self.bands:
            if band.octet_lo <= first_octet <= band.octet_hi:
                return band.zone_id
        return None

    @classmethod
    def load(cls, path: str | Path) -> "ZoneTable":
        """Load a table from a JSON list of {octet_lo, octet_hi, zone_id}."""
        raw = json.loads(Path(path).read_text())
        return cls([ZoneBand(**entry) for entry in raw])


def default_zone_table() -> ZoneTable:
    """The zone table shipped with the package."""
    raw = json.loads(
        resources.files("reqsim").joinpath("data/zone_table.json").read_text()
    )
    return ZoneTable([ZoneBand(**entry) for entry in raw])


def ip_to_zone(ip: str, table: ZoneTable) -> int:
    """Zone of the interval containing the IP's first octet."""
    parts = ip.split(".")
    if len(parts) != 4:
        raise ReqsimError("BAD_IP", f"not a dotted quad: {ip!r}")
    try:
        octets = [int(p) for p in parts]
    except ValueError:
        raise ReqsimError("BAD_IP", f"not a dotted quad: {ip!r}") from None
    if any(o < 0 or o > 255 for o in octets):
        raise ReqsimError("BAD_IP", f"octet out of range: {ip!r}")
    zone = table.zone_of(octets[0])
    if zone is None:
        raise ReqsimError("UNROUTABLE_IP", f"first octet {octets[0]} has no zone")
    return zone


def generate_requests(
    config: CloudConfig,
    seed: int,
    zone_table: ZoneTable | None = None,
) -> list[Request]:
    """Generate the full request pool for one experiment.

    Each service contributes exactly its demanded count. Draw order per
    request: the four IP octets (first from 1..223, rest from 0..255),
    then arrival time, then process time; services are visited in
    ascending service_id order and request_ids are handed out
    sequentially from 1 in that draw order. The pool is returned sorted
    by (arrival_time, request_id).
    """
    if zone_table is None:
        zone_table = default_zone_table()
    if config.total_demand() < 1:
        raise ReqsimError("EMPTY_POOL", "total demand is zero; nothing to generate")

    services = config.service_by_id()
    times = config.time_settings
    rng = SplitMix64(seed)
    pool: list[Request] = []
    request_id = 1
    for demand in sorted(config.demands, key=lambda d: d.service_id):
        service = services.get(demand.service_id)
        if service is None:
            raise ReqsimError(
                "DANGLING_SERVICE_REF",
                f"demand references unknown service_id {demand.service_id}",
            )
        for _ in range(demand.count):
            octets = [rng.randint(OCTET_LO, OCTET_HI)]
            octets += [rng.randint(0, 255) for _ in range(3)]
            ip = ".".join(str(o) for o in octets)
            arrival = rng.randint(times.arrival_lo, times.arrival_hi)
            process = rng.randint(times.process_lo, times.process_hi)
            pool.append(
                Request(
                    request_id=request_id,
                    service_id=service.service_id,
                    ip=ip,
                    zone_id=ip_to_zone(ip, zone_table),
                    arrival_time=arrival,
                    process_time=process,
                    priority=service_priority(service),
                )
            )
            request_id += 1
    pool.sort(key=lambda r: (r.arrival_time, r.request_id))
    return pool


def refresh_pool(
    config: CloudConfig,
    old_seed: int,
    zone_table: ZoneTable | None = None,
) -> tuple[int, list[Request]]:
    """Redraw the pool without changing its size: same counts, new seed.

    The new seed is old_seed + 1, so a chain of refreshes is itself
    reproducible.
    """
    new_seed = old_seed + 1
    return new_seed, generate_requests(config, new_seed, zone_table)
