import pytest

from reqsim.model import (
    CloudConfig,
    DataCenter,
    Options,
    Service,
    ServiceDemand,
    TimeRangeSettings,
    VirtualMachine,
)


def make_vm(
    vm_id,
    connections=4,
    max_users=10**9,
    ram_gb=10**9,
    dc_id=101,
    faulty=False,
    processor="Intel",
    hdd_gb=500,
    nic=32,
    traffic=50,
    bandwidth=512,
    os="Linux",
):
    return VirtualMachine(
        dc_id=dc_id,
        vm_id=vm_id,
        processor=processor,
        ram_gb=ram_gb,
        hdd_gb=hdd_gb,
        connections=connections,
        nic=nic,
        traffic=traffic,
        bandwidth=bandwidth,
        os=os,
        max_users=max_users,
        faulty=faulty,
    )


@pytest.fixture
def four_vms():
    """The four-VM table: connections 9/7/6/8, max_users 5/9/7/7."""
    return (
        VirtualMachine(101, 10001, "Intel", 8, 500, 9, 32, 50, 512, "Windows 2003", 5),
        VirtualMachine(101, 10002, "Intel", 10, 1024, 7, 64, 200, 512, "Windows 2008", 9),
        VirtualMachine(101, 10003, "Dual Core", 12, 128, 6, 128, 100, 15, "Windows 2012", 7),
        VirtualMachine(101, 10004, "Intel", 14, 500, 8, 32, 20, 135, "Windows 2012", 7),
    )


@pytest.fixture
def three_services():
    return (
        Service(501, "LOAD", 5, "SERVICE", 1, 5),
        Service(502, "PROCESSING", 4, "SERVICE", 2, 2),
        Service(503, "RESULT", 6, "WIN SERVICE", 3, 3),
    )


def build_reference_config():
    """Full runnable configuration: one DC, four VMs, three services,
    demands 14/16/18."""
    return CloudConfig(
        data_centers=(DataCenter(4, 101, "India", "Pondicherry"),),
        vms=(
            VirtualMachine(101, 10001, "Intel", 8, 500, 9, 32, 50, 512, "Windows 2003", 5),
            VirtualMachine(101, 10002, "Intel", 10, 1024, 7, 64, 200, 512, "Windows 2008", 9),
            VirtualMachine(101, 10003, "Dual Core", 12, 128, 6, 128, 100, 15, "Windows 2012", 7),
            VirtualMachine(101, 10004, "Intel", 14, 500, 8, 32, 20, 135, "Windows 2012", 7),
        ),
        services=(
            Service(501, "LOAD", 5, "SERVICE", 1, 5),
            Service(502, "PROCESSING", 4, "SERVICE", 2, 2),
            Service(503, "RESULT", 6, "WIN SERVICE", 3, 3),
        ),
        demands=(
            ServiceDemand(501, 14),
            ServiceDemand(502, 16),
            ServiceDemand(503, 18),
        ),
        options=Options(),
        time_settings=TimeRangeSettings(0, 18, 1, 10),
    )


@pytest.fixture
def reference_config():
    return build_reference_config()
