import os

import pytest
from hypothesis import HealthCheck, settings

from vericlassics.contracts import ContractMode, using

settings.register_profile(
    "vericlassics",
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.function_scoped_fixture],
)
settings.load_profile("vericlassics")

MODE = ContractMode.parse(os.environ.get("VERICLASSICS_CONTRACTS", "assert"))

# filled in by test_acceptance.py, printed after the run
ACCEPTANCE: dict[str, str] = {}


@pytest.fixture(autouse=True)
def contract_mode(request):
    """Run each test under the contract mode named in VERICLASSICS_CONTRACTS."""
    if request.node.get_closest_marker("own_contracts"):
        yield None
        return
    with using(MODE) as ctx:
        yield ctx


def pytest_configure(config):
    config.addinivalue_line("markers", "own_contracts: test manages its own contract context")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section(f"acceptance criteria (contracts={MODE.value})")
    for name, line in ACCEPTANCE.items():
        terminalreporter.write_line(f"{name}: {line}")
