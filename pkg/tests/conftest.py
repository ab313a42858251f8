import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from kothe.descriptors import Cyclic, DirectProduct, GaloisField, GroupRingOf, Symmetric, ZMod  # noqa: E402
from kothe.groups import materialize_group  # noqa: E402
from kothe.materialize import materialize_ring  # noqa: E402

ACCEPTANCE_KEY = pytest.StashKey[dict]()


def pytest_configure(config):
    config.stash[ACCEPTANCE_KEY] = {}


@pytest.fixture
def acceptance(request):
    """``record(criterion, check, ok)`` collects one sub-check for the summary."""
    log = request.config.stash[ACCEPTANCE_KEY]

    def record(criterion: int, check: str, ok: bool):
        log.setdefault(criterion, []).append((check, bool(ok)))
        return ok

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    log = config.stash.get(ACCEPTANCE_KEY, {})
    if not log:
        return
    terminalreporter.section("acceptance criteria")
    for criterion in sorted(log):
        checks = log[criterion]
        failed = [c for c, ok in checks if not ok]
        status = "PASS" if not failed else "FAIL"
        detail = f"{len(checks) - len(failed)}/{len(checks)} checks"
        if failed:
            detail += "; failed: " + ", ".join(failed)
        terminalreporter.write_line(f"criterion {criterion}: {status} ({detail})")


def ring(d, cap=4096):
    return materialize_ring(d, cap)


@pytest.fixture(scope="session")
def f2c2():
    return ring(GroupRingOf(GaloisField(2), Cyclic(2)))


@pytest.fixture(scope="session")
def f2s3():
    return ring(GroupRingOf(GaloisField(2), Symmetric(3)))


@pytest.fixture(scope="session")
def f2klein():
    return ring(GroupRingOf(GaloisField(2), DirectProduct((Cyclic(2), Cyclic(2)))))


@pytest.fixture(scope="session")
def z4():
    return ring(ZMod(4))


@pytest.fixture(scope="session")
def s3():
    return materialize_group(Symmetric(3))
