import numpy as np
import pytest

from qfano import _backend


@pytest.fixture(params=_backend.available())
def backend(request):
    return request.param


@pytest.fixture
def rng():
    return np.random.default_rng(20261018)


def random_hermitian(rng, d, scale=1.0):
    x = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    return scale * (x + x.conj().T) / 2


def random_psd(rng, d, rank=None):
    rank = rank or d
    x = rng.normal(size=(d, rank)) + 1j * rng.normal(size=(d, rank))
    return x @ x.conj().T


ACCEPTANCE_RESULTS = {}


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    props = dict(report.user_properties)
    if "criterion_id" not in props:
        return
    status = "PASS" if report.passed else "FAIL"
    ACCEPTANCE_RESULTS[report.nodeid] = (props["criterion_id"], status, props["criterion_desc"])


def pytest_collection_modifyitems(items):
    for item in items:
        m = item.get_closest_marker("criterion")
        if m is not None:
            item.user_properties.append(("criterion_id", m.args[0]))
            item.user_properties.append(("criterion_desc", m.args[1]))


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(id, description): acceptance criterion")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for cid, status, desc in sorted(ACCEPTANCE_RESULTS.values(), key=lambda r: (int(r[0].rstrip("ab")), r[0])):
        terminalreporter.write_line(f"criterion {cid:<4} {status}  {desc}")
