import os

import numpy as np
import pytest

LONG = os.environ.get("BOOLFN_LONG") == "1"

_acceptance = []


def pytest_collection_modifyitems(config, items):
    if LONG:
        return
    skip = pytest.mark.skip(reason="long-running; set BOOLFN_LONG=1")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    if report.when == "call" or (report.when == "setup" and report.skipped):
        _acceptance.append((report.nodeid.split("::", 1)[1], report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in _acceptance:
        terminalreporter.write_line(f"{outcome.upper():8s} {name}")


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def random_tables(rng, k, count):
    """``count`` random packed tables of arity ``k`` as (python ints, uint8 matrix)."""
    bits = rng.integers(0, 2, size=(count, 1 << k), dtype=np.uint8)
    packed = [int.from_bytes(np.packbits(row, bitorder="little").tobytes(), "little") for row in bits]
    return packed, bits


def lambda_scan(bits: np.ndarray) -> np.ndarray:
    """Direct definition: argument i matters iff flipping S_i changes some output."""
    n = bits.shape[1]
    k = n.bit_length() - 1
    s = np.arange(n)
    lam = np.zeros(bits.shape[0], dtype=np.int64)
    for i in range(k):
        lam += np.any(bits != bits[:, s ^ (1 << i)], axis=1)
    return lam


def all_tables(k):
    n = 1 << k
    mu = np.arange(1 << n, dtype=np.uint64)
    return ((mu[:, None] >> np.arange(n, dtype=np.uint64)) & np.uint64(1)).astype(np.uint8)
