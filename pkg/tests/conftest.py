import numpy as np
import pytest

from reciprank import fixtures

# Perron vector of A and of A A^T as printed for each example (last entry 1).
PRINTED = {
    "ex01": ([1.4008, 0.8134, 1.1503, 1.3488, 1], [1.4667, 0.8522, 1.3142, 2.2704, 1]),
    "ex02": ([1.4842, 1.5318, 1.1940, 1.0829, 1], [1.1507, 1.3620, 1.0590, 0.7746, 1]),
    "ex03": ([0.6713, 0.7041, 0.9907, 0.8591, 1], [0.6131, 0.5337, 0.8907, 0.8152, 1]),
    "ex04": ([0.1623, 0.3658, 1.9915, 0.5080, 1], [0.3988, 0.9565, 45.6075, 0.2369, 1]),
}

# (Perron efficient, singular efficient)
PRINTED_VERDICTS = {
    "ex01": (False, True),
    "ex02": (True, False),
    "ex03": (False, False),
    "ex04": (True, True),
}

EX01_AS_PRINTED = np.array(
    [
        [1, 1.1742, 0.5647, 4.4912, 0.3633],
        [0.8516, 1, 1.4198, 0.734, 0.8444],
        [1.7709, 0.7043, 1, 1.3358, 1.7356],
        [0.2227, 1.3624, 0.7486, 1, 5.4467],
        [2.7525, 1.1843, 0.5762, 0.1836, 1],
    ]
)


@pytest.fixture(params=sorted(PRINTED))
def example_name(request):
    return request.param


@pytest.fixture
def example(example_name):
    return fixtures.load(example_name)


@pytest.fixture
def nonconvex6():
    return fixtures.load("nonconvex6")


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def random_reciprocal_matrix(rng, n, spread=2.0):
    """Independent generator for tests: log-uniform upper triangle."""
    from reciprank import ReciprocalMatrix

    a = np.exp(rng.uniform(-spread, spread, (n, n)))
    a = np.triu(a, 1)
    a = a + np.triu(1.0 / np.where(a > 0, a, 1.0), 1).T
    np.fill_diagonal(a, 1.0)
    return ReciprocalMatrix(a)


# --- acceptance reporting ---------------------------------------------------

_ACCEPTANCE: dict[int, str] = {}


@pytest.fixture
def acceptance():
    def record(number: int, title: str, passed: bool, detail: str = ""):
        status = "PASS" if passed else "FAIL"
        _ACCEPTANCE[number] = f"[{status}] criterion {number:>2}: {title}" + (
            f" -- {detail}" if detail else ""
        )

    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(_ACCEPTANCE):
        terminalreporter.write_line(_ACCEPTANCE[k])
