from functools import reduce
from itertools import product

import numpy as np
import pytest

# Oracle matrices, written out independently of supauli.pauli.
_ORACLE = {
    "I": np.array([[1, 0], [0, 1]], dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


def kron_oracle(labels):
    """Dense Kronecker product, leftmost label outermost."""
    return reduce(np.kron, [_ORACLE[c] for c in labels])


def all_labels(m):
    return ["".join(t) for t in product("IXYZ", repeat=m)]


def projection_oracle(mat):
    """Brute-force ``Tr(P M) / 2^m`` over every Kronecker-built string."""
    dim = mat.shape[0]
    m = dim.bit_length() - 1
    return {lab: np.trace(kron_oracle(lab) @ mat) / dim for lab in all_labels(m)}


def unit(n, j, k):
    e = np.zeros((n, n), dtype=complex)
    e[j - 1, k - 1] = 1
    return e


def random_hermitian(dim, rng):
    a = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return (a + a.conj().T) / 2


@pytest.fixture
def rng():
    return np.random.default_rng(20261016)


# --- acceptance criterion reporting -------------------------------------

_CRITERIA = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(tag, text): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    tag, text = marker.args
    if report.when == "call" or (report.when == "setup" and report.failed):
        prev = _CRITERIA.get(tag, (text, True))
        _CRITERIA[tag] = (text, prev[1] and report.passed)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")

    def order(tag):
        return int(tag.lstrip("AC"))

    for tag in sorted(_CRITERIA, key=order):
        text, ok = _CRITERIA[tag]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} {tag}: {text}")
