import re

import pytest
from hypothesis import strategies as st

from pescf import build_es, load_fixture
from pescf.errors import SelfConflict


@pytest.fixture(scope="session")
def rover():
    return load_fixture("rover")


@pytest.fixture(scope="session")
def railway():
    return load_fixture("railway")


@pytest.fixture(scope="session")
def network():
    return load_fixture("network")


@pytest.fixture(scope="session")
def sms():
    return load_fixture("sms")


@pytest.fixture(scope="session")
def phone():
    return load_fixture("phone")


@st.composite
def model_inputs(draw, max_events=12, max_conflicts=4):
    """(ids, cause_pairs, conflict_pairs) accepted by build_es."""
    n = draw(st.integers(0, max_events))
    ids = [f"e{i:02d}" for i in range(n)]
    density = draw(st.sampled_from([1, 3, 5, 7]))
    causes = [(ids[i], ids[j]) for j in range(n) for i in range(j) if draw(st.integers(0, 9)) < density]
    conflicts = []
    if n >= 2:
        candidates = draw(
            st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=max_conflicts)
        )
        for i, j in candidates:
            if i == j:
                continue
            pair = (ids[i], ids[j])
            try:
                build_es(ids, causes, conflicts + [pair])
            except SelfConflict:
                continue
            conflicts.append(pair)
    return ids, causes, conflicts


# ---------------------------------------------------------------------- #
# one summary line per acceptance criterion
# ---------------------------------------------------------------------- #

_results: dict[str, list[str]] = {}


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    m = re.search(r"test_acceptance\.py::test_ac(\d+)_(\w+)", report.nodeid)
    if m:
        _results.setdefault(f"AC{int(m.group(1))} {m.group(2)}", []).append(report.outcome)


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_results, key=lambda k: int(k.split()[0][2:])):
        ok = all(o == "passed" for o in _results[name])
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}")
