import zlib

import numpy as np
import pytest

from skewlab.distinguish import SQUARE_EXPERIMENT_ROWS, experiment_row

#: trial counts for the shared square-dimension experiment
GSRS_TRIALS = 10
RANDOM_TRIALS = 100


@pytest.fixture
def rng(request):
    # one stream per test, stable across runs and test selection
    return np.random.default_rng([zlib.crc32(request.node.nodeid.encode()), 2024])


@pytest.fixture(scope="session")
def square_experiment():
    """Square-dimension histograms for every experiment row, computed once."""
    cache = {}

    def get(row):
        if row not in cache:
            cache[row] = experiment_row(*row, trials=GSRS_TRIALS, seed=20240 + SQUARE_EXPERIMENT_ROWS.index(row),
                                        random_trials=RANDOM_TRIALS)
        return cache[row]

    return get


# ---------------------------------------------------------------------------
# acceptance bookkeeping: run the acceptance module last and print one line
# per criterion in the terminal summary


def pytest_collection_modifyitems(session, config, items):
    last = [it for it in items if it.module.__name__.endswith("test_acceptance")]
    first = [it for it in items if it not in last]
    items[:] = first + last


def pytest_configure(config):
    config._skewlab_outcomes = {}
    config._skewlab_acceptance = {}


def pytest_runtest_logreport(report):
    cfg = getattr(pytest_runtest_logreport, "config", None)
    if cfg is None:
        return
    if report.when == "call" or report.outcome != "passed":
        prev = cfg._skewlab_outcomes.get(report.nodeid)
        if prev != "failed":
            cfg._skewlab_outcomes[report.nodeid] = report.outcome


def pytest_sessionstart(session):
    pytest_runtest_logreport.config = session.config


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    acc = config._skewlab_acceptance
    if not acc:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(acc):
        status, detail = acc[num]
        terminalreporter.write_line(f"criterion {num}: {status} - {detail}")
