import pytest
from hypothesis import HealthCheck, settings

from nbrw import (
    butterfly,
    complete,
    complete_bipartite,
    cycle,
    petersen,
    random_multigraph,
)

settings.register_profile(
    "suite",
    max_examples=25,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("suite")


def _named():
    return [
        ("triangle", cycle(3)),
        ("cycle6", cycle(6)),
        ("k4", complete(4)),
        ("k33", complete_bipartite(3, 3)),
        ("petersen", petersen()),
        ("butterfly", butterfly()),
    ]


def _random(seeds, min_degree=2):
    out = []
    for seed in seeds:
        n = 4 + (seed % 9)
        out.append((f"rand{n}s{seed}", random_multigraph(n, seed,
                                                         min_degree=min_degree)))
    return out


NAMED = _named()
RANDOM_SEEDS = tuple(range(100, 120))
CORPUS = NAMED + _random(RANDOM_SEEDS)


@pytest.fixture(params=CORPUS, ids=[name for name, _ in CORPUS])
def corpus_graph(request):
    return request.param[1]


# acceptance tests push one line each; the summary hook replays them so the
# verdicts are visible in the terminal report even without -s
ACCEPTANCE_LINES = []


@pytest.fixture
def criterion():
    def _report(num: int, ok: bool, detail: str):
        line = f"criterion {num:02d}: {'PASS' if ok else 'FAIL'} - {detail}"
        print(line)
        ACCEPTANCE_LINES.append(line)
        assert ok, line

    return _report


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
