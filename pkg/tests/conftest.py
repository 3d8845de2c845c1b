import sys
from functools import lru_cache
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from involution_lab.analysis import Analysis, load_fixtures  # noqa: E402
from involution_lab.specs import CATALOG, build_group  # noqa: E402
from involution_lab.groups import make_orientation  # noqa: E402
from involution_lab.specs import parse_kernel  # noqa: E402

DATA = Path(__file__).parent / "data"


@lru_cache(maxsize=None)
def catalog_analysis(name: str, characteristic: int | None = None) -> Analysis:
    entry = CATALOG[name]
    G = entry.group()
    p = entry.characteristic if characteristic is None else characteristic
    label = name if characteristic is None else f"{name}@char{p}"
    return Analysis(G, entry.orientation(G), p, name=label)


@lru_cache(maxsize=None)
def spec_analysis(spec: str, kernel: str | None, p: int, name: str, cap: int = 288) -> Analysis:
    G = build_group(spec, cap=cap)
    return Analysis(G, make_orientation(G, parse_kernel(G, kernel)), p, name=name)


@pytest.fixture(scope="session")
def fixtures():
    return load_fixtures()


@pytest.fixture
def analysis():
    return catalog_analysis


# one line per acceptance criterion, filled in by test_acceptance.py
ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[k])
