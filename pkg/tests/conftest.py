import pytest
from hypothesis import HealthCheck, settings

from padicpaths.characters import default_registry
from padicpaths.localfield import FieldConfig
from padicpaths.polytope import Polytope

settings.register_profile("ci", deadline=None, max_examples=40, derandomize=True, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("ci")


@pytest.fixture
def cfg():
    return FieldConfig(5, 40)


@pytest.fixture
def reg(cfg):
    return default_registry(cfg)


@pytest.fixture
def interval(cfg):
    return Polytope.cube(1, cfg.N)


# acceptance criteria report: one line per criterion, printed after the run

ACCEPTANCE = {}


@pytest.fixture
def criterion():
    def record(number, title, part, passed, detail=""):
        entry = ACCEPTANCE.setdefault(number, {"title": title, "parts": []})
        entry["parts"].append((part, passed, detail))
        print(f"criterion {number} [{part}]: {'PASS' if passed else 'FAIL'} {detail}".rstrip())
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        entry = ACCEPTANCE[k]
        bad = [p for p, ok, _ in entry["parts"] if not ok]
        status = "PASS" if not bad else "FAIL"
        extra = f" (failing: {', '.join(bad)})" if bad else ""
        tr.write_line(f"{k:>2}. {status}  {entry['title']}{extra}")
