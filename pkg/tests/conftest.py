import math
from dataclasses import replace
from pathlib import Path

import pytest

from tiltspdc.biphoton import FilterSpec, build_jsa
from tiltspdc.dispersion import degenerate_type_ii, get_crystal
from tiltspdc.scenario import ScenarioFile

ROOT = Path(__file__).resolve().parents[1]
SCENARIOS = ROOT / "scenarios"


def load_scenario(name):
    return ScenarioFile.from_path(SCENARIOS / f"{name}.scn")


@pytest.fixture(scope="session")
def bbo():
    return get_crystal("BBO")


@pytest.fixture(scope="session")
def waves(bbo):
    return degenerate_type_ii(bbo, 0.405)


@pytest.fixture(scope="session")
def configs():
    return {name: load_scenario(name).to_config()
            for name in ("no_tilt", "anticorrelation", "correlation",
                         "cw_no_tilt", "cw_anticorrelation")}


@pytest.fixture(scope="session")
def jsas(configs):
    return {name: build_jsa(cfg) for name, cfg in configs.items()}


def unfiltered(cfg, span=None):
    cfg = replace(cfg, filter_signal=FilterSpec(), filter_idler=FilterSpec())
    if span is not None:
        cfg = replace(cfg, grid=replace(cfg.grid, span=span))
    return cfg


@pytest.fixture
def acceptance(request):
    """Record one pass/fail line for the terminal summary."""
    lines = request.config.__dict__.setdefault("_acceptance_lines", [])

    def report(number, title, checks):
        ok = all(passed for passed, _ in checks)
        detail = "; ".join(f"{'ok' if passed else 'FAIL'} {text}" for passed, text in checks)
        lines.append((number, f"criterion {number:>2} {'PASS' if ok else 'FAIL'}  {title}: {detail}"))
        return ok

    return report


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.__dict__.get("_acceptance_lines")
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for _, line in sorted(lines):
        terminalreporter.write_line(line)


def deg(x):
    return math.degrees(x)
