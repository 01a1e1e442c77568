import tempfile
import time
from functools import lru_cache
from pathlib import Path

import pytest

import oracles
from starbaer.ring import build_ring, load_ring_spec, parse_ring_spec
from starbaer.cli import main
from starbaer.suite import bundled, bundled_suite

NAIVE = {
    "z4": lambda: oracles.zn(4),
    "z5": lambda: oracles.zn(5),
    "z6": lambda: oracles.zn(6),
    "z12": lambda: oracles.zn(12),
    "m2z2": lambda: oracles.m2(2),
    "m2z4": lambda: oracles.m2(4),
    "swapz3": lambda: oracles.swap(3),
    "rng02": oracles.rng02,
}
SMALL = ["z4", "z5", "z6", "z12", "m2z2", "swapz3", "rng02"]
BUNDLED = [p.stem for p in bundled_suite()]


@lru_cache(maxsize=None)
def ring(name):
    return build_ring(load_ring_spec(bundled(name)))


@lru_cache(maxsize=None)
def naive(name):
    return NAIVE[name]()


def fresh(name):
    return build_ring(load_ring_spec(bundled(name)))


def spec_ring(text):
    return build_ring(parse_ring_spec(text))


def run_cli(*argv):
    """(exit code, report text or None) for one CLI invocation."""
    with tempfile.TemporaryDirectory() as tmp:
        out = Path(tmp) / "report.json"
        code = main([*argv, "--out", str(out)])
        return code, out.read_text() if out.exists() else None


VERIFY_SECONDS = {}


@lru_cache(maxsize=None)
def verify_report(name, jobs=1):
    """Full catalog run on a bundled ring, shared by the catalog, CLI and acceptance tests."""
    t = time.perf_counter()
    out = run_cli("verify", str(bundled(name)), f"--jobs={jobs}")
    VERIFY_SECONDS[name, jobs] = time.perf_counter() - t
    return out


def idx(R, N, a):
    return R.index(N.to_value(a))


@pytest.fixture
def z4():
    return ring("z4")


@pytest.fixture
def z6():
    return ring("z6")


@pytest.fixture
def m2z2():
    return ring("m2z2")


# one line per acceptance criterion, printed after the run
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[n])
