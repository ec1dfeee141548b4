import pytest

from stratmorse.core import build_complex
from stratmorse.io import load_complex

ACCEPTANCE: dict[int, str] = {}


class Fixture:
    """A bundled example with value-based lookups."""

    def __init__(self, name):
        cf = load_complex(f"fixture:{name}")
        self.name = name
        self.K = cf.K
        self.f = cf.values
        self.meta = cf.meta
        self.by_value = {v: i for i, v in enumerate(self.f)}

    def ids(self, *values):
        return [self.by_value[float(v)] for v in values]

    def id(self, value):
        return self.by_value[float(value)]

    def vals(self, ids):
        return sorted(self.f[i] for i in ids)

    def pair_vals(self, pairs):
        return {(self.f[a], self.f[b]) for a, b in pairs}


@pytest.fixture(scope="session")
def fx():
    cache = {}

    def get(name):
        if name not in cache:
            cache[name] = Fixture(name)
        return cache[name]

    return get


def record(n: int, ok: bool, detail: str = "") -> None:
    line = f"criterion {n:>2}: {'PASS' if ok else 'FAIL'}" + (f"  ({detail})" if detail else "")
    ACCEPTANCE[n] = line
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[n])


def segment():
    return build_complex([((0,), 0.0), ((1,), 1.0), ((0, 1), 1.0)])
