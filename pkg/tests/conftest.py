import random

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from hororeal.lattice import identity, matmul

settings.register_profile(
    "default",
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.register_profile("thorough", max_examples=500, deadline=None)
settings.load_profile("default")

# filled by tests/test_acceptance.py, printed once at the end of the run
ACCEPTANCE = {}


def elementary_unimodular(n, rng, steps=None):
    """Random product of elementary row operations, with its inverse."""
    g = [list(r) for r in identity(n)]
    ginv = [list(r) for r in identity(n)]
    if n == 1 and rng.random() < 0.5:
        return ((-1,),), ((-1,),)
    for _ in range(steps if steps is not None else 3 * n):
        if n < 2:
            break
        i, j = rng.sample(range(n), 2)
        c = rng.choice([-2, -1, 1, 2])
        # g <- E g with E = I + c e_ij ; ginv <- ginv E^-1
        g[i] = [x + c * y for x, y in zip(g[i], g[j])]
        for row in ginv:
            row[j] -= c * row[i]
        if rng.random() < 0.3:
            g[i] = [-x for x in g[i]]
            for row in ginv:
                row[i] = -row[i]
    return tuple(map(tuple, g)), tuple(map(tuple, ginv))


@st.composite
def unimodular(draw, n):
    seed = draw(st.integers(0, 2**32 - 1))
    return elementary_unimodular(n, random.Random(seed))


@pytest.fixture
def rng():
    return random.Random(20240611)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[key]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {key}: {detail}")
