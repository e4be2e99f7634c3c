import random

import pytest

from fiberfaces.cli import load_triangulation
from fiberfaces.exactalg.laurent import LaurentPoly


@pytest.fixture(scope="session")
def t3():
    return load_triangulation("t3")


@pytest.fixture(scope="session")
def figure8():
    return load_triangulation("figure8")


@pytest.fixture(scope="session")
def whitehead():
    return load_triangulation("whitehead")


@pytest.fixture(scope="session")
def s3():
    return load_triangulation("s3")


def random_poly(rng: random.Random, vars, terms=3, span=2, coef=4) -> LaurentPoly:
    out = {}
    for _ in range(rng.randint(1, terms)):
        e = tuple(rng.randint(-span, span) for _ in vars)
        out[e] = out.get(e, 0) + rng.choice([c for c in range(-coef, coef + 1) if c])
    p = LaurentPoly(vars, out)
    return p if p else LaurentPoly.constant(vars, 1)


# one line per acceptance criterion, echoed in the terminal summary
ACCEPTANCE: list = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance")
        for line in sorted(ACCEPTANCE):
            terminalreporter.write_line(line)
