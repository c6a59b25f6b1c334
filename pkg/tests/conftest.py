import random

import pytest
from hypothesis import strategies as st

from evoclass.algebra import EvolutionAlgebra
from evoclass.fields import PrimeField

F3, F5, F7 = PrimeField(3), PrimeField(5), PrimeField(7)


def random_nilpotent(F, dim, rng, density=0.5):
    """Strictly upper triangular structure matrix, hence nilpotent."""
    rows = []
    for i in range(dim):
        rows.append(tuple(rng.randrange(F.p) if j > i and rng.random() < density else 0
                          for j in range(dim)))
    return EvolutionAlgebra(F, tuple(rows))


@st.composite
def nilpotent_algebras(draw, F=F5, min_dim=1, max_dim=4):
    dim = draw(st.integers(min_dim, max_dim))
    seed = draw(st.integers(0, 10**6))
    return random_nilpotent(F, dim, random.Random(seed))


@pytest.fixture
def rng():
    return random.Random(1234)


ACCEPTANCE_LINES = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for key in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[key])
