import random
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from cyclodmr.lie import lie_alphabet, lie_basis, lyndon_bracket
from cyclodmr.series import SeriesX, exp_series

settings.register_profile(
    "default",
    deadline=None,
    max_examples=25,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("default")

ACCEPTANCE_LINES: list[str] = []


def record_acceptance(line: str) -> None:
    ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def random_lie(rng: random.Random, N: int, D: int, density: float = 0.5, lo: int = 1) -> SeriesX:
    out = SeriesX(N, D, {})
    for d in range(lo, D + 1):
        for w in lie_basis(N, d):
            if rng.random() < density:
                out = out + lyndon_bracket(w, N, D).scale(Fraction(rng.randint(-3, 3), rng.randint(1, 3)))
    return out


def random_grouplike(rng: random.Random, N: int, D: int, density: float = 0.5, lo: int = 1) -> SeriesX:
    return exp_series(random_lie(rng, N, D, density, lo))


@st.composite
def grouplikes(draw, N=2, D=3, lo=1):
    seed = draw(st.integers(0, 10**6))
    return random_grouplike(random.Random(seed), N, D, 0.4, lo)


@st.composite
def series_x(draw, N=2, D=3, max_terms=5):
    terms = {}
    for _ in range(draw(st.integers(0, max_terms))):
        n = draw(st.integers(0, D))
        w = tuple(draw(st.lists(st.sampled_from([-1] + list(range(N))), min_size=n, max_size=n)))
        terms[w] = draw(st.fractions(min_value=-5, max_value=5, max_denominator=4))
    return SeriesX(N, D, terms)


@pytest.fixture
def rng():
    return random.Random(12345)
