import random
from fractions import Fraction as F

import pytest

from meixner import MeixnerSpec, family_geometric, family_triangular, from_weights


def random_weights(rng: random.Random, d: int) -> list:
    """d positive rationals with sum < 1 (the leftover share is c0)."""
    shares = [rng.randint(1, 9) for _ in range(d + 1)]
    total = sum(shares)
    return [F(s, total) for s in shares[1:]]


def sample_points(d: int, seed: int = 2012, n_random: int = 5) -> list:
    rng = random.Random(seed + d)
    points = [from_weights(random_weights(rng, d)) for _ in range(n_random)]
    points.append(family_triangular([F(1, k + 3) for k in range(d)]))
    points.append(family_geometric(F(1, 2), d))
    return points


@pytest.fixture
def gram_d1():
    return from_weights([F(1, 3)])


@pytest.fixture
def spec_d1(gram_d1):
    return MeixnerSpec(gram_d1, 1)


@pytest.fixture
def geometric_d2():
    return family_geometric(F(1, 2), 2)


@pytest.fixture
def triangular_d2():
    return family_triangular([F(1, 3), F(1, 4)])


ACCEPTANCE_LINES: list = []


def record_acceptance(number: int, passed: bool, detail: str) -> str:
    line = f"criterion {number}: {'PASS' if passed else 'FAIL'}  {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return line


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
