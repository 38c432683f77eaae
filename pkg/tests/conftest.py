import random
from fractions import Fraction

import pytest

from scorepower import Profile, Ranking, ScoringCommittee, ScoringVector


def committee(weights, s=None, scores=None) -> ScoringCommittee:
    if scores is not None:
        scoring = ScoringVector(tuple(Fraction(x) for x in scores))
    else:
        scoring = ScoringVector.one_s_zero(Fraction(s))
    return ScoringCommittee(tuple(Fraction(w) for w in weights), scoring)


def profile(*orders) -> Profile:
    return Profile(tuple(Ranking(tuple(o)) for o in orders))


def random_rational(rng: random.Random, max_num=12, max_den=6) -> Fraction:
    return Fraction(rng.randint(0, max_num), rng.randint(1, max_den))


def random_committee(rng: random.Random, n=3, m=3) -> ScoringCommittee:
    while True:
        weights = tuple(random_rational(rng) for _ in range(n))
        if any(weights):
            break
    if m == 3:
        s = Fraction(rng.randint(0, 6), 6)
        scoring = ScoringVector.one_s_zero(s)
    else:
        while True:
            raw = sorted((random_rational(rng) for _ in range(m)), reverse=True)
            if raw[0] != raw[-1]:
                break
        scoring = ScoringVector(tuple(raw))
    return ScoringCommittee(weights, scoring)


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20260823)


#: One line per acceptance criterion, echoed after the test summary.
acceptance_lines: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in acceptance_lines:
            terminalreporter.write_line(line)
