import random
from fractions import Fraction

import pytest

from lctkit.poly import Poly


@pytest.fixture
def rng():
    return random.Random(20261014)


def random_poly(rng, ring, max_deg, n_terms, coeff_range=5, min_deg=0):
    terms = {}
    n = len(ring)
    for _ in range(n_terms):
        d = rng.randint(min_deg, max_deg)
        cuts = sorted(rng.randint(0, d) for _ in range(n - 1))
        e = tuple(b - a for a, b in zip([0] + cuts, cuts + [d]))
        c = Fraction(rng.randint(-coeff_range, coeff_range), rng.randint(1, 3))
        if c:
            terms[e] = terms.get(e, 0) + c
    return Poly(ring, terms)


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    if mod and mod.REPORT:
        terminalreporter.section("acceptance")
        for line in mod.REPORT:
            terminalreporter.write_line(line)
