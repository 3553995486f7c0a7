import math
import random

import pytest

from kummercover.cover import CurveParams, validate
from kummercover.freegroup import Word


def random_curve(rng: random.Random, s_max: int = 6, n_max: int = 12,
                 s_min: int = 3, n_min: int = 2) -> CurveParams:
    """Rejection-sample a valid parameter set."""
    while True:
        n = rng.randint(n_min, n_max)
        s = rng.randint(s_min, s_max)
        d = [rng.randint(1, 3 * n) for _ in range(s - 1)]
        if any(x % n == 0 for x in d):
            continue
        last = (-sum(d)) % n
        # pad the closing exponent so it stays positive and not 0 mod n
        last += n * rng.randint(1, 3)
        d.append(last)
        if last % n == 0:
            continue
        if math.gcd(math.gcd(*d), n) != 1:
            continue
        return validate(n, d)


def random_word(rng: random.Random, rank: int, length: int) -> Word:
    sylls = [(rng.randint(1, rank), rng.choice([-1, 1]) * rng.randint(1, 2))
             for _ in range(length)]
    return Word.make(rank, sylls)


@pytest.fixture
def rng():
    return random.Random(0xC0FFEE)
