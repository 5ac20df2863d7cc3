"""Shared generators and independent oracles for the test suite."""
import random

import pytest

from blobshift.patterns import BINARY, Pattern, pad


def random_pattern_1d(rng: random.Random, length: int = 40,
                      density: float = 0.4) -> Pattern:
    word = "".join("1" if rng.random() < density else "0"
                   for _ in range(length))
    return Pattern.from_word(word)


def random_pattern_2d(rng: random.Random, side: int = 12,
                      density: float = 0.35) -> Pattern:
    values = {(x, y): ("1" if rng.random() < density else "0")
              for x in range(side) for y in range(side)}
    return Pattern(BINARY, values)


def random_padded_pattern(rng: random.Random, r: int = 3) -> Pattern:
    if rng.random() < 0.5:
        core = random_pattern_1d(rng)
    else:
        core = random_pattern_2d(rng)
    return pad(core, r)


@pytest.fixture
def rng() -> random.Random:
    return random.Random(0xB10B)
