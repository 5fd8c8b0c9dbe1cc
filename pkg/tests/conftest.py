from fractions import Fraction

import pytest

from trilam.builder import build
from trilam.chords import Chord


def ch(p, q, r, s) -> Chord:
    return Chord(Fraction(p, q) % 1, Fraction(r, s) % 1)


@pytest.fixture(scope="session")
def build4():
    return build(4)


@pytest.fixture(scope="session")
def build6():
    return build(6)
