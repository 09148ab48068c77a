import pytest

from barkerkit.seqcore import BinarySequence, extend_strong_symmetric


def every_sequence(n):
    for x in range(1 << n):
        yield BinarySequence(n, x)


def every_strong_symmetric(n):
    for h in range(1 << (n // 2)):
        yield extend_strong_symmetric(BinarySequence(n // 2, h))


def seq(*entries):
    return BinarySequence.from_entries(entries)


@pytest.fixture
def s4():
    return seq(1, 1, 1, -1)


@pytest.fixture
def s8():
    return seq(1, 1, 1, 1, 1, -1, 1, -1)


BARKER13 = (1, 1, 1, 1, 1, -1, -1, 1, 1, -1, 1, -1, 1)
