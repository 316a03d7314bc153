import pytest

from fermat_prank.appendixsets import SetParams, closed_count, enumerate_count
from fermat_prank.errors import LimitExceededError, ParameterError


@pytest.mark.parametrize("p,count", [(2, 6), (3, 21), (5, 120), (7, 406)])
def test_a1(p, count):
    sp = SetParams("A1", p)
    assert closed_count(sp) == enumerate_count(sp) == count


@pytest.mark.parametrize("which", ["A2", "A3", "A4"])
def test_factored_equals_exhaustive(which):
    for b in range(2, 5):
        for m in (1, 2):
            for n in (1, 2):
                sp = SetParams(which, b, m, n)
                assert enumerate_count(sp) == enumerate_count(sp, exhaustive=True) == closed_count(sp)


@pytest.mark.parametrize("which", ["A2", "A3", "A4"])
def test_closed_matches_enumeration_small(which):
    for b in range(2 if which == "A3" else 1, 8):
        for m in range(1, 4):
            for n in range(1, 4):
                sp = SetParams(which, b, m, n)
                assert closed_count(sp) == enumerate_count(sp), (which, b, m, n)


def test_a2_hand_count():
    # b = 2, m = n = 1: a in {0, 1}, b_0 <= a  ->  1 + 2
    assert closed_count(SetParams("A2", 2, 1, 1)) == 3


@pytest.mark.parametrize(
    "kwargs",
    [dict(which="A5", b=3), dict(which="A1", b=4), dict(which="A3", b=1), dict(which="A2", b=3, m=0)],
)
def test_rejects(kwargs):
    with pytest.raises(ParameterError):
        SetParams(**kwargs)


def test_enumeration_cap():
    with pytest.raises(LimitExceededError):
        enumerate_count(SetParams("A4", 9, 4, 4), exhaustive=True)
