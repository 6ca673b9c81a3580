import pytest

from charstack.common import divisors, mobius, num_threads, two_adic_valuation


def test_mobius():
    assert [mobius(n) for n in range(1, 11)] == [1, -1, -1, 0, -1, 1, -1, 0, 0, 1]
    assert (mobius(30), mobius(210), mobius(900)) == (-1, 1, 0)
    assert all(sum(mobius(d) for d in divisors(n)) == 0 for n in range(2, 60))


def test_divisors_and_valuation():
    assert divisors(12) == [1, 2, 3, 4, 6, 12]
    assert [two_adic_valuation(n) for n in (1, 2, 6, 8, 12)] == [0, 1, 1, 3, 2]


def test_num_threads(monkeypatch):
    monkeypatch.delenv("CHARSTACK_NUM_THREADS", raising=False)
    assert num_threads() == 1
    monkeypatch.setenv("CHARSTACK_NUM_THREADS", "4")
    assert num_threads() == 4
    monkeypatch.setenv("CHARSTACK_NUM_THREADS", "0")
    with pytest.raises(ValueError, match=r"positive integer"):
        num_threads()
