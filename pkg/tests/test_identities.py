from __future__ import annotations

import pytest

from hkverify.identities import lemma_a1, lemma_a1_closed, lemma_a2, lemma_a2_closed, sweep
from hkverify.lefschetz import RangeError


def test_a1_examples():
    for n in range(10):
        for k in range(n // 2 + 1):
            assert lemma_a1(n, k, k) == 1
    assert lemma_a1(6, 2, 1) == 0


def test_a2_example():
    assert lemma_a2(4, 2, 0) == 84 == lemma_a2_closed(4, 2, 0)


def test_ranges():
    with pytest.raises(RangeError):
        lemma_a1(3, 2, 0)
    with pytest.raises(RangeError):
        lemma_a1(6, 1, 2)
    with pytest.raises(RangeError):
        lemma_a2(3, 4)
    with pytest.raises(RangeError):
        lemma_a2(5, 3, 2)


def test_sweep_small():
    r = sweep(12)
    assert r["passed"] and not r["failures"]
    assert r["a1_cases"] == sum((n // 2 + 1) * (n // 2 + 2) // 2 for n in range(13))


def test_closed_a1_is_indicator():
    assert lemma_a1_closed(9, 3, 3) == 1
    assert lemma_a1_closed(9, 3, 1) == 0
