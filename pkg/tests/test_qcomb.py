"""Delta-tuple combinatorics and the two routes to the Gaussian factor."""

import math

import pytest

from ikeda_hecke.exact import Laurent
from ikeda_hecke.qcomb import (
    enumerate_deltas,
    gaussian_multinomial,
    inversion_count,
    inversion_sum,
    multinomial,
    multiplicity_signature,
    phi,
    weak_composition_count,
)


def test_enumerate_deltas_examples():
    assert list(enumerate_deltas(2, 1)) == [(0, 0), (0, 1), (1, 1)]
    assert list(enumerate_deltas(2, 0)) == [(0, 0)]
    assert len(list(enumerate_deltas(4, 3))) == math.comb(7, 4)


def test_enumerate_deltas_is_ordered_and_complete():
    for m in range(1, 5):
        for r in range(4):
            tuples = list(enumerate_deltas(m, r))
            assert len(tuples) == math.comb(r + m, m)
            assert tuples == sorted(tuples)
            assert len(set(tuples)) == len(tuples)
            assert all(
                0 <= d[0] and all(a <= b for a, b in zip(d, d[1:])) and d[-1] <= r
                for d in tuples
            )


def test_enumerate_deltas_validation():
    with pytest.raises(ValueError):
        list(enumerate_deltas(0, 1))
    with pytest.raises(ValueError):
        list(enumerate_deltas(2, -1))


def test_multiplicity_signature():
    assert multiplicity_signature((0, 0, 1, 2)) == (2, 1, 1)
    assert multiplicity_signature((0, 0, 0, 0)) == (4,)
    assert multiplicity_signature((0, 1, 1, 2)) == (1, 2, 1)
    with pytest.raises(ValueError):
        multiplicity_signature((1, 0))


def test_phi():
    x = Laurent.term(1, 1)
    assert phi(0) == Laurent.one()
    assert phi(1) == x - 1
    assert phi(2) == x**3 - x**2 - x + 1
    for m in range(1, 7):
        assert phi(m).max_exp() == m * (m + 1) // 2


def test_gaussian_multinomial_examples():
    qinv2 = Laurent.term(1, -2)
    assert gaussian_multinomial((0, 1)) == Laurent.one() + qinv2
    assert gaussian_multinomial((0, 0)) == Laurent.one()
    assert gaussian_multinomial((0, 1, 1, 2)).evaluate(1) == 12


def test_inversion_count():
    assert inversion_count((1, 0)) == 1
    assert inversion_count((0, 1, 1, 2)) == 0
    assert inversion_count((2, 1, 0)) == 3


def test_inversion_sum_examples():
    assert inversion_sum((0, 1)) == Laurent({0: 1, -2: 1})
    assert inversion_sum((0, 0)) == Laurent.one()
    assert inversion_sum((0, 1, 2)) == gaussian_multinomial((0, 1, 2))


def test_weak_composition_count():
    assert weak_composition_count(2, 3) == 6
    assert weak_composition_count(0, 5) == 1
    assert weak_composition_count(3, 4) == 20


def test_gaussian_equals_inversion_sum_small_grid():
    # the full m <= 6 sweep lives in the acceptance suite
    for m in (2, 3, 4):
        for r in (1, 2):
            for delta in enumerate_deltas(m, r):
                assert gaussian_multinomial(delta) == inversion_sum(delta)


def test_gaussian_structure():
    for m in (2, 4):
        for r in (1, 2, 3):
            for delta in enumerate_deltas(m, r):
                gm = gaussian_multinomial(delta)
                assert gm.coefficient(0) == 1
                assert gm.min_exp() >= -2 * (m * (m - 1) // 2)
                for exp, coeff in gm.terms.items():
                    assert exp <= 0 and exp % 2 == 0
                    assert coeff.denominator == 1 and coeff > 0
                    assert coeff <= m ** (-exp // 2)
                sig = multiplicity_signature(delta)
                assert gm.evaluate(1) == multinomial(sig)


def test_rearrangement_count_is_the_multinomial():
    from ikeda_hecke.qcomb import _distinct_rearrangements

    for delta in [(0, 1), (0, 0, 1), (0, 1, 1, 2), (1, 1, 1)]:
        words = list(_distinct_rearrangements(delta))
        assert len(words) == multinomial(multiplicity_signature(delta))
        assert len(set(words)) == len(words)
