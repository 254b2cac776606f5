from fractions import Fraction

import pytest

from drinfeld import (check_group_report, commutator_check,
                      commutator_closure, dual_numbers, gl2_count, gl2_order,
                      koblitz_local_count, sl2_order, small_field,
                      sl2_unipotent_generation)
from drinfeld.field import FieldError
from drinfeld.matgroups import sl2_set


def test_gl2_order_formula_vs_enumeration():
    for Q in (2, 3, 4, 5, 9, 25):
        assert gl2_count(small_field(Q)) == gl2_order(Q)
    assert gl2_order(5) == 480
    assert gl2_order(3) == 48


def test_small_field_tables_are_fields():
    for Q in (4, 9, 25):
        ring = small_field(Q)
        for x in range(1, Q):
            assert ring.is_unit(x)
            assert ring.mul[x, ring.inv[x]] == 1
    with pytest.raises(FieldError):
        small_field(6)
    with pytest.raises(FieldError):
        small_field(27)  # over the enumeration budget


def test_dual_numbers_units():
    ring = dual_numbers(5)
    assert ring.size == 25
    # u (encoded 5) is nilpotent: u^2 = 0, not a unit
    assert ring.mul[5, 5] == 0
    assert not ring.is_unit(5)
    units = sum(1 for x in range(25) if ring.is_unit(x))
    assert units == 20
    for x in range(25):
        if ring.is_unit(x):
            assert ring.mul[x, ring.inv[x]] == 1


def test_koblitz_local_count_q5():
    count, ratio, normalized = koblitz_local_count(5)
    assert count == 365
    assert ratio == Fraction(365, 480)
    assert normalized == 1 - Fraction(19, 384)


def test_koblitz_local_count_q3():
    count, ratio, normalized = koblitz_local_count(3)
    assert normalized == 1 - Fraction(5, 32)


def test_sl2_unipotent_generation():
    assert sl2_unipotent_generation(5)
    assert sl2_unipotent_generation(9)
    with pytest.raises(ValueError):
        sl2_unipotent_generation(25)


def test_commutator_closure_gl2_f5():
    ring = small_field(5)
    group = commutator_closure(ring)
    assert len(group) == 120
    assert len(group) == sl2_order(5)
    assert group == sl2_set(ring)
    assert commutator_check(ring)


def test_commutator_closure_dual_numbers():
    ring = dual_numbers(5)
    group = commutator_closure(ring)
    assert len(group) == 15000
    assert len(group) == sl2_order(5) * 5 ** 3
    assert group == sl2_set(ring)


def test_group_report_is_green():
    report = check_group_report(5)
    assert report["ok"]
    names = [c["name"] for c in report["checks"]]
    assert "gl2_order" in names and "commutator_check" in names
