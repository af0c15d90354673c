import itertools

import pytest
from hypothesis import given, strategies as st

from paragrade.grading import (
    DimensionError,
    GradedStructureKind as K,
    GradingVector,
    UnsupportedStructureError,
    all_gradings,
    bracket_sign,
    commutation_table,
    grade_add,
    grade_sum,
    has_fermionic_sector,
    inner_product,
    sectors,
)

KINDS = list(K)


def g(s):
    return GradingVector.parse(s)


def test_inner_product_examples():
    assert inner_product(K.Z2XZ2_LIE, "10", "01") == 1
    assert inner_product(K.Z2XZ2_SUPER, "11", "11") == 0
    for kind in KINDS:
        zero = GradingVector.zero(kind.arity)
        for b in sectors(kind):
            assert inner_product(kind, zero, b) == 0


def test_bracket_sign_examples():
    assert bracket_sign(K.Z2XZ2_SUPER, "10", "01") == 1
    assert bracket_sign(K.Z2XZ2_LIE, "10", "10") == 1
    assert bracket_sign(K.Z2_SUPER, "1", "1") == -1


def test_grade_add_examples():
    assert grade_add("10", "01") == g("11")
    assert grade_add("1", "1") == g("0")
    assert grade_add("11", "11") == g("00")


def test_tables_bit_exact():
    assert commutation_table(K.Z2_SUPER) == [[0, 0], [0, 1]]
    assert commutation_table(K.Z2XZ2_SUPER) == [
        [0, 0, 0, 0], [0, 1, 0, 1], [0, 0, 1, 1], [0, 1, 1, 0]]
    assert commutation_table(K.Z2XZ2_LIE) == [
        [0, 0, 0, 0], [0, 0, 1, 1], [0, 1, 0, 1], [0, 1, 1, 0]]


def test_sector_order_fixed():
    assert [str(s) for s in sectors("z2z2-super")] == ["00", "10", "01", "11"]
    assert [str(s) for s in sectors("z2")] == ["0", "1"]


@pytest.mark.parametrize("kind", KINDS)
def test_table_matches_inner_product(kind):
    secs = sectors(kind)
    table = commutation_table(kind)
    for i, a in enumerate(secs):
        for j, b in enumerate(secs):
            assert table[i][j] == inner_product(kind, a, b)
            assert inner_product(kind, a, b) == inner_product(kind, b, a)


def test_super_subtable_is_one_bit_table():
    t = commutation_table(K.Z2XZ2_SUPER)
    assert [[t[i][j] for j in (0, 1)] for i in (0, 1)] == commutation_table(K.Z2_SUPER)


def test_lie_antisymmetric_form_agrees_mod_2():
    for a, b in itertools.product(sectors(K.Z2XZ2_LIE), repeat=2):
        signed = a.bits[0] * b.bits[1] - a.bits[1] * b.bits[0]
        assert inner_product(K.Z2XZ2_LIE, a, b) == signed % 2


def test_fermionic_predicate():
    assert has_fermionic_sector(K.Z2_SUPER)
    assert has_fermionic_sector(K.Z2XZ2_SUPER)
    assert not has_fermionic_sector(K.Z2XZ2_LIE)


def test_spin_composition_remark():
    # two fermionic (odd) objects compose to a bosonic one; boson + fermion stays fermionic
    assert grade_add("1", "1") == g("0")
    assert grade_add("0", "1") == g("1")


def test_errors():
    with pytest.raises(DimensionError):
        inner_product(K.Z2_SUPER, "10", "01")
    with pytest.raises(DimensionError):
        grade_add("1", "10")
    with pytest.raises(ValueError):
        GradingVector((0, 2))
    with pytest.raises(DimensionError):
        GradingVector(())
    with pytest.raises(UnsupportedStructureError):
        K.parse("z2z2z2")
    with pytest.raises(UnsupportedStructureError):
        K.for_arity(3)


def test_three_bit_vectors_representable():
    vs = all_gradings(3)
    assert len(vs) == 8 and len(set(vs)) == 8
    assert grade_sum(vs, 3).is_zero()


def test_parse_forms():
    assert g("10") == GradingVector((1, 0)) == GradingVector.parse([1, 0])
    assert GradingVector.parse(1) == g("1")
    assert str(g("01")) == "01"
    assert K.parse("Z2xZ2_Lie") is K.Z2XZ2_LIE


two_bit = st.tuples(st.integers(0, 1), st.integers(0, 1)).map(GradingVector)


@given(two_bit, two_bit, two_bit)
def test_grade_add_group_laws(a, b, c):
    assert grade_add(grade_add(a, b), c) == grade_add(a, grade_add(b, c))
    assert grade_add(a, b) == grade_add(b, a)
    assert grade_add(a, a).is_zero()


@given(two_bit, two_bit, two_bit)
def test_two_bit_forms_are_bicharacters(a, b, c):
    for kind in (K.Z2XZ2_SUPER, K.Z2XZ2_LIE):
        assert inner_product(kind, grade_add(a, b), c) == (
            inner_product(kind, a, c) + inner_product(kind, b, c)) % 2
