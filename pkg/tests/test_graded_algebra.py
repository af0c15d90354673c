import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from paragrade.graded_algebra import (
    GradedOperator,
    check_jacobi,
    check_jacobi_batch,
    closure_check,
    graded_bracket,
    locate_sector,
    random_patterned,
    sector_mask,
    sector_pattern_check,
)
from paragrade.grading import DimensionError, GradedStructureKind as K, GradingVector, bracket_sign, grade_add, sectors
from paragrade.oscillator import f_matrices

F = f_matrices()


def op(label, grading, m):
    return GradedOperator.of(label, grading, m)


def test_two_sector10_operators_anticommute_in_super(rng):
    a, b = random_patterned("10", rng, "a"), random_patterned("10", rng, "b")
    br = graded_bracket(K.Z2XZ2_SUPER, a, b)
    assert br.grading == GradingVector.parse("00")
    np.testing.assert_allclose(br.matrix, a.matrix @ b.matrix + b.matrix @ a.matrix)


def test_self_bracket_vanishes_when_commuting(rng):
    for kind in K:
        for g in sectors(kind):
            if bracket_sign(kind, g, g) == 1:
                a = random_patterned(g, rng, "a")
                assert np.all(graded_bracket(kind, a, a).matrix == 0)


def test_f_dagger_commutator_oracle():
    a = op("f10+", "10", F["f10_dag"])
    b = op("f01+", "01", F["f01_dag"])
    br = graded_bracket(K.Z2XZ2_SUPER, a, b)
    np.testing.assert_array_equal(br.matrix, F["f10_dag"] @ F["f01_dag"] - F["f01_dag"] @ F["f10_dag"])
    assert br.label == "(f10+,f01+)"


def test_bracket_label_and_grading(rng):
    a, b = random_patterned("10", rng, "a"), random_patterned("01", rng, "b")
    br = graded_bracket(K.Z2XZ2_LIE, a, b)
    assert br.grading == GradingVector.parse("11") and br.label == "(a,b)"


@pytest.mark.parametrize("kind", list(K))
def test_graded_antisymmetry(kind, rng):
    for ga, gb in itertools.product(sectors(kind), repeat=2):
        a, b = random_patterned(ga, rng, "a"), random_patterned(gb, rng, "b")
        s = bracket_sign(kind, ga, gb)
        np.testing.assert_allclose(graded_bracket(kind, a, b).matrix,
                                   -s * graded_bracket(kind, b, a).matrix, atol=1e-14)


def test_jacobi_triple_same_operator_is_exact(rng):
    a = random_patterned("11", rng, "a")
    for kind in (K.Z2XZ2_SUPER, K.Z2XZ2_LIE):
        assert check_jacobi(kind, a, a, a).max_residual == 0.0


def test_jacobi_pauli_triple_in_z2():
    sx = np.array([[0, 1], [1, 0]])
    sy = np.array([[0, -1j], [1j, 0]])
    sz = np.diag([1, -1])
    odd1 = op("x", "1", np.kron(sx, np.eye(2)))
    odd2 = op("y", "1", np.kron(sy, np.eye(2)))
    even = op("z", "0", np.kron(sz, np.eye(2)))
    rep = check_jacobi(K.Z2_SUPER, odd1, odd2, even)
    assert rep.passed and rep.triple == ("x", "y", "z")


@pytest.mark.parametrize("kind", list(K))
def test_jacobi_holds_for_random_patterned(kind, rng):
    for ga, gb, gc in itertools.product(sectors(kind), repeat=3):
        ops = [random_patterned(g, rng, n) for g, n in zip((ga, gb, gc), "abc")]
        assert check_jacobi(kind, *ops).max_residual <= 1e-12


def test_wrong_sign_rule_breaks_jacobi(rng):
    # negative control: the Lie-type cyclic signs on super-graded data
    a, b, c = (random_patterned(g, rng, n) for g, n in zip(("10", "10", "01"), "abc"))
    super_ok = check_jacobi(K.Z2XZ2_SUPER, a, b, c).max_residual
    mixed = (graded_bracket(K.Z2XZ2_LIE, a, graded_bracket(K.Z2XZ2_SUPER, b, c)).matrix
             + graded_bracket(K.Z2XZ2_SUPER, b, graded_bracket(K.Z2XZ2_SUPER, c, a)).matrix
             + graded_bracket(K.Z2XZ2_SUPER, c, graded_bracket(K.Z2XZ2_SUPER, a, b)).matrix)
    assert super_ok <= 1e-12 and np.max(np.abs(mixed)) > 1e-3


def test_batch_matches_single(rng):
    kind = K.Z2XZ2_SUPER
    triples = [tuple(random_patterned(g, rng, n) for g, n in zip(gs, "abc"))
               for gs in itertools.product(sectors(kind), repeat=3)]
    batch = check_jacobi_batch(kind, triples)
    single = [check_jacobi(kind, *t).max_residual for t in triples]
    np.testing.assert_allclose(batch, single, atol=1e-14)
    assert check_jacobi_batch(kind, []).shape == (0,)


def test_dimension_errors(rng):
    a = random_patterned("10", rng)
    with pytest.raises(DimensionError):
        graded_bracket(K.Z2XZ2_SUPER, a, op("b", "10", np.eye(2)))
    with pytest.raises(DimensionError):
        graded_bracket(K.Z2_SUPER, a, a)
    with pytest.raises(DimensionError):
        op("bad", "00", np.ones((2, 3)))


def test_sector_patterns():
    assert sector_pattern_check(op("d", "00", np.diag([1, 2, 3, 4])))
    assert not sector_pattern_check(op("ad", "00", np.fliplr(np.eye(4))))
    # f11 dagger has its entry at (2, 1), which sits in the 01 pattern
    assert not sector_pattern_check(op("f11+", "11", F["f11_dag"]))
    assert locate_sector(F["f11_dag"]) == GradingVector.parse("01")
    assert locate_sector(F["f10_dag"]) == GradingVector.parse("10")
    assert locate_sector(F["f01_dag"]) == GradingVector.parse("11")
    assert locate_sector(np.zeros((4, 4))) is None
    assert locate_sector(np.ones((4, 4))) is None
    with pytest.raises(DimensionError):
        sector_pattern_check(op("x", "1", np.eye(4)))


def test_masks_partition_the_matrix():
    total = sum(sector_mask(g).astype(int) for g in sectors("z2z2-super"))
    assert np.all(total == 1)
    np.testing.assert_array_equal(sector_mask("0") | sector_mask("1"), np.ones((4, 4), bool))
    m = sector_mask("10")
    m[0, 0] = True  # returned masks are copies
    assert not sector_mask("10")[0, 0]


def test_pattern_products_add_gradings(rng):
    for ga, gb in itertools.product(sectors("z2z2-super"), repeat=2):
        prod = random_patterned(ga, rng).matrix @ random_patterned(gb, rng).matrix
        assert sector_pattern_check(op("p", grade_add(ga, gb), prod), atol=1e-14)


def test_closure():
    h = op("H", "00", np.diag([1.0, 2, 3, 4]))
    assert closure_check(K.Z2XZ2_SUPER, [h])
    assert closure_check(K.Z2XZ2_SUPER, [])
    a = op("a", "10", F["f10_dag"] + F["f10"])
    b = op("b", "01", F["f01_dag"] + F["f01"])
    # {a, a} is a diagonal projector-like matrix outside span{a, b}
    assert not closure_check(K.Z2XZ2_SUPER, [a, b])


def test_operators_immutable(rng):
    a = random_patterned("00", rng)
    with pytest.raises(ValueError):
        a.matrix[0, 0] = 1


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32 - 1), st.sampled_from(list(K)))
def test_jacobi_property(seed, kind):
    r = np.random.default_rng(seed)
    secs = sectors(kind)
    ops = [random_patterned(secs[r.integers(len(secs))], r, n) for n in "abc"]
    assert check_jacobi(kind, *ops).passed
