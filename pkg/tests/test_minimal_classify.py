import itertools
from fractions import Fraction

import numpy as np
import pytest

from paragrade import minimal_classify as mc
from paragrade.grading import GradedStructureKind as K

GRID = list(itertools.product((-1, 0, 1), repeat=6))


@pytest.mark.parametrize("p,ok", [
    ((0, 0, 0, 0, 0, 0), True),
    ((1, 1, 1, 0, 0, 0), True),           # all b vanish
    ((1, 0, 0, 2, 1, 1), True),           # b1 = b2 + b3
    ((1, 0, 0, 1, 1, 1), False),          # d1 (1 - 1 - 1) != 0
    ((0, 0, 0, 5, -3, 7), True),          # abelian fermionic part
    ((1, 1, 0, 1, 0, 0), False),          # d1 b1 != 0
    ((Fraction(1, 3), 0, 0, Fraction(1, 2), Fraction(1, 4), Fraction(1, 4)), True),
])
def test_lie_constraint_oracle(p, ok):
    assert mc.check_lie_constraints(p) is ok
    assert mc.check_lie_jacobi_expander(p) is ok


def test_lie_constraints_match_the_closed_form():
    cons = mc.lie_constraints()
    assert len(cons) == 3
    vals = (2, 3, 5, 7, 11, 13)
    expected = [2 * (7 - 11 - 13), 3 * (11 - 13 - 7), 5 * (13 - 7 - 11)]
    assert [c(vals) for c in cons] == expected


def test_expander_spans_hand_constraints():
    assert mc.same_linear_span(mc.expanded_constraints(mc.lie_algebra()), mc.lie_constraints())
    assert not mc.same_linear_span(mc.lie_constraints()[:2], mc.lie_constraints())


def test_expander_agrees_on_whole_grid():
    for p in GRID:
        assert mc.check_lie_constraints(p) == mc.check_lie_jacobi_expander(p)


def test_super_methods_agree_on_grid():
    for p in itertools.product((-1, 0, 1), repeat=8):
        assert mc.check_super_jacobi(p) == mc.check_super_jacobi(p, method="expander"), p


def test_super_examples():
    # a Heisenberg-like point: only c nonzero with b = a1 + a2 = 0
    assert mc.check_super_jacobi((0, 0, 0, 1, 0, 0, 0, 0))
    assert not mc.check_super_jacobi((1, 0, 0, 1, 0, 0, 0, 0))
    assert not mc.check_super_jacobi((1, 0, 0, 0, 1, 0, 0, 0))   # a1 alpha1 != 0
    assert mc.check_super_jacobi(mc.MinimalSuperalgebraParams(a=(1, -1)))
    with pytest.raises(ValueError):
        mc.check_super_jacobi((0,) * 8, method="guess")


def test_antisymmetry_fill_and_conflict():
    alg = mc.lie_algebra()
    assert alg.basis_bracket("Q1", "H")["Q1"] == -alg.basis_bracket("H", "Q1")["Q1"]
    v = mc.Poly.var(("x",), "x")
    with pytest.raises(ValueError):
        mc.AbstractAlgebra(K.Z2XZ2_LIE, alg.gradings, ("x",),
                           {("H", "Q1"): {"Q1": v}, ("Q1", "H"): {"Q1": v}})


def test_params_round_trip():
    p = mc.MinimalLieAlgebraParams.from_vector((1, 2, 3, 4, 5, 6))
    assert p.d == (1, 2, 3) and p.vector() == (1, 2, 3, 4, 5, 6)
    assert p.as_dict()["b2"] == 5
    s = mc.MinimalSuperalgebraParams.from_vector(range(8))
    assert mc.MinimalSuperalgebraParams.from_vector(s.vector()) == s


@pytest.fixture(scope="module")
def lie_result():
    return mc.enumerate_lie_classes()


@pytest.fixture(scope="module")
def super_result():
    return mc.enumerate_super_classes()


def test_classes_partition_valid_points(lie_result, super_result):
    for r in (lie_result, super_result):
        assert sum(c.orbit_size for c in r.classes) == r.valid_points
        members = [m for c in r.classes for m in c.members]
        assert len(members) == len(set(members)) == r.valid_points


def test_representatives_valid_and_keys_consistent(lie_result):
    for c in lie_result.classes:
        assert mc.check_lie_constraints(list(c.representative.values()))
        for m in c.members:
            assert mc.orbit_key(m, mc.LIE_NORMALIZATION) == c.key


def test_counts_are_stable(lie_result, super_result):
    # measured on the {-1, 0, 1} grid; see the notes on the reference counts
    assert (lie_result.count, len(lie_result.families())) == (15, 10)
    assert (super_result.count, len(super_result.families())) == (30, 21)
    assert lie_result.reference_count == 8 and super_result.reference_count == 21


def test_rescaling_invariance():
    key = mc.orbit_key((1, 0, 0, 2, 1, 1), mc.LIE_NORMALIZATION)
    assert mc.orbit_key((-3, 0, 0, 2, 1, 1), mc.LIE_NORMALIZATION) == key
    assert mc.orbit_key((0, 1, 0, 1, 2, 1), mc.LIE_NORMALIZATION) == key   # S3 relabeling
    assert mc.orbit_key((1, 0, 0, 0, 0, 0), mc.LIE_NORMALIZATION) != key


def test_trivial_normalization_gives_singletons():
    r = mc.enumerate_lie_classes(grid=(0, 1), normalization=mc.TRIVIAL_NORMALIZATION(6))
    assert r.count == r.valid_points
    with pytest.raises(ValueError):
        mc.enumerate_lie_classes(grid=())


def test_free_parameters(lie_result):
    # a parameter is free when every grid value of it keeps the point valid
    zero = next(c for c in lie_result.classes if not c.zero_pattern)
    assert zero.free_parameters == list(mc.LIE_PARAMS)
    for c in lie_result.classes:
        rep = list(c.representative.values())
        for i, name in enumerate(mc.LIE_PARAMS):
            stays = all(mc.check_lie_constraints(rep[:i] + [g] + rep[i + 1:]) for g in (-1, 0, 1))
            assert (name in c.free_parameters) == stays


def test_as_dict_shape(super_result):
    d = super_result.as_dict()
    assert d["class_count"] == 30 and d["family_count"] == 21 and d["matches_reference"] is False
    assert set(d["classes"][0]) == {"representative", "orbit_size", "free_parameters"}


@pytest.mark.parametrize("params,kind", [
    (mc.MinimalLieAlgebraParams(), K.Z2XZ2_LIE),
    (mc.MinimalLieAlgebraParams(d=(1, 0, 0), b=(2, 1, 1)), K.Z2XZ2_LIE),
    (mc.MinimalSuperalgebraParams(a=(1, -1)), K.Z2XZ2_SUPER),
])
def test_realization(params, kind):
    ops = mc.realize_as_matrices(params, seed=0)
    assert len(ops) == 4 and all(np.linalg.norm(o.matrix) > 0.05 for o in ops)
    assert mc.realization_is_consistent(ops, kind)


def test_realization_rejects_invalid():
    with pytest.raises(ValueError):
        mc.realize_as_matrices(mc.MinimalLieAlgebraParams(d=(1, 0, 0), b=(1, 1, 1)))
    with pytest.raises(TypeError):
        mc.realize_as_matrices((0,) * 6)
