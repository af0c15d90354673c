from fractions import Fraction

import numpy as np
import pytest

from paragrade import hopf
from paragrade.grading import DimensionError, GradedStructureKind as K
from paragrade.hopf import Alphabet, OperatorWord as W, TensorWord as T

GENS = {"H": "00", "Q1": "10", "Q2": "01", "Z": "11"}


@pytest.fixture(params=[K.Z2XZ2_SUPER, K.Z2XZ2_LIE])
def alph(request):
    return Alphabet.of(request.param, GENS)


def test_unit_and_generator_coproduct(alph):
    assert hopf.coproduct(W.unit(alph)) == T.unit(alph, 2)
    d = hopf.coproduct(W.gen(alph, "Q1"))
    assert d == T.simple(alph, (), ("Q1",)) + T.simple(alph, ("Q1",), ())
    assert hopf.counit(W.gen(alph, "Q1")) == 0 and hopf.counit(W.unit(alph, 3)) == 3


@pytest.mark.parametrize("kind,g,h,sign", [
    (K.Z2XZ2_SUPER, "Q1", "Q1", -1),   # 10.10 = 1
    (K.Z2XZ2_SUPER, "Q1", "Q2", 1),    # 10.01 = 0
    (K.Z2XZ2_LIE, "Q1", "Q2", -1),     # 10.01 = 1 in the Lie form
    (K.Z2XZ2_LIE, "Q1", "Q1", 1),
    (K.Z2XZ2_SUPER, "Z", "Q2", -1),
    (K.Z2XZ2_SUPER, "H", "Z", 1),
])
def test_two_letter_coproduct(kind, g, h, sign):
    a = Alphabet.of(kind, GENS)
    expected = (T.simple(a, (), (g, h)) + T.simple(a, (g,), (h,))
                + T.simple(a, (h,), (g,)).scale(sign) + T.simple(a, (g, h), ()))
    assert hopf.coproduct(W.gen(a, g, h)) == expected


def test_braided_product_sign(alph):
    x = T.simple(alph, (), ("Q1",))
    y = T.simple(alph, ("Z",), ())
    e = alph.eps(("Q1",), ("Z",))
    assert x * y == T.simple(alph, ("Z",), ("Q1",)).scale((-1) ** e)
    assert y * x == T.simple(alph, ("Z",), ("Q1",))


def test_coproduct_is_multiplicative(alph):
    words = [w for w in hopf.all_words(alph, 2)]
    for u in words:
        for v in words[:8]:
            wu, wv = W(alph, {u: 1}), W(alph, {v: 1})
            assert hopf.coproduct(wu * wv) == hopf.coproduct(wu) * hopf.coproduct(wv)


def test_antipode_examples(alph):
    assert hopf.antipode(W.gen(alph, "Q1")) == W.gen(alph, "Q1", coeff=-1)
    assert hopf.antipode(W.unit(alph)) == W.unit(alph)
    s = hopf.antipode(W.gen(alph, "Q1", "Q2"))
    e = alph.eps(("Q1",), ("Q2",))
    assert s == W.gen(alph, "Q2", "Q1", coeff=(-1) ** e)


def test_antipode_is_braided_antihomomorphism(alph):
    for u in hopf.all_words(alph, 2):
        for v in hopf.all_words(alph, 1):
            wu, wv = W(alph, {u: 1}), W(alph, {v: 1})
            lhs = hopf.antipode(wu * wv)
            rhs = (hopf.antipode(wv) * hopf.antipode(wu)).scale((-1) ** alph.eps(u, v))
            assert lhs == rhs


def test_axioms_hold_exactly(alph):
    fails = hopf.axiom_failures(alph, max_len=3)
    assert all(v == [] for v in fails.values()), fails


def test_unbraided_antipode_fails(alph, monkeypatch):
    # negative control: plain reversal with S(g) = -g breaks the antipode law
    def naive(w):
        return W(w.alphabet, {k[::-1]: c * (-1) ** len(k) for k, c in w.terms.items()})
    monkeypatch.setattr(hopf, "antipode", naive)
    fails = hopf.axiom_failures(alph, max_len=2)
    assert fails["antipode_left"] and fails["coassociativity"] == []


@pytest.mark.parametrize("n", [1, 2, 3])
def test_n_fold_left_equals_right(alph, n):
    w = W.gen(alph, "Q1", "Z", "Q2")
    left, right = hopf.n_fold_coproduct(w, n), hopf.n_fold_coproduct(w, n, side="right")
    assert left == right and left.arity == n + 1
    # three primitive letters spread over n + 1 slots
    assert len(left) == (n + 1) ** 3
    with pytest.raises(ValueError):
        hopf.n_fold_coproduct(w, 0)


def test_braid_is_involution(alph):
    t = T(alph, {(u, v): Fraction(i + 1) for i, (u, v) in
                 enumerate((u, v) for u in hopf.all_words(alph, 1) for v in hopf.all_words(alph, 1))})
    assert hopf.braid(hopf.braid(t)) == t
    assert hopf.braid(T.simple(alph, ("Q1",), ("Z",))) == \
        T.simple(alph, ("Z",), ("Q1",)).scale((-1) ** alph.eps(("Q1",), ("Z",)))
    with pytest.raises(DimensionError):
        hopf.braid(t, 1)


def test_represent_and_koszul():
    a = Alphabet.of("z2", {"f": "1"})
    f = np.array([[0, 0], [1, 0]])
    r = hopf.Representation({"f": f}, basis_gradings=["0", "1"])
    d = hopf.coproduct(W.gen(a, "f"))
    np.testing.assert_array_equal(hopf.represent(d, r).real, np.kron(np.eye(2), f) + np.kron(f, np.eye(2)))
    # with Koszul signs represent is multiplicative for the braided product
    ff = hopf.coproduct(W.gen(a, "f", "f"))
    dk = hopf.represent(d, r, koszul=True)
    np.testing.assert_allclose(hopf.represent(ff, r, koszul=True), dk @ dk)
    with pytest.raises(ValueError):
        hopf.represent(d, hopf.Representation({"f": f}), koszul=True)


def test_representation_errors():
    with pytest.raises(DimensionError):
        hopf.Representation({"a": np.eye(2), "b": np.eye(3)})
    r = hopf.Representation({"a": np.eye(2)})
    with pytest.raises(KeyError):
        r.word_matrix(("b",))


def test_parse_word_expression(alph):
    w = hopf.parse_word_expression("2*Q1*Q2 - Z + 1/2*1", alph)
    assert w == W.gen(alph, "Q1", "Q2", coeff=2) - W.gen(alph, "Z") + W.unit(alph, Fraction(1, 2))
    assert hopf.parse_word_expression("Q1 Q1", alph) == W.gen(alph, "Q1", "Q1")
    with pytest.raises(KeyError):
        hopf.parse_word_expression("X", alph)
    with pytest.raises(ValueError):
        hopf.parse_word_expression("  ", alph)


def test_alphabet_validation():
    with pytest.raises(DimensionError):
        Alphabet.of("z2", {"g": "10"})
    with pytest.raises(KeyError):
        W.gen(Alphabet.of("z2", {"g": "1"}), "h")


def test_mixed_arity_rejected(alph):
    with pytest.raises(DimensionError):
        T(alph, {(("Q1",),): 1, ((), ("Q1",)): 1})
    with pytest.raises(DimensionError):
        T.unit(alph, 2) + T.unit(alph, 3)


def test_tensor_json(alph):
    d = hopf.coproduct(W.gen(alph, "Q1", "Q2")).to_json()
    assert d["arity"] == 2 and d["generators"]["Q1"] == "10"
    assert {tuple(map(tuple, t["factors"])) for t in d["terms"]} == {
        ((), ("Q1", "Q2")), (("Q1",), ("Q2",)), (("Q2",), ("Q1",)), (("Q1", "Q2"), ())}
