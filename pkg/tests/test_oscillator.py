import json

import numpy as np
import pytest

from paragrade import oscillator as osc
from paragrade.exact import QSqrt2
from paragrade.grading import GradedStructureKind as K, GradingVector

EXPECTED_LABELS = ["boson", "fermion", "z2-odd-11", "z2-odd-10", "z2-odd-11-10", "z2-odd-10-01",
                   "parafermion", "parafermion-exotic-10", "paraboson"]


@pytest.fixture(scope="module")
def model():
    return osc.build_model(4)


def test_single_particle_spectrum(model):
    # level n gives energies n (e1, e2) and n + 1 (e3, e4)
    expected = sorted([n for n in range(5)] * 2 + [n + 1 for n in range(5)] * 2)
    np.testing.assert_allclose(model.single_particle_energies(), expected)
    assert model.dim == 20 and model.index(2, 3) == 10


def test_ladder_operators(model):
    n_op = model.a_dag @ model.a
    np.testing.assert_allclose(np.diag(n_op).real, np.repeat(np.arange(5), 4))
    comm = model.a @ model.a_dag - model.a_dag @ model.a
    # [a, a+] = 1 away from the truncation edge
    np.testing.assert_allclose(comm[:16, :16], np.eye(16), atol=1e-12)
    np.testing.assert_allclose(model.a_dag, model.a.conj().T)


def test_f_operators():
    f = osc.f_matrices()
    for k in osc.CREATION_OPERATORS:
        assert np.all(f[k + "_dag"] @ f[k + "_dag"] == 0)
        np.testing.assert_array_equal(f[k], f[k + "_dag"].T)
    vac = np.array([1, 0, 0, 0])
    assert list(f["f11_dag"] @ vac) == [0, 1, 0, 0]
    assert list(f["f10_dag"] @ vac) == [0, 0, 1, 0]
    assert list(f["f01_dag"] @ vac) == [0, 0, 0, 1]


def test_build_model_validation():
    for bad in (0, -1, 2.5):
        with pytest.raises(ValueError):
            osc.build_model(bad)


def test_nine_assignments():
    got = osc.enumerate_assignments()
    assert [a.label for a in got] == EXPECTED_LABELS
    assert len({a.canonical_signature() for a in got}) == 9


def test_candidates_and_dedupe():
    groups = osc.dedupe_assignments(osc._candidate_assignments())
    assert sum(len(v) for v in groups.values()) == 8 + 6 + 6
    # the f10 <-> f01 relabeling keeps an assignment in its group
    a = osc.get_assignment("z2-odd-10")
    swapped = osc.StatisticsAssignment("x", a.kind, {"f11": a.grading_of["f11"],
                                                     "f10": a.grading_of["f01"],
                                                     "f01": a.grading_of["f10"]})
    assert swapped.canonical_signature() == a.canonical_signature()
    assert swapped.signature() != a.signature()


@pytest.mark.parametrize("label,sig", [
    ("boson", (0, 0, 0, 0, 0, 0)),
    ("fermion", (1, 1, 1, 1, 1, 1)),
    ("paraboson", (0, 1, 1, 0, 1, 0)),
    ("parafermion", (0, 1, 1, 1, 0, 1)),
])
def test_signatures(label, sig):
    assert osc.get_assignment(label).signature() == sig


def test_sign_matrix():
    s = osc.get_assignment("paraboson").sign_matrix()
    np.testing.assert_array_equal(s, s.T)
    assert s[0].tolist() == [1, 1, 1, 1]
    assert s[2, 3] == -1 and s[2, 2] == 1  # 10.01 = 1 in the Lie form


def test_unknown_assignment():
    with pytest.raises(KeyError, match="known"):
        osc.get_assignment("anyon")
    with pytest.raises(ValueError):
        osc.StatisticsAssignment("x", K.Z2_SUPER, {"f11": "1"})


def _copy_fixture(tmp_path, edit):
    src = osc.fixture_dir() / "assignments.json"
    data = json.loads(src.read_text())
    edit(data)
    (tmp_path / "assignments.json").write_text(json.dumps(data))


def test_fixture_override_and_validation(tmp_path, monkeypatch):
    def rename(d):
        d["assignments"][0]["label"] = "plain-boson"
    _copy_fixture(tmp_path, rename)
    monkeypatch.setenv("PARAGRADE_FIXTURES", str(tmp_path))
    assert osc.enumerate_assignments()[0].label == "plain-boson"

    bad = tmp_path / "bad"
    bad.mkdir()
    def corrupt(d):
        d["assignments"][8]["signature"] = [0, 0, 0, 0, 0, 1]
    _copy_fixture(bad, corrupt)
    monkeypatch.setenv("PARAGRADE_FIXTURES", str(bad))
    with pytest.raises(ValueError, match="disagrees"):
        osc.enumerate_assignments()


def test_fixture_missing_group_gets_placeholder(tmp_path, monkeypatch):
    def drop(d):
        d["assignments"] = d["assignments"][:-1]
    _copy_fixture(tmp_path, drop)
    monkeypatch.setenv("PARAGRADE_FIXTURES", str(tmp_path))
    labels = [a.label for a in osc.enumerate_assignments()]
    assert len(labels) == 9 and labels[-1].startswith("unlabelled-")


@pytest.mark.parametrize("label,eps", [("boson", 1), ("paraboson", -1)])
def test_two_particle_states(label, eps):
    sp = osc.two_particle_space(label)
    assert sp.dim == 10 and sp.orthonormality_error() < 1e-15
    assert sp.w_labels == ["W_11", "W_10", "W_01"] and sp.common_epsilon == eps
    r = QSqrt2(1) / QSqrt2(0, 1)
    w = sp.exact_vector("W_11")
    assert w[11] == r and w[14] == r * eps and sum(x != 0 for x in w) == 2
    assert sp.exact_vector("U_00,C")[10] == 1


def test_fermion_space_is_smaller():
    sp = osc.two_particle_space("fermion")
    # odd components are excluded from the diagonal: only e1 e1 survives
    assert sp.dim == 7 and "U_00,B" not in sp.labels and sp.common_epsilon == -1


def test_states_match_pair_space():
    for a in osc.enumerate_assignments():
        sp = osc.two_particle_space(a)
        pair = osc.braided_pair_space(a.sign_matrix())
        assert pair.shape[1] == sp.dim
        np.testing.assert_allclose(sp.projector(), pair @ pair.T, atol=1e-14)


def test_space_json_round_trip():
    sp = osc.two_particle_space("paraboson")
    back = osc.TwoParticleSpace.from_dict(json.loads(json.dumps(sp.as_dict())))
    assert back.label == "paraboson" and back.labels == sp.labels
    assert back.exact_basis == sp.exact_basis and back.epsilon == sp.epsilon
    np.testing.assert_array_equal(back.basis, sp.basis)
    d = sp.as_dict()
    d["assignment"] = "mystery"
    assert osc.TwoParticleSpace.from_dict(d).label == "custom"
    with pytest.raises(ValueError):
        osc.TwoParticleSpace.from_dict({**d, "format": "other/1"})


def test_space_shape_validation():
    with pytest.raises(ValueError):
        osc.TwoParticleSpace(None, ["a"], np.zeros((1, 4)), {})


@pytest.mark.parametrize("label,levels", [
    ("boson", {0: 3, 1: 4, 2: 3}),
    ("paraboson", {0: 3, 1: 4, 2: 3}),
    ("parafermion", {0: 3, 1: 4, 2: 1}),
    ("fermion", {0: 2, 1: 4, 2: 1}),
])
def test_internal_spectra(label, levels, model):
    rep = osc.spectrum(osc.two_particle_space(label), model, fock_levels=1)
    assert rep.levels == levels and rep.additive and rep.dim == sum(levels.values())


def test_fock_spectrum_additive_and_degenerate():
    model = osc.build_model(8)
    b = osc.spectrum(osc.two_particle_space("boson"), model)
    p = osc.spectrum(osc.two_particle_space("paraboson"), model)
    assert b.additive and p.additive and b.fock_levels == 7
    assert b.multiset() == p.multiset()
    # 28 single-particle states: 28 * 29 / 2 symmetric pairs
    assert b.dim == 406
    d = b.as_dict()
    assert d["levels"][0] == {"energy": 0, "multiplicity": 3}


def test_spectrum_errors(model):
    sp = osc.two_particle_space("boson", model)
    with pytest.raises(ValueError, match="nmax"):
        osc.spectrum(sp, osc.build_model(3))
    with pytest.raises(ValueError):
        osc.spectrum(sp, model, fock_levels=99)
    custom = osc.TwoParticleSpace(None, sp.labels, sp.basis, sp.epsilon)
    with pytest.raises(ValueError):
        osc.spectrum(custom, model)


def test_bin_energies():
    assert osc.bin_energies([1.0, 1.0 + 1e-12, 2.0]) == {1.0: 2, 2.0: 1}
    assert osc.bin_energies([]) == {}


@pytest.mark.parametrize("label", ["boson", "paraboson", "fermion"])
def test_three_particles(label):
    e, single = osc.n_particle_energies(osc.get_assignment(label), osc.build_model(2), 3)
    sums = np.add.outer(np.add.outer(single, single), single).ravel()
    assert len(e) > 0
    assert np.all(np.min(np.abs(e[:, None] - sums[None, :]), axis=1) < 1e-10)
    with pytest.raises(ValueError):
        osc.n_particle_energies(osc.get_assignment(label), osc.build_model(2), 1)


def test_three_bosons_count():
    e, _ = osc.n_particle_energies(osc.get_assignment("boson"), osc.build_model(2), 3)
    assert len(e) == 20  # C(4 + 2, 3)


def test_alphabet_gradings():
    a = osc.get_assignment("paraboson").alphabet()
    assert a.kind is K.Z2XZ2_LIE
    assert a.gradings["f11_dag"] == GradingVector.parse("11")
