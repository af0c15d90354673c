"""Exchange observables on the two-particle internal space and the detection verdict."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .grading import GradingVector, grade_add
from .oscillator import STATE_GRADINGS, build_model, TwoParticleSpace, get_assignment, two_particle_space

__all__ = [
    "EIGEN_TOL",
    "ExchangeObservable",
    "AdmissibilityReport",
    "Verdict",
    "DetectionResult",
    "exchange_matrices",
    "build_x_s",
    "build_x_t",
    "build_x_u",
    "build_x_star",
    "standard_observables",
    "two_particle_gradings",
    "grading_preserved",
    "admissibility_check",
    "w_eigenvalues",
    "detect",
    "energy_commutator",
]

EIGEN_TOL = 1e-9


def _swap(i: int, j: int) -> np.ndarray:
    m = np.zeros((4, 4))
    m[i - 1, j - 1] = m[j - 1, i - 1] = 1.0
    return m


def exchange_matrices() -> dict[str, np.ndarray]:
    """``X11``, ``X10``, ``X01``: each swaps the two nonzero sectors it does not name."""
    return {"X11": _swap(3, 4), "X10": _swap(2, 4), "X01": _swap(2, 3)}


@dataclass(frozen=True, eq=False)
class ExchangeObservable:
    name: str
    matrix: np.ndarray = field(repr=False)
    grading: GradingVector

    @property
    def is_hermitian(self) -> bool:
        return bool(np.allclose(self.matrix, self.matrix.conj().T, rtol=0.0, atol=1e-14))


def _xx(key: str, name: str) -> ExchangeObservable:
    x = exchange_matrices()[key]
    return ExchangeObservable(name, np.kron(x, x), GradingVector.parse(key[1:]))


def build_x_s() -> ExchangeObservable:
    return _xx("X10", "X_s")


def build_x_t() -> ExchangeObservable:
    return _xx("X01", "X_t")


def build_x_u() -> ExchangeObservable:
    return _xx("X11", "X_u")


def build_x_star() -> ExchangeObservable:
    m = build_x_s().matrix + build_x_t().matrix + build_x_u().matrix
    return ExchangeObservable("X_*", m, GradingVector.parse("00"))


def standard_observables() -> list[ExchangeObservable]:
    return [build_x_s(), build_x_t(), build_x_u(), build_x_star()]


def two_particle_gradings() -> list[GradingVector]:
    """Total grading of ``e_x (x) e_y`` in the ``v_i`` order."""
    return [grade_add(a, b) for a in STATE_GRADINGS for b in STATE_GRADINGS]


def grading_preserved(matrix: np.ndarray, atol: float = 1e-14) -> bool:
    """True iff the operator maps every total-grading sector into itself."""
    g = two_particle_gradings()
    mask = np.array([[a == b for b in g] for a in g])
    return bool(np.all(np.abs(np.asarray(matrix)[~mask]) <= atol))


@dataclass
class AdmissibilityReport:
    observable: str
    invariant: dict[str, bool]
    hermitian: bool
    graded_00: bool
    epsilon_eigenvalue: dict[str, dict[str, float | None]]
    epsilon_ok: dict[str, bool]
    strict: bool = False

    @property
    def requirements(self) -> dict[str, bool]:
        return {
            "i_invariant_subspace": all(self.invariant.values()),
            "ii_hermitian": self.hermitian,
            "iii_00_graded": self.graded_00,
            "iv_epsilon_eigenvalue": all(self.epsilon_ok.values()),
        }

    @property
    def passed(self) -> bool:
        return all(self.requirements.values())

    def as_dict(self) -> dict:
        return {
            "observable": self.observable,
            "strict": self.strict,
            "requirements": self.requirements,
            "passed": self.passed,
            "w_eigenvalues": self.epsilon_eigenvalue,
        }


def _eigenvalue_on(matrix: np.ndarray, vec: np.ndarray, tol: float) -> float | None:
    """``<v|M|v>`` when ``v`` is an eigenvector of ``M``, else ``None``."""
    image = matrix @ vec
    lam = complex(np.vdot(vec, image))
    if np.linalg.norm(image - lam * vec) > tol or abs(lam.imag) > tol:
        return None
    return float(lam.real)


def _maps_into(matrix: np.ndarray, space: TwoParticleSpace, tol: float) -> bool:
    p = space.projector()
    image = matrix @ space.basis.T
    return bool(np.max(np.abs(p @ image - image), initial=0.0) <= tol)


def admissibility_check(obs: ExchangeObservable, spaces: TwoParticleSpace | list[TwoParticleSpace] | None = None,
                        strict: bool = False, tol: float = EIGEN_TOL) -> AdmissibilityReport:
    """Check the four observable requirements.

    (i) the observable maps each supplied space into itself (default: the
    bosonic and the parabosonic space); (ii) hermiticity; (iii) it is
    00-graded as a two-particle operator; (iv) every W state is an
    eigenvector with eigenvalue ``0`` or its ``epsilon``, and at least one W
    state shows ``epsilon``.  With ``strict`` every W state must show
    ``epsilon``.
    """
    if spaces is None:
        spaces = [two_particle_space("boson"), two_particle_space("paraboson")]
    elif isinstance(spaces, TwoParticleSpace):
        spaces = [spaces]
    m = np.asarray(obs.matrix)
    if m.shape != (16, 16):
        raise ValueError(f"observable {obs.name!r} is {m.shape}, expected (16, 16)")
    invariant, eigen, ok = {}, {}, {}
    for sp in spaces:
        key = sp.label
        invariant[key] = _maps_into(m, sp, tol)
        vals = {w: _eigenvalue_on(m, sp.vector(w), tol) for w in sp.w_labels}
        eigen[key] = vals
        good = bool(vals)
        shows_eps = False
        for w, lam in vals.items():
            eps = sp.epsilon.get(w)
            if lam is None or eps is None:
                good = False
                continue
            hit = abs(lam - eps) <= tol
            shows_eps |= hit
            if not hit and (strict or abs(lam) > tol):
                good = False
        ok[key] = good and shows_eps
    return AdmissibilityReport(obs.name, invariant, obs.is_hermitian, grading_preserved(m), eigen, ok, strict)


class Verdict(str, Enum):
    BOSON = "Boson"
    PARABOSON = "Paraboson"
    INDETERMINATE = "Indeterminate"


@dataclass
class DetectionResult:
    verdict: Verdict
    epsilon: int | None
    eigenvalues: dict[str, float | None]
    sample: str
    state_count: int = 0
    reference: str | None = None
    reference_epsilon: int | None = None

    def as_dict(self) -> dict:
        out = {
            "verdict": self.verdict.value,
            "epsilon": self.epsilon,
            "sample": self.sample,
            "state_count": self.state_count,
            "w_eigenvalues": self.eigenvalues,
        }
        if self.reference is not None:
            out["reference"] = self.reference
            out["reference_epsilon"] = self.reference_epsilon
            out["relative"] = None if self.epsilon is None or self.reference_epsilon is None else (
                "same" if self.epsilon == self.reference_epsilon else "opposite")
        return out


def w_eigenvalues(space: TwoParticleSpace, obs: ExchangeObservable | None = None,
                  tol: float = EIGEN_TOL) -> dict[str, float | None]:
    """X_* eigenvalue on each stored W vector, found by overlap."""
    m = (obs or build_x_star()).matrix
    return {w: _eigenvalue_on(m, space.vector(w), tol) for w in space.w_labels}


def _sign_of(vals: dict[str, float | None], tol: float) -> int | None:
    if not vals or any(v is None for v in vals.values()):
        return None
    if all(abs(v - 1.0) <= tol for v in vals.values()):
        return 1
    if all(abs(v + 1.0) <= tol for v in vals.values()):
        return -1
    return None


def _as_space(x: TwoParticleSpace | str) -> TwoParticleSpace:
    return two_particle_space(get_assignment(x)) if isinstance(x, str) else x


def detect(sample: TwoParticleSpace | str, reference: TwoParticleSpace | str | None = None,
           tol: float = EIGEN_TOL) -> DetectionResult:
    """Boson/paraboson verdict from the X_* eigenvalue on the W states.

    Without a reference, ``+1`` reads as Boson and ``-1`` as Paraboson.  With
    a reference the first (calibration) run fixes the labels: the reference
    is called Boson and the sample is Boson when its sign agrees with the
    reference, Paraboson when it is opposite.
    """
    sp = _as_space(sample)
    if not sp.w_labels:
        raise ValueError(f"space {sp.label!r} has no W states to measure")
    vals = w_eigenvalues(sp, tol=tol)
    eps = _sign_of(vals, tol)
    ref_name = ref_eps = None
    if reference is None:
        verdict = {1: Verdict.BOSON, -1: Verdict.PARABOSON}.get(eps, Verdict.INDETERMINATE)
    else:
        ref = _as_space(reference)
        if not ref.w_labels:
            raise ValueError(f"reference space {ref.label!r} has no W states to measure")
        ref_name = ref.label
        ref_eps = _sign_of(w_eigenvalues(ref, tol=tol), tol)
        if eps is None or ref_eps is None:
            verdict = Verdict.INDETERMINATE
        else:
            verdict = Verdict.BOSON if eps == ref_eps else Verdict.PARABOSON
    return DetectionResult(verdict, eps, vals, sp.label, sp.dim, ref_name, ref_eps)


def energy_commutator(space: TwoParticleSpace, obs: ExchangeObservable | None = None,
                      labels: list[str] | None = None) -> float:
    """Largest entry of ``[X, Delta(H)]`` compressed to some of the space's states.

    ``H`` is the Fock-level-0 internal Hamiltonian; ``labels`` picks the
    states (default: all of them).  On the W states the commutator vanishes.
    On the full ten-state spaces it does not, because ``X_s`` and ``X_t``
    swap internal components of different energy.
    """
    h = build_model(1).hamiltonian[:4, :4]
    h2 = np.kron(h, np.eye(4)) + np.kron(np.eye(4), h)
    m = (obs or build_x_star()).matrix
    rows = [space.labels.index(l) for l in labels] if labels is not None else slice(None)
    b = space.basis[rows]
    comm = b.conj() @ (m @ h2 - h2 @ m) @ b.T
    return float(np.max(np.abs(comm), initial=0.0))
