"""The 4x4 matrix oscillator, its statistics assignments and two-particle spaces.

Single-particle states are ``|n> (x) e_x`` with a truncated harmonic-oscillator
number basis ``n = 0..nmax`` and internal components ``e_1..e_4``; the flat
index is ``4 * n + (x - 1)``.  The internal vacuum is ``e_1`` and the matrix
raising operators send it to ``e_2`` (``f11``), ``e_3`` (``f10``) and ``e_4``
(``f01``).

Two-particle internal vectors use ``v_i`` (1-based, 16 entries) with
``v_{4(x-1) + y} = e_x (x) e_y``.
"""

from __future__ import annotations

import itertools
import json
import os
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Iterable, Mapping, Sequence

import numpy as np

from . import kernels
from .exact import QSqrt2, exact_sqrt
from .grading import GradedStructureKind, GradingVector, inner_product
from .hopf import Alphabet, OperatorWord, Representation, coproduct, n_fold_coproduct, represent

__all__ = [
    "DEFAULT_NMAX",
    "ENERGY_TOL",
    "CREATION_OPERATORS",
    "STATE_GRADINGS",
    "OscillatorModel",
    "StatisticsAssignment",
    "TwoParticleSpace",
    "SPACE_FORMAT",
    "SpectrumReport",
    "build_model",
    "f_matrices",
    "enumerate_assignments",
    "dedupe_assignments",
    "get_assignment",
    "two_particle_space",
    "braided_pair_space",
    "spectrum",
    "n_particle_energies",
    "fixture_dir",
    "FixtureError",
]

DEFAULT_NMAX = 8
ENERGY_TOL = 1e-9
ADDITIVITY_TOL = 1e-10

CREATION_OPERATORS = ("f11", "f10", "f01")

# Two-bit labels of e_1..e_4 used to name two-particle states (and to grade
# them in the parabosonic theory).
STATE_GRADINGS = tuple(GradingVector.parse(s) for s in ("00", "11", "10", "01"))

_SECTOR_NAME = {1: "11", 2: "10", 3: "01"}  # internal index (0-based) -> sector label


def _unit(i: int, j: int) -> np.ndarray:
    m = np.zeros((4, 4), dtype=np.int64)
    m[i - 1, j - 1] = 1
    return m


def f_matrices() -> dict[str, np.ndarray]:
    """The six 0/1 matrix raising and lowering operators."""
    raising = {"f11": _unit(2, 1), "f10": _unit(3, 1), "f01": _unit(4, 1)}
    out = {f"{k}_dag": v for k, v in raising.items()}
    out.update({k: v.T.copy() for k, v in raising.items()})
    return out


@dataclass(frozen=True, eq=False)
class OscillatorModel:
    nmax: int
    hamiltonian: np.ndarray = field(repr=False)
    a: np.ndarray = field(repr=False)
    a_dag: np.ndarray = field(repr=False)
    f_ops: Mapping[str, np.ndarray] = field(repr=False)
    internal_dim: int = 4

    @property
    def fock_dim(self) -> int:
        return self.nmax + 1

    @property
    def dim(self) -> int:
        return self.fock_dim * self.internal_dim

    def lift(self, internal: np.ndarray) -> np.ndarray:
        """``I_fock (x) internal`` on the single-particle space."""
        return np.kron(np.eye(self.fock_dim), internal)

    def single_particle_energies(self) -> np.ndarray:
        return np.linalg.eigvalsh(self.hamiltonian)

    def index(self, n: int, x: int) -> int:
        """Flat index of ``|n> (x) e_x`` with 1-based ``x``."""
        return 4 * n + (x - 1)


def build_model(nmax: int = DEFAULT_NMAX) -> OscillatorModel:
    if int(nmax) != nmax or nmax < 1:
        raise ValueError(f"Fock cutoff must be an integer >= 1, got {nmax!r}")
    nmax = int(nmax)
    n = np.arange(nmax + 1)
    kinetic = np.diag(2.0 * n + 1.0)  # -d^2/dx^2 + x^2 in the number basis
    shift = np.diag([-1.0, -1.0, 1.0, 1.0])
    ham = 0.5 * (np.kron(kinetic, np.eye(4)) + np.kron(np.eye(nmax + 1), shift))
    lower = np.diag(np.sqrt(n[1:].astype(float)), k=1)  # (x + d/dx)/sqrt 2
    a = np.kron(1j * lower, np.eye(4))
    a_dag = np.kron(-1j * lower.T, np.eye(4))
    return OscillatorModel(nmax, ham, a, a_dag, f_matrices())


# ---------------------------------------------------------------------------
# statistics assignments


def fixture_dir() -> Path:
    override = os.environ.get("PARAGRADE_FIXTURES")
    if override:
        return Path(override)
    return Path(str(resources.files("paragrade") / "fixtures"))


@dataclass(frozen=True)
class StatisticsAssignment:
    label: str
    kind: GradedStructureKind
    grading_of: Mapping[str, GradingVector]

    def __post_init__(self):
        gs = {k: GradingVector.parse(v) for k, v in self.grading_of.items()}
        if set(gs) != set(CREATION_OPERATORS):
            raise ValueError(f"gradings needed for exactly {CREATION_OPERATORS}")
        for k, g in gs.items():
            if g.arity != self.kind.arity:
                raise ValueError(f"{k} grading {g} does not fit {self.kind.value}")
        object.__setattr__(self, "grading_of", gs)

    def __hash__(self):
        return hash((self.label, self.kind, tuple(sorted(self.grading_of.items()))))

    def component_gradings(self) -> list[GradingVector]:
        """Gradings of e_1..e_4 (the vacuum is even)."""
        zero = GradingVector.zero(self.kind.arity)
        return [zero] + [self.grading_of[f] for f in CREATION_OPERATORS]

    def exchange_bit(self, x: str, y: str) -> int:
        return inner_product(self.kind, self.grading_of[x], self.grading_of[y])

    def sign_matrix(self) -> np.ndarray:
        """Exchange signs between internal components e_1..e_4."""
        g = self.component_gradings()
        return np.array([[-1 if inner_product(self.kind, a, b) else 1 for b in g] for a in g],
                        dtype=np.int64)

    def signature(self) -> tuple[int, ...]:
        pairs = itertools.combinations_with_replacement(CREATION_OPERATORS, 2)
        return tuple(self.exchange_bit(x, y) for x, y in pairs)

    def canonical_signature(self) -> tuple[int, ...]:
        return min(self.signature(), _swap_signature(self.signature()))

    def alphabet(self) -> Alphabet:
        return Alphabet.of(self.kind, {f"{f}_dag": g for f, g in self.grading_of.items()})

    def as_dict(self) -> dict:
        return {
            "label": self.label,
            "kind": self.kind.value,
            "gradings": {k: str(v) for k, v in self.grading_of.items()},
            "signature": list(self.signature()),
        }


def _swap_signature(sig: Sequence[int]) -> tuple[int, ...]:
    # order 11.11 11.10 11.01 10.10 10.01 01.01; swap the f10 and f01 labels
    s = tuple(sig)
    return (s[0], s[2], s[1], s[5], s[4], s[3])


def _candidate_assignments() -> Iterable[StatisticsAssignment]:
    """Every grading choice for the three creation operators.

    One bit: any parity per operator.  Two bits: the three operators fill the
    three nonzero sectors, one each (one internal state per sector).
    """
    for bits in itertools.product((0, 1), repeat=3):
        yield StatisticsAssignment(
            "z2:" + "".join(map(str, bits)), GradedStructureKind.Z2_SUPER,
            dict(zip(CREATION_OPERATORS, [GradingVector((b,)) for b in bits])))
    nonzero = [GradingVector.parse(s) for s in ("11", "10", "01")]
    for kind in (GradedStructureKind.Z2XZ2_SUPER, GradedStructureKind.Z2XZ2_LIE):
        for perm in itertools.permutations(nonzero):
            yield StatisticsAssignment(
                f"{kind.value}:" + ",".join(map(str, perm)), kind, dict(zip(CREATION_OPERATORS, perm)))


def dedupe_assignments(candidates: Iterable[StatisticsAssignment]) -> dict[tuple, list[StatisticsAssignment]]:
    """Group assignments by their exchange signs, up to relabeling f10 <-> f01.

    ``f10`` and ``f01`` create the two degenerate internal states, so swapping
    them is a symmetry of the Hamiltonian.
    """
    groups: dict[tuple, list[StatisticsAssignment]] = {}
    for a in candidates:
        groups.setdefault(a.canonical_signature(), []).append(a)
    return groups


class FixtureError(ValueError):
    """The assignment fixture is missing, unreadable or inconsistent."""


@lru_cache(maxsize=None)
def _load_fixture(path: str) -> tuple[StatisticsAssignment, ...]:
    try:
        with open(path) as fh:
            data = json.load(fh)
        entries = data["assignments"]
    except OSError as exc:
        raise FixtureError(f"cannot read fixture {path}: {exc.strerror}") from None
    except (ValueError, KeyError, TypeError) as exc:
        raise FixtureError(f"malformed fixture {path}: {exc}") from None
    out = []
    for e in entries:
        a = StatisticsAssignment(e["label"], GradedStructureKind.parse(e["kind"]), e["gradings"])
        if "signature" in e and tuple(e["signature"]) != a.signature():
            raise FixtureError(f"fixture entry {a.label!r}: stored signature {e['signature']} "
                             f"disagrees with its gradings {list(a.signature())}")
        out.append(a)
    return tuple(out)


def fixture_assignments() -> tuple[StatisticsAssignment, ...]:
    return _load_fixture(str(fixture_dir() / "assignments.json"))


def enumerate_assignments() -> list[StatisticsAssignment]:
    """The inequivalent assignments, labelled from the fixture file.

    The dedupe is recomputed each call; the fixture only supplies labels and
    representatives, and every fixture entry must match exactly one group.
    """
    groups = dedupe_assignments(_candidate_assignments())
    labelled = {a.canonical_signature(): a for a in fixture_assignments()}
    out = []
    for sig, members in groups.items():
        rep = labelled.get(sig)
        if rep is None:
            m = members[0]
            rep = StatisticsAssignment("unlabelled-" + "".join(map(str, sig)), m.kind, m.grading_of)
        out.append(rep)
    stray = set(labelled) - set(groups)
    if stray:
        raise FixtureError(f"fixture signatures not produced by the enumeration: {sorted(stray)}")
    order = {a.label: i for i, a in enumerate(fixture_assignments())}
    out.sort(key=lambda a: (order.get(a.label, len(order)), a.label))
    return out


def get_assignment(label: str) -> StatisticsAssignment:
    for a in fixture_assignments():
        if a.label == label:
            return a
    known = ", ".join(a.label for a in fixture_assignments())
    raise KeyError(f"unknown assignment {label!r}; known: {known}")


# ---------------------------------------------------------------------------
# two-particle internal spaces


def _state_label(i: int, j: int) -> str:
    """Name of the state supported on e_i (x) e_j and its mirror (0-based)."""
    i, j = sorted((i, j))
    if i == j:
        return "U_00," + "ABCD"[i]
    if i == 0:
        return "U_" + _SECTOR_NAME[j]
    # remaining pair (a, b) of nonzero components, named by their sum sector
    missing = ({1, 2, 3} - {i, j}).pop()
    return "W_" + _SECTOR_NAME[missing]


SPACE_FORMAT = "paragrade.space/1"


@dataclass
class TwoParticleSpace:
    """Labelled orthonormal two-particle internal states.

    ``exact_basis`` is present for spaces built here; spaces read from a file
    may carry floats only.  ``assignment`` is ``None`` for such files when the
    label is unknown.
    """

    assignment: StatisticsAssignment | None
    labels: list[str]
    basis: np.ndarray = field(repr=False)
    epsilon: dict[str, int]
    exact_basis: list[list[QSqrt2]] | None = field(default=None, repr=False)
    nmax: int | None = None

    def __post_init__(self):
        b = np.asarray(self.basis, dtype=np.complex128)
        if b.ndim != 2 or b.shape[1] != 16 or b.shape[0] != len(self.labels):
            raise ValueError(f"need one 16-component vector per label, got shape {b.shape}")
        if not np.iscomplexobj(self.basis) or not np.any(b.imag):
            b = b.real
        self.basis = b

    @classmethod
    def from_exact(cls, assignment, labels, exact, epsilon, nmax=None) -> "TwoParticleSpace":
        basis = np.array([[float(x) for x in v] for v in exact]).reshape(len(labels), 16)
        return cls(assignment, list(labels), basis, dict(epsilon), exact, nmax)

    @property
    def label(self) -> str:
        return self.assignment.label if self.assignment else "custom"

    @property
    def dim(self) -> int:
        return len(self.labels)

    def vector(self, label: str) -> np.ndarray:
        return self.basis[self.labels.index(label)]

    def exact_vector(self, label: str) -> list[QSqrt2]:
        if self.exact_basis is None:
            raise ValueError("space carries no exact vectors")
        return self.exact_basis[self.labels.index(label)]

    @property
    def w_labels(self) -> list[str]:
        return [l for l in self.labels if l.startswith("W_")]

    @property
    def common_epsilon(self) -> int | None:
        eps = set(self.epsilon.values())
        return eps.pop() if len(eps) == 1 else None

    def projector(self) -> np.ndarray:
        b = self.basis
        return b.T @ b.conj()

    def orthonormality_error(self) -> float:
        b = self.basis
        return float(np.max(np.abs(b.conj() @ b.T - np.eye(self.dim)))) if self.dim else 0.0

    def as_dict(self) -> dict:
        states = []
        for k, lab in enumerate(self.labels):
            entry: dict = {"label": lab}
            if lab in self.epsilon:
                entry["epsilon"] = self.epsilon[lab]
            vec = np.asarray(self.basis[k], dtype=np.complex128)
            entry["vector"] = [[float(z.real), float(z.imag)] for z in vec]
            if self.exact_basis is not None:
                entry["exact"] = [str(x) for x in self.exact_basis[k]]
            states.append(entry)
        return {"format": SPACE_FORMAT, "assignment": self.label, "dim": 16, "states": states}

    @classmethod
    def from_dict(cls, data: Mapping) -> "TwoParticleSpace":
        if data.get("format", SPACE_FORMAT) != SPACE_FORMAT:
            raise ValueError(f"unsupported space format {data.get('format')!r}")
        if int(data.get("dim", 16)) != 16:
            raise ValueError("two-particle internal spaces are 16-dimensional")
        states = data["states"]
        labels = [str(s["label"]) for s in states]
        basis = [[complex(re, im) for re, im in s["vector"]] for s in states]
        exact = None
        if states and all("exact" in s for s in states):
            exact = [[QSqrt2.parse(x) for x in s["exact"]] for s in states]
        eps = {str(s["label"]): int(s["epsilon"]) for s in states if "epsilon" in s}
        try:
            assignment = get_assignment(data.get("assignment", ""))
        except KeyError:
            assignment = None
        return cls(assignment, labels, np.array(basis).reshape(len(labels), 16), eps, exact)


def _internal_representation(assignment: StatisticsAssignment) -> Representation:
    f = f_matrices()
    return Representation({f"{k}_dag": f[f"{k}_dag"] for k in CREATION_OPERATORS}, 4,
                          assignment.component_gradings())


def creation_words(max_degree: int = 2) -> list[tuple[str, ...]]:
    names = [f"{k}_dag" for k in CREATION_OPERATORS]
    return [w for d in range(max_degree + 1) for w in itertools.product(names, repeat=d)]


def _fraction_vector(v: np.ndarray) -> list[Fraction]:
    r = np.round(v.real).astype(np.int64)
    if np.max(np.abs(v - r)) > 1e-12:
        raise ValueError("expected an integer vector from 0/1 operators")
    return [Fraction(int(x)) for x in r]


def two_particle_space(assignment: StatisticsAssignment | str, model: OscillatorModel | None = None,
                       max_degree: int = 2) -> TwoParticleSpace:
    """Internal two-particle states reached from the vacuum by coproducts.

    Every creation word of degree ``<= max_degree`` is mapped through
    ``Delta`` (with the assignment's braiding signs) and applied to
    ``e_1 (x) e_1``.  The resulting integer vectors are grouped by support,
    checked to be proportional within each group and normalised exactly.
    """
    if isinstance(assignment, str):
        assignment = get_assignment(assignment)
    alph = assignment.alphabet()
    rep = _internal_representation(assignment)
    vac = np.zeros(16)
    vac[0] = 1.0
    by_support: dict[tuple[int, ...], list[Fraction]] = {}
    for word in creation_words(max_degree):
        vec = represent(coproduct(OperatorWord(alph, {word: 1})), rep) @ vac
        fv = _fraction_vector(vec)
        support = tuple(i for i, x in enumerate(fv) if x != 0)
        if not support:
            continue
        prev = by_support.setdefault(support, fv)
        ratio = fv[support[0]] / prev[support[0]]
        if any(fv[i] != ratio * prev[i] for i in support):
            raise ValueError(f"words give non-proportional vectors on support {support}")
    labels, exact, eps = [], [], {}
    for support, fv in sorted(by_support.items(), key=lambda kv: _label_order(kv[0])):
        i, j = divmod(support[0], 4)
        label = _state_label(i, j)
        lead = fv[support[0]]
        if lead < 0:
            fv = [-x for x in fv]
        norm = exact_sqrt(sum(x * x for x in fv))
        labels.append(label)
        exact.append([QSqrt2(x) / norm for x in fv])
        if label.startswith("W_"):
            a, b = support
            eps[label] = 1 if fv[a] * fv[b] > 0 else -1
    return TwoParticleSpace.from_exact(assignment, labels, exact, eps, model.nmax if model else None)


_LABEL_RANK = ["U_00,A", "U_00,B", "U_00,C", "U_00,D", "U_11", "U_10", "U_01", "W_11", "W_10", "W_01"]


def _label_order(support: tuple[int, ...]) -> int:
    i, j = divmod(support[0], 4)
    return _LABEL_RANK.index(_state_label(i, j))


def braided_pair_space(sign: np.ndarray, backend: str | None = None) -> np.ndarray:
    """Orthonormal basis (columns) of the braided-symmetric square.

    ``sign`` is the single-particle exchange-sign matrix.  This is the
    projector-free route used to cross-check :func:`two_particle_space` and to
    build Fock-inclusive spaces for :func:`spectrum`.
    """
    d = sign.shape[0]
    pairs, signs = kernels.pair_basis(sign, backend=backend)
    basis = np.zeros((d * d, len(pairs)))
    cols = np.arange(len(pairs))
    i, j = pairs[:, 0], pairs[:, 1]
    diag = i == j
    basis[i * d + j, cols] = np.where(diag, 1.0, 1.0 / np.sqrt(2.0))
    off = ~diag
    basis[j[off] * d + i[off], cols[off]] = signs[off] / np.sqrt(2.0)
    return basis


# ---------------------------------------------------------------------------
# spectra


@dataclass
class SpectrumReport:
    assignment: str
    levels: dict[float, int]
    dim: int
    fock_levels: int
    additive: bool = True

    def multiset(self) -> tuple[tuple[float, int], ...]:
        return tuple(sorted(self.levels.items()))

    def as_dict(self) -> dict:
        return {
            "assignment": self.assignment,
            "dim": self.dim,
            "fock_levels": self.fock_levels,
            "additive": bool(self.additive),
            "levels": [{"energy": _num(e), "multiplicity": m} for e, m in self.multiset()],
        }


def _num(x: float):
    x = round(float(x), 9) + 0.0
    return int(x) if x.is_integer() else x


def bin_energies(values: Iterable[float], tol: float = ENERGY_TOL) -> dict[float, int]:
    levels: dict[float, int] = {}
    for v in sorted(values):
        for e in levels:
            if abs(v - e) <= tol:
                levels[e] += 1
                break
        else:
            levels[float(v)] = 1
    return {round(e, 9) + 0.0: m for e, m in levels.items()}


def single_particle_sign(assignment: StatisticsAssignment, fock_levels: int) -> np.ndarray:
    """Exchange signs on ``fock_levels * 4`` single-particle basis vectors."""
    return np.kron(np.ones((fock_levels, fock_levels), dtype=np.int64), assignment.sign_matrix())


def _safe_levels(model: OscillatorModel) -> int:
    return max(1, model.nmax - 1)


def spectrum(space: TwoParticleSpace, model: OscillatorModel, fock_levels: int | None = None,
             tol: float = ENERGY_TOL) -> SpectrumReport:
    """Two-particle energies on the admissible space of ``space``'s assignment.

    The admissible space is the braided-symmetric square of the single-particle
    states with Fock level ``< fock_levels`` (default: the truncation-safe
    levels ``n <= nmax - 2``; ``fock_levels=1`` keeps only the internal
    states).  ``Delta(H)`` is represented on the full truncated square and
    restricted to that space.
    """
    if space.assignment is None:
        raise ValueError("spectrum needs a space tied to a statistics assignment")
    if space.nmax is not None and space.nmax != model.nmax:
        raise ValueError(f"space was built for nmax={space.nmax}, model has nmax={model.nmax}")
    levels = fock_levels or _safe_levels(model)
    if not 1 <= levels <= model.fock_dim:
        raise ValueError(f"fock_levels must lie in [1, {model.fock_dim}]")
    sub = levels * 4
    sign = single_particle_sign(space.assignment, levels)
    local = braided_pair_space(sign)
    # embed the low-level basis in the full single-particle square
    d = model.dim
    i_loc, j_loc = np.divmod(np.arange(sub * sub), sub)
    rows = i_loc * d + j_loc
    basis = np.zeros((d * d, local.shape[1]))
    basis[rows] = local
    alph = Alphabet.of(GradedStructureKind.Z2_SUPER, {"H": "0"})
    h2 = represent(coproduct(OperatorWord.gen(alph, "H")), Representation({"H": model.hamiltonian}))
    restricted = basis.T @ h2 @ basis
    energies = np.linalg.eigvalsh(restricted)
    single = model.single_particle_energies()
    sums = np.add.outer(single, single).ravel()
    additive = bool(np.all(np.min(np.abs(energies[:, None] - sums[None, :]), axis=1) <= ADDITIVITY_TOL))
    return SpectrumReport(space.assignment.label, bin_energies(energies, tol), len(energies), levels, additive)


def n_particle_energies(assignment: StatisticsAssignment, model: OscillatorModel, n: int,
                        fock_levels: int = 1) -> tuple[np.ndarray, np.ndarray]:
    """Energies of ``Delta^(n-1)(H)`` on the braided-symmetric ``n``-fold power.

    Returns ``(energies, single_particle_energies)`` for an additivity check.
    Small sizes only: the symmetrizer is built densely.
    """
    if n < 2:
        raise ValueError("need at least two particles")
    sub = fock_levels * 4
    ham = model.hamiltonian[:sub, :sub]
    sign = single_particle_sign(assignment, fock_levels)
    swap = kernels.graded_swap(sign)
    dim = sub ** n
    transpositions = [
        np.kron(np.kron(np.eye(sub ** k), swap), np.eye(sub ** (n - k - 2))) for k in range(n - 1)
    ]
    # average over S_n generated by adjacent graded transpositions
    group = {tuple(range(n)): np.eye(dim)}
    frontier = list(group.items())
    while frontier:
        nxt = []
        for perm, mat in frontier:
            for k, t in enumerate(transpositions):
                p = list(perm)
                p[k], p[k + 1] = p[k + 1], p[k]
                p = tuple(p)
                if p not in group:
                    group[p] = t @ mat
                    nxt.append((p, group[p]))
        frontier = nxt
    sym = sum(group.values()) / len(group)
    vals, vecs = np.linalg.eigh(sym)
    basis = vecs[:, vals > 0.5]
    alph = Alphabet.of(GradedStructureKind.Z2_SUPER, {"H": "0"})
    hn = represent(n_fold_coproduct(OperatorWord.gen(alph, "H"), n - 1), Representation({"H": ham}))
    energies = np.linalg.eigvalsh(basis.T @ hn.real @ basis) if basis.size else np.zeros(0)
    return energies, np.linalg.eigvalsh(ham)
