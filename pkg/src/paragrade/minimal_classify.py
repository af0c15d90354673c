"""Minimal Z2xZ2-graded Lie algebras and superalgebras from structure constants.

A minimal algebra has exactly one generator per sector.  For the Lie case the
generators are ``H, Q1, Q2, Q3`` in sectors ``00, 10, 01, 11`` with

    {Q_i, Q_j} = d_k |eps_ijk| Q_k,      [H, Q_i] = b_i Q_i,

and for the superalgebra ``H, Q1, Q2, Z`` in the same sectors with

    [H, Q_i] = a_i Q_i,  [H, Z] = b Z,  [Q1, Q2] = c Z,
    {Q_i, Q_i} = alpha_i H,  {Z, Q_i} = beta_i |eps_ij| Q_j.

Graded Jacobi identities cut out the admissible parameters.  They are
available twice: as a hand-derived constraint list (``*_CONSTRAINTS``) and
through :func:`expand_jacobi`, which brackets abstract generators directly.

Classes are orbits of valid grid points under the declared normalization:
independent nonzero real rescalings of every generator together with the
sector relabelings that preserve the grading form (``S3`` on ``Q1, Q2, Q3``
for the Lie case, ``Q1 <-> Q2`` for the superalgebra).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

import numpy as np

from . import kernels
from .exact import Poly, rational_rank
from .grading import GradedStructureKind, GradingVector, bracket_sign, inner_product
from .graded_algebra import (
    GradedOperator,
    check_jacobi,
    closure_check,
    graded_bracket,
    sector_mask,
)

__all__ = [
    "LIE_PARAMS",
    "SUPER_PARAMS",
    "MinimalLieAlgebraParams",
    "MinimalSuperalgebraParams",
    "AbstractAlgebra",
    "lie_algebra",
    "super_algebra",
    "expand_jacobi",
    "lie_constraints",
    "super_constraints",
    "check_lie_constraints",
    "check_super_jacobi",
    "Normalization",
    "LIE_NORMALIZATION",
    "SUPER_NORMALIZATION",
    "TRIVIAL_NORMALIZATION",
    "AlgebraClassReport",
    "ClassificationResult",
    "enumerate_lie_classes",
    "enumerate_super_classes",
    "NotRealizable",
    "realize_as_matrices",
    "REFERENCE_LIE_CLASS_COUNT",
    "REFERENCE_SUPER_CLASS_COUNT",
]

LIE_PARAMS = ("d1", "d2", "d3", "b1", "b2", "b3")
SUPER_PARAMS = ("a1", "a2", "b", "c", "alpha1", "alpha2", "beta1", "beta2")

REFERENCE_LIE_CLASS_COUNT = 8
REFERENCE_SUPER_CLASS_COUNT = 21

_DEFAULT_TOL = 1e-12


@dataclass(frozen=True)
class MinimalLieAlgebraParams:
    d: tuple = (0, 0, 0)
    b: tuple = (0, 0, 0)

    @classmethod
    def from_vector(cls, v: Sequence) -> "MinimalLieAlgebraParams":
        v = tuple(v)
        return cls(v[0:3], v[3:6])

    def vector(self) -> tuple:
        return tuple(self.d) + tuple(self.b)

    def as_dict(self) -> dict:
        return dict(zip(LIE_PARAMS, self.vector()))


@dataclass(frozen=True)
class MinimalSuperalgebraParams:
    a: tuple = (0, 0)
    b: object = 0
    c: object = 0
    alpha: tuple = (0, 0)
    beta: tuple = (0, 0)

    @classmethod
    def from_vector(cls, v: Sequence) -> "MinimalSuperalgebraParams":
        v = tuple(v)
        return cls((v[0], v[1]), v[2], v[3], (v[4], v[5]), (v[6], v[7]))

    def vector(self) -> tuple:
        return tuple(self.a) + (self.b, self.c) + tuple(self.alpha) + tuple(self.beta)

    def as_dict(self) -> dict:
        return dict(zip(SUPER_PARAMS, self.vector()))


# ---------------------------------------------------------------------------
# abstract algebras with symbolic structure constants


@dataclass
class AbstractAlgebra:
    """Generators with gradings and a partial bracket table of polynomials.

    ``table[(x, y)]`` maps generator names to polynomial coefficients.  Pairs
    absent from the table are filled by graded antisymmetry, or are zero.
    """

    kind: GradedStructureKind
    gradings: dict[str, GradingVector]
    params: tuple[str, ...]
    table: dict[tuple[str, str], dict[str, Poly]] = field(default_factory=dict)

    def __post_init__(self):
        full: dict[tuple[str, str], dict[str, Poly]] = {}
        for (x, y), val in self.table.items():
            full[(x, y)] = dict(val)
            s = bracket_sign(self.kind, self.gradings[x], self.gradings[y])
            swapped = {g: c * (-s) for g, c in val.items()}
            if (y, x) in self.table:
                other = self.table[(y, x)]
                if any(not (other.get(g, self.zero()) - swapped.get(g, self.zero())).is_zero()
                       for g in set(other) | set(swapped)):
                    raise ValueError(f"bracket table entries ({x},{y}) and ({y},{x}) disagree")
            else:
                full[(y, x)] = swapped
        self.table = full

    @property
    def generators(self) -> list[str]:
        return list(self.gradings)

    def zero(self) -> Poly:
        return Poly(self.params)

    def basis_bracket(self, x: str, y: str) -> dict[str, Poly]:
        return self.table.get((x, y), {})

    def bracket(self, u: dict[str, Poly], v: dict[str, Poly]) -> dict[str, Poly]:
        out: dict[str, Poly] = {}
        for x, cx in u.items():
            for y, cy in v.items():
                for g, c in self.basis_bracket(x, y).items():
                    out[g] = out.get(g, self.zero()) + cx * cy * c
        return {g: c for g, c in out.items() if not c.is_zero()}

    def unit(self, x: str) -> dict[str, Poly]:
        return {x: Poly.const(self.params, 1)}


def _vars(names):
    return {n: Poly.var(names, n) for n in names}


def lie_algebra() -> AbstractAlgebra:
    v = _vars(LIE_PARAMS)
    g = {"H": "00", "Q1": "10", "Q2": "01", "Q3": "11"}
    table = {}
    for i in (1, 2, 3):
        table[("H", f"Q{i}")] = {f"Q{i}": v[f"b{i}"]}
    for i, j in itertools.permutations((1, 2, 3), 2):
        k = 6 - i - j
        table[(f"Q{i}", f"Q{j}")] = {f"Q{k}": v[f"d{k}"]}
    return AbstractAlgebra(GradedStructureKind.Z2XZ2_LIE,
                           {n: GradingVector.parse(s) for n, s in g.items()}, LIE_PARAMS, table)


def super_algebra() -> AbstractAlgebra:
    v = _vars(SUPER_PARAMS)
    g = {"H": "00", "Q1": "10", "Q2": "01", "Z": "11"}
    table = {
        ("H", "Q1"): {"Q1": v["a1"]},
        ("H", "Q2"): {"Q2": v["a2"]},
        ("H", "Z"): {"Z": v["b"]},
        ("Q1", "Q2"): {"Z": v["c"]},
        ("Q1", "Q1"): {"H": v["alpha1"]},
        ("Q2", "Q2"): {"H": v["alpha2"]},
        ("Z", "Q1"): {"Q2": v["beta1"]},
        ("Z", "Q2"): {"Q1": v["beta2"]},
    }
    return AbstractAlgebra(GradedStructureKind.Z2XZ2_SUPER,
                           {n: GradingVector.parse(s) for n, s in g.items()}, SUPER_PARAMS, table)


def expand_jacobi(alg: AbstractAlgebra) -> dict[tuple[str, str, str], dict[str, Poly]]:
    """Graded Jacobi residual of every ordered generator triple."""
    out = {}
    kind, deg = alg.kind, alg.gradings
    for a, b, c in itertools.product(alg.generators, repeat=3):
        s_ca = bracket_sign(kind, deg[c], deg[a])
        s_ab = bracket_sign(kind, deg[a], deg[b])
        s_bc = bracket_sign(kind, deg[b], deg[c])
        ua, ub, uc = alg.unit(a), alg.unit(b), alg.unit(c)
        total: dict[str, Poly] = {}
        for sign, x, inner in (
            (s_ca, ua, alg.bracket(ub, uc)),
            (s_ab, ub, alg.bracket(uc, ua)),
            (s_bc, uc, alg.bracket(ua, ub)),
        ):
            for g, p in alg.bracket(x, inner).items():
                total[g] = total.get(g, alg.zero()) + p * sign
        out[(a, b, c)] = {g: p for g, p in total.items() if not p.is_zero()}
    return out


def expanded_constraints(alg: AbstractAlgebra) -> list[Poly]:
    """Distinct nonzero Jacobi residual coefficients, each scaled to monic."""
    seen: dict[Poly, None] = {}
    for residual in expand_jacobi(alg).values():
        for p in residual.values():
            seen.setdefault(p.normalized(), None)
    return list(seen)


def lie_constraints() -> list[Poly]:
    v = _vars(LIE_PARAMS)
    d1, d2, d3, b1, b2, b3 = (v[n] for n in LIE_PARAMS)
    return [d1 * (b1 - b2 - b3), d2 * (b2 - b3 - b1), d3 * (b3 - b1 - b2)]


def super_constraints() -> list[Poly]:
    v = _vars(SUPER_PARAMS)
    a1, a2, b, c, al1, al2, be1, be2 = (v[n] for n in SUPER_PARAMS)
    return [
        a1 * al1,
        a2 * al2,
        c * (b - a1 - a2),
        be1 * (a2 - a1 - b),
        be2 * (a1 - a2 - b),
        2 * c * be1 - al1 * a2,
        2 * c * be2 + al2 * a1,
        2 * c * be1 - al1 * b,
        2 * c * be2 + al2 * b,
        al1 * be2 - al2 * be1,
    ]


def same_linear_span(ps: Sequence[Poly], qs: Sequence[Poly]) -> bool:
    """Whether two polynomial lists span the same rational vector space."""
    monos = sorted({m for p in list(ps) + list(qs) for m in p.terms})
    row = lambda p: [p.terms.get(m, 0) for m in monos]
    r_p, r_q = rational_rank(map(row, ps)), rational_rank(map(row, qs))
    r_pq = rational_rank(map(row, list(ps) + list(qs)))
    return r_p == r_q == r_pq


def _vanish(polys: Iterable[Poly], values: Sequence, tol: float) -> bool:
    exact = all(isinstance(x, (int, Fraction)) for x in values)
    for p in polys:
        v = p(values)
        if exact:
            if v != 0:
                return False
        elif abs(complex(v)) > tol:
            return False
    return True


_EXPANDED_CACHE: dict[str, list[Poly]] = {}


def _cached(key: str, build: Callable[[], list[Poly]]) -> list[Poly]:
    if key not in _EXPANDED_CACHE:
        _EXPANDED_CACHE[key] = build()
    return _EXPANDED_CACHE[key]


def check_lie_constraints(p: MinimalLieAlgebraParams | Sequence, tol: float = _DEFAULT_TOL) -> bool:
    """Minimal Lie algebra validity; exact when every parameter is rational."""
    values = p.vector() if isinstance(p, MinimalLieAlgebraParams) else tuple(p)
    return _vanish(lie_constraints(), values, tol)


def check_super_jacobi(p: MinimalSuperalgebraParams | Sequence, tol: float = _DEFAULT_TOL,
                       method: str = "constraints") -> bool:
    """Graded Jacobi validity of a minimal superalgebra.

    ``method="constraints"`` evaluates the hand-derived list,
    ``method="expander"`` the residuals of :func:`expand_jacobi`.
    """
    values = p.vector() if isinstance(p, MinimalSuperalgebraParams) else tuple(p)
    if method == "constraints":
        polys = super_constraints()
    elif method == "expander":
        polys = _cached("super-expanded", lambda: expanded_constraints(super_algebra()))
    else:
        raise ValueError(f"unknown method {method!r}")
    return _vanish(polys, values, tol)


def check_lie_jacobi_expander(p: Sequence, tol: float = _DEFAULT_TOL) -> bool:
    polys = _cached("lie-expanded", lambda: expanded_constraints(lie_algebra()))
    return _vanish(polys, tuple(p), tol)


# ---------------------------------------------------------------------------
# normalization group and orbit keys


@dataclass(frozen=True)
class Normalization:
    """Monomial torus action plus a finite group of coordinate maps.

    Rescaling generator ``j`` by ``lambda_j`` multiplies parameter ``i`` by
    ``prod_j lambda_j ** exponents[i][j]``.  Each permutation is a pair
    ``(index map, sign vector)`` sending ``p`` to ``sign * p[index]``.
    """

    name: str
    exponents: tuple[tuple[int, ...], ...]
    permutations: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]
    description: str = ""

    def images(self, p: np.ndarray) -> list[np.ndarray]:
        return [np.asarray(sgn) * p[list(idx)] for idx, sgn in self.permutations]


def _perm_identity(n):
    return (tuple(range(n)), (1,) * n)


def _lie_normalization() -> Normalization:
    # scalings (H, Q1, Q2, Q3)
    exps = (
        (0, -1, 1, 1), (0, 1, -1, 1), (0, 1, 1, -1),
        (1, 0, 0, 0), (1, 0, 0, 0), (1, 0, 0, 0),
    )
    perms = []
    for sigma in itertools.permutations(range(3)):
        idx = tuple(sigma) + tuple(3 + s for s in sigma)
        perms.append((idx, (1,) * 6))
    return Normalization("rescale+S3", exps, tuple(perms),
                         "independent real rescalings of H, Q1, Q2, Q3 and relabelings of the "
                         "three nonzero sectors")


def _super_normalization() -> Normalization:
    # scalings (H, Q1, Q2, Z);  params a1 a2 b c alpha1 alpha2 beta1 beta2
    exps = (
        (1, 0, 0, 0), (1, 0, 0, 0), (1, 0, 0, 0),
        (0, 1, 1, -1),
        (-1, 2, 0, 0), (-1, 0, 2, 0),
        (0, 1, -1, 1), (0, -1, 1, 1),
    )
    swap = ((1, 0, 2, 3, 5, 4, 7, 6), (1, 1, 1, -1, 1, 1, 1, 1))
    return Normalization("rescale+swap", exps, (_perm_identity(8), swap),
                         "independent real rescalings of H, Q1, Q2, Z and the relabeling "
                         "Q1 <-> Q2 (which sends c to -c)")


LIE_NORMALIZATION = _lie_normalization()
SUPER_NORMALIZATION = _super_normalization()


def TRIVIAL_NORMALIZATION(nparams: int) -> Normalization:
    return Normalization("trivial", tuple((0,) for _ in range(nparams)),
                         (_perm_identity(nparams),), "no identifications")


def _f2_reduce(vec: list[int], basis: list[tuple[int, list[int]]]) -> tuple[int, ...]:
    v = list(vec)
    for pivot, b in basis:
        if v[pivot]:
            v = [x ^ y for x, y in zip(v, b)]
    return tuple(v)


def _f2_rref_columns(mat: np.ndarray) -> list[tuple[int, list[int]]]:
    """Reduced echelon basis of the F2 column space of ``mat``."""
    rows = [list(map(int, col)) for col in (mat.T % 2)]
    basis: list[tuple[int, list[int]]] = []
    for r in rows:
        r = list(_f2_reduce(r, basis))
        if not any(r):
            continue
        pivot = r.index(1)
        basis = [(p, [x ^ y for x, y in zip(b, r)]) if b[pivot] else (p, b) for p, b in basis]
        basis.append((pivot, r))
    basis.sort()
    return basis


def _torus_key(p: np.ndarray, exps: np.ndarray, tol: float) -> tuple:
    nz = np.abs(p) > tol
    z = tuple(int(i) for i in np.flatnonzero(nz))
    if not z:
        return ((), (), ())
    m = exps[list(z)]
    logs = np.log(np.abs(p[list(z)]))
    if np.any(m):
        coef, *_ = np.linalg.lstsq(m.astype(float), logs, rcond=None)
        logs = logs - m @ coef
    mag = tuple(round(float(x), 9) + 0.0 for x in logs)
    sig = [1 if x < 0 else 0 for x in p[list(z)]]
    sig = _f2_reduce(sig, _f2_rref_columns(m))
    return (z, sig, mag)


def orbit_key(p: Sequence[float], norm: Normalization, tol: float = _DEFAULT_TOL) -> tuple:
    """Canonical label of the orbit of ``p``; equal keys mean equivalent points."""
    p = np.asarray(p, dtype=float)
    exps = np.asarray(norm.exponents, dtype=int)
    return min(_torus_key(q, exps, tol) for q in norm.images(p))


# ---------------------------------------------------------------------------
# enumeration


@dataclass
class AlgebraClassReport:
    representative: dict[str, float]
    orbit_size: int
    free_parameters: list[str]
    members: list[tuple] = field(default_factory=list, repr=False)
    key: tuple = field(default=(), repr=False)

    @property
    def zero_pattern(self) -> tuple[str, ...]:
        return tuple(n for n, v in self.representative.items() if v != 0)

    def as_dict(self) -> dict:
        return {
            "representative": {k: _num(v) for k, v in self.representative.items()},
            "orbit_size": self.orbit_size,
            "free_parameters": list(self.free_parameters),
        }


@dataclass
class ClassificationResult:
    which: str
    grid: tuple
    normalization: Normalization
    classes: list[AlgebraClassReport]
    valid_points: int
    reference_count: int

    @property
    def count(self) -> int:
        return len(self.classes)

    def families(self) -> dict[tuple, list[AlgebraClassReport]]:
        """Classes grouped by zero pattern, up to the relabeling group."""
        out: dict[tuple, list[AlgebraClassReport]] = {}
        for cls in self.classes:
            rep = np.array(list(cls.representative.values()), dtype=float)
            pattern = min(tuple((np.abs(q) > 0).astype(int)) for q in self.normalization.images(rep))
            out.setdefault(pattern, []).append(cls)
        return out

    def as_dict(self) -> dict:
        fams = self.families()
        return {
            "which": self.which,
            "grid": [_num(g) for g in self.grid],
            "normalization": {
                "name": self.normalization.name,
                "description": self.normalization.description,
            },
            "valid_points": self.valid_points,
            "class_count": self.count,
            "family_count": len(fams),
            "reference_count": self.reference_count,
            "matches_reference": self.count == self.reference_count,
            "classes": [c.as_dict() for c in self.classes],
        }


def _num(x):
    x = float(x)
    return int(x) if x.is_integer() else x


def _prefer(point: tuple) -> tuple:
    # fewest negatives, then most +1 leading entries
    return (sum(1 for x in point if x < 0), tuple(-x for x in point))


def _enumerate(which, names, grid, norm, valid_mask_fn, tol) -> ClassificationResult:
    grid = tuple(sorted(set(float(g) for g in grid)))
    if not grid:
        raise ValueError("empty parameter grid")
    points = np.array(list(itertools.product(grid, repeat=len(names))), dtype=float)
    valid = points[valid_mask_fn(points)]
    groups: dict[tuple, list[tuple]] = {}
    for p in valid:
        groups.setdefault(orbit_key(p, norm, tol), []).append(tuple(float(x) for x in p))
    valid_set = {tuple(p) for p in valid}
    classes = []
    for key, members in groups.items():
        rep = min(members, key=_prefer)
        free = []
        for i, n in enumerate(names):
            trial = [rep[:i] + (g,) + rep[i + 1:] for g in grid]
            if len(grid) > 1 and all(t in valid_set for t in trial):
                free.append(n)
        classes.append(AlgebraClassReport(dict(zip(names, rep)), len(members), free,
                                          sorted(members), key))
    classes.sort(key=lambda c: (len(c.zero_pattern), _prefer(tuple(c.representative.values()))))
    ref = REFERENCE_LIE_CLASS_COUNT if which == "lie" else REFERENCE_SUPER_CLASS_COUNT
    return ClassificationResult(which, grid, norm, classes, len(valid), ref)


def _lie_valid(points: np.ndarray, tol=_DEFAULT_TOL) -> np.ndarray:
    vals = kernels.lie_constraint_values(points)
    return np.all(np.abs(vals) <= tol, axis=1)


def _poly_matrix_eval(polys: list[Poly], points: np.ndarray) -> np.ndarray:
    out = np.zeros((points.shape[0], len(polys)))
    for k, p in enumerate(polys):
        for mono, c in p.terms.items():
            term = np.full(points.shape[0], float(c))
            for j, e in enumerate(mono):
                if e:
                    term = term * points[:, j] ** e
            out[:, k] += term
    return out


def _super_valid(points: np.ndarray, tol=_DEFAULT_TOL) -> np.ndarray:
    return np.all(np.abs(_poly_matrix_eval(super_constraints(), points)) <= tol, axis=1)


def enumerate_lie_classes(grid: Iterable = (-1, 0, 1), normalization: Normalization | None = None,
                          tol: float = _DEFAULT_TOL) -> ClassificationResult:
    norm = normalization or LIE_NORMALIZATION
    return _enumerate("lie", LIE_PARAMS, tuple(grid), norm, lambda pts: _lie_valid(pts, tol), tol)


def enumerate_super_classes(grid: Iterable = (-1, 0, 1), normalization: Normalization | None = None,
                            tol: float = _DEFAULT_TOL) -> ClassificationResult:
    norm = normalization or SUPER_NORMALIZATION
    return _enumerate("super", SUPER_PARAMS, tuple(grid), norm, lambda pts: _super_valid(pts, tol), tol)


# ---------------------------------------------------------------------------
# 4x4 matrix realizations


class NotRealizable(Exception):
    """No realization was found under the 4x4 sector-pattern ansatz.

    This is not a proof of non-existence.
    """


def _structure(which: str, vec: Sequence) -> tuple[AbstractAlgebra, dict[str, float]]:
    alg = lie_algebra() if which == "lie" else super_algebra()
    return alg, dict(zip(alg.params, (float(x) for x in vec)))


def realize_as_matrices(params: MinimalLieAlgebraParams | MinimalSuperalgebraParams,
                        seed: int = 0, starts: int = 24, tol: float = 1e-10) -> list[GradedOperator]:
    """Search faithful real 4x4 sector-pattern matrices with the given brackets.

    Every generator is required to be nonzero (Frobenius norm in
    ``[0.1, 10]``); the all-zero assignment would satisfy any bracket table.
    Raises :class:`NotRealizable` when the least-squares search fails.
    """
    from scipy.optimize import least_squares

    if isinstance(params, MinimalLieAlgebraParams):
        which = "lie"
        if not check_lie_constraints(params):
            raise ValueError("parameters violate the graded Jacobi constraints")
    elif isinstance(params, MinimalSuperalgebraParams):
        which = "super"
        if not check_super_jacobi(params):
            raise ValueError("parameters violate the graded Jacobi constraints")
    else:
        raise TypeError("expected minimal Lie or superalgebra parameters")
    alg, values = _structure(which, params.vector())
    gens = alg.generators
    masks = [sector_mask(alg.gradings[g]) for g in gens]
    slots = [np.flatnonzero(m.ravel()) for m in masks]
    nvar = sum(len(s) for s in slots)
    consts = {
        pair: {g: float(p(values)) for g, p in val.items()} for pair, val in alg.table.items()
    }

    def unpack(x):
        mats, k = [], 0
        for s in slots:
            m = np.zeros(16)
            m[s] = x[k:k + len(s)]
            k += len(s)
            mats.append(m.reshape(4, 4))
        return mats, x[nvar:]

    def residual(x):
        mats, lognorm = unpack(x)
        named = dict(zip(gens, mats))
        res = []
        for i, gx in enumerate(gens):
            for gy in gens[i:]:
                s = bracket_sign(alg.kind, alg.gradings[gx], alg.gradings[gy])
                lhs = named[gx] @ named[gy] - s * (named[gy] @ named[gx])
                rhs = sum((c * named[g] for g, c in consts.get((gx, gy), {}).items()), np.zeros((4, 4)))
                res.append((lhs - rhs).ravel())
        for m, ln in zip(mats, lognorm):
            res.append([np.sum(m * m) - math.exp(ln)])
        return np.concatenate(res)

    rng = np.random.default_rng(seed)
    lo = np.r_[np.full(nvar, -np.inf), np.full(len(gens), math.log(0.01))]
    hi = np.r_[np.full(nvar, np.inf), np.full(len(gens), math.log(100.0))]
    for _ in range(starts):
        x0 = np.r_[rng.standard_normal(nvar), np.zeros(len(gens))]
        sol = least_squares(residual, x0, bounds=(lo, hi), xtol=1e-15, ftol=1e-15, gtol=1e-15,
                            max_nfev=4000)
        if np.max(np.abs(residual(sol.x))) <= tol:
            mats, _ = unpack(sol.x)
            ops = [GradedOperator(g, alg.gradings[g], m) for g, m in zip(gens, mats)]
            return ops
    raise NotRealizable("not found under the 4x4 sector-pattern ansatz")


def realization_is_consistent(ops: Sequence[GradedOperator], kind) -> bool:
    """Closure plus graded Jacobi on every generator triple."""
    kind = GradedStructureKind.parse(kind)
    if not closure_check(kind, ops, tol=1e-8):
        return False
    return all(check_jacobi(kind, a, b, c, tol=1e-9).passed
               for a, b, c in itertools.product(ops, repeat=3))
