"""Graded operators as dense matrices: bracket, Jacobi check, sector patterns."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import kernels
from .grading import (
    DimensionError,
    GradedStructureKind,
    GradingLike,
    GradingVector,
    bracket_sign,
    grade_add,
    sectors,
)

__all__ = [
    "DEFAULT_JACOBI_TOL",
    "GradedOperator",
    "JacobiReport",
    "graded_bracket",
    "check_jacobi",
    "check_jacobi_batch",
    "sector_mask",
    "sector_pattern_check",
    "locate_sector",
    "closure_check",
    "random_patterned",
    "COMPONENT_GRADINGS",
]

DEFAULT_JACOBI_TOL = 1e-12

# Row/column gradings that generate the four 4x4 sector patterns: the 00
# pattern is diagonal, 10 pairs (1,3),(2,4), 01 pairs (1,2),(3,4), 11 pairs
# (1,4),(2,3).
COMPONENT_GRADINGS = tuple(GradingVector.parse(s) for s in ("00", "01", "10", "11"))


@dataclass(frozen=True, eq=False)
class GradedOperator:
    label: str
    grading: GradingVector
    matrix: np.ndarray = field(repr=False)

    def __post_init__(self):
        m = np.array(self.matrix, dtype=np.complex128)
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] < 1:
            raise DimensionError(f"operator {self.label!r} needs a square matrix, got {m.shape}")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "grading", GradingVector.parse(self.grading))

    @classmethod
    def of(cls, label: str, grading: GradingLike, matrix) -> "GradedOperator":
        return cls(label, GradingVector.parse(grading), matrix)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def scaled(self, c, label: str | None = None) -> "GradedOperator":
        return GradedOperator(label or self.label, self.grading, c * self.matrix)


@dataclass(frozen=True)
class JacobiReport:
    max_residual: float
    triple: tuple[str, str, str]
    passed: bool
    tolerance: float = DEFAULT_JACOBI_TOL

    def as_dict(self) -> dict:
        return {
            "max_residual": float(self.max_residual),
            "triple": list(self.triple),
            "passed": bool(self.passed),
            "tolerance": float(self.tolerance),
        }


def _compatible(kind: GradedStructureKind, *ops: GradedOperator) -> None:
    dims = {op.dim for op in ops}
    if len(dims) != 1:
        raise DimensionError(f"operator dimensions differ: {sorted(dims)}")
    for op in ops:
        if op.grading.arity != kind.arity:
            raise DimensionError(
                f"{op.label!r} has a {op.grading.arity}-bit grading, {kind.value} needs {kind.arity}"
            )


def graded_bracket(kind, a: GradedOperator, b: GradedOperator) -> GradedOperator:
    """``ab - (-1)^(deg a . deg b) ba``, graded by ``deg a + deg b``."""
    kind = GradedStructureKind.parse(kind)
    _compatible(kind, a, b)
    s = bracket_sign(kind, a.grading, b.grading)
    m = a.matrix @ b.matrix - s * (b.matrix @ a.matrix)
    return GradedOperator(f"({a.label},{b.label})", grade_add(a.grading, b.grading), m)


def check_jacobi(kind, a: GradedOperator, b: GradedOperator, c: GradedOperator,
                 tol: float = DEFAULT_JACOBI_TOL) -> JacobiReport:
    kind = GradedStructureKind.parse(kind)
    _compatible(kind, a, b, c)
    s_ca = bracket_sign(kind, c.grading, a.grading)
    s_ab = bracket_sign(kind, a.grading, b.grading)
    s_bc = bracket_sign(kind, b.grading, c.grading)
    total = (
        s_ca * graded_bracket(kind, a, graded_bracket(kind, b, c)).matrix
        + s_ab * graded_bracket(kind, b, graded_bracket(kind, c, a)).matrix
        + s_bc * graded_bracket(kind, c, graded_bracket(kind, a, b)).matrix
    )
    worst = float(np.max(np.abs(total)))
    return JacobiReport(worst, (a.label, b.label, c.label), worst <= tol, tol)


def check_jacobi_batch(kind, triples, backend: str | None = None) -> np.ndarray:
    """Jacobi residuals for many ``(a, b, c)`` triples at once."""
    kind = GradedStructureKind.parse(kind)
    triples = list(triples)
    if not triples:
        return np.zeros(0)
    for t in triples:
        _compatible(kind, *t)
    mats = [np.stack([t[i].matrix for t in triples]) for i in range(3)]
    s = lambda x, y: np.array([bracket_sign(kind, t[x].grading, t[y].grading) for t in triples], float)
    return kernels.jacobi_residuals(*mats, s(0, 1), s(1, 2), s(2, 0), backend=backend)


def sector_mask(grading: GradingLike) -> np.ndarray:
    """Boolean 4x4 mask of the entries allowed for ``grading``.

    Two-bit gradings give the four sector patterns.  A one-bit grading uses
    the first bit of the component gradings, i.e. parities (0, 0, 1, 1), so
    that even operators are block diagonal and odd ones block off-diagonal.
    """
    return _mask(GradingVector.parse(grading)).copy()


@lru_cache(maxsize=None)
def _mask(g: GradingVector) -> np.ndarray:
    if g.arity == 2:
        comps = COMPONENT_GRADINGS
    elif g.arity == 1:
        comps = tuple(GradingVector((c.bits[0],)) for c in COMPONENT_GRADINGS)
    else:
        raise DimensionError("4x4 sector patterns exist for one- and two-bit gradings only")
    m = np.array([[grade_add(r, c) == g for c in comps] for r in comps])
    m.setflags(write=False)
    return m


def _check_pattern_shape(op: GradedOperator) -> None:
    if op.dim != 4 or op.grading.arity != 2:
        raise DimensionError("sector pattern check needs a 4x4 operator with a two-bit grading")


def sector_pattern_check(op: GradedOperator, atol: float = 0.0) -> bool:
    _check_pattern_shape(op)
    outside = np.abs(op.matrix[~_mask(op.grading)])
    return bool(np.all(outside <= atol))


def locate_sector(matrix, atol: float = 0.0) -> GradingVector | None:
    """The unique sector whose pattern holds every nonzero entry, if any."""
    m = np.asarray(matrix)
    if m.shape != (4, 4):
        raise DimensionError("sector location needs a 4x4 matrix")
    nz = np.abs(m) > atol
    if not nz.any():
        return None
    hits = [g for g in sectors(GradedStructureKind.Z2XZ2_SUPER) if not np.any(nz & ~sector_mask(g))]
    return hits[0] if len(hits) == 1 else None


def closure_check(kind, generators, tol: float = 1e-9) -> bool:
    """True iff every pairwise bracket lies in the span of the generators."""
    kind = GradedStructureKind.parse(kind)
    gens = list(generators)
    if not gens:
        return True
    _compatible(kind, *gens)
    span = np.stack([g.matrix.ravel() for g in gens], axis=1)
    base_rank = np.linalg.matrix_rank(span, tol=tol) if np.any(span) else 0
    for a in gens:
        for b in gens:
            v = graded_bracket(kind, a, b).matrix.ravel()
            if not np.any(np.abs(v) > tol):
                continue
            aug = np.column_stack([span, v])
            if np.linalg.matrix_rank(aug, tol=tol) > base_rank:
                return False
    return True


def random_patterned(grading: GradingLike, rng: np.random.Generator, label: str = "",
                     complex_entries: bool = True) -> GradedOperator:
    """Random 4x4 operator obeying the sector pattern of ``grading``."""
    mask = _mask(GradingVector.parse(grading))
    m = rng.standard_normal((4, 4))
    if complex_entries:
        m = m + 1j * rng.standard_normal((4, 4))
    return GradedOperator(label or f"M{GradingVector.parse(grading)}", GradingVector.parse(grading), m * mask)
