"""Z2^n grading vectors, the three grading inner products and their tables.

Sectors of the two-bit structures are always listed in the order
``(00, 10, 01, 11)``; the one-bit structure uses ``(0, 1)``.
"""

from __future__ import annotations

import enum
import functools
import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

__all__ = [
    "DimensionError",
    "UnsupportedStructureError",
    "GradingVector",
    "GradedStructureKind",
    "inner_product",
    "bracket_sign",
    "grade_add",
    "commutation_table",
    "sectors",
    "has_fermionic_sector",
    "SECTOR_ORDER",
]


class DimensionError(ValueError):
    """Raised when grading arities or matrix shapes do not line up."""


class UnsupportedStructureError(ValueError):
    """Raised for grading arities that have no built-in structure kind."""


@dataclass(frozen=True, order=True)
class GradingVector:
    bits: tuple[int, ...]

    def __post_init__(self):
        bits = tuple(int(b) for b in self.bits)
        if len(bits) < 1:
            raise DimensionError("a grading vector needs at least one bit")
        if any(b not in (0, 1) for b in bits):
            raise ValueError(f"grading bits must be 0 or 1, got {self.bits!r}")
        object.__setattr__(self, "bits", bits)

    @classmethod
    def parse(cls, value: "GradingLike") -> "GradingVector":
        """Accept a GradingVector, a bit sequence, or a bit string like ``"10"``."""
        if isinstance(value, GradingVector):
            return value
        if isinstance(value, str):
            return cls(tuple(int(ch) for ch in value.strip()))
        if isinstance(value, int):
            return cls((value,))
        return cls(tuple(value))

    @classmethod
    def zero(cls, n: int) -> "GradingVector":
        return cls((0,) * n)

    @property
    def arity(self) -> int:
        return len(self.bits)

    def is_zero(self) -> bool:
        return not any(self.bits)

    def __add__(self, other: "GradingVector") -> "GradingVector":
        return grade_add(self, other)

    def __str__(self) -> str:
        return "".join(str(b) for b in self.bits)

    def __iter__(self):
        return iter(self.bits)

    def __len__(self) -> int:
        return len(self.bits)


GradingLike = GradingVector | Sequence[int] | str | int


class GradedStructureKind(enum.Enum):
    """The three inequivalent graded structures with at most two bits."""

    Z2_SUPER = "z2"
    Z2XZ2_SUPER = "z2z2-super"
    Z2XZ2_LIE = "z2z2-lie"

    @property
    def arity(self) -> int:
        return 1 if self is GradedStructureKind.Z2_SUPER else 2

    @classmethod
    def parse(cls, value: "GradedStructureKind | str") -> "GradedStructureKind":
        if isinstance(value, cls):
            return value
        key = str(value).strip().lower().replace("_", "-")
        aliases = {
            "z2": cls.Z2_SUPER,
            "z2-super": cls.Z2_SUPER,
            "z2super": cls.Z2_SUPER,
            "z2z2-super": cls.Z2XZ2_SUPER,
            "z2xz2-super": cls.Z2XZ2_SUPER,
            "z2xz2super": cls.Z2XZ2_SUPER,
            "z2z2-lie": cls.Z2XZ2_LIE,
            "z2xz2-lie": cls.Z2XZ2_LIE,
            "z2xz2lie": cls.Z2XZ2_LIE,
        }
        try:
            return aliases[key]
        except KeyError:
            raise UnsupportedStructureError(f"unknown structure kind {value!r}") from None

    @classmethod
    def for_arity(cls, n: int) -> list["GradedStructureKind"]:
        kinds = [k for k in cls if k.arity == n]
        if not kinds:
            raise UnsupportedStructureError(f"no built-in graded structure for n={n} bits")
        return kinds


SECTOR_ORDER = {
    1: ("0", "1"),
    2: ("00", "10", "01", "11"),
}


def sectors(kind: GradedStructureKind | str) -> list[GradingVector]:
    """Sectors of ``kind`` in the fixed table order."""
    kind = GradedStructureKind.parse(kind)
    return list(_sector_tuple(kind.arity))


@functools.lru_cache(maxsize=None)
def _sector_tuple(arity: int) -> tuple[GradingVector, ...]:
    return tuple(GradingVector.parse(s) for s in SECTOR_ORDER[arity])


def _check(kind: GradedStructureKind, *gs: GradingVector) -> None:
    for g in gs:
        if g.arity != kind.arity:
            raise DimensionError(
                f"{kind.value} needs {kind.arity}-bit gradings, got {g} ({g.arity} bits)"
            )


def inner_product(kind: GradedStructureKind | str, a: GradingLike, b: GradingLike) -> int:
    """Grading inner product mod 2; 1 means the pair anticommutes."""
    kind = GradedStructureKind.parse(kind)
    a, b = GradingVector.parse(a), GradingVector.parse(b)
    _check(kind, a, b)
    x, y = a.bits, b.bits
    if kind is GradedStructureKind.Z2_SUPER:
        return x[0] & y[0]
    if kind is GradedStructureKind.Z2XZ2_SUPER:
        return (x[0] * y[0] + x[1] * y[1]) % 2
    # a1*b2 - a2*b1 and a1*b2 + a2*b1 agree mod 2
    return (x[0] * y[1] + x[1] * y[0]) % 2


def bracket_sign(kind: GradedStructureKind | str, a: GradingLike, b: GradingLike) -> int:
    """``(-1)**inner_product``: +1 for a commutator, -1 for an anticommutator."""
    return -1 if inner_product(kind, a, b) else 1


def grade_add(a: GradingLike, b: GradingLike) -> GradingVector:
    a, b = GradingVector.parse(a), GradingVector.parse(b)
    if a.arity != b.arity:
        raise DimensionError(f"cannot add gradings of arity {a.arity} and {b.arity}")
    return GradingVector(tuple(x ^ y for x, y in zip(a.bits, b.bits)))


def grade_sum(gs: Iterable[GradingLike], n: int) -> GradingVector:
    total = GradingVector.zero(n)
    for g in gs:
        total = grade_add(total, g)
    return total


def commutation_table(kind: GradedStructureKind | str) -> list[list[int]]:
    """Bit table of inner products, rows and columns in the fixed sector order."""
    sec = sectors(kind)
    return [[inner_product(kind, a, b) for b in sec] for a in sec]


def has_fermionic_sector(kind: GradedStructureKind | str) -> bool:
    """True if some sector self-anticommutes (a 1 on the table diagonal)."""
    sec = sectors(kind)
    return any(inner_product(kind, g, g) for g in sec)


def all_gradings(n: int) -> list[GradingVector]:
    """Every n-bit grading vector; n=1, 2 follow the table order."""
    if n in SECTOR_ORDER:
        return [GradingVector.parse(s) for s in SECTOR_ORDER[n]]
    return [GradingVector(bits[::-1]) for bits in itertools.product((0, 1), repeat=n)]
