"""Exact arithmetic used by the symbolic and state-census layers.

Two small types live here:

* :class:`QSqrt2` -- numbers ``p + q*sqrt(2)`` with rational ``p, q``; enough
  to write every normalised two-particle state exactly.
* :class:`Poly` -- sparse multivariate polynomials with rational
  coefficients, for graded Jacobi constraints of low degree.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

__all__ = ["QSqrt2", "SQRT2", "exact_sqrt", "Poly", "rational_rank"]


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


_QS_RE = re.compile(r"(?P<p>[+-]?\d+(?:/\d+)?)?(?:(?(p)\+)(?P<q>[+-]?\d+(?:/\d+)?)\*sqrt2)?")


class QSqrt2:
    __slots__ = ("p", "q")

    def __init__(self, p=0, q=0):
        if isinstance(p, QSqrt2):
            p, q = p.p, p.q
        self.p = _frac(p)
        self.q = _frac(q)

    @staticmethod
    def _coerce(x) -> "QSqrt2":
        return x if isinstance(x, QSqrt2) else QSqrt2(x)

    def __add__(self, other):
        o = self._coerce(other)
        return QSqrt2(self.p + o.p, self.q + o.q)

    __radd__ = __add__

    def __neg__(self):
        return QSqrt2(-self.p, -self.q)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        return QSqrt2(self.p * o.p + 2 * self.q * o.q, self.p * o.q + self.q * o.p)

    __rmul__ = __mul__

    def conjugate_root(self) -> "QSqrt2":
        return QSqrt2(self.p, -self.q)

    def norm(self) -> Fraction:
        return self.p * self.p - 2 * self.q * self.q

    def __truediv__(self, other):
        o = self._coerce(other)
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt 2)")
        num = self * o.conjugate_root()
        return QSqrt2(num.p / n, num.q / n)

    def __eq__(self, other):
        try:
            o = self._coerce(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self.p == o.p and self.q == o.q

    def __hash__(self):
        return hash((self.p, self.q))

    def __bool__(self):
        return bool(self.p) or bool(self.q)

    def __float__(self):
        return float(self.p) + float(self.q) * math.sqrt(2.0)

    def __complex__(self):
        return complex(float(self))

    def __repr__(self):
        if not self.q:
            return f"QSqrt2({self.p})"
        return f"QSqrt2({self.p} + {self.q}*sqrt2)"

    def __str__(self):
        if not self.q:
            return str(self.p)
        if not self.p:
            return f"{self.q}*sqrt2"
        return f"{self.p}+{self.q}*sqrt2"

    @classmethod
    def parse(cls, text: str) -> "QSqrt2":
        """Inverse of ``str``: ``"1/2"``, ``"-1/2*sqrt2"``, ``"1+-1/2*sqrt2"``."""
        m = _QS_RE.fullmatch(text.replace(" ", ""))
        if not m or not (m.group("p") or m.group("q")):
            raise ValueError(f"not an element of Q(sqrt 2): {text!r}")
        return cls(Fraction(m.group("p") or 0), Fraction(m.group("q") or 0))


SQRT2 = QSqrt2(0, 1)


def exact_sqrt(x) -> QSqrt2:
    """Square root of a nonnegative rational, when it lies in Q(sqrt 2)."""
    x = _frac(x)
    if x < 0:
        raise ValueError("negative argument")
    for factor, unit in ((1, QSqrt2(1)), (2, SQRT2)):
        r = x / factor
        num, den = math.isqrt(r.numerator), math.isqrt(r.denominator)
        if num * num == r.numerator and den * den == r.denominator:
            return unit * Fraction(num, den)
    raise ValueError(f"sqrt({x}) is not in Q(sqrt 2)")


class Poly:
    """Sparse polynomial ``{exponent tuple: Fraction}`` over named variables."""

    __slots__ = ("names", "terms")

    def __init__(self, names: Sequence[str], terms: Mapping[tuple[int, ...], object] | None = None):
        self.names = tuple(names)
        self.terms: dict[tuple[int, ...], Fraction] = {}
        for mono, c in (terms or {}).items():
            c = _frac(c)
            if c:
                self.terms[tuple(mono)] = c

    @classmethod
    def const(cls, names, c) -> "Poly":
        return cls(names, {(0,) * len(names): c})

    @classmethod
    def var(cls, names, name: str) -> "Poly":
        names = tuple(names)
        mono = tuple(1 if n == name else 0 for n in names)
        if sum(mono) != 1:
            raise KeyError(name)
        return cls(names, {mono: 1})

    def _same(self, other: "Poly"):
        if self.names != other.names:
            raise ValueError("polynomials over different variables")

    def _lift(self, other) -> "Poly":
        if isinstance(other, Poly):
            self._same(other)
            return other
        return Poly.const(self.names, other)

    def __add__(self, other):
        o = self._lift(other)
        out = dict(self.terms)
        for m, c in o.terms.items():
            out[m] = out.get(m, 0) + c
        return Poly(self.names, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.names, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        o = self._lift(other)
        out: dict[tuple[int, ...], Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in o.terms.items():
                m = tuple(x + y for x, y in zip(m1, m2))
                out[m] = out.get(m, 0) + c1 * c2
        return Poly(self.names, out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.names == other.names and self.terms == other.terms
        return self == self._lift(other)

    def __hash__(self):
        return hash((self.names, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def __call__(self, values: Mapping[str, object] | Sequence[object]):
        if isinstance(values, Mapping):
            values = [values[n] for n in self.names]
        total = 0
        for mono, c in self.terms.items():
            t = c
            for v, e in zip(values, mono):
                if e:
                    t = t * v**e
            total = total + t
        return total

    def monomials(self) -> list[tuple[int, ...]]:
        return sorted(self.terms)

    def normalized(self) -> "Poly":
        """Scale so the leading (largest) monomial has coefficient 1."""
        if not self.terms:
            return self
        lead = self.terms[max(self.terms)]
        return Poly(self.names, {m: c / lead for m, c in self.terms.items()})

    def __repr__(self):
        return f"Poly({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for mono in sorted(self.terms, reverse=True):
            c = self.terms[mono]
            factors = [n if e == 1 else f"{n}^{e}" for n, e in zip(self.names, mono) if e]
            body = "*".join(factors)
            if not body:
                parts.append(str(c))
            elif c == 1:
                parts.append(body)
            elif c == -1:
                parts.append("-" + body)
            else:
                parts.append(f"{c}*{body}")
        return " + ".join(parts).replace("+ -", "- ")


def rational_rank(rows: Iterable[Sequence[object]]) -> int:
    """Rank of a rational matrix by exact Gaussian elimination."""
    mat = [[_frac(x) for x in row] for row in rows]
    if not mat:
        return 0
    rank, ncols = 0, len(mat[0])
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(mat)) if mat[r][col] != 0), None)
        if pivot is None:
            continue
        mat[rank], mat[pivot] = mat[pivot], mat[rank]
        for r in range(len(mat)):
            if r != rank and mat[r][col] != 0:
                f = mat[r][col] / mat[rank][col]
                mat[r] = [x - f * y for x, y in zip(mat[r], mat[rank])]
        rank += 1
    return rank
