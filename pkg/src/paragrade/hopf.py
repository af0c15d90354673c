"""Graded Hopf structure on formal operator words.

Words are tuples of generator names kept in the order they were written; no
rewriting to a normal order is attempted.  All exchange statistics live in
the braiding sign ``(-1)**eps(B, C)`` applied whenever two tensor factors
cross during :func:`braided_multiply`.  ``eps`` of composite words is the
mod-2 sum of the pairwise generator inner products, which is the same as the
inner product of the summed gradings.

Coefficients stay exact (``Fraction``) until :func:`represent` turns a tensor
word into a dense matrix.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce
from typing import Iterable, Mapping, Sequence

import numpy as np

from .grading import (
    DimensionError,
    GradedStructureKind,
    GradingVector,
    grade_sum,
    inner_product,
)

__all__ = [
    "Alphabet",
    "OperatorWord",
    "TensorWord",
    "Representation",
    "coproduct",
    "counit",
    "antipode",
    "braided_multiply",
    "braid",
    "n_fold_coproduct",
    "apply_coproduct_at",
    "multiply",
    "represent",
    "parse_word_expression",
    "all_words",
    "axiom_failures",
]

Word = tuple[str, ...]


def _coeff(c):
    if type(c) is Fraction:
        return c
    if isinstance(c, (int, Fraction)):
        return Fraction(c)
    return c


@dataclass(frozen=True)
class Alphabet:
    """Named generators with gradings under one structure kind."""

    kind: GradedStructureKind
    gradings: Mapping[str, GradingVector]

    @classmethod
    def of(cls, kind, gradings: Mapping[str, object]) -> "Alphabet":
        kind = GradedStructureKind.parse(kind)
        gs = {str(k): GradingVector.parse(v) for k, v in gradings.items()}
        for name, g in gs.items():
            if g.arity != kind.arity:
                raise DimensionError(f"generator {name!r} has {g.arity} bits, {kind.value} needs {kind.arity}")
        return cls(kind, gs)

    def degree(self, word: Word) -> GradingVector:
        return _degree(self, tuple(word))

    def eps(self, u: Word, v: Word) -> int:
        """Braiding exponent between two words (0 or 1)."""
        return _eps(self, tuple(u), tuple(v))

    def __hash__(self):
        h = self.__dict__.get("_hash")
        if h is None:
            h = hash((self.kind, tuple(sorted(self.gradings.items()))))
            object.__setattr__(self, "_hash", h)
        return h


@lru_cache(maxsize=65536)
def _degree(alph: Alphabet, word: Word) -> GradingVector:
    try:
        return grade_sum((alph.gradings[g] for g in word), alph.kind.arity)
    except KeyError as exc:
        raise KeyError(f"unknown generator {exc.args[0]!r}") from None


@lru_cache(maxsize=65536)
def _eps(alph: Alphabet, u: Word, v: Word) -> int:
    return inner_product(alph.kind, _degree(alph, u), _degree(alph, v))


class _Combination:
    """Shared dict-of-terms behaviour for word and tensor-word combinations."""

    __slots__ = ("alphabet", "terms")

    def __init__(self, alphabet: Alphabet, terms=None):
        self.alphabet = alphabet
        clean = {}
        for key, c in (terms or {}).items():
            c = _coeff(c)
            if c != 0:
                clean[self._key(key)] = c
        self.terms = clean

    def _key(self, key):
        raise NotImplementedError

    def _new(self, terms):
        return type(self)(self.alphabet, terms)

    def _merge(self, other, sign=1):
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + sign * c
        return self._new(out)

    def __add__(self, other):
        return self._merge(other)

    def __sub__(self, other):
        return self._merge(other, -1)

    def __neg__(self):
        return self._new({k: -c for k, c in self.terms.items()})

    def scale(self, c):
        c = _coeff(c)
        return self._new({k: c * v for k, v in self.terms.items()})

    def __rmul__(self, c):
        return self.scale(c)

    def __eq__(self, other):
        return type(self) is type(other) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: self._sort_key(kv[0]))

    def __len__(self):
        return len(self.terms)


class OperatorWord(_Combination):
    """Linear combination of generator words; the empty word is the unit."""

    def _key(self, key):
        return tuple(key)

    @staticmethod
    def _sort_key(word):
        return (len(word), word)

    @classmethod
    def unit(cls, alphabet: Alphabet, coeff=1) -> "OperatorWord":
        return cls(alphabet, {(): coeff})

    @classmethod
    def gen(cls, alphabet: Alphabet, *names: str, coeff=1) -> "OperatorWord":
        for n in names:
            if n not in alphabet.gradings:
                raise KeyError(f"unknown generator {n!r}")
        return cls(alphabet, {tuple(names): coeff})

    def __mul__(self, other):
        if not isinstance(other, OperatorWord):
            return self.scale(other)
        out: dict[Word, object] = {}
        for u, cu in self.terms.items():
            for v, cv in other.terms.items():
                out[u + v] = out.get(u + v, 0) + cu * cv
        return OperatorWord(self.alphabet, out)

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*{'.'.join(w) or '1'}" for w, c in self.sorted_terms())


class TensorWord(_Combination):
    """Linear combination of k-fold tensor products of words."""

    __slots__ = ("arity",)

    def __init__(self, alphabet: Alphabet, terms=None, arity: int | None = None):
        super().__init__(alphabet, terms)
        arities = {len(k) for k in self.terms}
        if len(arities) > 1:
            raise DimensionError(f"mixed tensor arities {sorted(arities)}")
        if arities:
            found = arities.pop()
            if arity is not None and arity != found:
                raise DimensionError(f"declared arity {arity} but terms have arity {found}")
            arity = found
        self.arity = arity

    def _key(self, key):
        return tuple(tuple(w) for w in key)

    def _new(self, terms):
        return TensorWord(self.alphabet, terms, self.arity)

    @staticmethod
    def _sort_key(key):
        return tuple((len(w), w) for w in key)

    @classmethod
    def unit(cls, alphabet: Alphabet, k: int) -> "TensorWord":
        return cls(alphabet, {((),) * k: 1}, k)

    @classmethod
    def simple(cls, alphabet: Alphabet, *factors: Sequence[str], coeff=1) -> "TensorWord":
        return cls(alphabet, {tuple(tuple(f) for f in factors): coeff}, len(factors))

    def _merge(self, other, sign=1):
        if self.arity is not None and other.arity is not None and self.arity != other.arity:
            raise DimensionError(f"cannot add arity {self.arity} and {other.arity} tensor words")
        out = super()._merge(other, sign)
        out.arity = self.arity if self.arity is not None else other.arity
        return out

    def __mul__(self, other):
        if isinstance(other, TensorWord):
            return braided_multiply(self, other)
        return self.scale(other)

    def __repr__(self):
        if not self.terms:
            return "0"
        fmt = lambda w: ".".join(w) or "1"
        return " + ".join(f"{c}*({' (x) '.join(map(fmt, k))})" for k, c in self.sorted_terms())

    def to_json(self) -> dict:
        return {
            "arity": self.arity,
            "kind": self.alphabet.kind.value,
            "generators": {k: str(v) for k, v in sorted(self.alphabet.gradings.items())},
            "terms": [
                {"coeff": _coeff_json(c), "factors": [list(w) for w in key]}
                for key, c in self.sorted_terms()
            ],
        }


def _coeff_json(c):
    if isinstance(c, Fraction):
        return str(c) if c.denominator != 1 else c.numerator
    if isinstance(c, complex):
        return [c.real, c.imag]
    return c


def braided_multiply(x: TensorWord, y: TensorWord) -> TensorWord:
    """Factorwise product; factor ``y_j`` crossing ``x_i`` (i > j) costs ``(-1)**eps``."""
    if x.alphabet != y.alphabet:
        raise ValueError("tensor words over different alphabets")
    if x.arity != y.arity:
        raise DimensionError(f"arity mismatch: {x.arity} vs {y.arity}")
    alph = x.alphabet
    out: dict = {}
    for kx, cx in x.terms.items():
        for ky, cy in y.terms.items():
            e = 0
            for i in range(1, len(kx)):
                for j in range(i):
                    e ^= alph.eps(kx[i], ky[j])
            key = tuple(u + v for u, v in zip(kx, ky))
            c = cx * cy
            out[key] = out.get(key, 0) + (-c if e else c)
    return TensorWord(alph, out, x.arity)


def braid(t: TensorWord, i: int = 0) -> TensorWord:
    """The crossing ``Psi`` on factors ``i, i+1``: ``B (x) C -> (-1)**eps(B, C) C (x) B``.

    Signs are an involution: ``braid(braid(t, i), i) == t`` for every input.
    """
    if t.arity is None or not 0 <= i < t.arity - 1:
        raise DimensionError(f"cannot cross factors {i},{i + 1} of an arity-{t.arity} tensor word")
    out: dict = {}
    for key, c in t.terms.items():
        b, cc = key[i], key[i + 1]
        nk = key[:i] + (cc, b) + key[i + 2:]
        c = -c if t.alphabet.eps(b, cc) else c
        out[nk] = out[nk] + c if nk in out else c
    return TensorWord(t.alphabet, out, t.arity)


def _delta_generator(alph: Alphabet, g: str) -> TensorWord:
    return TensorWord(alph, {((), (g,)): 1, ((g,), ()): 1}, 2)


def coproduct(w: OperatorWord) -> TensorWord:
    """Unit goes to ``1 (x) 1``, generators are primitive, extended multiplicatively."""
    alph = w.alphabet
    total = TensorWord(alph, {}, 2)
    for word, c in w.terms.items():
        term = TensorWord.unit(alph, 2)
        for g in word:
            term = braided_multiply(term, _delta_generator(alph, g))
        total = total + term.scale(c)
    return total


def counit(w: OperatorWord):
    return w.terms.get((), Fraction(0))


def antipode(w: OperatorWord) -> OperatorWord:
    """Braided antihomomorphism with ``S(g) = -g``.

    ``S(g1...gm) = (-1)**m * (sign of reversing the word) * gm...g1``, where the
    reversal sign collects ``(-1)**eps(gi, gj)`` for every pair ``i < j``.
    """
    alph = w.alphabet
    out: dict[Word, object] = {}
    for word, c in w.terms.items():
        e = len(word) % 2
        for i, j in itertools.combinations(range(len(word)), 2):
            e ^= alph.eps((word[i],), (word[j],))
        rev = word[::-1]
        out[rev] = out.get(rev, 0) + (-c if e else c)
    return OperatorWord(alph, out)


def multiply(t: TensorWord) -> OperatorWord:
    """Concatenate the factors of every tensor term."""
    out: dict[Word, object] = {}
    for key, c in t.terms.items():
        word = tuple(itertools.chain.from_iterable(key))
        out[word] = out.get(word, 0) + c
    return OperatorWord(t.alphabet, out)


def map_factor(t: TensorWord, i: int, fn) -> TensorWord:
    """Apply a linear map ``OperatorWord -> OperatorWord | scalar`` on factor ``i``.

    A scalar result drops the factor.
    """
    out: dict = {}
    arity = None
    for key, c in t.terms.items():
        img = fn(OperatorWord(t.alphabet, {key[i]: 1}))
        if isinstance(img, OperatorWord):
            for w, cw in img.terms.items():
                nk = key[:i] + (w,) + key[i + 1:]
                out[nk] = out.get(nk, 0) + c * cw
            arity = t.arity
        else:
            nk = key[:i] + key[i + 1:]
            out[nk] = out.get(nk, 0) + c * img
            arity = t.arity - 1
    return TensorWord(t.alphabet, out, arity if arity is not None else t.arity)


def apply_coproduct_at(t: TensorWord, i: int) -> TensorWord:
    """``id (x) ... (x) Delta (x) ... (x) id`` acting on factor ``i``."""
    out: dict = {}
    for key, c in t.terms.items():
        d = coproduct(OperatorWord(t.alphabet, {key[i]: 1}))
        for dk, dc in d.terms.items():
            nk = key[:i] + dk + key[i + 1:]
            out[nk] = out.get(nk, 0) + c * dc
    return TensorWord(t.alphabet, out, t.arity + 1)


def n_fold_coproduct(w: OperatorWord, n: int, side: str = "left") -> TensorWord:
    """Iterated coproduct with ``n + 1`` tensor factors.

    ``side="left"`` expands the first factor each step, ``"right"`` the last.
    Coassociativity makes both agree.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    t = coproduct(w)
    for _ in range(n - 1):
        t = apply_coproduct_at(t, 0 if side == "left" else t.arity - 1)
    return t


@dataclass
class Representation:
    """Matrices for generator names on a common space.

    ``basis_gradings`` (optional) grades the basis vectors; it is needed only
    for the Koszul-signed evaluation in :func:`represent`.
    """

    matrices: Mapping[str, np.ndarray]
    dim: int | None = None
    basis_gradings: Sequence[GradingVector] | None = None

    def __post_init__(self):
        mats = {k: np.asarray(v, dtype=np.complex128) for k, v in self.matrices.items()}
        dims = {m.shape for m in mats.values()}
        if self.dim is None:
            if len(dims) != 1:
                raise DimensionError(f"matrices have differing shapes {sorted(dims)}")
            self.dim = next(iter(dims))[0]
        for name, m in mats.items():
            if m.shape != (self.dim, self.dim):
                raise DimensionError(f"{name!r} has shape {m.shape}, expected {(self.dim, self.dim)}")
        self.matrices = mats
        if self.basis_gradings is not None:
            self.basis_gradings = [GradingVector.parse(g) for g in self.basis_gradings]
            if len(self.basis_gradings) != self.dim:
                raise DimensionError("one basis grading per basis vector is required")

    def word_matrix(self, word: Word) -> np.ndarray:
        out = np.eye(self.dim, dtype=np.complex128)
        for g in word:
            try:
                out = out @ self.matrices[g]
            except KeyError:
                raise KeyError(f"generator {g!r} is not mapped by the representation") from None
        return out


def _koszul_diagonal(alph: Alphabet, key, r: Representation) -> np.ndarray:
    # factor j passes basis vectors of factors i < j
    k, dim = len(key), r.dim
    e = np.zeros((dim,) * k, dtype=np.int64)
    for j in range(1, k):
        dj = alph.degree(key[j])
        per = np.array([inner_product(alph.kind, dj, g) for g in r.basis_gradings], dtype=np.int64)
        for i in range(j):
            shape = [1] * k
            shape[i] = dim
            e = e ^ per.reshape(shape)
    return np.where(e.ravel() % 2 == 1, -1.0, 1.0)


def represent(t: TensorWord, r: Representation, koszul: bool = False) -> np.ndarray:
    """Dense matrix of a tensor word on the ``arity``-fold tensor power.

    Without ``koszul`` every term becomes a plain Kronecker product, the
    braiding signs having been spent inside ``t``.  With ``koszul`` the
    factors also pick up ``(-1)**eps`` when passing graded basis vectors,
    which makes ``represent`` multiplicative for braided products.
    """
    if t.arity is None:
        raise DimensionError("empty tensor word has no arity")
    if koszul and r.basis_gradings is None:
        raise ValueError("koszul evaluation needs basis gradings")
    size = r.dim ** t.arity
    out = np.zeros((size, size), dtype=np.complex128)
    for key, c in t.terms.items():
        m = reduce(np.kron, (r.word_matrix(w) for w in key))
        if koszul:
            m = m * _koszul_diagonal(t.alphabet, key, r)[None, :]
        out += complex(c) * m
    return out


_TERM = re.compile(r"\s*([+-])?\s*([^+-]+)")


def parse_word_expression(text: str, alphabet: Alphabet) -> OperatorWord:
    """Parse ``"2*g*h - h + 1/2*1"``-style input into an operator word.

    Factors are separated by ``*`` or spaces; a bare number is a coefficient
    and ``1`` alone is the unit word.
    """
    total = OperatorWord(alphabet, {})
    text = text.strip()
    if not text:
        raise ValueError("empty expression")
    pos = 0
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse expression near {text[pos:]!r}")
        sign = -1 if m.group(1) == "-" else 1
        coeff = Fraction(sign)
        word: list[str] = []
        for tok in re.split(r"[*\s]+", m.group(2).strip()):
            if not tok:
                continue
            if re.fullmatch(r"\d+(/\d+)?", tok):
                coeff *= Fraction(tok)
            elif tok in alphabet.gradings:
                word.append(tok)
            else:
                raise KeyError(f"unknown generator {tok!r}")
        total = total + OperatorWord(alphabet, {tuple(word): coeff})
        pos = m.end()
    return total


def all_words(alphabet: Alphabet, max_len: int) -> Iterable[Word]:
    names = sorted(alphabet.gradings)
    for n in range(max_len + 1):
        yield from itertools.product(names, repeat=n)


def axiom_failures(alphabet: Alphabet, max_len: int = 3) -> dict[str, list[Word]]:
    """Words of length ``<= max_len`` violating a Hopf identity, per identity.

    Checked exactly: coassociativity, both counit laws and both antipode laws
    ``m(S (x) id)Delta(w) = m(id (x) S)Delta(w) = counit(w) 1``.
    """
    fails: dict[str, list[Word]] = {
        "coassociativity": [], "counit_left": [], "counit_right": [],
        "antipode_left": [], "antipode_right": [],
    }
    for word in all_words(alphabet, max_len):
        w = OperatorWord(alphabet, {word: 1})
        d = coproduct(w)
        if apply_coproduct_at(d, 0) != apply_coproduct_at(d, 1):
            fails["coassociativity"].append(word)
        for name, i in (("counit_left", 0), ("counit_right", 1)):
            if multiply(map_factor(d, i, counit)) != w:
                fails[name].append(word)
        unit = OperatorWord.unit(alphabet, counit(w))
        for name, i in (("antipode_left", 0), ("antipode_right", 1)):
            if multiply(map_factor(d, i, antipode)) != unit:
                fails[name].append(word)
    return fails
