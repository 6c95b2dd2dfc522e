"""Divided power algebra of the free module (Z/p^r)^d.

Gamma_k has basis m^[i] = m_1^[i_1] ... m_d^[i_d] over multi-indices i of
weight k. On basis vectors the product is

    m^[i] * m^[j] = prod_l C(i_l + j_l, i_l) * m^[i+j],

which is what m^k = k! m^[k] forces over a torsion-free base.
"""

from __future__ import annotations

import math
from collections import Counter, defaultdict
from dataclasses import dataclass
from functools import lru_cache
from typing import Mapping, Sequence

from .measures import Point, ShapeMismatch
from .padic import PrecisionExhausted, PrecisionMismatch, Residue, check_level, check_prime

MultiIndex = tuple[int, ...]
Word = tuple[int, ...]


def gamma_rank(d: int, k: int) -> int:
    """Rank of Gamma_k of a free module of rank d."""
    if d < 1 or k < 0:
        raise ValueError("need d >= 1 and k >= 0")
    return math.comb(k + d - 1, k)


@lru_cache(maxsize=None)
def multi_indices(d: int, k: int) -> tuple[MultiIndex, ...]:
    """All weight-k indices in dimension d, in descending lexicographic order."""
    if d == 1:
        return ((k,),)
    out = []
    for first in range(k, -1, -1):
        out.extend((first,) + rest for rest in multi_indices(d - 1, k - first))
    return tuple(out)


def weight(i: MultiIndex) -> int:
    return sum(i)


def _order(coeffs: Mapping[MultiIndex, int]) -> dict[MultiIndex, int]:
    return dict(sorted(coeffs.items(), reverse=True))


@lru_cache(maxsize=None)
def _product_coefficient(i: MultiIndex, j: MultiIndex) -> int:
    return math.prod(math.comb(a + b, a) for a, b in zip(i, j))


class GammaElement:
    """Homogeneous element of degree k of Gamma over Z/p^r in d variables."""

    __slots__ = ("p", "r", "d", "k", "_coeffs")

    def __init__(self, p: int, r: int, d: int, k: int, coeffs: Mapping[Sequence[int], int] | None = None):
        check_prime(p)
        check_level(r)
        if d < 1 or k < 0:
            raise ValueError("need d >= 1 and k >= 0")
        self.p, self.r, self.d, self.k = p, r, d, k
        m = p**r
        acc: dict[MultiIndex, int] = defaultdict(int)
        for i, c in (coeffs or {}).items():
            i = tuple(int(v) for v in i)
            if len(i) != d or min(i) < 0 or sum(i) != k:
                raise ValueError(f"index {i} is not a weight-{k} index in dimension {d}")
            acc[i] += int(c)
        self._coeffs = {i: c % m for i, c in acc.items() if c % m}

    @classmethod
    def _trusted(cls, p: int, r: int, d: int, k: int, coeffs: Mapping[MultiIndex, int]) -> GammaElement:
        # indices already canonical and of weight k; only reduce coefficients
        obj = cls.__new__(cls)
        obj.p, obj.r, obj.d, obj.k = p, r, d, k
        m = p**r
        obj._coeffs = {i: c % m for i, c in coeffs.items() if c % m}
        return obj

    @classmethod
    def unit(cls, p: int, r: int, d: int) -> GammaElement:
        return cls(p, r, d, 0, {(0,) * d: 1})

    @classmethod
    def zero(cls, p: int, r: int, d: int, k: int) -> GammaElement:
        return cls(p, r, d, k)

    @classmethod
    def basis(cls, p: int, r: int, i: Sequence[int]) -> GammaElement:
        return cls(p, r, len(i), sum(i), {tuple(i): 1})

    @property
    def modulus(self) -> int:
        return self.p**self.r

    @property
    def coeffs(self) -> Mapping[MultiIndex, int]:
        return _order(self._coeffs)

    def items(self):
        """(index, coefficient) pairs in descending lexicographic index order."""
        return _order(self._coeffs).items()

    def __getitem__(self, i: Sequence[int]) -> Residue:
        return Residue(self.p, self.r, self._coeffs.get(tuple(i), 0))

    def dense(self) -> list[int]:
        """Coefficient vector in the order of :func:`multi_indices`."""
        return [self._coeffs.get(i, 0) for i in multi_indices(self.d, self.k)]

    def __eq__(self, other):
        if not isinstance(other, GammaElement):
            return NotImplemented
        return (self.p, self.r, self.d, self.k, self._coeffs) == (
            other.p, other.r, other.d, other.k, other._coeffs
        )

    def __hash__(self):
        return hash((self.p, self.r, self.d, self.k, frozenset(self._coeffs.items())))

    def __repr__(self):
        terms = " + ".join(f"{c}*m^{list(i)}" for i, c in self.items()) or "0"
        return f"GammaElement(p={self.p}, r={self.r}, d={self.d}, k={self.k}: {terms})"

    def _like(self, coeffs) -> GammaElement:
        return GammaElement._trusted(self.p, self.r, self.d, self.k, coeffs)

    def _check_ring(self, other: GammaElement):
        if (self.p, self.r) != (other.p, other.r):
            raise PrecisionMismatch("divided-power elements at different (p, r)")
        if self.d != other.d:
            raise ShapeMismatch(f"dimensions {self.d} and {other.d}")

    def __add__(self, other: GammaElement) -> GammaElement:
        self._check_ring(other)
        if self.k != other.k:
            raise ShapeMismatch(f"cannot add degrees {self.k} and {other.k}")
        acc = dict(self._coeffs)
        for i, c in other._coeffs.items():
            acc[i] = acc.get(i, 0) + c
        return self._like(acc)

    def __neg__(self) -> GammaElement:
        return self._like({i: -c for i, c in self._coeffs.items()})

    def __sub__(self, other: GammaElement) -> GammaElement:
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, GammaElement):
            return gamma_product(self, other)
        if isinstance(other, Residue):
            if (other.p, other.r) != (self.p, self.r):
                raise PrecisionMismatch("scalar precision differs")
            other = other.value
        if isinstance(other, int):
            return self._like({i: c * other for i, c in self._coeffs.items()})
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Residue)):
            return self * other
        return NotImplemented

    def is_zero(self) -> bool:
        return not self._coeffs

    def reduce_precision(self, r: int) -> GammaElement:
        """Base change to Z/p^{r'} for r' <= r."""
        check_level(r)
        if r > self.r:
            raise PrecisionExhausted(r, self.r)
        return GammaElement._trusted(self.p, r, self.d, self.k, self._coeffs)


def gamma_product(a: GammaElement, b: GammaElement) -> GammaElement:
    a._check_ring(b)
    acc: dict[MultiIndex, int] = defaultdict(int)
    for i, x in a._coeffs.items():
        for j, y in b._coeffs.items():
            acc[tuple(u + v for u, v in zip(i, j))] += _product_coefficient(i, j) * x * y
    return GammaElement._trusted(a.p, a.r, a.d, a.k + b.k, acc)


def gamma_power(a: GammaElement, n: int) -> GammaElement:
    """n-fold product a * ... * a (the unit for n = 0)."""
    out = GammaElement.unit(a.p, a.r, a.d)
    for _ in range(n):
        out = gamma_product(out, a)
    return out


def _vector_coords(h) -> tuple[int, int, tuple[int, ...]]:
    if isinstance(h, Point):
        return h.p, h.r, h.coords
    if isinstance(h, GammaElement):
        if h.k != 1:
            raise ValueError("only degree-1 elements are vectors")
        return h.p, h.r, tuple(h[(1 if j == l else 0 for j in range(h.d))].value for l in range(h.d))
    raise TypeError(f"expected a Point or degree-1 GammaElement, got {type(h).__name__}")


def vector(p: int, r: int, coords: Sequence[int]) -> GammaElement:
    """The degree-1 element sum_j a_j m_j (Gamma_1 = M)."""
    d = len(coords)
    return GammaElement(p, r, d, 1, {tuple(1 if j == l else 0 for j in range(d)): a for l, a in enumerate(coords)})


def divided_power_of_vector(h, k: int) -> GammaElement:
    """(sum_j a_j m_j)^[k] = sum over |i| = k of prod_j a_j^{i_j} m^[i]."""
    p, r, a = _vector_coords(h)
    d, m = len(a), p**r
    coeffs = {}
    for i in multi_indices(d, k):
        c = 1
        for aj, ij in zip(a, i):
            if ij:
                c = c * pow(aj, ij, m) % m
        coeffs[i] = c
    return GammaElement._trusted(p, r, d, k, coeffs)


def sym_to_gamma(exponents: Sequence[int], coefficient: int, p: int, r: int) -> GammaElement:
    """Image of c * m^e under Sym -> Gamma, which sends m^k to k! m^[k]."""
    e = tuple(int(v) for v in exponents)
    scale = math.prod(math.factorial(v) for v in e)
    return GammaElement(p, r, len(e), sum(e), {e: coefficient * scale})


@lru_cache(maxsize=None)
def _distinct_words(i: MultiIndex) -> tuple[Word, ...]:
    """Distinct arrangements of the multiset with i_j copies of letter j+1, in lex order."""
    counts = Counter({j + 1: n for j, n in enumerate(i) if n})
    length = sum(i)
    out: list[Word] = []

    def rec(prefix):
        if len(prefix) == length:
            out.append(tuple(prefix))
            return
        for a in sorted(counts):
            if counts[a]:
                counts[a] -= 1
                prefix.append(a)
                rec(prefix)
                prefix.pop()
                counts[a] += 1

    rec([])
    return tuple(out)


def gamma_to_tsym(a: GammaElement) -> dict[Word, int]:
    """Image in symmetric tensors: m^[i] goes to the sum of its distinct words.

    Letters are 1..d; the result maps words of length k to coefficients mod p^r.
    """
    m = a.modulus
    out: dict[Word, int] = defaultdict(int)
    for i, c in a.items():
        for w in _distinct_words(i):
            out[w] += c
    return {w: c % m for w, c in sorted(out.items()) if c % m}


def tsym_to_gamma(t: Mapping[Word, int], p: int, r: int, d: int, k: int) -> GammaElement:
    """Inverse of :func:`gamma_to_tsym` on symmetric tensors.

    Reads off the coefficient of the sorted word of each index; raises if the
    tensor is not symmetric.
    """
    m = p**r
    t = {tuple(w): c % m for w, c in t.items() if c % m}
    coeffs = {}
    for i in multi_indices(d, k):
        words = _distinct_words(i)
        vals = {t.get(w, 0) for w in words}
        if len(vals) != 1:
            raise ValueError("tensor is not symmetric")
        coeffs[i] = vals.pop()
    covered = {w for i in multi_indices(d, k) for w in _distinct_words(i)}
    if set(t) - covered:
        raise ValueError("tensor has words outside degree k / dimension d")
    return GammaElement(p, r, d, k, coeffs)


def gamma_functor(matrix: Sequence[Sequence[int]], a: GammaElement) -> GammaElement:
    """Gamma_k(phi) for the linear map phi: M -> M' with matrix (d' x d).

    On basis vectors m^[i] -> prod_j phi(m_j)^[i_j].
    """
    rows = [[int(v) for v in row] for row in matrix]
    if not rows or any(len(row) != a.d for row in rows):
        raise ShapeMismatch(f"matrix must have {a.d} columns")
    d_out = len(rows)
    images = [vector(a.p, a.r, [row[j] for row in rows]) for j in range(a.d)]
    out = GammaElement.zero(a.p, a.r, d_out, a.k)
    for i, c in a.items():
        term = GammaElement.unit(a.p, a.r, d_out)
        for img, n in zip(images, i):
            term = gamma_product(term, divided_power_of_vector(img, n))
        out = out + term * c
    return out


@dataclass(frozen=True)
class GammaSeries:
    """Element of the completed algebra truncated at degree cutoff K."""

    p: int
    r: int
    d: int
    components: tuple[GammaElement, ...]

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        for k, g in enumerate(self.components):
            if (g.p, g.r, g.d, g.k) != (self.p, self.r, self.d, k):
                raise ValueError(f"component {k} has wrong shape")
        if not self.components:
            raise ValueError("need at least the degree-0 component")

    @property
    def K(self) -> int:
        return len(self.components) - 1

    def __getitem__(self, k: int) -> GammaElement:
        return self.components[k]

    @classmethod
    def zero(cls, p: int, r: int, d: int, K: int) -> GammaSeries:
        return cls(p, r, d, tuple(GammaElement.zero(p, r, d, k) for k in range(K + 1)))

    @classmethod
    def exponential(cls, h, K: int) -> GammaSeries:
        """sum_{k <= K} h^[k] for a vector h."""
        p, r, a = _vector_coords(h)
        return cls(p, r, len(a), tuple(divided_power_of_vector(h, k) for k in range(K + 1)))

    def _check(self, other: GammaSeries):
        if (self.p, self.r, self.d) != (other.p, other.r, other.d):
            raise ShapeMismatch("series live in different algebras")

    def __add__(self, other: GammaSeries) -> GammaSeries:
        self._check(other)
        K = min(self.K, other.K)
        return GammaSeries(self.p, self.r, self.d, tuple(self[k] + other[k] for k in range(K + 1)))

    def __mul__(self, other):
        if isinstance(other, (int, Residue)):
            return GammaSeries(self.p, self.r, self.d, tuple(g * other for g in self.components))
        self._check(other)
        K = min(self.K, other.K)
        comps = []
        for k in range(K + 1):
            acc = GammaElement.zero(self.p, self.r, self.d, k)
            for i in range(k + 1):
                acc = acc + gamma_product(self[i], other[k - i])
            comps.append(acc)
        return GammaSeries(self.p, self.r, self.d, tuple(comps))

    def truncate(self, K: int) -> GammaSeries:
        if K > self.K:
            raise ValueError(f"cannot extend cutoff {self.K} to {K}")
        return GammaSeries(self.p, self.r, self.d, self.components[: K + 1])

    def reduce_precision(self, r: int) -> GammaSeries:
        return GammaSeries(self.p, r, self.d, tuple(g.reduce_precision(r) for g in self.components))

    def is_zero(self) -> bool:
        return all(g.is_zero() for g in self.components)
