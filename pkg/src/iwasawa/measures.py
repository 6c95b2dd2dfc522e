"""Finite group rings Z/p^r[(Z/p^r)^d] and truncated measures on Z_p^d.

A :class:`FiniteMeasure` is at the same time a Z/p^r-valued function on the
finite group H_r = (Z/p^r)^d and an element of its group ring; convolution is
the ring product. A :class:`Measure` is an element of the inverse limit
truncated at a working level R and is stored by its level-R component only.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

from .padic import PrecisionExhausted, PrecisionMismatch, Residue, check_level, check_prime

DEFAULT_DENSE_CAP = 10**7

Coords = tuple[int, ...]


class ShapeMismatch(ValueError):
    """Operands live on groups of different shape."""


class DenseCapExceeded(ValueError):
    """The dense realization would exceed the configured entry cap."""


@dataclass(frozen=True)
class Point:
    """A point of (Z/p^r)^d with reduced integer coordinates."""

    p: int
    r: int
    coords: Coords

    def __post_init__(self):
        check_prime(self.p)
        check_level(self.r)
        if len(self.coords) < 1:
            raise ValueError("a point needs at least one coordinate")
        m = self.p**self.r
        object.__setattr__(self, "coords", tuple(int(c) % m for c in self.coords))

    @classmethod
    def from_residues(cls, residues: Sequence[Residue]) -> Point:
        keys = {(a.p, a.r) for a in residues}
        if len(keys) != 1:
            raise PrecisionMismatch("coordinates must share (p, r)")
        (p, r), = keys
        return cls(p, r, tuple(a.value for a in residues))

    @property
    def d(self) -> int:
        return len(self.coords)

    @property
    def residues(self) -> tuple[Residue, ...]:
        return tuple(Residue(self.p, self.r, c) for c in self.coords)


class FiniteMeasure:
    """Sparse element of Z/p^r[(Z/p^r)^d].

    ``coeffs`` maps reduced coordinate tuples to nonzero coefficients in
    [0, p^r). Instances are treated as immutable.
    """

    __slots__ = ("p", "r", "d", "_coeffs")

    def __init__(self, p: int, r: int, d: int, coeffs: Mapping[Sequence[int], int] | None = None):
        check_prime(p)
        check_level(r)
        if d < 1:
            raise ValueError("d must be >= 1")
        self.p, self.r, self.d = p, r, d
        m = p**r
        acc: dict[Coords, int] = defaultdict(int)
        for x, c in (coeffs or {}).items():
            x = tuple(x)
            if len(x) != d:
                raise ShapeMismatch(f"point {x} is not in dimension {d}")
            acc[tuple(int(xi) % m for xi in x)] += int(c)
        self._coeffs = {x: c % m for x, c in sorted(acc.items()) if c % m}

    @property
    def modulus(self) -> int:
        return self.p**self.r

    @property
    def coeffs(self) -> Mapping[Coords, int]:
        return dict(self._coeffs)

    def items(self):
        """(point, coefficient) pairs in lexicographic point order."""
        return self._coeffs.items()

    def support(self) -> list[Coords]:
        return list(self._coeffs)

    def __getitem__(self, x: Sequence[int] | Point) -> Residue:
        if isinstance(x, Point):
            self._check_point(x)
            x = x.coords
        m = self.modulus
        return Residue(self.p, self.r, self._coeffs.get(tuple(int(c) % m for c in x), 0))

    def _check_point(self, x: Point):
        if (x.p, x.r, x.d) != (self.p, self.r, self.d):
            raise ShapeMismatch("point and measure differ in (p, r, d)")

    def __eq__(self, other):
        if not isinstance(other, FiniteMeasure):
            return NotImplemented
        return (self.p, self.r, self.d, self._coeffs) == (other.p, other.r, other.d, other._coeffs)

    def __hash__(self):
        return hash((self.p, self.r, self.d, frozenset(self._coeffs.items())))

    def __repr__(self):
        terms = ", ".join(f"{x}: {c}" for x, c in self._coeffs.items())
        return f"FiniteMeasure(p={self.p}, r={self.r}, d={self.d}, {{{terms}}})"

    def _like(self, coeffs) -> FiniteMeasure:
        return FiniteMeasure(self.p, self.r, self.d, coeffs)

    def _check_same(self, other: FiniteMeasure):
        if (self.p, self.r) != (other.p, other.r):
            raise PrecisionMismatch(
                f"measures at (p, r) = {(self.p, self.r)} and {(other.p, other.r)}"
            )
        if self.d != other.d:
            raise ShapeMismatch(f"dimensions {self.d} and {other.d}")

    def __add__(self, other: FiniteMeasure) -> FiniteMeasure:
        self._check_same(other)
        acc = dict(self._coeffs)
        for x, c in other.items():
            acc[x] = acc.get(x, 0) + c
        return self._like(acc)

    def __neg__(self) -> FiniteMeasure:
        return self._like({x: -c for x, c in self.items()})

    def __sub__(self, other: FiniteMeasure) -> FiniteMeasure:
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, FiniteMeasure):
            return convolve(self, other)
        if isinstance(other, Residue):
            if (other.p, other.r) != (self.p, self.r):
                raise PrecisionMismatch("scalar precision differs from measure")
            other = other.value
        if isinstance(other, int):
            return self._like({x: c * other for x, c in self.items()})
        return NotImplemented

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not self._coeffs

    def mass(self) -> Residue:
        """Total mass, i.e. the augmentation of the group-ring element."""
        return Residue(self.p, self.r, sum(self._coeffs.values()))

    def to_dense(self, cap: int = DEFAULT_DENSE_CAP) -> np.ndarray:
        """Dense array of shape (p^r,)*d with Python-int entries."""
        size = self.modulus**self.d
        if size > cap:
            raise DenseCapExceeded(f"dense size {size} exceeds cap {cap}")
        arr = np.zeros((self.modulus,) * self.d, dtype=object)
        arr[...] = 0
        for x, c in self.items():
            arr[x] = c
        return arr

    @classmethod
    def from_dense(cls, p: int, r: int, arr: np.ndarray) -> FiniteMeasure:
        m = p**r
        if any(n != m for n in arr.shape):
            raise ShapeMismatch(f"dense array shape {arr.shape} is not ({m},)*d")
        coeffs = {tuple(int(i) for i in idx): int(v) for idx, v in np.ndenumerate(arr) if int(v) % m}
        return cls(p, r, arr.ndim, coeffs)


def zero(p: int, r: int, d: int) -> FiniteMeasure:
    return FiniteMeasure(p, r, d)


def delta(x: Point) -> FiniteMeasure:
    """Point mass at x: coefficient 1 at x and 0 elsewhere."""
    return FiniteMeasure(x.p, x.r, x.d, {x.coords: 1})


def uniform(p: int, r: int, d: int) -> FiniteMeasure:
    """Sum of all group elements (coefficient 1 everywhere)."""
    m = p**r
    return FiniteMeasure(p, r, d, {x: 1 for x in itertools.product(range(m), repeat=d)})


def trace(mu: FiniteMeasure) -> FiniteMeasure:
    """Transition map level r -> r-1: push forward along reduction, then reduce coefficients."""
    if mu.r < 2:
        raise ValueError("trace needs level r >= 2")
    m = mu.p ** (mu.r - 1)
    acc: dict[Coords, int] = defaultdict(int)
    for x, c in mu.items():
        acc[tuple(xi % m for xi in x)] += c
    return FiniteMeasure(mu.p, mu.r - 1, mu.d, acc)


def convolve(mu: FiniteMeasure, nu: FiniteMeasure) -> FiniteMeasure:
    """Group-ring product: (mu*nu)(z) = sum over x+y=z of mu(x) nu(y)."""
    mu._check_same(nu)
    m = mu.modulus
    acc: dict[Coords, int] = defaultdict(int)
    for x, a in mu.items():
        for y, b in nu.items():
            acc[tuple((xi + yi) % m for xi, yi in zip(x, y))] += a * b
    return mu._like(acc)


def convolve_dense(mu: FiniteMeasure, nu: FiniteMeasure, cap: int = DEFAULT_DENSE_CAP) -> FiniteMeasure:
    """Convolution by brute force over every pair of group elements (oracle)."""
    mu._check_same(nu)
    a, b = mu.to_dense(cap), nu.to_dense(cap)
    m = mu.modulus
    out = np.zeros_like(a)
    out[...] = 0
    for x in np.ndindex(a.shape):
        for y in np.ndindex(b.shape):
            z = tuple((xi + yi) % m for xi, yi in zip(x, y))
            out[z] = (out[z] + a[x] * b[y]) % m
    return FiniteMeasure.from_dense(mu.p, mu.r, out)


def _as_matrix(matrix, d: int) -> list[list[int]]:
    if isinstance(matrix, int):
        return [[matrix if i == j else 0 for j in range(d)] for i in range(d)]
    rows = [[int(v) for v in row] for row in matrix]
    if not rows or any(len(row) != d for row in rows):
        raise ShapeMismatch(f"matrix must have {d} columns")
    return rows


def pushforward(
    mu: FiniteMeasure, matrix: int | Sequence[Sequence[int]], offset: Sequence[int] | None = None
) -> FiniteMeasure:
    """Push mu forward along x -> Mx + b on (Z/p^r)^d -> (Z/p^r)^{d'}.

    An integer ``matrix`` means N times the identity.
    """
    rows = _as_matrix(matrix, mu.d)
    d_out = len(rows)
    b = [0] * d_out if offset is None else [int(v) for v in offset]
    if len(b) != d_out:
        raise ShapeMismatch(f"offset must have length {d_out}")
    m = mu.modulus
    acc: dict[Coords, int] = defaultdict(int)
    for x, c in mu.items():
        y = tuple((sum(a * xi for a, xi in zip(row, x)) + bi) % m for row, bi in zip(rows, b))
        acc[y] += c
    return FiniteMeasure(mu.p, mu.r, d_out, acc)


def tensor(mu: FiniteMeasure, nu: FiniteMeasure) -> FiniteMeasure:
    """(mu (x) nu)(x, y) = mu(x) nu(y) on the product group."""
    if (mu.p, mu.r) != (nu.p, nu.r):
        raise PrecisionMismatch("tensor factors must share (p, r)")
    return FiniteMeasure(
        mu.p, mu.r, mu.d + nu.d, {x + y: a * b for x, a in mu.items() for y, b in nu.items()}
    )


class Measure:
    """Truncation at working level R of a Z_p-valued measure on Z_p^d."""

    __slots__ = ("top", "_levels")

    def __init__(self, top: FiniteMeasure):
        self.top = top
        self._levels = {top.r: top}

    @property
    def R(self) -> int:
        return self.top.r

    @property
    def p(self) -> int:
        return self.top.p

    @property
    def d(self) -> int:
        return self.top.d

    def __repr__(self):
        return f"Measure(R={self.R}, top={self.top!r})"

    def __eq__(self, other):
        if not isinstance(other, Measure):
            return NotImplemented
        return self.top == other.top

    def __hash__(self):
        return hash(self.top)

    def __mul__(self, other: Measure) -> Measure:
        return Measure(convolve(self.top, other.top))

    def __add__(self, other: Measure) -> Measure:
        return Measure(self.top + other.top)

    def at_level(self, r: int) -> FiniteMeasure:
        return measure_at_level(self, r)


def measure_at_level(M: Measure, r: int) -> FiniteMeasure:
    """Level-r component, obtained by iterated trace from the top."""
    check_level(r)
    if r > M.R:
        raise PrecisionExhausted(r, M.R, "measure truncated below requested level")
    levels = M._levels
    s = min(lvl for lvl in levels if lvl >= r)
    mu = levels[s]
    while s > r:
        mu = trace(mu)
        s -= 1
        levels[s] = mu
    return mu


def measure_from_points(p: int, r: int, terms: Iterable[tuple[Sequence[int], int]]) -> FiniteMeasure:
    """Linear combination of point masses from (coordinates, coefficient) pairs."""
    terms = list(terms)
    if not terms:
        raise ValueError("need at least one term to infer the dimension")
    d = len(terms[0][0])
    acc: dict[Coords, int] = defaultdict(int)
    for x, c in terms:
        acc[tuple(x)] += c
    return FiniteMeasure(p, r, d, acc)
