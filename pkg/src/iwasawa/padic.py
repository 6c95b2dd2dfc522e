"""Exact arithmetic in Z/p^r with the precision carried on every value."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from sympy import isprime


class PrecisionMismatch(ValueError):
    """Two values at different (p, r) were combined."""


class PrecisionExhausted(ValueError):
    """A computation needs a finer level than the input carries."""

    def __init__(self, needed: int, available: int, what: str = ""):
        self.needed = needed
        self.available = available
        msg = f"precision exhausted: need level {needed}, have {available}"
        if what:
            msg += f" ({what})"
        super().__init__(msg)


@lru_cache(maxsize=None)
def check_prime(p: int) -> int:
    if not isinstance(p, int) or p < 2 or not isprime(p):
        raise ValueError(f"p must be a prime, got {p!r}")
    return p


def check_level(r: int) -> int:
    if not isinstance(r, int) or r < 1:
        raise ValueError(f"precision level must be an integer >= 1, got {r!r}")
    return r


def valuation(n: int, p: int) -> int | float:
    """p-adic valuation of an integer; ``math.inf`` for zero."""
    if n == 0:
        return math.inf
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def legendre_valuation(n: int, p: int) -> int:
    """v_p(n!) by Legendre's formula."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    total, q = 0, p
    while q <= n:
        total += n // q
        q *= p
    return total


@dataclass(frozen=True)
class Residue:
    """An element of Z/p^r. ``value`` is always reduced into [0, p^r)."""

    p: int
    r: int
    value: int

    def __post_init__(self):
        check_prime(self.p)
        check_level(self.r)
        object.__setattr__(self, "value", int(self.value) % self.modulus)

    @property
    def modulus(self) -> int:
        return self.p**self.r

    def _coerce(self, other) -> int:
        if isinstance(other, Residue):
            if (other.p, other.r) != (self.p, self.r):
                raise PrecisionMismatch(
                    f"cannot combine Z/{self.p}^{self.r} with Z/{other.p}^{other.r}"
                )
            return other.value
        if isinstance(other, int):
            return other
        return NotImplemented

    def _new(self, value: int) -> Residue:
        return Residue(self.p, self.r, value)

    def __add__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return self._new(self.value + v)

    __radd__ = __add__

    def __sub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return self._new(self.value - v)

    def __rsub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return self._new(v - self.value)

    def __mul__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return self._new(self.value * v)

    __rmul__ = __mul__

    def __neg__(self):
        return self._new(-self.value)

    def __pow__(self, e: int):
        if e < 0 and not self.is_unit():
            raise ZeroDivisionError(f"{self} is not a unit")
        return self._new(pow(self.value, e, self.modulus))

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"Residue({self.value} mod {self.p}^{self.r})"

    def is_unit(self) -> bool:
        return self.value % self.p != 0

    def inverse(self) -> Residue:
        return self**-1

    def valuation(self) -> int:
        """Valuation of the class; r for zero (the class is divisible by every p^j, j <= r)."""
        v = valuation(self.value, self.p)
        return self.r if v == math.inf else min(v, self.r)

    def reduce_precision(self, r: int) -> Residue:
        return reduce_precision(self, r)


def reduce_precision(a: Residue, r: int) -> Residue:
    check_level(r)
    if r > a.r:
        raise PrecisionExhausted(r, a.r, "cannot raise precision by reduction")
    return Residue(a.p, r, a.value)


def binom_residue(a: Residue, n: int, r: int | None = None) -> Residue:
    """C(a, n) mod p^r for the class a mod p^{a.r}.

    The result is independent of the integer lift of ``a`` only when
    ``a.r >= r + v_p(n!)``; ``r`` defaults to the largest such level.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    boost = legendre_valuation(n, a.p)
    if r is None:
        r = a.r - boost
        if r < 1:
            raise PrecisionExhausted(boost + 1, a.r, f"C(x, {n}) at p={a.p}")
    check_level(r)
    if a.r < r + boost:
        raise PrecisionExhausted(r + boost, a.r, f"C(x, {n}) to level {r}")
    return Residue(a.p, r, math.comb(a.value, n))
