"""Moment maps, and the Amice and Laplace transforms of measures on Z_p."""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass

from .gamma import GammaElement, GammaSeries, multi_indices
from .measures import FiniteMeasure, Measure, ShapeMismatch, measure_at_level
from .padic import (
    PrecisionExhausted,
    PrecisionMismatch,
    Residue,
    check_level,
    check_prime,
    legendre_valuation,
)


def mom_k(mu: FiniteMeasure, k: int) -> GammaElement:
    """k-th moment: sum over the support of mu(x) * x^[k]."""
    if k < 0:
        raise ValueError("degree must be nonnegative")
    m = mu.modulus
    indices = multi_indices(mu.d, k)
    acc: dict[tuple[int, ...], int] = defaultdict(int)
    for x, c in mu.items():
        for i in indices:
            t = c
            for xj, ij in zip(x, i):
                if ij:
                    t = t * pow(xj, ij, m) % m
            acc[i] += t
    return GammaElement._trusted(mu.p, mu.r, mu.d, k, acc)


def mom_hat(mu: FiniteMeasure, K: int) -> GammaSeries:
    """Moment map into the completed divided power algebra, cut off at degree K."""
    return GammaSeries(mu.p, mu.r, mu.d, tuple(mom_k(mu, k) for k in range(K + 1)))


@dataclass(frozen=True)
class PowerSeriesTrunc:
    """a_0 + a_1 T + ... + a_n T^n over Z/p^r, known modulo T^{n+1}."""

    p: int
    r: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        check_prime(self.p)
        check_level(self.r)
        m = self.p**self.r
        object.__setattr__(self, "coeffs", tuple(int(c) % m for c in self.coeffs))
        if not self.coeffs:
            raise ValueError("need at least the constant coefficient")

    @property
    def n_max(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, n: int) -> Residue:
        return Residue(self.p, self.r, self.coeffs[n])

    def __len__(self):
        return len(self.coeffs)

    def _check(self, other: PowerSeriesTrunc):
        if (self.p, self.r) != (other.p, other.r):
            raise PrecisionMismatch("series over different coefficient rings")

    def __add__(self, other: PowerSeriesTrunc) -> PowerSeriesTrunc:
        self._check(other)
        n = min(len(self), len(other))
        return PowerSeriesTrunc(self.p, self.r, tuple(a + b for a, b in zip(self.coeffs[:n], other.coeffs[:n])))

    def __mul__(self, other: PowerSeriesTrunc) -> PowerSeriesTrunc:
        self._check(other)
        n = min(len(self), len(other))
        a, b = self.coeffs, other.coeffs
        return PowerSeriesTrunc(
            self.p, self.r, tuple(sum(a[i] * b[j - i] for i in range(j + 1)) for j in range(n))
        )

    def truncate(self, n_max: int) -> PowerSeriesTrunc:
        return PowerSeriesTrunc(self.p, self.r, self.coeffs[: n_max + 1])


def one_plus_t_power(a: int, n_max: int, p: int, r: int) -> PowerSeriesTrunc:
    """(1+T)^a mod T^{n_max+1} from integer binomials, for a >= 0."""
    return PowerSeriesTrunc(p, r, tuple(math.comb(a, n) for n in range(n_max + 1)))


def amice_level(n: int, p: int, r: int) -> int:
    """Level at which the measure must be known for the T^n coefficient to precision r."""
    return r + legendre_valuation(n, p)


def amice(M: Measure | FiniteMeasure, n_max: int, r: int | None = None) -> PowerSeriesTrunc:
    """Amice transform sum_n T^n int C(x, n) dmu, truncated after T^{n_max}.

    The T^n coefficient integrates C(x, n) against the measure at level
    r + v_p(n!), the coarsest level on which C(x, n) mod p^r is constant on
    classes. ``r`` defaults to the finest precision the working level allows.
    """
    if isinstance(M, FiniteMeasure):
        M = Measure(M)
    if M.d != 1:
        raise ShapeMismatch("the Amice transform is defined here for d = 1 only")
    p, R = M.p, M.R
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    boost = legendre_valuation(n_max, p)
    if r is None:
        r = R - boost
        if r < 1:
            raise PrecisionExhausted(1 + boost, R, f"Amice coefficients up to T^{n_max}")
    check_level(r)
    if R < r + boost:
        raise PrecisionExhausted(r + boost, R, f"Amice coefficients up to T^{n_max} at precision {r}")
    target = p**r
    coeffs = []
    for n in range(n_max + 1):
        mu = measure_at_level(M, amice_level(n, p, r))
        coeffs.append(sum(math.comb(x, n) * c for (x,), c in mu.items()) % target)
    return PowerSeriesTrunc(p, r, tuple(coeffs))


def laplace(mu: FiniteMeasure, K: int) -> list[Residue]:
    """Coefficients of t^[n], n <= K: the naive moments sum_x mu(x) x^n mod p^r."""
    if mu.d != 1:
        raise ShapeMismatch("the Laplace transform is defined here for d = 1 only")
    m = mu.modulus
    return [Residue(mu.p, mu.r, sum(c * pow(x, n, m) for (x,), c in mu.items())) for n in range(K + 1)]
