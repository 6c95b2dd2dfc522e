"""Stalk model of the integral logarithm: Log^(k) = Gamma_k(Z e0 + H).

Indices are (i0, i1, ..., id): i0 counts divided powers of the splitting
vector e0, the rest index H = (Z/p^r)^d. The slice i0 = k - i is the
Gamma_i(H) component of the splitting.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .gamma import GammaElement, divided_power_of_vector, gamma_functor
from .measures import FiniteMeasure, Point, pushforward
from .moments import mom_k


class LogStalkElement:
    """Element of Log^(k) over Z/p^r for H of rank d."""

    __slots__ = ("p", "r", "d", "k", "gamma")

    def __init__(self, p: int, r: int, d: int, k: int, coeffs: Mapping[Sequence[int], int] | None = None):
        self.gamma = GammaElement(p, r, d + 1, k, coeffs)
        self.p, self.r, self.d, self.k = p, r, d, k

    @classmethod
    def from_gamma(cls, g: GammaElement) -> LogStalkElement:
        return cls(g.p, g.r, g.d - 1, g.k, g.coeffs)

    def items(self):
        return self.gamma.items()

    @property
    def coeffs(self):
        return self.gamma.coeffs

    def __getitem__(self, i):
        return self.gamma[i]

    def __eq__(self, other):
        if not isinstance(other, LogStalkElement):
            return NotImplemented
        return self.gamma == other.gamma

    def __hash__(self):
        return hash(self.gamma)

    def __repr__(self):
        terms = " + ".join(f"{c}*e0^[{i[0]}]m^{list(i[1:])}" for i, c in self.items()) or "0"
        return f"LogStalkElement(p={self.p}, r={self.r}, d={self.d}, k={self.k}: {terms})"

    def __add__(self, other: LogStalkElement) -> LogStalkElement:
        return LogStalkElement.from_gamma(self.gamma + other.gamma)

    def __sub__(self, other: LogStalkElement) -> LogStalkElement:
        return LogStalkElement.from_gamma(self.gamma - other.gamma)

    def __mul__(self, c):
        return LogStalkElement.from_gamma(self.gamma * c)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return self.gamma.is_zero()

    def slice(self, i: int) -> GammaElement:
        """The Gamma_i(H) component (coefficients with i0 = k - i)."""
        if not 0 <= i <= self.k:
            raise ValueError(f"slice {i} outside 0..{self.k}")
        return GammaElement(
            self.p, self.r, self.d, i, {j[1:]: c for j, c in self.items() if j[0] == self.k - i}
        )


def embed(g: GammaElement, k: int) -> LogStalkElement:
    """Place g in Gamma_i(H) into Log^(k) as e0^[k-i] * g."""
    if g.k > k:
        raise ValueError(f"degree {g.k} does not fit into Log^({k})")
    return LogStalkElement(g.p, g.r, g.d, k, {(k - g.k,) + i: c for i, c in g.items()})


def pr_k(a: LogStalkElement) -> GammaElement:
    """Projection to the pure-H slice Gamma_k(H)."""
    return a.slice(a.k)


def one_k(p: int, r: int, d: int, k: int) -> LogStalkElement:
    """The splitting 1^(k) = e0^[k]."""
    if k < 0:
        raise ValueError("degree must be nonnegative")
    return LogStalkElement(p, r, d, k, {(k,) + (0,) * d: 1})


def transition(a: LogStalkElement) -> LogStalkElement:
    """Log^(k) -> Log^(k-1): e0^[i0] m^[i] -> e0^[i0-1] m^[i], and 0 when i0 = 0."""
    if a.k < 1:
        raise ValueError("no transition out of Log^(0)")
    return LogStalkElement(a.p, a.r, a.d, a.k - 1, {(i[0] - 1,) + i[1:]: c for i, c in a.items() if i[0]})


def transition_via_composite(a: LogStalkElement) -> LogStalkElement:
    """Transition map computed from its definition.

    Apply Gamma_k to Log^(1) -> Z f + Log^(1), x -> (proj(x), x), where proj
    sends e0 to 1 and kills H, then keep the part of f-degree exactly 1 and
    identify Gamma_1(Z) with Z.
    """
    if a.k < 1:
        raise ValueError("no transition out of Log^(0)")
    n = a.d + 1
    # output coordinates: f, e0, m_1..m_d
    matrix = [[1] + [0] * a.d] + [[1 if j == l else 0 for j in range(n)] for l in range(n)]
    image = gamma_functor(matrix, a.gamma)
    return LogStalkElement(a.p, a.r, a.d, a.k - 1, {i[1:]: c for i, c in image.items() if i[0] == 1})


def comp_k(mu: FiniteMeasure, k: int) -> LogStalkElement:
    """Comparison map: sum over i <= k of mom_i(mu) placed in slice i0 = k - i."""
    out = LogStalkElement(mu.p, mu.r, mu.d, k)
    for i in range(k + 1):
        out = out + embed(mom_k(mu, i), k)
    return out


def comp_k_direct(mu: FiniteMeasure, k: int) -> LogStalkElement:
    """Comparison map as sum over the support of mu(x) (e0 + x)^[k]."""
    out = GammaElement.zero(mu.p, mu.r, mu.d + 1, k)
    for x, c in mu.items():
        out = out + divided_power_of_vector(Point(mu.p, mu.r, (1,) + x), k) * c
    return LogStalkElement.from_gamma(out)


@dataclass(frozen=True)
class InterpolationWitness:
    holds: bool
    lhs: GammaElement
    rhs: GammaElement

    def __bool__(self):
        return self.holds


def interpolation_check(mu: FiniteMeasure, N: int, k: int) -> InterpolationWitness:
    """Compare mom_k of the push-forward along x -> Nx with N^k mom_k(mu)."""
    if N < 1:
        raise ValueError("N must be a positive integer")
    lhs = mom_k(pushforward(mu, N), k)
    rhs = mom_k(mu, k) * N**k
    return InterpolationWitness(lhs == rhs, lhs, rhs)
