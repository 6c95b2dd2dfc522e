"""Mittag-Leffler diagnostics for finite towers of modules (Z/p^{r_i})^{n_i}.

Only a finite window of the inverse system is ever available, so every
verdict is relative to that window: ``StabilizedAt(s)`` means the images
Im(A_{r+s} -> A_r) and Im(A_{r+s+1} -> A_r) coincide (or the former is
already zero), and ``ZeroAt(s)`` means Im(A_{r+s} -> A_r) = 0. Neither says
anything about levels beyond the window except in the zero case, where the
images stay zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .padic import check_level, check_prime, valuation

Matrix = list[list[int]]


def _matmul(a: Matrix, b: Matrix) -> Matrix:
    return [[sum(x * y for x, y in zip(row, col)) for col in zip(*b)] for row in a]


def howell_form(vectors: Sequence[Sequence[int]], p: int, e: int) -> tuple[tuple[int, ...], ...]:
    """Canonical generating set of the Z/p^e-submodule spanned by ``vectors``.

    Row echelon form with pivots normalized to powers of p, entries above each
    pivot p^v reduced into [0, p^v), and the Howell closure rows p^{e-v} * pivot
    folded back in. Two generating sets span the same submodule iff their
    forms are equal.
    """
    q = p**e
    pending = [[int(x) % q for x in v] for v in vectors]
    pending = [v for v in pending if any(v)]
    n = len(vectors[0]) if vectors else 0
    pivots: list[tuple[int, int, list[int]]] = []
    for c in range(n):
        live = [i for i, v in enumerate(pending) if v[c]]
        if not live:
            continue
        k = min(live, key=lambda i: valuation(pending[i][c], p))
        pv = valuation(pending[k][c], p)
        inv = pow(pending[k][c] // p**pv, -1, q)
        pivot = [x * inv % q for x in pending[k]]
        rest = []
        for i, v in enumerate(pending):
            if i == k:
                continue
            if v[c]:
                f = v[c] // p**pv
                v = [(x - f * y) % q for x, y in zip(v, pivot)]
            rest.append(v)
        if pv:
            rest.append([x * p ** (e - pv) % q for x in pivot])
        pending = [v for v in rest if any(v)]
        pivots.append((c, pv, pivot))
    rows = [row for _, _, row in pivots]
    for idx, (c, pv, row) in enumerate(pivots):
        mod = p**pv
        for j in range(idx):
            f = rows[j][c] // mod
            if f:
                rows[j] = [(x - f * y) % q for x, y in zip(rows[j], row)]
    return tuple(tuple(row) for row in rows)


def submodule_order(form: Sequence[Sequence[int]], p: int, e: int) -> int:
    """Number of elements of the submodule with the given Howell form."""
    order = 1
    for row in form:
        lead = next(x for x in row if x)
        order *= p ** (e - valuation(lead, p))
    return order


@dataclass(frozen=True)
class FiniteTower:
    """Levels (Z/p^{r_i})^{n_i}, i = 0..L-1, with T_i: level i+1 -> level i."""

    p: int
    levels: tuple[tuple[int, int], ...]
    transitions: tuple[tuple[tuple[int, ...], ...], ...]

    def __post_init__(self):
        check_prime(self.p)
        levels = tuple((int(r), int(n)) for r, n in self.levels)
        mats = tuple(tuple(tuple(int(x) for x in row) for row in t) for t in self.transitions)
        object.__setattr__(self, "levels", levels)
        object.__setattr__(self, "transitions", mats)
        if len(levels) < 2:
            raise ValueError("a tower needs at least two levels")
        if len(mats) != len(levels) - 1:
            raise ValueError(f"{len(levels)} levels need {len(levels) - 1} transitions")
        for r, n in levels:
            check_level(r)
            if n < 1:
                raise ValueError("module ranks must be >= 1")
        for i, t in enumerate(mats):
            (ri, ni), (rj, nj) = levels[i], levels[i + 1]
            if len(t) != ni or any(len(row) != nj for row in t):
                raise ValueError(f"transition {i} must be a {ni}x{nj} matrix")
            if rj < ri:
                # p^{rj} must map to 0 mod p^{ri}
                step = self.p ** (ri - rj)
                if any(x % step for row in t for x in row):
                    raise ValueError(f"transition {i} is not well defined on Z/{self.p}^{rj}")

    @property
    def L(self) -> int:
        return len(self.levels)

    @classmethod
    def constant(cls, p: int, r: int, n: int, L: int, matrix: Sequence[Sequence[int]]) -> FiniteTower:
        return cls(p, ((r, n),) * L, (tuple(map(tuple, matrix)),) * (L - 1))

    def composite(self, r: int, t: int) -> Matrix:
        """Integer matrix of A_t -> A_r for r < t."""
        out = [list(row) for row in self.transitions[r]]
        for i in range(r + 1, t):
            out = _matmul(out, [list(row) for row in self.transitions[i]])
        return out

    def image(self, r: int, s: int) -> tuple[tuple[int, ...], ...]:
        """Howell form of Im(A_{r+s} -> A_r)."""
        if not (0 <= r and s >= 1 and r + s < self.L):
            raise IndexError(f"levels {r} and {r + s} not both in the tower")
        cols = [list(col) for col in zip(*self.composite(r, r + s))]
        return howell_form(cols, self.p, self.levels[r][0])


@dataclass(frozen=True)
class StabilizedAt:
    s: int


@dataclass(frozen=True)
class ZeroAt:
    s: int


@dataclass(frozen=True)
class Undetermined:
    window: int


@dataclass(frozen=True)
class MLReport:
    r: int
    images: tuple[tuple[tuple[int, ...], ...], ...]
    stabilized_at: int | None
    zero_at: int | None

    @property
    def verdict(self):
        if self.zero_at is not None:
            return ZeroAt(self.zero_at)
        if self.stabilized_at is not None:
            return StabilizedAt(self.stabilized_at)
        return Undetermined(len(self.images))


def ml_report(tower: FiniteTower, r: int) -> MLReport:
    if not 0 <= r < tower.L - 1:
        raise IndexError(f"base index {r} needs 0 <= r < {tower.L - 1}")
    images = tuple(tower.image(r, s) for s in range(1, tower.L - r))
    zero_at = next((s for s, im in enumerate(images, 1) if not im), None)
    stable = next((s for s in range(1, len(images)) if images[s - 1] == images[s]), None)
    if zero_at is not None and (stable is None or zero_at < stable):
        stable = zero_at
    return MLReport(r, images, stable, zero_at)


def ml_diagnose(tower: FiniteTower, r: int):
    """Window-relative verdict: ZeroAt, StabilizedAt or Undetermined."""
    return ml_report(tower, r).verdict


def tower_from_json(data: dict) -> FiniteTower:
    levels = data["levels"]
    primes = {int(lv["p"]) for lv in levels}
    if len(primes) != 1:
        raise ValueError("all levels must share the prime p")
    return FiniteTower(primes.pop(), tuple((lv["r"], lv["n"]) for lv in levels), tuple(data["transitions"]))


def tower_to_json(t: FiniteTower) -> dict:
    return {
        "levels": [{"p": t.p, "r": r, "n": n} for r, n in t.levels],
        "transitions": [[list(row) for row in m] for m in t.transitions],
    }
