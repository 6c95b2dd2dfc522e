"""Seeded randomized verification suites.

All randomness comes from one ``random.Random`` (Mersenne Twister MT19937)
seeded with the user seed; each suite draws from its own generator seeded
with ``f"{seed}:{suite}"`` so suites can be run alone or in any order and
still see the same instances.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field

from .gamma import (
    GammaElement,
    divided_power_of_vector,
    gamma_power,
    gamma_product,
    gamma_rank,
    gamma_to_tsym,
    multi_indices,
    sym_to_gamma,
)
from .logstalk import comp_k, comp_k_direct, interpolation_check, one_k, pr_k, transition
from .measures import FiniteMeasure, Measure, Point, convolve, delta, trace
from .moments import amice, mom_k, one_plus_t_power
from .padic import legendre_valuation
from .towers import FiniteTower, StabilizedAt, ZeroAt, ml_diagnose

PRIMES = (2, 3, 5)


def random_measure(rng: random.Random, p: int, r: int, d: int, max_support: int = 4) -> FiniteMeasure:
    m = p**r
    n = rng.randint(1, max_support)
    coeffs = {tuple(rng.randrange(m) for _ in range(d)): rng.randrange(m) for _ in range(n)}
    return FiniteMeasure(p, r, d, coeffs)


def random_shape(rng: random.Random, max_r: int = 3, max_d: int = 2, min_r: int = 1) -> tuple[int, int, int]:
    return rng.choice(PRIMES), rng.randint(min_r, max_r), rng.randint(1, max_d)


@dataclass
class SuiteResult:
    name: str
    instances: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures and self.instances > 0

    def check(self, ok: bool, label: str):
        self.instances += 1
        if not ok:
            self.failures.append(label)


def suite_ring_hom(rng: random.Random, count: int = 200, K: int = 6) -> SuiteResult:
    res = SuiteResult("ring-hom")
    for n in range(count):
        p, r, d = random_shape(rng)
        mu, nu = random_measure(rng, p, r, d), random_measure(rng, p, r, d)
        prod = convolve(mu, nu)
        ok = True
        for k in range(K + 1):
            rhs = GammaElement.zero(p, r, d, k)
            for i in range(k + 1):
                rhs = rhs + gamma_product(mom_k(mu, i), mom_k(nu, k - i))
            ok = ok and mom_k(prod, k) == rhs
        res.check(ok, f"pair {n} at p={p} r={r} d={d}")
    return res


def suite_trace_compat(rng: random.Random, count: int = 200, K: int = 6) -> SuiteResult:
    res = SuiteResult("trace-compat")
    for n in range(count):
        p, r, d = random_shape(rng, min_r=2)
        mu = random_measure(rng, p, r, d)
        k = rng.randint(0, K)
        res.check(
            mom_k(mu, k).reduce_precision(r - 1) == mom_k(trace(mu), k),
            f"instance {n} at p={p} r={r} d={d} k={k}",
        )
    return res


def suite_amice_mult(rng: random.Random, count: int = 100, p: int = 3, R: int = 4, n_max: int = 8) -> SuiteResult:
    res = SuiteResult("amice-mult")
    r = R - legendre_valuation(n_max, p)
    for a in range(p**R):
        got = amice(Measure(delta(Point(p, R, (a,)))), n_max, r)
        res.check(got == one_plus_t_power(a, n_max, p, r), f"delta at {a}")
    for n in range(count):
        mu, nu = (Measure(random_measure(rng, p, R, 1)) for _ in range(2))
        res.check(amice(mu * nu, n_max, r) == amice(mu, n_max, r) * amice(nu, n_max, r), f"pair {n}")
    return res


def suite_interpolation(rng: random.Random, count: int = 500, K: int = 6) -> SuiteResult:
    res = SuiteResult("interpolation")
    for n in range(count):
        p, r, d = random_shape(rng)
        mu = random_measure(rng, p, r, d)
        N = rng.choice((1, 2, 3, 5, 12))
        k = rng.randint(0, K)
        res.check(interpolation_check(mu, N, k).holds, f"instance {n} p={p} r={r} d={d} N={N} k={k}")
    return res


def suite_gamma_identities(rng: random.Random, max_k: int = 5) -> SuiteResult:
    res = SuiteResult("gamma-identities")
    for p, r, d in itertools.product((2, 3), (1, 2), (1, 2)):
        m = p**r
        vectors = list(itertools.product(range(m), repeat=d))
        for k in range(max_k + 1):
            res.check(len(multi_indices(d, k)) == gamma_rank(d, k) == math.comb(k + d - 1, k), f"rank d={d} k={k}")
            for h in vectors:
                hp = Point(p, r, h)
                one = divided_power_of_vector(hp, 1)
                res.check(
                    gamma_power(one, k) == divided_power_of_vector(hp, k) * math.factorial(k),
                    f"k-fold power p={p} r={r} h={h} k={k}",
                )
            for e in multi_indices(d, k):
                g = sym_to_gamma(e, 1, p, r)
                tsym = gamma_to_tsym(g)
                letters = [j + 1 for j, n in enumerate(e) for _ in range(n)]
                symmetrized: dict[tuple[int, ...], int] = {}
                for w in itertools.permutations(letters):
                    symmetrized[w] = symmetrized.get(w, 0) + 1
                res.check(tsym == {w: c % m for w, c in sorted(symmetrized.items()) if c % m}, f"Sym->TSym e={e}")
        table = {h: [divided_power_of_vector(Point(p, r, h), k) for k in range(max_k + 1)] for h in vectors}
        for g, h in itertools.product(vectors, repeat=2):
            s = table[tuple((a + b) % m for a, b in zip(g, h))]
            for k in range(max_k + 1):
                rhs = GammaElement.zero(p, r, d, k)
                for i in range(k + 1):
                    rhs = rhs + gamma_product(table[g][i], table[h][k - i])
                res.check(s[k] == rhs, f"addition p={p} r={r} g={g} h={h} k={k}")
    return res


def suite_log_transition(rng: random.Random, count: int = 200, K: int = 6) -> SuiteResult:
    res = SuiteResult("log-transition")
    for n in range(count):
        p, r, d = random_shape(rng)
        mu = random_measure(rng, p, r, d)
        k = rng.randint(1, K)
        c = comp_k(mu, k)
        ok = transition(one_k(p, r, d, k)) == one_k(p, r, d, k - 1)
        ok = ok and pr_k(c) == mom_k(mu, k)
        ok = ok and transition(c) == comp_k(mu, k - 1)
        ok = ok and c == comp_k_direct(mu, k)
        res.check(ok, f"instance {n} p={p} r={r} d={d} k={k}")
    return res


def ml_example_towers(p: int = 3, L: int = 4) -> dict[str, tuple[FiniteTower, object]]:
    eye = [[1, 0], [0, 1]]
    return {
        "identity": (FiniteTower.constant(p, 2, 2, L, eye), StabilizedAt(1)),
        "zero": (FiniteTower.constant(p, 2, 2, L, [[0, 0], [0, 0]]), ZeroAt(1)),
        "mult-by-p": (FiniteTower.constant(p, 1, 1, L, [[p]]), ZeroAt(1)),
    }


def suite_ml_examples(rng: random.Random) -> SuiteResult:
    res = SuiteResult("ml-examples")
    for name, (tower, expected) in ml_example_towers().items():
        for r in range(tower.L - 2):
            res.check(ml_diagnose(tower, r) == expected, f"{name} at base {r}")
    return res


SUITES = {
    "amice-mult": suite_amice_mult,
    "gamma-identities": suite_gamma_identities,
    "interpolation": suite_interpolation,
    "log-transition": suite_log_transition,
    "ml-examples": suite_ml_examples,
    "ring-hom": suite_ring_hom,
    "trace-compat": suite_trace_compat,
}


def run_suites(seed: int = 0, names=None) -> list[SuiteResult]:
    names = sorted(SUITES) if not names else sorted(set(names))
    unknown = [n for n in names if n not in SUITES]
    if unknown:
        raise KeyError(f"unknown suite(s): {', '.join(unknown)}")
    return [SUITES[name](random.Random(f"{seed}:{name}")) for name in names]


def report(seed: int, results: list[SuiteResult]) -> dict:
    return {
        "seed": seed,
        "prng": "random.Random (MT19937), per-suite seed '<seed>:<suite>'",
        "passed": all(r.passed for r in results),
        "suites": [
            {"name": r.name, "instances": r.instances, "failed": len(r.failures), "failures": r.failures[:10]}
            for r in results
        ],
    }
