"""Acceptance criteria, one test each, timed against their budgets.

Every test appends a PASS/FAIL line that is printed in the terminal summary.
"""

import itertools
import math
import random
import time
from contextlib import contextmanager

import numpy as np
import pytest

from iwasawa import (
    FiniteMeasure,
    FiniteTower,
    GammaElement,
    Measure,
    Point,
    PrecisionExhausted,
    StabilizedAt,
    ZeroAt,
    amice,
    comp_k,
    comp_k_direct,
    convolve,
    convolve_dense,
    delta,
    divided_power_of_vector,
    gamma_power,
    gamma_product,
    gamma_rank,
    gamma_to_tsym,
    legendre_valuation,
    ml_diagnose,
    mom_k,
    multi_indices,
    one_k,
    pr_k,
    pushforward,
    sym_to_gamma,
    trace,
    transition,
    transition_via_composite,
)


@contextmanager
def criterion(log, number, title, budget):
    start = time.perf_counter()
    status = "FAIL"
    try:
        yield
        elapsed = time.perf_counter() - start
        if elapsed >= budget:
            raise AssertionError(f"took {elapsed:.2f}s, budget {budget}s")
        status = "PASS"
    finally:
        elapsed = time.perf_counter() - start
        log.append(f"{status} criterion {number}: {title} ({elapsed:.2f}s / {budget}s)")
        print(log[-1])


def rand_measure(rng, p, r, d, max_support=4):
    m = p**r
    return FiniteMeasure(p, r, d, {tuple(rng.randrange(m) for _ in range(d)): rng.randrange(m) for _ in range(rng.randint(1, max_support))})


def rand_shape(rng, min_r=1):
    return rng.choice([2, 3, 5]), rng.randint(min_r, 3), rng.randint(1, 2)


def test_criterion_1_ring_homomorphism(acceptance_log):
    rng = random.Random("acceptance:1")
    with criterion(acceptance_log, 1, "moment map is a ring homomorphism, 200 pairs", 10):
        for _ in range(200):
            p, r, d = rand_shape(rng)
            mu, nu = rand_measure(rng, p, r, d), rand_measure(rng, p, r, d)
            prod = convolve(mu, nu)
            moms_mu = [mom_k(mu, i) for i in range(7)]
            moms_nu = [mom_k(nu, i) for i in range(7)]
            for k in range(7):
                rhs = GammaElement.zero(p, r, d, k)
                for i in range(k + 1):
                    rhs = rhs + gamma_product(moms_mu[i], moms_nu[k - i])
                assert mom_k(prod, k) == rhs


def test_criterion_2_trace_compatibility(acceptance_log):
    rng = random.Random("acceptance:2")
    with criterion(acceptance_log, 2, "moments commute with trace, 200 instances", 5):
        for _ in range(200):
            p, r, d = rand_shape(rng, min_r=2)
            mu = rand_measure(rng, p, r, d)
            k = rng.randint(0, 6)
            assert mom_k(mu, k).reduce_precision(r - 1) == mom_k(trace(mu), k)


def test_criterion_3_interpolation(acceptance_log):
    rng = random.Random("acceptance:3")
    divisible = 0
    with criterion(acceptance_log, 3, "mom_k of [N]-pushforward is N^k mom_k, 500 instances", 10):
        for _ in range(500):
            p, r, d = rand_shape(rng)
            mu = rand_measure(rng, p, r, d)
            N, k = rng.choice([1, 2, 3, 5, 12]), rng.randint(0, 6)
            divisible += N % p == 0
            lhs = mom_k(pushforward(mu, N), k)
            assert lhs == mom_k(mu, k) * N**k
            direct = GammaElement.zero(p, r, d, k)
            for x, c in mu.items():
                direct = direct + divided_power_of_vector(Point(p, r, tuple(N * v for v in x)), k) * c
            assert lhs == direct
    assert divisible > 0


def test_criterion_4_amice(acceptance_log):
    p, R, n_max = 3, 4, 8
    r = R - legendre_valuation(n_max, p)
    m = p**r
    rng = random.Random("acceptance:4")
    with criterion(acceptance_log, 4, "Amice transform of deltas and products, precision contract", 10):
        assert r == 2
        for a in range(p**R):
            assert amice(delta(Point(p, R, (a,))), n_max, r).coeffs == tuple(math.comb(a, n) % m for n in range(n_max + 1))
        for _ in range(100):
            mu, nu = rand_measure(rng, p, R, 1, 5), rand_measure(rng, p, R, 1, 5)
            assert amice(convolve(mu, nu), n_max, r) == amice(mu, n_max, r) * amice(nu, n_max, r)
        M = Measure(rand_measure(rng, p, R, 1))
        for n in range(n_max + 2):
            for want in (1, 2, 3):
                needed = want + legendre_valuation(n, p)
                if needed <= R:
                    assert amice(M, n, want).r == want
                else:
                    with pytest.raises(PrecisionExhausted) as exc:
                        amice(M, n, want)
                    assert (exc.value.needed, exc.value.available) == (needed, R)


def test_criterion_5_divided_powers(acceptance_log):
    with criterion(acceptance_log, 5, "divided-power identities, exhaustive d<=2 k<=5 p in {2,3} r<=2", 5):
        for p, r, d in itertools.product((2, 3), (1, 2), (1, 2)):
            m = p**r
            vecs = list(itertools.product(range(m), repeat=d))
            powers = {h: [divided_power_of_vector(Point(p, r, h), k) for k in range(6)] for h in vecs}
            for k in range(6):
                assert gamma_rank(d, k) == len(multi_indices(d, k)) == math.comb(k + d - 1, k)
                for h in vecs:
                    assert gamma_power(powers[h][1], k) == powers[h][k] * math.factorial(k)
                for g, h in itertools.product(vecs, repeat=2):
                    s = tuple((a + b) % m for a, b in zip(g, h))
                    rhs = GammaElement.zero(p, r, d, k)
                    for i in range(k + 1):
                        rhs = rhs + gamma_product(powers[g][i], powers[h][k - i])
                    assert powers[s][k] == rhs
                for e in multi_indices(d, k):
                    word = tuple(j + 1 for j, n in enumerate(e) for _ in range(n))
                    orbit = {}
                    for w in itertools.permutations(word):
                        orbit[w] = orbit.get(w, 0) + 1
                    expected = {w: c % m for w, c in orbit.items() if c % m}
                    assert gamma_to_tsym(sym_to_gamma(e, 1, p, r)) == expected


def test_criterion_6_log_stalk(acceptance_log):
    rng = random.Random("acceptance:6")
    with criterion(acceptance_log, 6, "log-stalk transitions and comparison maps, 200 instances", 5):
        for _ in range(200):
            p, r, d = rand_shape(rng)
            mu = rand_measure(rng, p, r, d)
            k = rng.randint(1, 6)
            assert transition(one_k(p, r, d, k)) == one_k(p, r, d, k - 1)
            c = comp_k(mu, k)
            assert pr_k(c) == mom_k(mu, k)
            assert c == comp_k_direct(mu, k)
            assert transition(c) == comp_k(mu, k - 1)
            assert transition_via_composite(c) == transition(c)


def test_criterion_7_sparse_vs_dense(acceptance_log):
    rng = random.Random("acceptance:7")
    with criterion(acceptance_log, 7, "sparse and dense convolution agree, 500 pairs at p=2 r=2 d=1", 5):
        for _ in range(500):
            a = FiniteMeasure.from_dense(2, 2, np.array([rng.randrange(4) for _ in range(4)], dtype=object))
            b = FiniteMeasure.from_dense(2, 2, np.array([rng.randrange(4) for _ in range(4)], dtype=object))
            assert convolve(a, b) == convolve_dense(a, b)


def test_criterion_8_mittag_leffler(acceptance_log):
    with criterion(acceptance_log, 8, "Mittag-Leffler diagnostics of the three reference towers", 1):
        for _ in range(2):
            identity = FiniteTower.constant(3, 2, 2, 4, [[1, 0], [0, 1]])
            zero = FiniteTower.constant(3, 2, 2, 4, [[0, 0], [0, 0]])
            times_p = FiniteTower.constant(3, 1, 1, 4, [[3]])
            assert ml_diagnose(identity, 0) == StabilizedAt(1)
            assert ml_diagnose(zero, 0) == ZeroAt(1)
            assert ml_diagnose(times_p, 0) == ZeroAt(1)
