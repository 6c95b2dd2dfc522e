"""
Divided powers
==============

The divided power algebra over Z/p^r has basis m^[i] indexed by
multi-indices, with m^[i] m^[j] = prod_l C(i_l + j_l, i_l) m^[i+j].
It differs from the symmetric algebra when k >= p.
"""

import math

from iwasawa import (
    GammaElement,
    Point,
    divided_power_of_vector,
    gamma_power,
    gamma_product,
    gamma_rank,
    gamma_to_tsym,
    multi_indices,
    sym_to_gamma,
)

p, r = 2, 3

# %%
# Products of basis elements pick up binomial coefficients.
m1 = GammaElement.basis(p, r, (1,))
m2 = GammaElement.basis(p, r, (2,))
print("m^[1] m^[1] =", gamma_product(m1, m1).coeffs)
print("m^[2] m^[1] =", gamma_product(m2, m1).coeffs)

# %%
# Each graded piece Gamma_k of rank-d space has rank C(k+d-1, k).
for k in range(5):
    print(k, gamma_rank(2, k), multi_indices(2, k))

# %%
# h^[k] for h = 3 m_1 + 5 m_2, and the identity h^k = k! h^[k].
h = Point(p, r, (3, 5))
for k in range(4):
    hk = divided_power_of_vector(h, k)
    assert gamma_power(divided_power_of_vector(h, 1), k) == hk * math.factorial(k)
    print(f"h^[{k}] =", hk.coeffs)

# %%
# The comparison map from polynomials multiplies by exponent factorials,
# so it is not surjective once k reaches p.
print("x^2 ->", sym_to_gamma((2,), 1, p, r).coeffs)

# %%
# Divided powers embed as symmetric tensors.
print("m^[(1,2)] as tensors:", gamma_to_tsym(GammaElement.basis(p, r, (1, 2))))
