"""
Moments, Amice and Laplace transforms
=====================================

The k-th moment of a measure is sum_x mu(x) x^[k]. In one variable this
is the power sum, and the Amice transform uses binomial coefficients
instead of powers.
"""

from iwasawa import (
    FiniteMeasure,
    Measure,
    Point,
    PrecisionExhausted,
    amice,
    convolve,
    delta,
    gamma_product,
    laplace,
    legendre_valuation,
    mom_hat,
    mom_k,
)

p, r = 5, 2
mu = FiniteMeasure(p, r, 1, {(2,): 3, (11,): 4})
nu = FiniteMeasure(p, r, 1, {(1,): 1, (7,): 2})

# %%
# The first few moments of mu.
for k in range(4):
    print(f"mom_{k}(mu) =", mom_k(mu, k).coeffs)

# %%
# Moments turn convolution into the divided-power product.
k = 3
lhs = mom_k(convolve(mu, nu), k)
rhs = gamma_product(mom_k(mu, 0), mom_k(nu, k))
for i in range(1, k + 1):
    rhs = rhs + gamma_product(mom_k(mu, i), mom_k(nu, k - i))
assert lhs == rhs
print("mom_hat(mu) up to degree 2:", [g.coeffs for g in mom_hat(mu, 2).components])

# %%
# Laplace coefficients are the scalars sum_x mu(x) x^n.
print("laplace(mu) =", [c.value for c in laplace(mu, 4)])

# %%
# The T^n coefficient of the Amice transform needs level r + v_p(n!).
# With R = 4 at p = 3 the contract allows n_max = 8 at precision 2.
p, R = 3, 4
M = Measure(FiniteMeasure(p, R, 1, {(5,): 1, (40,): 2}))
for n in (3, 6, 8, 9):
    print(f"n={n}: needs level {2 + legendre_valuation(n, p)}")
print("amice(M) =", amice(M, 8, 2).coeffs)
try:
    amice(M, 9, 2)
except PrecisionExhausted as exc:
    print("n_max=9 refused:", exc.needed, "needed,", exc.available, "available")

# %%
# The transform of a Dirac mass at a is (1+T)^a.
print("amice(delta_4) =", amice(delta(Point(p, R, (4,))), 8, 2).coeffs)
