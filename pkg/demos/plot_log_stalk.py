"""
The logarithm stalk and interpolation
=====================================

Log^(k) is Gamma_k of Z e0 + H. Its transition maps lower k by one,
and measures map into it compatibly with those transitions.
"""

from iwasawa import (
    FiniteMeasure,
    comp_k,
    interpolation_check,
    mom_k,
    one_k,
    pr_k,
    transition,
    transition_via_composite,
)

p, r, d = 3, 2, 1
mu = FiniteMeasure(p, r, d, {(2,): 1, (5,): 4})

# %%
# The distinguished element 1^(k) = e0^[k] goes to 1^(k-1).
for k in range(1, 4):
    print(k, transition(one_k(p, r, d, k)) == one_k(p, r, d, k - 1))

# %%
# comp_k(mu) collects all moments of degree at most k.
c = comp_k(mu, 3)
for i in range(4):
    print(f"slice {i}:", c.slice(i).coeffs, "moment:", mom_k(mu, i).coeffs)

# %%
# The closed-form transition agrees with applying Gamma_k functorially.
assert transition(c) == transition_via_composite(c) == comp_k(mu, 2)
assert pr_k(c) == mom_k(mu, 3)

# %%
# Pushing forward along multiplication by N scales mom_k by N^k.
for N in (1, 2, 3, 12):
    w = interpolation_check(mu, N, 2)
    print(f"N={N}:", w.holds, w.lhs.coeffs)
