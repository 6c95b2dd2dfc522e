"""
Finite measures and their traces
================================

A measure on Z_p^d with values in Z/p^r is stored at level r as an
element of the group ring Z/p^r[(Z/p^r)^d]. Lower levels are obtained by
pushing forward along reduction.
"""

from iwasawa import FiniteMeasure, Measure, Point, convolve, convolve_dense, delta, pushforward, trace

# %%
# Dirac masses multiply by adding their points.
p, r = 3, 2
a, b = delta(Point(p, r, (4,))), delta(Point(p, r, (7,)))
print("delta_4 * delta_7 =", convolve(a, b).coeffs)

# %%
# The trace forgets one digit of each point and reduces coefficients.
mu = FiniteMeasure(p, r, 1, {(1,): 2, (4,): 5, (7,): 1, (2,): 8})
print("mu        :", mu.coeffs)
print("trace(mu) :", trace(mu).coeffs)

# %%
# Trace is a ring map, so it commutes with convolution.
nu = FiniteMeasure(p, r, 1, {(3,): 1, (5,): 4})
assert trace(convolve(mu, nu)) == convolve(trace(mu), trace(nu))

# %%
# The sparse product agrees with the brute-force dense one.
assert convolve(mu, nu) == convolve_dense(mu, nu)
print("dense realization of mu:", list(mu.to_dense()))

# %%
# Linear maps push measures forward; here the sum map (Z/9)^2 -> Z/9.
mu2 = FiniteMeasure(p, r, 2, {(1, 2): 1, (4, 4): 2})
print("sum_* mu2 =", pushforward(mu2, [[1, 1]]).coeffs)

# %%
# A ``Measure`` keeps the top level and derives the rest on demand.
M = Measure(mu)
for level in (2, 1):
    print(f"level {level}:", M.at_level(level).coeffs)
