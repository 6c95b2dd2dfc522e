"""
Mittag-Leffler diagnostics on finite towers
===========================================

Given A_0 <- A_1 <- ... <- A_{L-1}, look at the images of A_{r+s} in A_r.
A finite window can only report what it sees, so each verdict is
relative to the window length.
"""

from iwasawa import FiniteTower, ml_diagnose, ml_report
from iwasawa.towers import submodule_order

# %%
# The three reference towers.
towers = {
    "identity": FiniteTower.constant(3, 2, 2, 4, [[1, 0], [0, 1]]),
    "zero": FiniteTower.constant(3, 2, 2, 4, [[0, 0], [0, 0]]),
    "times p on Z/p": FiniteTower.constant(3, 1, 1, 4, [[3]]),
}
for name, t in towers.items():
    print(f"{name:>15}:", ml_diagnose(t, 0))

# %%
# Multiplication by 2 on Z/8 shrinks the image by a factor 2 each step.
t = FiniteTower.constant(2, 3, 1, 6, [[2]])
rep = ml_report(t, 0)
print("image orders:", [submodule_order(im, 2, 3) for im in rep.images])
print("verdict:", rep.verdict)

# %%
# A one-step window cannot distinguish stabilization from anything else.
print(ml_diagnose(FiniteTower.constant(3, 1, 1, 3, [[1]]), 1))
