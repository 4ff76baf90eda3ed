"""
A unit-mass density with infinite log-energy
============================================

Finite mass does not imply finite log-energy.  The witness is a staircase
of ever taller, thinner blocks: block n has width d_n = exp(-4**n) and
height 1/(2**n d_n), so the masses h_n d_n = 2**-n sum to one while every
diagonal term of the energy lower bound equals exactly 1 — fifty blocks,
fifty units of certified energy.
"""

import math

from logmeasure import (
    energy_density,
    l1_divergent_blocks,
    l_log_l_gamma,
    lp_norm,
    step_lower_bound,
)

###############################################################################
# The widths underflow any double less than 300 blocks in, so blocks store
# logarithms (with compensation parts) and all derived quantities combine
# the logs before exponentiating.  Fifty blocks are enough to make the
# point and keep every term exact.

f = l1_divergent_blocks(50)
print("blocks:", len(f.blocks))
print("first three widths:", [math.exp(b.d_log) for b in f.blocks[:3]])
print("log-width of block 50:", f.blocks[-1].d_log)

###############################################################################
# Total mass: sum of 2**-n for n = 1..50, i.e. 1 - 2**-50.

mass = lp_norm(f, 1.0)
print("\nL1 mass:", mass)
print("equals 1 - 2^-50:", abs(mass - (1.0 - 2.0**-50)) < 1e-12)

###############################################################################
# The diagonal lower-bound series: term n is h_n^2 d_n^2 log(1/d_n), which
# the construction tunes to exactly 1.  The partial sum grows without
# bound, certifying infinite energy for the full construction.

series = step_lower_bound(f)
print("\nfirst 10 series terms:", [round(t, 15) for t in series["terms"][:10]])
print("partial sum over 50 blocks:", series["partial_sum"])
print("growth certificate for the infinite construction:", series["diverging"])

###############################################################################
# The density engine reaches the same verdict from the block geometry.

est = energy_density(f)
print("\ndensity-engine verdict:", est.verdict)
print("certified lower bound:", est.lower)

###############################################################################
# Integrability refinement: f belongs to L(log L)^gamma for every
# gamma < 1/2 and escapes it for gamma > 1/2.  The functional is finite
# at 0.4 and returns the +inf sentinel at 0.6 — the threshold where this
# family of counterexamples stops existing.

for gamma in (0.4, 0.6):
    val = l_log_l_gamma(f, gamma)
    print(f"\nL(logL)^{gamma} integral:", val)
