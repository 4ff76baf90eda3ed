"""
Measures on the line and their CDFs
===================================

Every one-dimensional measure in this library is handled through its
cumulative distribution function: a nondecreasing, right-continuous
function F whose increments F(b) - F(a) give interval masses.  This
script builds the basic families, evaluates them, inverts them, and
slices them into equal-mass cells — the grid every energy quadrature
runs on.
"""

import numpy as np

from logmeasure import (
    cantor_cdf,
    eval_cdf,
    generalized_inverse,
    interval_mass,
    mass_uniform_partition,
    power_law_cdf,
    scale_cdf,
    standard_cantor_spec,
    table_cdf,
    translate_cdf,
    uniform_cdf,
)

###############################################################################
# Four construction families.  `uniform_cdf` is Lebesgue measure on an
# interval; `power_law_cdf(c, alpha, R)` is the profile c * r**alpha on
# [0, R]; `table_cdf` interpolates tabulated values and keeps genuine
# jumps (atoms); `cantor_cdf` is the devil's staircase of an equal-ratio
# construction.

F_unif = uniform_cdf(0.0, 1.0)
F_pow = power_law_cdf(1.0, 0.5, 1.0)
F_atom = table_cdf([0.0, 0.5, 1.0], [0.2, 0.7, 1.0])
F_cantor = cantor_cdf(standard_cantor_spec(3))

for name, F in [("uniform", F_unif), ("sqrt profile", F_pow),
                ("table with atom", F_atom), ("cantor", F_cantor)]:
    xs = np.array([0.0, 0.25, 0.5, 0.75, 1.0])
    print(f"{name:16s} F(x) at {xs}: {eval_cdf(F, xs)}")
    print(f"{'':16s} total mass {F.total_mass}, continuous={F.continuous}")

###############################################################################
# Interval masses are increments of F over half-open intervals (lo, hi].
# The atom of the table measure at x = 0.5 is picked up by any interval
# whose right end reaches it, and by nothing strictly to its left.

print("\nmass of (0.25, 0.75] under uniform:", interval_mass(F_unif, 0.25, 0.75))
print("mass of (0.49, 0.5] under the table measure:",
      interval_mass(F_atom, 0.49, 0.5))
print("mass of (0.49, 0.499] just misses the atom:",
      interval_mass(F_atom, 0.49, 0.499))

###############################################################################
# The generalized inverse maps a mass level back to a position.  For the
# cantor staircase the inverse jumps across every plateau (the gaps of the
# underlying set carry no mass).

print("\ncantor generalized inverse at mass levels 1/8, 1/4, 1/2, 3/4:")
print([generalized_inverse(F_cantor, m) for m in (0.125, 0.25, 0.5, 0.75)])

###############################################################################
# Mass-uniform partitions split the support into cells of equal measure.
# This is the quadrature grid: singular CDFs get geometrically tiny cells
# exactly where the measure concentrates.

cells = mass_uniform_partition(F_cantor, 8)
print("\n8 equal-mass cells of the cantor measure:")
for c in cells:
    print(f"  [{c.lo:.6f}, {c.hi:.6f}]  mass {c.mass:.4f}  width {c.hi - c.lo:.6f}")

###############################################################################
# Measures form a cone and translation acts on the line: `scale_cdf`
# multiplies mass, `translate_cdf` shifts support.  Both wrap the original
# evaluator without resampling it.

G = scale_cdf(F_unif, 3.0)
H = translate_cdf(F_unif, -2.5)
print("\nscaled mass:", G.total_mass, " translated support:",
      (H.support_lo, H.support_hi))
