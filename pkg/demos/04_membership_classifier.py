"""
Certifying finite or infinite energy, weakest test first
========================================================

`classify_membership` chains sufficient conditions from strongest to
weakest — Lipschitz, Holder, reciprocal-log modulus, direct quadrature,
divergent lower-bound series — and reports the first rule that certifies
a verdict together with its numeric witness.  No rule firing means an
honest Unknown, never a guess.
"""

from logmeasure import (
    cantor_cdf,
    check_log_modulus,
    classify_membership,
    fit_holder,
    general_ratio_spec,
    l1_divergent_blocks,
    modulus_of_continuity,
    power_law_cdf,
    standard_cantor_spec,
    table_cdf,
    uniform_cdf,
)

###############################################################################
# The building block: the modulus of continuity on dyadic scales.  A
# least-squares fit of its logarithm produces a certified (K, alpha) pair
# (K is inflated after the fit so the bound holds literally on every
# sampled scale).

F = cantor_cdf(standard_cantor_spec(3))
print("cantor modulus at scale 1/9:", modulus_of_continuity(F, 1.0 / 9.0))
fit = fit_holder(F, 2, 20)
print("fitted Holder exponent:", fit.alpha)
print("fitted constant K:", fit.K)
print("(the construction's exact exponent is ln2/ln3 = 0.6309...)")

###############################################################################
# Weaker than any Holder bound: increments controlled by 1/|log y|^beta
# with beta > 1.  The thin equal-ratio family passes at beta = 1.5.

thin = cantor_cdf(general_ratio_spec(2.0))
rep = check_log_modulus(thin, 1.5)
print("\nreciprocal-log modulus for the thin family at beta=1.5:")
print("  holds:", rep["holds"], " worst ratio:", rep["worst_ratio"])

###############################################################################
# The classifier on a gallery of measures.  Each verdict names its rule
# and carries the witness numbers that justify it.

gallery = [
    ("uniform", uniform_cdf()),
    ("sqrt profile", power_law_cdf(1.0, 0.5, 1.0)),
    ("cantor (K=3)", cantor_cdf(standard_cantor_spec(3))),
    ("thin family", thin),
    ("atom at 0.5", table_cdf([0.0, 0.5, 1.0], [0.2, 0.7, 1.0])),
]
print("\nclassifier gallery:")
for name, measure in gallery:
    v = classify_membership(measure)
    print(f"  {name:14s} -> {v.verdict:20s} via {v.rule}")

###############################################################################
# Divergence is certified, not suspected: for the staircase density the
# witness is the partial sum of the lower-bound series crossing the
# budget.

v = classify_membership(l1_divergent_blocks(50))
print("\nstaircase density ->", v.verdict, "via", v.rule)
print("witness:", {k: v.witness[k] for k in sorted(v.witness)})
