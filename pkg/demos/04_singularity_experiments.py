"""Numerical and exact evidence for singularity of the question-mark analogs."""
from __future__ import annotations

from tripq.lab import (
    NORMALITY_TRIPLES, ExperimentConfig, bary_bit_experiment, convergence_survey, cylinder_areas,
    measure_recursion_check, sn_experiment,
)

# Digit sums of the Gauss-type map grow faster than n, while the barycentric control stays at 1 per digit.
for kind in ("gauss", "tent"):
    cfg = ExperimentConfig("e,e,e", 300, 80, 42, denominator_bits=256, checkpoints=(20, 40), map=kind)
    rep = sn_experiment(cfg)
    medians = ", ".join(f"n={n}: {rep.median(n):.2f}" for n in cfg.checkpoints)
    print(f"{kind:5s} median s_n/n  {medians}   failures {rep.failures}")

print("barycentric 1-bit share:", round(bary_bit_experiment("e,e,e", 100, 1000, seed=1).mean, 4))

# First-digit cylinders with area 1/((k+1)(k+2)): the same law as for the Gauss map.
for t in ("e,23,e", "e,13,e", "e,e,23"):
    table = cylinder_areas(t, 8)
    print(t, "law holds" if table.law_holds else f"law fails first at k={table.first_discrepancy}")

# The sets with i-th digit below iN shrink by a fixed factor per level.
for t in NORMALITY_TRIPLES:
    rep = measure_recursion_check(t, 1, 5)
    print(t, [f"{float(lv.ratio):.3f}<={lv.bound}" for lv in rep.levels[1:]])

# Cells shrink for (e,e,23); for (e,12,e) they stay long slivers.
for t in ("e,e,23", "e,12,e"):
    s = convergence_survey(t, 50, 60, seed=9)
    print(t, f"largest final side {s.final_max_side():.2e}, smallest diameter seen {s.min_diameter():.3f}")
