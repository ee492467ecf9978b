"""Limits along repeated periods: cubic Perron points and non-shrinking cells."""
from __future__ import annotations

import itertools

from tripq import periodic_limit_bary, periodic_limit_farey

res = periodic_limit_farey("e,e,e", "0")
print("(e,e,e) period 0:", res.char_poly_text("l"), "limit ~", tuple(round(float(v), 12) for v in res.point))

# Barycentric limits are rational: the fixed vector of a column-stochastic matrix.
for w in ("0", "01", "001"):
    print(f"(e,e,e) Gamma period {w}:", *periodic_limit_bary("e,e,e", w).points)

# An eigenvalue -1 keeps the cells from shrinking even though the fixed space is a line.
flip = periodic_limit_bary("e,e,12", "1")
print("(e,e,12) period 1:", flip.kind, *flip.points, "fixed space dim", flip.fixed_space_dim)

# Short mixed periods that fail to shrink, for a class expected to converge whenever 0 recurs.
for w in itertools.product((0, 1), repeat=2):
    lim = periodic_limit_bary("e,e,13", w)
    print("(e,e,13) period", "".join(map(str, w)), lim.kind, *lim.points)
