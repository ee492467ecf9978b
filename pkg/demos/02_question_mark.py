"""From the classical ?(x) to its triangle analogs."""
from __future__ import annotations

from fractions import Fraction

from tripq import classical_qmark, degenerate_phi, phi_eval, point
from tripq.lab import sample_point

# ?(x) sends the Farey points of each level to the dyadic points of that level.
for x in ["1/3", "2/5", "3/5", "5/8", "13/21"]:
    print(f"?({x}) = {classical_qmark(Fraction(x), 40)}")

# A map that fixes a corner only subdivides the opposite side, so its analog is ?
# carried along the lines through that corner.
for p in [point("2/3", "1/3"), point("4/5", "1/5"), point("7/10", "1/4")]:
    exact = degenerate_phi("e,12,e", p, 40)
    approx = phi_eval("e,12,e", p, 40)
    print(f"(e,12,e) {p}: pencil formula {exact}, cell approximation {approx.image}, verdict {approx.verdict}")

# For generic maps the analog is read off nested barycentric cells. Whether they close
# down to a point depends on the tail of the itinerary.
for t in ["e,e,23", "e,e,e", "e,12,e", "e,e,13"]:
    res = phi_eval(t, sample_point(2024, 0, 256), 60)
    print(f"{t:8s} verdict {res.verdict:12s} diameter {res.diameter:.3e}  ({res.tail_assumption})")
