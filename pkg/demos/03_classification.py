"""The 216 maps fall into 15 classes; the printed lists are checked against them."""
from __future__ import annotations

from tripq.classes import ERRATA, PAPER_LISTS, check_orbit_stars, classify_all, status_counts, twin
from tripq.farey import triple

for c in classify_all():
    print(f"{c.representative.label():14s} {len(c):3d} members  {str(c.status):28s} {sorted(c.provenance)}")

print("status counts:", status_counts())
print("orbit stars consistent:", check_orbit_stars() == [])
print("twin of (e,e,e):", twin(triple("e,e,e")).label())

# Entries of the printed lists that do not fit the computed classes, with the replacements used.
for (name, pos), fixed in sorted(ERRATA.items()):
    print(f"{name}[{pos}]: printed {PAPER_LISTS[name][pos].label()}, used {fixed.label()}")
