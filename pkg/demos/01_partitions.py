"""Farey and barycentric subdivisions of the triangle, drawn side by side.

Writes SVG files to $TRIPQ_OUTPUT_DIR (default ./demo_output).
"""
from __future__ import annotations

import os
from pathlib import Path

from tripq import bary_partition, farey_partition, phi_n_vertex_map
from tripq.svg import render

out = Path(os.environ.get("TRIPQ_OUTPUT_DIR", "demo_output"))
out.mkdir(parents=True, exist_ok=True)

# The base map (e,e,e): two levels of Farey cells. Every cell is a unimodular cone.
for bits, cell in farey_partition("e,e,e", 2):
    print("Farey", "".join(map(str, bits)), *cell.vertices)

# The barycentric cells use the same combinatorics but split each side at its midpoint,
# so every cell has exactly half the area of its parent.
for bits, cell in bary_partition("e,e,e", 2):
    print("Gamma", "".join(map(str, bits)), *cell.vertices, "area", cell.normalized_area)

# Matching vertices of equal address gives the finite approximations of the question-mark analog.
for farey_vertex, bary_vertex in phi_n_vertex_map("e,e,e", 3):
    print(f"{farey_vertex} -> {bary_vertex}")

for name, cells in [
    ("farey_eee_d6", farey_partition("e,e,e", 6)),
    ("bary_eee_d6", bary_partition("e,e,e", 6)),
    ("farey_12_13_e_d6", farey_partition("12,13,e", 6)),
    ("farey_e_23_132_d8", farey_partition("e,23,132", 8)),
]:
    path = out / f"{name}.svg"
    path.write_text(render([c for _, c in cells], name))
    print("wrote", path)
