"""
Graphs of interactions: validation and holonomy assembly
========================================================

A spacial slice carries a left and a right hyperbolic cone metric; a
collision exchanges a disk.  The admissibility of the data reduces the
isometry conditions to holonomy matching on the complement generators, and
the per-vertex representations glue along solved conjugators into one
representation of the glued fundamental group, with every marked meridian
evaluating to an elliptic pair of the declared angle.
"""

import numpy as np

from adscone.catalog import collision_distance, subdivide_face_with_cone, torus_with_cone_point
from adscone.errors import LinkRealizationError
from adscone.interactions import (
    assemble_holonomy,
    elastic_collision_graph,
    time_reverse,
    validate_geometric_data,
)
from adscone.isom import classify

PI = np.pi

# A hyperbolic torus with two cone points, built by a barycentric refinement
# with the metric re-solved so every vertex closes up.
surf, _ = torus_with_cone_point(2.0)
surf2, disk2, v2 = subdivide_face_with_cone(surf, 1, 2.5)
print("slice surface: torus with cone angles", dict(surf2.cone_angles))

# The elastic collision: the two particles meet and separate unchanged; the
# exchanged disks coincide and the slices are isometric.
both = frozenset(disk2.face_ids) | frozenset({7, 8, 9})
graph = elastic_collision_graph(surf2, both)
report = validate_geometric_data(graph)
print("geometric data admissible:", report.passed)

asm = assemble_holonomy(graph)
print("relation words residual:", asm.relation_residual(graph.edges[0]))
for name, want in (("m4", 2.0), (f"m{v2}", 2.5)):
    c = classify(asm.evaluate("after", "l", [name]))
    print(f"meridian {name}: elliptic pair of angle {c.angle:.9f} (declared {want})")

reversed_graph = time_reverse(graph)
print("time reversal swaps the edge:", reversed_graph.edges[0].before, "->",
      reversed_graph.edges[0].after)

# Inelastic collisions obey the rotation-product trace identity.  The
# spec's literal fixture (pi; 2pi/3, 2pi/3) violates it:
try:
    collision_distance(PI, 2 * PI / 3, 2 * PI / 3)
except LinkRealizationError as err:
    print("\nunrealizable interaction:")
    print(" ", err)
d = collision_distance(PI, PI / 3, PI / 3)
print(f"\nrealizable variant (pi; pi/3, pi/3): the incoming particles sit at "
      f"distance {d:.6f} = arccosh(3)")
