"""Hyperbolas xy = s collapsing to the coordinate cross.

The limit of the conormal varieties is not just the conormal of the limit
curve: a point component appears at the node.  Its multiplicity is read off a
random slice and the total degree does not move with s.
"""

from conormal import FamilySpec, check_degree_conservation, check_jump_criterion, make_ring, specialize_cycle

R, (x, y, s) = make_ring(["x", "y", "s"])
F = FamilySpec.from_polys([x * y - s], parameter="s", mode="biprojective-plane")

for s0 in (1, 0):
    print(f"s = {s0}:", specialize_cycle(F, s0, seed=1729))

rep = check_degree_conservation(F, [0, 1, -3], seed=1729)
for s0, total in zip(rep.samples, rep.totals):
    print(f"degree at s = {s0}: {total}")

jump = check_jump_criterion(F, 0, seed=1729)
print("jump criterion:", jump.message, jump.jump_components)

# the same count for a cusp pencil: three copies of the point conormal
G = FamilySpec.from_polys([y**2 - x**3 - s * x], parameter="s", mode="biprojective-plane")
print("cusp pencil at s = 0:", specialize_cycle(G, 0, seed=1729))
