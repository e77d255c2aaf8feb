"""Two quadrics degenerating to a curve with a fat point.

The family x^2 + y^2 + s = x^2 + z^2 - s = 0 is a smooth curve for s != 0 and
four lines through the origin for s = 0.  We look at the relative singular
locus, the Gauss map in Pluecker coordinates and the flag-incidence cover over
the special point.
"""

from conormal import FamilySpec, gauss_map_plucker, incidence_cover, make_ring, singular_locus
from conormal.geometry import exceptional_locus, generic_finiteness_check

R, (x, y, z, s) = make_ring(["x", "y", "z", "s"])
F = FamilySpec.from_polys([x**2 + y**2 + s, x**2 + z**2 - s], parameter="s")

sing = singular_locus(F)
print("relative singular locus (reduced basis):")
for g in sing.canonical_strings():
    print("   ", g)

G = gauss_map_plucker(F)
print("\nGauss map, minors on lexicographic column pairs:")
for name, form in zip(G.names, G.forms):
    print(f"    {name} = {form}")

point = {"x": 0, "y": 0, "z": 0, "s": 0}
curve = exceptional_locus(G, point)
print("\nlimits of tangent planes at the origin:", ", ".join(curve.canonical_strings()))

cover, degree = incidence_cover(G, point, seed=1729)
print("generic degree of the incidence cover:", degree)
vs = ["v1", "v2", "v3"]
print("generically finite over P V:", generic_finiteness_check(cover, vs, [list(G.names)], seed=1729))
