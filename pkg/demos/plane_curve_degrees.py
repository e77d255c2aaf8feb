"""Degrees of conormal varieties of plane curves along two routes.

The polar route uses the class of the curve; the Euler-obstruction route adds
the multiplicities at the singular points to the Euler characteristic of the
smooth part.  Both must agree.
"""

from conormal import make_ring, plane_curve_report

R, (x, y) = make_ring(["x", "y"])
curves = {
    "line": "x + y - 1",
    "conic": "x^2 + y^2 - 1",
    "cuspidal cubic": "y^2 - x^3",
    "nodal cubic": "y^2 - x^3 - x^2",
    "smooth quartic": "x^4 + y^4 - 1",
}

print(f"{'curve':16} {'polar':>6} {'euler':>6}")
for name, text in curves.items():
    f = R.parse(text)
    polar = plane_curve_report(f, "polar")
    euler = plane_curve_report(f, "euler-obstruction")
    print(f"{name:16} {polar.total:>6} {euler.total:>6}")
    for w in polar.warnings:
        print("    note:", w)
