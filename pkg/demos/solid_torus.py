"""
Knots in the solid torus
========================

On a surface with one hole a loop is determined by its winding number, and
U becomes a Laurent polynomial A(K).  This walk-through builds the spiral
knots, twists the torus, normalizes the result and realizes a prescribed
polynomial.
"""

from knotfib import (
    LaurentPoly,
    a_poly,
    canonical_form,
    delta_twist,
    is_in_range,
    realize_polynomial,
    serialize,
    spiral_knot,
    twist_diagram,
)

# Spirals: one positive crossing per extra turn.
for h in range(-4, 5):
    print(f"h = {h:2d}   A = {a_poly(spiral_knot(h), 'K')}")

k3 = spiral_knot(3)
print(serialize(k3))

# A Dehn twist along a meridian shifts A by a fixed polynomial in h
twisted = twist_diagram(k3, "K")
print("after twist:", a_poly(twisted, "K"), " shift:", delta_twist(3))

# the canonical form undoes the twist
print(canonical_form(a_poly(twisted, "K"), 3))

# The possible values for h = 2 are symmetric with an odd middle coefficient.
print(is_in_range(LaurentPoly.parse("3t"), 2), is_in_range(LaurentPoly.parse("2t"), 2))

d = realize_polynomial(2, LaurentPoly.parse("3t"))
print(serialize(d))
print("recomputed:", a_poly(d, "K"))
