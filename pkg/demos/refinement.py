"""
Loop classes versus figure-eight classes
========================================

Two knots on a disc with two holes whose self-crossings split off the same
pairs of loop classes, but arranged differently around the crossing point.
The coarse invariant U sees no difference, the refined one does.
"""

from knotfib import Word, conj_class, eight_class, parse, phi_push, u_knot, u_tilde

# The component reads a a a b b.  Crossing u cuts it into (a a b, b a),
# crossing v into (a b, b a a).
first = parse("""
surface rank=2
crossing u +1
crossing v -1
comp K: a u a v a b u v b
""")
second = first.with_sign("u", -1).with_sign("v", 1)

for name, d in [("first", first), ("second", second)]:
    print(name)
    print("  U  =", u_knot(d, "K").text(2))
    print("  U~ =", u_tilde(d, "K").text(2))

# Both splittings produce loops in the classes [a a b] and [a b] ...
print(conj_class(Word.parse("b a")) == conj_class(Word.parse("a b")))

# ... but the two pairs are not related by one common conjugation.
g = eight_class(Word.parse("a a b"), Word.parse("b a"))
h = eight_class(Word.parse("a b"), Word.parse("b a a"))
print(g, h, g == h)

# Forgetting how the loops are glued recovers U from U~.
print(phi_push(u_tilde(first, "K")) == u_knot(first, "K"))
