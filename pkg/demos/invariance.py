"""
Moves, flips and jumps
======================

Random isotopy moves leave every invariant alone, a fiber flip at a single
crossing changes them by a predictable amount.
"""

from knotfib import fiber_flip, fuzz, predicted_jump, random_diagram, u_knot, u_tilde

d = random_diagram(rank=2, components=1, crossings=5, gates=6, seed=4)
print("start U~ =", u_tilde(d, "K1").text(2))

moved, log = fuzz(d, 200, seed=4)
print(len(log), "moves,", len(moved.crossings), "crossings now")
print("same U~:", u_tilde(moved, "K1") == u_tilde(d, "K1"))

# the move log is plain JSON lines and replays to the same diagram
print(log.to_jsonl().splitlines()[1])
print("replay ok:", log.replay() == moved)

# Flipping a crossing: the jump is -2 sign(q) times the classes of its split loops
for q in d.self_crossings("K1"):
    du, dt = predicted_jump(d, q)
    actual = u_tilde(fiber_flip(d, q), "K1") - u_tilde(d, "K1")
    print(q, "predicted", dt.text(2), "| recomputed", actual.text(2))

# the first difference depends on the crossing only, so second differences vanish
p, q = d.crossing_ids()[:2]
second = (
    u_knot(d, "K1")
    - u_knot(fiber_flip(d, p), "K1")
    - u_knot(fiber_flip(d, q), "K1")
    + u_knot(fiber_flip(fiber_flip(d, p), q), "K1")
)
print("second difference:", second.text(2))
