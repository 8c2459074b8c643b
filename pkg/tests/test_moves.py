import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from knotfib import parse
from knotfib.cli import invariant_snapshot
from knotfib.diagram import NotSelfCrossingError, validate
from knotfib.invariants import ModuleElement, u_knot, u_link, u_tilde
from knotfib.moves import (
    NEUTRAL_VARIANTS,
    VARIANTS,
    Move,
    MoveError,
    MoveLog,
    apply,
    bite_then_flip,
    candidate_moves,
    fiber_flip,
    fuzz,
    predicted_homological_jump,
    predicted_jump,
    predicted_link_jump,
    random_move,
)
from knotfib.invariants import u_homological
from knotfib.words import conj_class, eight_class, reduce
from corpus import random_start, with_crossings

x, xx = reduce([1]), reduce([1, 1])


def neutral(d, m):
    out = apply(d, m)
    assert validate(out) == []
    assert invariant_snapshot(out) == invariant_snapshot(d)
    return out


def test_r1_roundtrip(k3):
    d = neutral(k3, Move("R1_insert", {"crossing": "k", "sign": -1}, ("K", 2)))
    assert len(d.crossings) == 3
    assert neutral(d, Move("R1_remove", {"crossing": "k"})) == k3
    with pytest.raises(MoveError):
        apply(k3, Move("R1_remove", {"crossing": "q1"}))
    with pytest.raises(MoveError):
        apply(k3, Move("R1_insert", {"crossing": "q1"}, ("K", 0)))


@pytest.mark.parametrize("parallel", [False, True])
def test_r2_roundtrip(k3, parallel):
    params = {"crossings": ["r", "s"], "sign": 1, "second": ["K", 5], "parallel": parallel}
    d = neutral(k3, Move("R2_insert", params, ("K", 1)))
    assert d.sign("r") == -d.sign("s")
    assert neutral(d, Move("R2_remove", {"crossings": ["r", "s"]})) == k3


def test_r2_between_components(hopf):
    params = {"crossings": ["r", "s"], "sign": -1, "second": ["K2", 0]}
    d = neutral(hopf, Move("R2_insert", params, ("K1", 1)))
    assert u_link(d, "K2", "K1") == u_link(hopf, "K2", "K1")


def test_r2_remove_requires_opposite_signs():
    d = parse("surface rank=0\ncrossing r +1\ncrossing s +1\ncomp K1: r s\ncomp K2: s r\n")
    with pytest.raises(MoveError):
        apply(d, Move("R2_remove", {"crossings": ["r", "s"]}))


def test_r3_triangle():
    d = parse(
        "surface rank=1\ncrossing p +1\ncrossing q -1\ncrossing r +1\n"
        "comp K: p q a r p a q r a^-1\n"
    )
    (m,) = candidate_moves(d, "R3")[:1]
    out = neutral(d, m)
    assert out != d
    a, b, c = m.params["crossings"]
    assert neutral(out, Move("R3", {"crossings": [b, a, c]})) == d
    with pytest.raises(MoveError):
        apply(d, Move("R3", {"crossings": ["p", "p", "q"]}))


def test_gate_cancel(k3):
    d = neutral(k3, Move("GateCancel_insert", {"letter": -1}, ("K", 3)))
    assert len(d.component("K").events) == len(k3.component("K").events) + 2
    assert neutral(d, Move("GateCancel_remove", {}, ("K", 3))) == k3
    with pytest.raises(MoveError):
        apply(k3, Move("GateCancel_insert", {"letter": 2}, ("K", 0)))
    with pytest.raises(MoveError):
        apply(k3, Move("GateCancel_remove", {}, ("K", 0)))


def test_slide_both_forms():
    d = parse("surface rank=1\ncrossing u +1\ncomp K1: a u a\ncomp K2: u a^-1 a\n")
    out = neutral(d, Move("Slide", {"crossing": "u", "letter": 1}))
    assert [str(e) for e in out.component("K1").events] != [
        str(e) for e in d.component("K1").events
    ]
    with pytest.raises(MoveError):
        apply(d, Move("Slide", {"crossing": "u", "letter": -1}))


def test_move_errors(k3):
    with pytest.raises(MoveError):
        apply(k3, Move("R1_insert", {"crossing": "k"}, ("K", 99)))
    with pytest.raises(MoveError):
        apply(k3, Move("R1_insert", {"crossing": "k"}))
    with pytest.raises(MoveError):
        apply(k3, Move("Bite", {}, ("K", 0)))
    with pytest.raises(ValueError):
        Move("R4")


def test_fiber_flip(k3):
    assert fiber_flip(fiber_flip(k3, "q1"), "q1") == k3
    flipped = fiber_flip(k3, "q1")
    assert u_knot(k3, "K") - u_knot(flipped, "K") == ModuleElement(
        {conj_class(x): 2, conj_class(xx): 2}
    )
    kink = parse("surface rank=1\ncrossing q +1\ncomp K: q q a\n")
    assert u_knot(fiber_flip(kink, "q"), "K") == u_knot(kink, "K")
    with pytest.raises(Exception):
        fiber_flip(k3, "nope")


def test_predicted_jump_examples(k3, hopf):
    du, dt = predicted_jump(k3, "q1")
    assert du == ModuleElement({conj_class(x): -2, conj_class(xx): -2})
    assert dt == ModuleElement({eight_class(x, xx): -2})
    kink = parse("surface rank=1\ncrossing q -1\ncomp K: q q a\n")
    assert predicted_jump(kink, "q") == (ModuleElement(), ModuleElement())
    with pytest.raises(NotSelfCrossingError):
        predicted_jump(hopf, "u")
    e = reduce([])
    assert predicted_link_jump(hopf, "u") == ModuleElement({eight_class(e, e, ordered=True): -2})


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10**6))
def test_predicted_jumps_match_recomputation(seed):
    d = with_crossings(seed)
    for q in d.crossing_ids():
        f = fiber_flip(d, q)
        comps = [c for c, _ in d.visits(q)]
        c = comps[0]
        if comps[0] == comps[1]:
            du, dt = predicted_jump(d, q)
            assert u_knot(f, c) - u_knot(d, c) == du
            assert u_tilde(f, c) - u_tilde(d, c) == dt
            assert u_homological(f, c) - u_homological(d, c) == predicted_homological_jump(d, q)
        else:
            c1, c2 = comps
            assert u_link(f, c1, c2) - u_link(d, c1, c2) == predicted_link_jump(d, q, c1, c2)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_double_flip_commutes_and_second_difference_vanishes(seed):
    d = with_crossings(seed, at_least=2)
    p, q = random.Random(seed).sample(d.crossing_ids(), 2)
    pq = fiber_flip(fiber_flip(d, p), q)
    assert pq == fiber_flip(fiber_flip(d, q), p)
    dp, dq = fiber_flip(d, p), fiber_flip(d, q)
    for c in d.component_names():
        for f in (u_knot, u_tilde):
            assert f(d, c) - f(dp, c) - f(dq, c) + f(pq, c) == 0


def test_fuzz_examples(k3):
    d, log = fuzz(k3, 50, seed=1)
    assert len(log) == 50
    assert u_knot(d, "K") == u_knot(k3, "K")
    assert u_tilde(d, "K") == u_tilde(k3, "K")
    assert fuzz(k3, 0, seed=5)[0] == k3
    assert log.replay() == d
    assert fuzz(k3, 50, seed=1)[0] == d


def test_movelog_jsonl_roundtrip(k3):
    d, log = fuzz(k3, 30, seed=2)
    back = MoveLog.from_jsonl(log.to_jsonl())
    assert back.start == k3
    assert back.moves == log.moves
    assert back.replay() == d


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_fuzz_preserves_all_invariants(seed):
    start = random_start(seed)
    snap = invariant_snapshot(start)
    cur = start
    for k in range(20):
        cur, _ = fuzz(cur, 1, seed + k)
        assert invariant_snapshot(cur) == snap


def test_every_neutral_variant_is_drawn():
    seen = set()
    for seed in range(60):
        _, log = fuzz(random_start(seed), 30, seed)
        seen |= {m.variant for m in log.moves}
    assert seen == set(NEUTRAL_VARIANTS)
    assert set(VARIANTS) - seen == {"FiberFlip"}


def test_random_move_none_without_candidates():
    d = parse("surface rank=0\ncomp K:\n")
    rng = random.Random(0)
    assert random_move(d, rng, "R3") is None
    assert random_move(d, rng, "GateCancel_insert") is None


def test_bite_is_neutral(k3):
    d = neutral(k3, Move("Bite", {"crossings": ["u", "v"], "word": [1], "sign": 1}, ("K", 0)))
    assert len(d.crossings) == len(k3.crossings) + 2


def test_bite_then_flip_examples(k3):
    d = bite_then_flip(k3, "K", 0, x, 1)
    assert u_tilde(d, "K") - u_tilde(k3, "K") == ModuleElement({eight_class(x, xx): 2})
    assert u_knot(d, "K") - u_knot(k3, "K") == ModuleElement(
        {conj_class(x): 2, conj_class(xx): 2}
    )
    assert u_tilde(bite_then_flip(k3, "K", 2, [], 1), "K") == u_tilde(k3, "K")
    both = bite_then_flip(bite_then_flip(k3, "K", 0, x, 1), "K", 0, x, -1)
    assert u_tilde(both, "K") == u_tilde(k3, "K")
    with pytest.raises(MoveError):
        bite_then_flip(k3, "K", 50, x, 1)


def _read_from(d, c, pos):
    ev = d.component(c).events
    return reduce([e.letter for e in ev[pos:] + ev[:pos] if hasattr(e, "letter")])


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10**6), st.data())
def test_bite_then_flip_is_exact(seed, data):
    d = random_start(seed)
    c = data.draw(st.sampled_from(d.component_names()))
    pos = data.draw(st.integers(0, len(d.component(c).events)))
    w = reduce([])
    if d.rank:
        letters = st.integers(1, d.rank).flatmap(lambda g: st.sampled_from([g, -g]))
        w = reduce(data.draw(st.lists(letters, max_size=4)))
    s = data.draw(st.sampled_from([1, -1]))
    out = bite_then_flip(d, c, pos, w, s)
    rest = w.inverse() * _read_from(d, c, pos)
    expect = ModuleElement()
    if w and rest:
        expect = ModuleElement({eight_class(w, rest): 2 * s})
    assert u_tilde(out, c) - u_tilde(d, c) == expect


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_homotopic_differences_lie_in_even_submodule(seed):
    # flips and moves change U~ by twice a combination of figure-eight classes
    rng = random.Random(seed)
    d = with_crossings(seed)
    cur = d
    for k in range(rng.randint(1, 6)):
        if cur.crossing_ids():
            cur = fiber_flip(cur, rng.choice(cur.crossing_ids()))
        cur, _ = fuzz(cur, rng.randint(0, 10), seed + k)
    for c in d.component_names():
        diff = u_tilde(cur, c) - u_tilde(d, c)
        assert all(v % 2 == 0 for _, v in diff.items())
