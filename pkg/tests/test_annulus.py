import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from knotfib import parse
from knotfib.annulus import (
    LaurentPoly,
    RangeError,
    RankMismatchError,
    SymmetryError,
    a_poly,
    canonical_form,
    delta_twist,
    homology,
    is_in_range,
    psi,
    range_violations,
    realize_polynomial,
    spiral_knot,
    symmetry_check,
    twist_diagram,
)
from knotfib.diagram import validate
from knotfib.invariants import u_knot
from corpus import annulus_corpus_item

P = LaurentPoly.parse


def simple(h):
    """1*t + ... + t^(h-1) for h > 0, mirrored for h < 0."""
    if h > 0:
        return LaurentPoly.range_sum(range(1, h))
    return LaurentPoly.range_sum(range(-1, h, -1))


def test_laurent_text_and_parse():
    p = LaurentPoly.from_coeffs({-1: 1, 1: 3, 2: 1})
    assert p.text() == "t^-1 + 3t + t^2"
    assert P("t^-1 + 3t + t^2") == p
    assert P("-2t - 2t^2") == LaurentPoly.from_coeffs({1: -2, 2: -2})
    assert P("0") == LaurentPoly() and LaurentPoly().text() == "0"
    half = LaurentPoly({3: 3})
    assert half.text() == "3/2 t^3"
    assert P(half.text()) == half
    assert not half.is_integral()
    assert P("2 - t").text() == "2 - t"


def test_laurent_constant_and_negative_lead():
    p = P("-t^-2 + 5 - 1/2 t")
    assert p.coeff(-2) == -1 and p.coeff(0) == 5 and p.coeff(1) * 2 == -1
    assert P(p.text()) == p


@pytest.mark.parametrize("bad", ["", "t +", "+ + t", "t t", "3t 2", "2/3 t", "t^", "x"])
def test_laurent_parse_rejects(bad):
    with pytest.raises(ValueError):
        P(bad)


def test_laurent_json():
    p = LaurentPoly.from_coeffs({-1: 1, 1: 3, 2: 1})
    assert p.to_json_map() == {"-1": "1", "1": "3", "2": "1"}
    assert LaurentPoly.from_json_map(json.loads(p.to_json())) == p
    assert LaurentPoly({0: 1}).to_json_map() == {"0": "1/2"}


@given(st.dictionaries(st.integers(-6, 6), st.integers(-9, 9)))
def test_laurent_roundtrips(doubled):
    p = LaurentPoly(doubled)
    assert P(p.text()) == p
    assert LaurentPoly.from_json_map(p.to_json_map()) == p
    assert p - p == 0 and 2 * p == p + p


def test_a_poly_spirals():
    assert a_poly(spiral_knot(3), "K") == P("t + t^2")
    assert a_poly(spiral_knot(-2), "K") == P("t^-1")
    assert a_poly(spiral_knot(-3), "K") == P("t^-1 + t^-2")
    assert a_poly(spiral_knot(1), "K") == 0
    assert a_poly(parse("surface rank=1\ncomp K: a a\n"), "K") == 0


@pytest.mark.parametrize("h", range(-5, 6))
def test_spiral_family(h):
    d = spiral_knot(h)
    assert validate(d) == []
    assert homology(d, "K") == h
    assert a_poly(d, "K") == simple(h)
    assert len(d.crossings) == max(abs(h) - 1, 0)


def test_a_poly_requires_rank_one(k3):
    with pytest.raises(RankMismatchError):
        a_poly(parse("surface rank=2\ncomp K: a b\n"), "K")


def test_psi_consistency_formal_code():
    d = parse("surface rank=1\ncrossing q +1\ncomp K: a q a a q a^-1 a\n")
    assert psi(u_knot(d, "K")) == 2 * a_poly(d, "K")


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_psi_consistency_corpus(seed):
    d, h = annulus_corpus_item(seed)
    A = a_poly(d, "K")
    assert psi(u_knot(d, "K")) == 2 * A
    assert A.is_integral()
    assert symmetry_check(A, h)
    assert is_in_range(A, h)


def test_symmetry_check_examples():
    assert symmetry_check(P("t + t^2"), 3)
    assert not symmetry_check(P("t"), 3)
    assert symmetry_check(LaurentPoly(), 0)
    assert not symmetry_check(P("1"), 0)


def test_delta_twist_examples():
    assert delta_twist(3) == P("-3t - 3t^2")
    assert delta_twist(-2) == P("-2t^-1")
    assert delta_twist(0) == 0
    assert delta_twist(1) == 0


def test_twist_examples(k3):
    assert a_poly(twist_diagram(k3, "K"), "K") == P("-2t - 2t^2")
    flat = parse("surface rank=1\ncrossing q +1\ncomp K: q a q a^-1\n")
    assert a_poly(twist_diagram(flat, "K"), "K") == a_poly(flat, "K")
    back = twist_diagram(twist_diagram(k3, "K"), "K", direction=-1)
    assert a_poly(back, "K") == a_poly(k3, "K")
    with pytest.raises(RankMismatchError):
        twist_diagram(parse("surface rank=2\ncomp K: a b\n"), "K")


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from([1, -1]))
def test_twist_shift_on_corpus(seed, direction):
    d, h = annulus_corpus_item(seed)
    t = twist_diagram(d, "K", direction)
    assert validate(t) == []
    assert homology(t, "K") == h
    assert a_poly(t, "K") - a_poly(d, "K") == direction * delta_twist(h)


def test_canonical_form_examples():
    assert canonical_form(P("t + t^2"), 3) == (P("t + t^2"), 0)
    assert canonical_form(P("-2t - 2t^2"), 3) == (P("t + t^2"), 1)
    A = P("5t^-1 + 5t")
    assert canonical_form(A, 0) == (A, 0)
    assert canonical_form(P("4t^-1"), -2) == (P("0"), -2)
    with pytest.raises(SymmetryError):
        canonical_form(P("t"), 3)


def symmetric_poly(rng, h):
    """Random polynomial with a_0 = a_h = 0 and a_j = a_{h-j}, coefficients in [-5, 5]."""
    acc = {}
    # one exponent from each mirror pair {j, h - j} strictly between 0 and h
    half = range(1, h // 2 + 1) if h > 0 else range(-1, -(-h // 2) - 1, -1)
    for j in half:
        c = rng.randint(-5, 5)
        acc[j] = acc[h - j] = c
    if h == 0:
        for j in range(1, 4):
            c = rng.randint(-5, 5)
            acc[j] = acc[-j] = c
    return LaurentPoly.from_coeffs(acc)


@settings(max_examples=60, deadline=None)
@given(st.integers(-6, 6), st.integers(0, 10**6))
def test_canonical_form_idempotent_and_coset_constant(h, seed):
    A = symmetric_poly(random.Random(seed), h)
    C, n = canonical_form(A, h)
    assert C + n * delta_twist(h) == A
    assert canonical_form(C, h) == (C, 0)
    if h:
        lead = C.coeff(1 if h > 0 else -1)
        assert 0 <= lead < abs(h)
    for k in range(-5, 6):
        C2, n2 = canonical_form(A + k * delta_twist(h), h)
        assert C2 == C
        if delta_twist(h):
            assert n2 == n + k


def test_range_examples():
    assert is_in_range(P("t"), 2)
    assert range_violations(P("2t"), 2) == ["(c) p_k odd for h = 2k"]
    assert is_in_range(P("t + t^2"), 3)
    assert is_in_range(LaurentPoly(), 0)
    assert is_in_range(P("t + t^-1"), 0)
    assert range_violations(P("1"), 0) == ["(a) p_0 = p_h = 0"]
    assert range_violations(P("t"), 3) == ["(b) p_j = p_{h-j}"]
    assert range_violations(LaurentPoly({1: 1, 2: 1}), 3) == ["integrality"]


def test_realize_examples():
    d = realize_polynomial(3, P("t + t^2"))
    assert d == spiral_knot(3)
    d = realize_polynomial(2, P("3t"))
    assert a_poly(d, "K") == P("3t") and len(d.crossings) == 3
    d = realize_polynomial(0, P("t + t^-1"))
    assert a_poly(d, "K") == P("t + t^-1") and len(d.crossings) == 2
    with pytest.raises(RangeError) as e:
        realize_polynomial(2, P("2t"))
    assert e.value.condition.startswith("(c)")


@settings(max_examples=60, deadline=None)
@given(st.integers(-4, 4), st.integers(0, 10**6))
def test_realize_roundtrip(h, seed):
    rng = random.Random(seed)
    target = symmetric_poly(rng, h)
    if h and h % 2 == 0 and target.coeff(h // 2) % 2 == 0:
        target = target + LaurentPoly.monomial(h // 2)
    assert is_in_range(target, h)
    d = realize_polynomial(h, target)
    assert validate(d) == []
    assert homology(d, "K") == h
    assert a_poly(d, "K") == target
