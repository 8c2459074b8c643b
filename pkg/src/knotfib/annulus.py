"""Knots in the solid torus: partial linking polynomial, Dehn twist action,
canonical form, the range P_h and its constructive realization."""

from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import Iterable, Mapping

from .diagram import Component, Crossing, Diagram, DiagramError, Gate, Surface, Visit, split_at
from .invariants import ModuleElement
from .moves import bite_then_flip
from .words import abelianize, reduce


class RankMismatchError(DiagramError):
    pass


class SymmetryError(ValueError):
    pass


class RangeError(ValueError):
    def __init__(self, condition: str, detail: str = ""):
        self.condition = condition
        super().__init__(f"condition {condition} violated" + (f": {detail}" if detail else ""))


class LaurentPoly:
    """Finite Laurent polynomial in ``t`` with half-integer coefficients.

    Coefficients are stored doubled so every value is an exact integer.
    """

    __slots__ = ("_twice",)

    def __init__(self, doubled: Mapping[int, int] | None = None):
        self._twice = {int(k): int(v) for k, v in (doubled or {}).items() if v}

    @classmethod
    def from_coeffs(cls, coeffs: Mapping[int, int | Fraction]) -> LaurentPoly:
        doubled = {}
        for k, v in coeffs.items():
            two = Fraction(v) * 2
            if two.denominator != 1:
                raise ValueError(f"coefficient {v} is not a multiple of 1/2")
            doubled[k] = int(two)
        return cls(doubled)

    @classmethod
    def monomial(cls, exponent: int, coeff: int = 1) -> LaurentPoly:
        return cls({exponent: 2 * coeff})

    @classmethod
    def range_sum(cls, exponents: Iterable[int], coeff: int = 1) -> LaurentPoly:
        acc: dict[int, int] = {}
        for e in exponents:
            acc[e] = acc.get(e, 0) + 2 * coeff
        return cls(acc)

    def doubled(self) -> dict[int, int]:
        return dict(self._twice)

    def coeff(self, i: int) -> Fraction:
        return Fraction(self._twice.get(i, 0), 2)

    def __getitem__(self, i: int) -> Fraction:
        return self.coeff(i)

    def support(self) -> list[int]:
        return sorted(self._twice)

    def is_integral(self) -> bool:
        return all(v % 2 == 0 for v in self._twice.values())

    def __bool__(self) -> bool:
        return bool(self._twice)

    def __eq__(self, other) -> bool:
        if isinstance(other, LaurentPoly):
            return self._twice == other._twice
        if other == 0:
            return not self._twice
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._twice.items()))

    def __add__(self, other: LaurentPoly) -> LaurentPoly:
        acc = dict(self._twice)
        for k, v in other._twice.items():
            acc[k] = acc.get(k, 0) + v
        return LaurentPoly(acc)

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly({k: -v for k, v in self._twice.items()})

    def __sub__(self, other: LaurentPoly) -> LaurentPoly:
        return self + (-other)

    def __mul__(self, n: int) -> LaurentPoly:
        if not isinstance(n, int):
            return NotImplemented
        return LaurentPoly({k: n * v for k, v in self._twice.items()})

    __rmul__ = __mul__

    def __str__(self) -> str:
        return self.text()

    def __repr__(self) -> str:
        return f"LaurentPoly({self.text()!r})"

    def text(self) -> str:
        """Render like ``t^-1 + 3t + t^2``; half-integers as ``p/2``."""
        if not self._twice:
            return "0"
        out = []
        for k in self.support():
            c = self.coeff(k)
            neg = c < 0
            c = abs(c)
            if c.denominator == 1:
                mag = "" if (c == 1 and k != 0) else str(c.numerator)
            else:
                mag = f"{c.numerator}/2" + (" " if k != 0 else "")
            mono = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
            term = mag + mono
            if not out:
                out.append(("-" if neg else "") + term)
            else:
                out.append(("- " if neg else "+ ") + term)
        return " ".join(out)

    def to_json_map(self) -> dict[str, str]:
        out = {}
        for k in self.support():
            c = self.coeff(k)
            out[str(k)] = str(c.numerator) if c.denominator == 1 else f"{c.numerator}/2"
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_json_map())

    @classmethod
    def from_json_map(cls, obj: Mapping[str, str]) -> LaurentPoly:
        return cls.from_coeffs({int(k): Fraction(v) for k, v in obj.items()})

    @classmethod
    def parse(cls, text: str) -> LaurentPoly:
        return parse_poly(text)


_TERM_RE = re.compile(
    r"""\s*(?P<sign>[+-])?\s*
        (?P<coeff>\d+(?:/2)?)?\s*\*?\s*
        (?P<mono>t(?:\^(?P<exp>-?\d+))?)?\s*""",
    re.VERBOSE,
)


def parse_poly(text: str) -> LaurentPoly:
    """Parse ``t^-1 + 3t + t^2``, ``-2t - 2t^2``, ``1/2 t^3``, ``0``.

    Repeated or dangling signs are rejected.
    """
    s = text.strip()
    if not s:
        raise ValueError("empty polynomial")
    pos = 0
    acc: dict[int, int] = {}
    first = True
    while pos < len(s):
        m = _TERM_RE.match(s, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse polynomial at {s[pos:]!r}")
        sign, coeff, mono = m.group("sign"), m.group("coeff"), m.group("mono")
        if not first and sign is None:
            raise ValueError(f"missing sign before {s[pos:]!r}")
        if coeff is None and mono is None:
            raise ValueError(f"ambiguous sign or empty term at {s[pos:]!r}")
        c = Fraction(coeff) if coeff is not None else Fraction(1)
        if sign == "-":
            c = -c
        exp = 0
        if mono is not None:
            exp = int(m.group("exp")) if m.group("exp") is not None else 1
        acc[exp] = acc.get(exp, 0) + int(c * 2)
        pos = m.end()
        first = False
    return LaurentPoly(acc)


# ---------------------------------------------------------------------------
# invariants


def _require_rank_one(d: Diagram) -> None:
    if d.rank != 1:
        raise RankMismatchError(f"solid torus diagrams need rank 1, got {d.rank}")


def homology(d: Diagram, c: str) -> int:
    """Winding number h of component ``c`` around the core."""
    _require_rank_one(d)
    return sum(ev.letter for ev in d.component(c).events if isinstance(ev, Gate))


def a_poly(d: Diagram, c: str) -> LaurentPoly:
    """Partial linking polynomial of component ``c``.

    Sum over self-crossings with both winding numbers nonzero of
    ``sign/2 * (t^i1 + t^i2)``.
    """
    _require_rank_one(d)
    acc: dict[int, int] = {}
    for q in d.self_crossings(c):
        a, b = split_at(d, q)
        i1 = abelianize(a, 1).sums[0]
        i2 = abelianize(b, 1).sums[0]
        if i1 == 0 or i2 == 0:
            continue
        s = d.sign(q)
        acc[i1] = acc.get(i1, 0) + s
        acc[i2] = acc.get(i2, 0) + s
    return LaurentPoly(acc)


def psi(u: ModuleElement) -> LaurentPoly:
    """Send the class of ``x^n`` to ``t^n`` (coefficients taken at face value)."""
    acc: dict[int, int] = {}
    for k, v in u.items():
        e = sum(k.word.letters)
        acc[e] = acc.get(e, 0) + 2 * v
    return LaurentPoly(acc)


def symmetry_check(A: LaurentPoly, h: int) -> bool:
    """``a_0 = a_h = 0`` and ``a_i = a_{h-i}`` for all i."""
    if A.coeff(0) or A.coeff(h):
        return False
    return all(A.coeff(i) == A.coeff(h - i) for i in A.support())


def _window(h: int) -> range:
    return range(1, h) if h > 0 else range(-1, h, -1)


def delta_twist(h: int) -> LaurentPoly:
    """Change of A under one positive Dehn twist of the solid torus."""
    return LaurentPoly.range_sum(_window(h), coeff=-abs(h))


def canonical_form(A: LaurentPoly, h: int) -> tuple[LaurentPoly, int]:
    """Return ``(C, n)`` with ``A = C + n * delta_twist(h)`` and C canonical.

    Canonical means ``0 <= a_1 < h`` for h > 0 and ``0 <= a_-1 < |h|`` for h < 0.
    """
    if not symmetry_check(A, h):
        raise SymmetryError(f"{A} is not symmetric for h = {h}")
    if h == 0:
        return A, 0
    lead = A.coeff(1 if h > 0 else -1)
    n = -int(lead // abs(h))
    return A - delta_twist(h) * n, n


def range_violations(P: LaurentPoly, h: int) -> list[str]:
    """Names of the membership conditions for P_h that ``P`` fails."""
    out = []
    if not P.is_integral():
        out.append("integrality")
    if P.coeff(0) or P.coeff(h):
        out.append("(a) p_0 = p_h = 0")
    if any(P.coeff(j) != P.coeff(h - j) for j in P.support()):
        out.append("(b) p_j = p_{h-j}")
    if h % 2 == 0 and h != 0:
        pk = P.coeff(h // 2)
        if pk.denominator != 1 or pk.numerator % 2 == 0:
            out.append("(c) p_k odd for h = 2k")
    return out


def is_in_range(P: LaurentPoly, h: int) -> bool:
    return not range_violations(P, h)


# ---------------------------------------------------------------------------
# constructions


def spiral_knot(h: int, name: str = "K") -> Diagram:
    """Ascending knot winding ``h`` times around the solid torus.

    Code ``x q1 x q2 ... q_{h-1} x q_{h-1} ... q1`` with positive crossings.
    """
    x = Gate(1, 1 if h >= 0 else -1)
    n = abs(h)
    ids = [f"q{i}" for i in range(1, n)]
    events: list = [x] if n else []
    for q in ids:
        events += [Visit(q), x]
    events += [Visit(q) for q in reversed(ids)]
    return Diagram(Surface(1), tuple(Crossing(q, 1) for q in ids), (Component(name, tuple(events)),))


def _passages(d: Diagram, names: list[str]):
    out = []
    for c in names:
        for i, ev in enumerate(d.component(c).events):
            if isinstance(ev, Gate):
                out.append((c, i, ev.direction))
    return out


def twist_diagram(d: Diagram, c: str | None = None, direction: int = 1) -> Diagram:
    """Diagram of the same knot after composing the solid torus embedding with
    a Dehn twist along a meridian (``direction=-1`` for the inverse twist).

    Every strand passing the meridian gate gets a block of visits right on the
    far side of the gate; each pair of strands crosses twice with sign
    ``-direction * e_r * e_s`` (e = passage direction).  With ``c`` given only
    that component's strands are twisted, otherwise all of them.
    """
    _require_rank_one(d)
    if direction not in (1, -1):
        raise ValueError("direction must be +1 or -1")
    names = [c] if c is not None else d.component_names()
    for n in names:
        d.component(n)
    strands = _passages(d, names)
    k = len(strands)
    ids = iter(d.fresh_ids(k * (k - 1), prefix="t"))
    blocks: dict[int, list] = {r: [] for r in range(k)}
    new: list[Crossing] = []
    for half in (0, 1):
        for r in range(k):
            for s in range(r + 1, k):
                q = next(ids)
                new.append(Crossing(q, -direction * strands[r][2] * strands[s][2]))
                blocks[r].append(Visit(q))
                blocks[s].append(Visit(q))
    comps = []
    where = {(cname, i): r for r, (cname, i, _) in enumerate(strands)}
    for comp in d.components:
        ev = []
        for i, e in enumerate(comp.events):
            r = where.get((comp.name, i))
            if r is None:
                ev.append(e)
            elif e.direction > 0:
                ev += [e, *blocks[r]]
            else:
                ev += [*blocks[r], e]
        comps.append(Component(comp.name, tuple(ev)))
    return Diagram(d.surface, d.crossings + tuple(new), tuple(comps))


def realize_polynomial(h: int, target: LaurentPoly, name: str = "K") -> Diagram:
    """Knot with winding number ``h`` and partial linking polynomial ``target``.

    Starts from the spiral knot and adds bites with flipped crossings along
    ``x^j``; each shifts A by ``sign * (t^j + t^{h-j})``.
    """
    bad = range_violations(target, h)
    if bad:
        raise RangeError(bad[0], f"{target} not in P_{h}")
    d = spiral_knot(h, name)
    diff = target - a_poly(d, name)
    for j in diff.support():
        if j > h - j:
            continue
        dj = diff.coeff(j)
        if j == h - j:
            count, step = int(abs(dj)) // 2, 1 if dj > 0 else -1
        else:
            count, step = int(abs(dj)), 1 if dj > 0 else -1
        word = reduce([1 if j > 0 else -1] * abs(j))
        for _ in range(count):
            d = bite_then_flip(d, name, 0, word, step)
    return d

