"""Degree-one invariants of knots and links in R^1-fibrations over planar surfaces."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable, Generic, Hashable, Iterator, Mapping, TypeVar

from .diagram import (
    Diagram,
    DiagramError,
    component_word,
    loop_from,
    split_at,
)
from .words import (
    AbelianVector,
    ConjClass,
    EightClass,
    Word,
    abelianize,
    conj_class,
    eight_class,
)

K = TypeVar("K", bound=Hashable)


class ModuleElement(Generic[K]):
    """Finitely supported integer combination of hashable keys."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[K, int] | None = None):
        self._terms: dict[K, int] = {}
        for k, v in (terms or {}).items():
            if v:
                self._terms[k] = int(v)

    @classmethod
    def from_pairs(cls, pairs) -> ModuleElement:
        acc: dict = {}
        for k, v in pairs:
            acc[k] = acc.get(k, 0) + v
        return cls(acc)

    def __getitem__(self, key: K) -> int:
        return self._terms.get(key, 0)

    def __iter__(self) -> Iterator[K]:
        return iter(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def items(self):
        return self._terms.items()

    def keys(self):
        return self._terms.keys()

    def __eq__(self, other) -> bool:
        if isinstance(other, ModuleElement):
            return self._terms == other._terms
        if other == 0:
            return not self._terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __add__(self, other: ModuleElement) -> ModuleElement:
        if other == 0:
            return self
        return ModuleElement.from_pairs(list(self.items()) + list(other.items()))

    __radd__ = __add__

    def __neg__(self) -> ModuleElement:
        return ModuleElement({k: -v for k, v in self.items()})

    def __sub__(self, other: ModuleElement) -> ModuleElement:
        return self + (-other)

    def __mul__(self, n: int) -> ModuleElement:
        return ModuleElement({k: n * v for k, v in self.items()})

    __rmul__ = __mul__

    def map_keys(self, f: Callable) -> ModuleElement:
        return ModuleElement.from_pairs((f(k), v) for k, v in self.items())

    def total(self) -> int:
        """Sum of coefficients; the augmentation to Z."""
        return sum(self._terms.values())

    def to_list(self, rank: int | None = None) -> list[dict]:
        rows = [{"key": _key_text(k, rank), "coeff": v} for k, v in self.items()]
        return sorted(rows, key=lambda r: r["key"])

    def to_json(self, rank: int | None = None) -> str:
        return json.dumps(self.to_list(rank))

    def text(self, rank: int | None = None) -> str:
        if not self._terms:
            return "0"
        parts = []
        for row in self.to_list(rank):
            c = row["coeff"]
            sign = "-" if c < 0 else "+"
            mag = "" if abs(c) == 1 else f"{abs(c)}*"
            parts.append(f"{sign} {mag}[{row['key']}]")
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]

    def __repr__(self) -> str:
        return f"ModuleElement({self.text()})"


def _key_text(k, rank: int | None) -> str:
    if isinstance(k, (ConjClass, EightClass, Word)):
        return k.text(rank)
    if isinstance(k, AbelianVector):
        return k.text()
    return str(k)


# ---------------------------------------------------------------------------
# knot invariants


def _component_check(d: Diagram, c: str) -> None:
    d.component(c)


def self_splits(d: Diagram, c: str) -> list[tuple[str, Word, Word]]:
    _component_check(d, c)
    return [(q, *split_at(d, q)) for q in d.self_crossings(c)]


def u_knot(d: Diagram, c: str) -> ModuleElement:
    """Sum of sign * (class(loop1) + class(loop2)) over self-crossings with both loops nontrivial."""
    terms = []
    for q, a, b in self_splits(d, c):
        if a and b:
            w = d.sign(q)
            terms += [(conj_class(a), w), (conj_class(b), w)]
    return ModuleElement.from_pairs(terms)


def u_tilde(d: Diagram, c: str) -> ModuleElement:
    """Sum of sign * figure-eight class over self-crossings with both loops nontrivial."""
    return ModuleElement.from_pairs(
        (eight_class(a, b, ordered=False), d.sign(q))
        for q, a, b in self_splits(d, c)
        if a and b
    )


def u_homological(d: Diagram, c: str) -> ModuleElement:
    """Homology version of :func:`u_knot`: keys are exponent-sum vectors and
    crossings with a null-homologous loop are skipped."""
    terms = []
    for q, a, b in self_splits(d, c):
        ha, hb = abelianize(a, d.rank), abelianize(b, d.rank)
        if ha.is_zero() or hb.is_zero():
            continue
        w = d.sign(q)
        terms += [(ha, w), (hb, w)]
    return ModuleElement.from_pairs(terms)


def link_loops(d: Diagram, q: str, c1: str, c2: str) -> tuple[Word, Word]:
    """Loops of ``c1`` and ``c2`` based at the mixed crossing ``q``."""
    pos = {}
    for name, i in d.visits(q):
        pos[name] = i
    if set(pos) != {c1, c2}:
        raise DiagramError(f"crossing {q!r} does not join {c1} and {c2}")
    return loop_from(d, c1, pos[c1]), loop_from(d, c2, pos[c2])


def mixed_crossings(d: Diagram, c1: str, c2: str) -> list[str]:
    return [q for q in d.crossing_ids() if sorted(n for n, _ in d.visits(q)) == sorted([c1, c2])]


def u_link(d: Diagram, c1: str, c2: str) -> ModuleElement:
    """Sum of sign * ordered figure-eight class (loop of c1, loop of c2) over
    crossings between the two components.  No triviality exclusion."""
    if c1 == c2:
        raise DiagramError("u_link needs two distinct components")
    _component_check(d, c1)
    _component_check(d, c2)
    return ModuleElement.from_pairs(
        (eight_class(*link_loops(d, q, c1, c2), ordered=True), d.sign(q))
        for q in mixed_crossings(d, c1, c2)
    )


def phi_push(u: ModuleElement) -> ModuleElement:
    """Send each figure-eight class to the sum of the classes of its two loops."""
    terms = []
    for g, v in u.items():
        terms += [(conj_class(g.loop_a), v), (conj_class(g.loop_b), v)]
    return ModuleElement.from_pairs(terms)


@dataclass
class MultiInvariant:
    knots: dict[str, ModuleElement] = field(default_factory=dict)
    links: dict[tuple[str, str], ModuleElement] = field(default_factory=dict)

    def __eq__(self, other) -> bool:
        return self.knots == other.knots and self.links == other.links


def u_multi(d: Diagram) -> MultiInvariant:
    """``u_knot`` of every component and ``u_link`` of each pair (K_i, K_j), i > j,
    in declaration order."""
    names = d.component_names()
    out = MultiInvariant()
    for n in names:
        out.knots[n] = u_knot(d, n)
    for i in range(len(names)):
        for j in range(i):
            out.links[(names[i], names[j])] = u_link(d, names[i], names[j])
    return out


# ---------------------------------------------------------------------------
# universal evaluation


class HomotopyMismatchError(ValueError):
    pass


@dataclass
class WeightSystem:
    """An integer functional on figure-eight classes plus a base knot and its value.

    Together these determine a degree-one invariant on the homotopy class of
    the base knot.
    """

    weights: dict[EightClass, int]
    base: Diagram
    base_component: str
    base_value: int = 0

    def __post_init__(self):
        for g in self.weights:
            if g.ordered or g.has_trivial_loop():
                raise ValueError(f"weight key {g} must be unordered with nontrivial loops")
        self._base_tilde = u_tilde(self.base, self.base_component)

    def pair(self, u: ModuleElement) -> int:
        return sum(v * self.weights.get(g, 0) for g, v in u.items())


def evaluate_v1(w: WeightSystem, d: Diagram, c: str) -> int:
    """Value on ``(d, c)`` of the degree-one invariant described by ``w``."""
    if conj_class(component_word(d, c)) != conj_class(component_word(w.base, w.base_component)):
        raise HomotopyMismatchError(
            f"component {c} is not freely homotopic to the base knot"
        )
    diff = w.pair(u_tilde(d, c) - w._base_tilde)
    if diff % 2:
        raise HomotopyMismatchError(f"odd pairing {diff}; knots are not homotopic")
    return w.base_value + diff // 2


def crossing_terms(d: Diagram) -> list[tuple[str, str, str]]:
    """``(crossing, first component, second component)`` in declaration order."""
    out = []
    for q in d.crossing_ids():
        v = d.visits(q)
        if len(v) == 2:
            out.append((q, v[0][0], v[1][0]))
    return out


__all__ = [
    "ModuleElement",
    "MultiInvariant",
    "WeightSystem",
    "HomotopyMismatchError",
    "u_knot",
    "u_tilde",
    "u_homological",
    "u_link",
    "u_multi",
    "phi_push",
    "evaluate_v1",
    "link_loops",
    "mixed_crossings",
    "self_splits",
    "crossing_terms",
]
