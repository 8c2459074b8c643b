"""Gated Gauss codes for knot and link diagrams on a disc with holes.

A planar surface of rank ``n`` is cut along ``n`` arcs ("gates") into a
disc.  A diagram records, for each component, the cyclic sequence of gate
passages and crossing visits met along its orientation.  Crossing signs are
the local writhes.
"""

from __future__ import annotations

import random
import re
from collections import Counter
from dataclasses import dataclass, field
from typing import Sequence, Union

from .words import Word, generator_name, letter_text, parse_letter, reduce


class DiagramError(ValueError):
    pass


class NotSelfCrossingError(DiagramError):
    pass


class ParseError(DiagramError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line} col {column}: {message}")
        self.line = line
        self.column = column


class ValidationError(DiagramError):
    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(str(v) for v in self.violations))


@dataclass(frozen=True)
class Surface:
    rank: int = 0

    def __post_init__(self):
        if self.rank < 0:
            raise ValueError("surface rank must be non-negative")


@dataclass(frozen=True)
class Crossing:
    id: str
    sign: int


@dataclass(frozen=True)
class Gate:
    generator: int
    direction: int = 1

    @property
    def letter(self) -> int:
        return self.generator * self.direction

    @classmethod
    def of(cls, letter: int) -> Gate:
        return cls(abs(letter), 1 if letter > 0 else -1)


@dataclass(frozen=True)
class Visit:
    crossing: str


Event = Union[Gate, Visit]


@dataclass(frozen=True)
class Component:
    name: str
    events: tuple = ()

    def __len__(self) -> int:
        return len(self.events)


@dataclass(frozen=True)
class Violation:
    kind: str
    detail: str

    def __str__(self) -> str:
        return f"{self.kind}: {self.detail}"


@dataclass(frozen=True)
class Diagram:
    surface: Surface
    crossings: tuple[Crossing, ...] = ()
    components: tuple[Component, ...] = ()
    _signs: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "crossings", tuple(self.crossings))
        object.__setattr__(self, "components", tuple(self.components))
        object.__setattr__(self, "_signs", {c.id: c.sign for c in self.crossings})

    @property
    def rank(self) -> int:
        return self.surface.rank

    def sign(self, q: str) -> int:
        try:
            return self._signs[q]
        except KeyError:
            raise DiagramError(f"unknown crossing {q!r}") from None

    def crossing_ids(self) -> list[str]:
        return [c.id for c in self.crossings]

    def component_names(self) -> list[str]:
        return [c.name for c in self.components]

    def component(self, name: str) -> Component:
        for c in self.components:
            if c.name == name:
                return c
        raise DiagramError(f"unknown component {name!r}")

    def _visit_index(self) -> dict:
        idx = self.__dict__.get("_index")
        if idx is None:
            idx = {}
            for c in self.components:
                for i, ev in enumerate(c.events):
                    if isinstance(ev, Visit):
                        idx.setdefault(ev.crossing, []).append((c.name, i))
            object.__setattr__(self, "_index", idx)
        return idx

    def visits(self, q: str) -> list[tuple[str, int]]:
        """``(component name, index)`` of every visit of ``q``, in traversal order."""
        return list(self._visit_index().get(q, ()))

    def self_crossings(self, name: str) -> list[str]:
        idx = self._visit_index()
        return [
            q for q in self.crossing_ids() if [c for c, _ in idx.get(q, ())] == [name, name]
        ]

    def is_self_crossing(self, q: str) -> bool:
        v = self.visits(q)
        return len(v) == 2 and v[0][0] == v[1][0]

    def replace(self, *, crossings=None, components=None) -> Diagram:
        return Diagram(
            self.surface,
            self.crossings if crossings is None else crossings,
            self.components if components is None else components,
        )

    def with_events(self, name: str, events: Sequence) -> Diagram:
        comps = tuple(
            Component(c.name, tuple(events)) if c.name == name else c for c in self.components
        )
        return self.replace(components=comps)

    def with_sign(self, q: str, sign: int) -> Diagram:
        self.sign(q)
        return self.replace(
            crossings=tuple(Crossing(c.id, sign) if c.id == q else c for c in self.crossings)
        )

    def rotated(self, name: str, k: int) -> Diagram:
        """Move the start of component ``name`` forward by ``k`` events."""
        ev = self.component(name).events
        if not ev:
            return self
        k %= len(ev)
        return self.with_events(name, ev[k:] + ev[:k])

    def fresh_ids(self, n: int, prefix: str = "q") -> list[str]:
        used = set(self.crossing_ids())
        for c in self.components:
            used.update(ev.crossing for ev in c.events if isinstance(ev, Visit))
        out, k = [], 1
        while len(out) < n:
            cand = f"{prefix}{k}"
            if cand not in used:
                out.append(cand)
            k += 1
        return out

    def __str__(self) -> str:
        return serialize(self)


def validate(d: Diagram) -> list[Violation]:
    """List every broken invariant of ``d``; empty iff the diagram is valid."""
    out: list[Violation] = []
    declared = Counter(c.id for c in d.crossings)
    for q, n in declared.items():
        if n > 1:
            out.append(Violation("duplicate-crossing", f"{q} declared {n} times"))
    for c in d.crossings:
        if c.sign not in (1, -1):
            out.append(Violation("sign", f"crossing {c.id} has sign {c.sign}"))
    names = Counter(c.name for c in d.components)
    for name, n in names.items():
        if n > 1:
            out.append(Violation("duplicate-component", f"{name} declared {n} times"))
    counts: Counter = Counter()
    for comp in d.components:
        for i, ev in enumerate(comp.events):
            if isinstance(ev, Visit):
                counts[ev.crossing] += 1
            elif isinstance(ev, Gate):
                if not 1 <= ev.generator <= d.rank or ev.direction not in (1, -1):
                    out.append(
                        Violation("rank", f"{comp.name}[{i}] gate {ev} outside rank {d.rank}")
                    )
            else:
                out.append(Violation("event", f"{comp.name}[{i}] is not an event: {ev!r}"))
    for q in counts:
        if q not in declared:
            out.append(Violation("unknown-crossing", f"visit of undeclared crossing {q}"))
    for q in declared:
        n = counts.get(q, 0)
        if n == 0:
            out.append(Violation("unvisited", f"crossing {q} is never visited"))
        elif n != 2:
            out.append(Violation("arity", f"crossing {q} visited {n} times"))
    return out


def gate_word(events: Sequence) -> Word:
    return reduce(ev.letter for ev in events if isinstance(ev, Gate))


def component_word(d: Diagram, name: str) -> Word:
    """Reduced gate word of a full traversal of component ``name``."""
    return gate_word(d.component(name).events)


def split_at(d: Diagram, q: str) -> tuple[Word, Word]:
    """The two loops obtained by smoothing the self-crossing ``q`` along the orientation.

    The first loop runs from the first visit of ``q`` to the second, the
    second loop from the second visit back around to the first.
    """
    v = d.visits(q)
    if len(v) != 2:
        raise DiagramError(f"crossing {q!r} has {len(v)} visits")
    (c1, i), (c2, j) = v
    if c1 != c2:
        raise NotSelfCrossingError(f"crossing {q!r} joins {c1} and {c2}")
    ev = d.component(c1).events
    return gate_word(ev[i + 1 : j]), gate_word(ev[j + 1 :] + ev[:i])


def loop_from(d: Diagram, name: str, index: int) -> Word:
    """Gate word of component ``name`` read once around, starting after ``index``."""
    ev = d.component(name).events
    return gate_word(ev[index + 1 :] + ev[:index])


# ---------------------------------------------------------------------------
# text codec

_RANK_RE = re.compile(r"^surface\s+rank\s*=\s*(\d+)\s*$")
_ID_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_']*$")


def _is_generator_name(token: str, rank: int) -> bool:
    try:
        x = parse_letter(token)
    except ValueError:
        return False
    return x > 0 and x <= rank and generator_name(x, rank) == token


def parse(text: str, check: bool = True) -> Diagram:
    """Read the line-oriented diagram format; see :func:`serialize`."""
    rank = None
    crossings: list[Crossing] = []
    comps: list[Component] = []
    pending: list[tuple[str, list[tuple[str, int]], int]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        col = len(line) - len(line.lstrip()) + 1
        body = line.strip()
        if rank is None:
            m = _RANK_RE.match(body)
            if not m:
                raise ParseError("expected 'surface rank=<n>'", lineno, col)
            rank = int(m.group(1))
            continue
        head = body.split(None, 1)[0]
        if head == "crossing":
            parts = body.split()
            if len(parts) != 3:
                raise ParseError("expected 'crossing <id> <+1|-1>'", lineno, col)
            cid, s = parts[1], parts[2]
            if not _ID_RE.match(cid):
                raise ParseError(f"bad crossing id {cid!r}", lineno, col + body.index(cid, 8))
            if _is_generator_name(cid, rank):
                raise ParseError(
                    f"crossing id {cid!r} clashes with a generator name",
                    lineno,
                    col + body.index(cid, 8),
                )
            if s not in ("+1", "-1", "1"):
                raise ParseError(
                    f"sign must be +1 or -1, got {s!r}", lineno, col + body.rindex(s)
                )
            crossings.append(Crossing(cid, -1 if s == "-1" else 1))
        elif head == "comp":
            rest = body[4:]
            if ":" not in rest:
                raise ParseError("expected 'comp <name>: <events>'", lineno, col + 4)
            name, evtext = rest.split(":", 1)
            name = name.strip()
            if not _ID_RE.match(name):
                raise ParseError(f"bad component name {name!r}", lineno, col + 5)
            offset = col + 4 + len(rest.split(":", 1)[0]) + 1
            tokens = [
                (m.group(0), offset + m.start()) for m in re.finditer(r"\S+", evtext)
            ]
            pending.append((name, tokens, lineno))
        else:
            raise ParseError(f"unknown directive {head!r}", lineno, col)
    if rank is None:
        raise ParseError("missing 'surface rank=<n>' header", 1, 1)
    declared = {c.id for c in crossings}
    for name, tokens, lineno in pending:
        events = []
        for tok, tcol in tokens:
            if tok in declared:
                events.append(Visit(tok))
                continue
            try:
                x = parse_letter(tok)
            except ValueError:
                x = None
            if x is not None and abs(x) <= rank and letter_text(x, rank) == tok:
                events.append(Gate.of(x))
            elif x is not None and abs(x) <= rank:
                raise ParseError(f"generator written as {tok!r}", lineno, tcol)
            elif _ID_RE.match(tok):
                events.append(Visit(tok))
            else:
                raise ParseError(f"bad event token {tok!r}", lineno, tcol)
        comps.append(Component(name, tuple(events)))
    d = Diagram(Surface(rank), tuple(crossings), tuple(comps))
    if check:
        bad = validate(d)
        if bad:
            raise ValidationError(bad)
    return d


def event_text(ev, rank: int) -> str:
    if isinstance(ev, Gate):
        return letter_text(ev.letter, rank)
    return ev.crossing


def serialize(d: Diagram) -> str:
    lines = [f"surface rank={d.rank}"]
    for c in d.crossings:
        lines.append(f"crossing {c.id} {'+1' if c.sign > 0 else '-1'}")
    for comp in d.components:
        body = " ".join(event_text(ev, d.rank) for ev in comp.events)
        lines.append(f"comp {comp.name}: {body}".rstrip())
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# generators


def random_diagram(
    rank: int, components: int, crossings: int, gates: int, seed: int = 0
) -> Diagram:
    """Random formal diagram; deterministic in ``seed``.

    Crossing visits and gate letters are shuffled together and dealt into
    ``components`` cyclic sequences.  Gates are dropped when ``rank`` is 0.
    """
    rng = random.Random(seed)
    ncomp = max(components, 1)
    ids = [f"q{i + 1}" for i in range(crossings)]
    pool: list = [Visit(q) for q in ids for _ in range(2)]
    if rank > 0:
        for _ in range(gates):
            pool.append(Gate(rng.randint(1, rank), rng.choice((1, -1))))
    rng.shuffle(pool)
    cuts = sorted(rng.randint(0, len(pool)) for _ in range(ncomp - 1))
    bounds = [0] + cuts + [len(pool)]
    comps = tuple(
        Component(f"K{i + 1}", tuple(pool[bounds[i] : bounds[i + 1]])) for i in range(ncomp)
    )
    signs = tuple(Crossing(q, rng.choice((1, -1))) for q in ids)
    return Diagram(Surface(rank), signs, comps)


def events_from_letters(letters: Sequence[int]) -> list[Gate]:
    return [Gate.of(x) for x in letters]

