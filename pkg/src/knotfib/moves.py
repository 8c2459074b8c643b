"""Reidemeister moves, gate moves, fiber modifications and the bite construction
on gated Gauss codes, plus a seeded move fuzzer."""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from typing import Any, Iterable

from .diagram import (
    Crossing,
    Diagram,
    DiagramError,
    Gate,
    NotSelfCrossingError,
    Visit,
    parse,
    serialize,
    split_at,
)
from .invariants import ModuleElement, link_loops
from .words import Word, abelianize, conj_class, eight_class, reduce

VARIANTS = (
    "R1_insert",
    "R1_remove",
    "R2_insert",
    "R2_remove",
    "R3",
    "GateCancel_insert",
    "GateCancel_remove",
    "Slide",
    "FiberFlip",
    "Bite",
)

# everything the fuzzer may draw; all of these leave the invariants unchanged
NEUTRAL_VARIANTS = tuple(v for v in VARIANTS if v != "FiberFlip")


class MoveError(DiagramError):
    """A move does not apply: missing pattern or dangling reference."""


@dataclass(frozen=True)
class Move:
    variant: str
    params: dict = field(default_factory=dict)
    position: tuple[str, int] | None = None

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise ValueError(f"unknown move variant {self.variant!r}")
        if self.position is not None:
            object.__setattr__(self, "position", (str(self.position[0]), int(self.position[1])))

    def to_json(self) -> str:
        return json.dumps(
            {
                "variant": self.variant,
                "params": self.params,
                "position": list(self.position) if self.position else None,
            },
            sort_keys=True,
        )

    @classmethod
    def from_json(cls, line: str | dict) -> Move:
        obj = json.loads(line) if isinstance(line, str) else line
        return cls(obj["variant"], dict(obj.get("params") or {}), obj.get("position"))


@dataclass
class MoveLog:
    moves: list[Move] = field(default_factory=list)
    start: Diagram | None = None

    def append(self, m: Move) -> None:
        self.moves.append(m)

    def __len__(self) -> int:
        return len(self.moves)

    def replay(self, d: Diagram | None = None) -> Diagram:
        d = self.start if d is None else d
        if d is None:
            raise ValueError("no start diagram to replay from")
        for m in self.moves:
            d = apply(d, m)
        return d

    def to_jsonl(self) -> str:
        lines = []
        if self.start is not None:
            lines.append(json.dumps({"start": serialize(self.start)}))
        lines += [m.to_json() for m in self.moves]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_jsonl(cls, text: str) -> MoveLog:
        log = cls()
        for line in text.splitlines():
            if not line.strip():
                continue
            obj = json.loads(line)
            if "start" in obj:
                log.start = parse(obj["start"])
            else:
                log.append(Move.from_json(obj))
        return log


# ---------------------------------------------------------------------------
# helpers on cyclic sequences


def _events(d: Diagram, name: str) -> list:
    return list(d.component(name).events)


def _check_position(d: Diagram, pos) -> tuple[str, int]:
    if pos is None:
        raise MoveError("move needs a position")
    name, i = pos
    n = len(d.component(name).events)
    if not 0 <= i <= n:
        raise MoveError(f"position {i} outside component {name} of length {n}")
    return name, i


def _check_fresh(d: Diagram, ids: Iterable[str]) -> list[str]:
    ids = list(ids)
    used = set(d.crossing_ids()) | set(d._visit_index())
    if len(set(ids)) != len(ids) or used & set(ids):
        raise MoveError(f"crossing ids {ids} are not fresh")
    return ids


def _adjacent(d: Diagram, v1, v2) -> bool:
    """True when visit ``v2`` immediately follows ``v1`` (cyclically)."""
    (c1, i), (c2, j) = v1, v2
    if c1 != c2:
        return False
    n = len(d.component(c1).events)
    return n >= 2 and (i + 1) % n == j


def _insert(d: Diagram, name: str, i: int, new: list) -> Diagram:
    ev = _events(d, name)
    return d.with_events(name, ev[:i] + new + ev[i:])


def _swap_all(d: Diagram, pairs) -> Diagram:
    comps = {c.name: list(c.events) for c in d.components}
    for (c, i), (_, j) in pairs:
        ev = comps[c]
        ev[i], ev[j] = ev[j], ev[i]
    out = d
    for c in d.component_names():
        out = out.with_events(c, comps[c])
    return out


def _remove_positions(d: Diagram, positions) -> Diagram:
    drop: dict[str, set] = {}
    for c, i in positions:
        drop.setdefault(c, set()).add(i)
    out = d
    for c, idx in drop.items():
        ev = _events(d, c)
        out = out.with_events(c, [e for k, e in enumerate(ev) if k not in idx])
    return out


def _without_crossings(d: Diagram, ids) -> Diagram:
    ids = set(ids)
    return d.replace(crossings=tuple(c for c in d.crossings if c.id not in ids))


def _two_visits(d: Diagram, q: str):
    v = d.visits(q)
    if len(v) != 2:
        raise MoveError(f"crossing {q!r} not present with two visits")
    return v


def _sign(s) -> int:
    if s not in (1, -1):
        raise MoveError(f"sign must be +1 or -1, got {s!r}")
    return int(s)


# ---------------------------------------------------------------------------
# move semantics


def _r1_insert(d, m):
    name, i = _check_position(d, m.position)
    (q,) = _check_fresh(d, [m.params["crossing"]])
    d = d.replace(crossings=d.crossings + (Crossing(q, _sign(m.params.get("sign", 1))),))
    return _insert(d, name, i, [Visit(q), Visit(q)])


def _r1_remove(d, m):
    q = m.params["crossing"]
    v1, v2 = _two_visits(d, q)
    if not (_adjacent(d, v1, v2) or _adjacent(d, v2, v1)):
        raise MoveError(f"crossing {q!r} is not a kink")
    return _without_crossings(_remove_positions(d, [v1, v2]), [q])


def _r2_insert(d, m):
    c1, i = _check_position(d, m.position)
    c2, j = _check_position(d, m.params["second"])
    q1, q2 = _check_fresh(d, m.params["crossings"])
    s = _sign(m.params.get("sign", 1))
    first = [Visit(q1), Visit(q2)]
    second = [Visit(q1), Visit(q2)] if m.params.get("parallel") else [Visit(q2), Visit(q1)]
    d = d.replace(crossings=d.crossings + (Crossing(q1, s), Crossing(q2, -s)))
    if c1 == c2 and i > j:
        return _insert(_insert(d, c1, i, first), c2, j, second)
    return _insert(_insert(d, c2, j, second), c1, i, first)


def _r2_pattern(d: Diagram, q1: str, q2: str):
    """Visit pairs of an R2 bigon on ``q1``, ``q2``, or ``None``."""
    if q1 == q2 or d.sign(q1) != -d.sign(q2):
        return None
    a, b = _two_visits(d, q1)
    x, y = _two_visits(d, q2)

    def touching(u, v):
        return _adjacent(d, u, v) or _adjacent(d, v, u)

    for p, r in ((x, y), (y, x)):
        if touching(a, p) and touching(b, r):
            return [a, b, x, y]
    return None


def _r2_remove(d, m):
    q1, q2 = m.params["crossings"]
    d.sign(q1), d.sign(q2)
    visits = _r2_pattern(d, q1, q2)
    if visits is None:
        raise MoveError(f"no R2 bigon on {q1}, {q2}")
    return _without_crossings(_remove_positions(d, visits), [q1, q2])


def _r3_pairs(d: Diagram, a: str, b: str, c: str):
    """Disjoint adjacent visit pairs (a b), (c a), (b c), or ``None``."""
    if len({a, b, c}) != 3:
        return None
    va, vb, vc = (_two_visits(d, q) for q in (a, b, c))
    for pa in va:
        for pb in vb:
            if not _adjacent(d, pa, pb):
                continue
            qa = va[1 - va.index(pa)]
            qb = vb[1 - vb.index(pb)]
            for pc in vc:
                qc = vc[1 - vc.index(pc)]
                if _adjacent(d, pc, qa) and _adjacent(d, qb, qc):
                    return [(pa, pb), (pc, qa), (qb, qc)]
    return None


def _r3(d, m):
    a, b, c = m.params["crossings"]
    pairs = _r3_pairs(d, a, b, c)
    if pairs is None:
        raise MoveError(f"no R3 triangle on {a}, {b}, {c}")
    return _swap_all(d, pairs)


def _gate_insert(d, m):
    name, i = _check_position(d, m.position)
    g = int(m.params["letter"])
    if not 1 <= abs(g) <= d.rank:
        raise MoveError(f"letter {g} outside rank {d.rank}")
    return _insert(d, name, i, [Gate.of(g), Gate.of(-g)])


def _gate_remove(d, m):
    name, i = _check_position(d, m.position)
    ev = _events(d, name)
    n = len(ev)
    if n < 2 or i >= n:
        raise MoveError("no gate pair at position")
    j = (i + 1) % n
    e1, e2 = ev[i], ev[j]
    if not (isinstance(e1, Gate) and isinstance(e2, Gate) and e1.letter == -e2.letter):
        raise MoveError(f"no cancelling gate pair at {name}[{i}]")
    return _remove_positions(d, [(name, i), (name, j)])


def _slide_pairs(d: Diagram, q: str, g: int):
    out = []
    for c, i in _two_visits(d, q):
        ev = d.component(c).events
        n = len(ev)
        before, after = ev[(i - 1) % n], ev[(i + 1) % n]
        if n >= 2 and isinstance(before, Gate) and before.letter == g:
            out.append(((c, (i - 1) % n), (c, i)))
        elif n >= 2 and isinstance(after, Gate) and after.letter == -g:
            out.append(((c, i), (c, (i + 1) % n)))
        else:
            return None
    return out


def _slide(d, m):
    q, g = m.params["crossing"], int(m.params["letter"])
    pairs = _slide_pairs(d, q, g)
    if pairs is None:
        raise MoveError(f"crossing {q!r} cannot slide across gate {g}")
    return _swap_all(d, pairs)


def _flip(d, m):
    q = m.params["crossing"]
    return d.with_sign(q, -d.sign(q))


def bite_events(u: str, v: str, w: Word) -> list:
    """The bite pattern ``u v w u v w^-1``."""
    gates = [Gate.of(x) for x in w.letters]
    back = [Gate.of(x) for x in w.inverse().letters]
    return [Visit(u), Visit(v), *gates, Visit(u), Visit(v), *back]


def _bite(d, m):
    name, i = _check_position(d, m.position)
    u, v = _check_fresh(d, m.params["crossings"])
    w = reduce(m.params.get("word", ()), d.rank)
    s = _sign(m.params.get("sign", 1))
    d = d.replace(crossings=d.crossings + (Crossing(u, s), Crossing(v, -s)))
    return _insert(d, name, i, bite_events(u, v, w))


_APPLY = {
    "R1_insert": _r1_insert,
    "R1_remove": _r1_remove,
    "R2_insert": _r2_insert,
    "R2_remove": _r2_remove,
    "R3": _r3,
    "GateCancel_insert": _gate_insert,
    "GateCancel_remove": _gate_remove,
    "Slide": _slide,
    "FiberFlip": _flip,
    "Bite": _bite,
}


def apply(d: Diagram, m: Move) -> Diagram:
    """Apply ``m`` to ``d``; raises :class:`MoveError` when it does not apply."""
    try:
        return _APPLY[m.variant](d, m)
    except KeyError as e:
        raise MoveError(f"{m.variant}: missing parameter {e}") from None


# ---------------------------------------------------------------------------
# fiber modifications and jumps


def fiber_flip(d: Diagram, q: str) -> Diagram:
    """Push one branch through the other along the fiber over ``q``."""
    return apply(d, Move("FiberFlip", {"crossing": q}))


def predicted_jump(d: Diagram, q: str) -> tuple[ModuleElement, ModuleElement]:
    """Change of ``(u_knot, u_tilde)`` caused by flipping the self-crossing ``q``."""
    if not d.is_self_crossing(q):
        raise NotSelfCrossingError(f"{q!r} is not a self-crossing; use predicted_link_jump")
    a, b = split_at(d, q)
    if not (a and b):
        return ModuleElement(), ModuleElement()
    k = -2 * d.sign(q)
    du = ModuleElement.from_pairs([(conj_class(a), k), (conj_class(b), k)])
    dt = ModuleElement({eight_class(a, b): k})
    return du, dt


def predicted_homological_jump(d: Diagram, q: str) -> ModuleElement:
    if not d.is_self_crossing(q):
        raise NotSelfCrossingError(f"{q!r} is not a self-crossing")
    a, b = (abelianize(x, d.rank) for x in split_at(d, q))
    if a.is_zero() or b.is_zero():
        return ModuleElement()
    k = -2 * d.sign(q)
    return ModuleElement.from_pairs([(a, k), (b, k)])


def predicted_link_jump(d: Diagram, q: str, c1: str | None = None, c2: str | None = None):
    """Change of ``u_link(d, c1, c2)`` when the mixed crossing ``q`` is flipped.

    Without explicit components the later-declared one comes first, matching
    :func:`~knotfib.invariants.u_multi`.
    """
    names = [c for c, _ in _two_visits(d, q)]
    if names[0] == names[1]:
        raise DiagramError(f"{q!r} is a self-crossing; use predicted_jump")
    if c1 is None:
        order = d.component_names()
        c1, c2 = sorted(names, key=order.index, reverse=True)
    a, b = link_loops(d, q, c1, c2)
    return ModuleElement({eight_class(a, b, ordered=True): -2 * d.sign(q)})


def bite_then_flip(d: Diagram, c: str, position: int, w, sign: int = 1) -> Diagram:
    """Bite component ``c`` at ``position`` along ``w`` and flip the second new crossing.

    When both loops are nontrivial ``u_tilde`` gains ``2*sign`` times the class
    of ``(w, w^-1 R)``, R being the component read from the insertion point.
    """
    w = w if isinstance(w, Word) else reduce(w, d.rank)
    u, v = d.fresh_ids(2, prefix="b")
    m = Move("Bite", {"crossings": [u, v], "word": list(w.letters), "sign": sign}, (c, position))
    return fiber_flip(apply(d, m), v)


# ---------------------------------------------------------------------------
# random moves


def _adjacent_pairs(d: Diagram):
    for comp in d.components:
        ev = comp.events
        n = len(ev)
        if n < 2:
            continue
        for i in range(n):
            yield comp.name, i, ev[i], ev[(i + 1) % n]


def candidate_moves(d: Diagram, variant: str) -> list[Move]:
    """All applicable removal/rearrangement moves of one variant (no insertions)."""
    out: list[Move] = []
    if variant == "R1_remove":
        for name, i, e1, e2 in _adjacent_pairs(d):
            if isinstance(e1, Visit) and isinstance(e2, Visit) and e1.crossing == e2.crossing:
                out.append(Move("R1_remove", {"crossing": e1.crossing}))
    elif variant == "R2_remove":
        seen = set()
        for name, i, e1, e2 in _adjacent_pairs(d):
            if isinstance(e1, Visit) and isinstance(e2, Visit) and e1.crossing != e2.crossing:
                key = tuple(sorted((e1.crossing, e2.crossing)))
                if key not in seen and _r2_pattern(d, *key) is not None:
                    seen.add(key)
                    out.append(Move("R2_remove", {"crossings": list(key)}))
    elif variant == "R3":
        edges = {}
        for name, i, e1, e2 in _adjacent_pairs(d):
            if isinstance(e1, Visit) and isinstance(e2, Visit) and e1.crossing != e2.crossing:
                edges.setdefault(e1.crossing, set()).add(e2.crossing)
        for a, bs in edges.items():
            for b in bs:
                for c in edges.get(b, ()):
                    if a in edges.get(c, ()) and _r3_pairs(d, a, b, c) is not None:
                        out.append(Move("R3", {"crossings": [a, b, c]}))
    elif variant == "GateCancel_remove":
        for name, i, e1, e2 in _adjacent_pairs(d):
            if isinstance(e1, Gate) and isinstance(e2, Gate) and e1.letter == -e2.letter:
                out.append(Move("GateCancel_remove", {}, (name, i)))
    elif variant == "Slide":
        for q in d.crossing_ids():
            letters = set()
            for c, i in d.visits(q):
                ev = d.component(c).events
                n = len(ev)
                if isinstance(ev[(i - 1) % n], Gate):
                    letters.add(ev[(i - 1) % n].letter)
                if isinstance(ev[(i + 1) % n], Gate):
                    letters.add(-ev[(i + 1) % n].letter)
            for g in sorted(letters):
                if _slide_pairs(d, q, g) is not None:
                    out.append(Move("Slide", {"crossing": q, "letter": g}))
    elif variant == "FiberFlip":
        out = [Move("FiberFlip", {"crossing": q}) for q in d.crossing_ids()]
    return out


def random_move(d: Diagram, rng: random.Random, variant: str) -> Move | None:
    """Draw one applicable move of ``variant`` for ``d``, or ``None``."""
    names = d.component_names()
    if not names:
        return None

    def pos():
        c = rng.choice(names)
        return c, rng.randint(0, len(d.component(c).events))

    if variant == "R1_insert":
        (q,) = d.fresh_ids(1)
        return Move("R1_insert", {"crossing": q, "sign": rng.choice((1, -1))}, pos())
    if variant == "R2_insert":
        ids = d.fresh_ids(2)
        params = {
            "crossings": ids,
            "sign": rng.choice((1, -1)),
            "second": list(pos()),
            "parallel": rng.random() < 0.5,
        }
        return Move("R2_insert", params, pos())
    if variant == "GateCancel_insert":
        if d.rank == 0:
            return None
        g = rng.randint(1, d.rank) * rng.choice((1, -1))
        return Move("GateCancel_insert", {"letter": g}, pos())
    if variant == "Bite":
        ids = d.fresh_ids(2, prefix="b")
        word = []
        if d.rank:
            word = [rng.randint(1, d.rank) * rng.choice((1, -1)) for _ in range(rng.randint(0, 3))]
        word = list(reduce(word).letters)
        return Move("Bite", {"crossings": ids, "word": word, "sign": rng.choice((1, -1))}, pos())
    options = candidate_moves(d, variant)
    return rng.choice(options) if options else None


_FUZZ_WEIGHTS = {
    "R1_insert": 2,
    "R1_remove": 3,
    "R2_insert": 2,
    "R2_remove": 3,
    "R3": 4,
    "GateCancel_insert": 2,
    "GateCancel_remove": 3,
    "Slide": 5,
    "Bite": 1,
}


def fuzz(d: Diagram, n: int, seed: int = 0) -> tuple[Diagram, MoveLog]:
    """Apply ``n`` random invariance-preserving moves; deterministic in ``seed``."""
    rng = random.Random(seed)
    variants = list(_FUZZ_WEIGHTS)
    weights = [_FUZZ_WEIGHTS[v] for v in variants]
    log = MoveLog(start=d)
    cur = d
    for _ in range(n):
        for _attempt in range(200):
            variant = rng.choices(variants, weights)[0]
            m = random_move(cur, rng, variant)
            if m is not None:
                break
        else:
            break
        cur = apply(cur, m)
        log.append(m)
    return cur, log


def moves_as_params(moves: Iterable[Move]) -> list[dict[str, Any]]:
    return [json.loads(m.to_json()) for m in moves]
