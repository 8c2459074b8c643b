"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 parse/validation error,
3 property violation, 4 range error.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys

from . import annulus as ann
from .diagram import Diagram, DiagramError, parse, random_diagram, serialize
from .invariants import (
    ModuleElement,
    u_homological,
    u_knot,
    u_link,
    u_multi,
    u_tilde,
)
from .moves import (
    MoveError,
    MoveLog,
    fiber_flip,
    fuzz,
    predicted_jump,
    predicted_link_jump,
)

EXIT_OK, EXIT_USAGE, EXIT_PARSE, EXIT_PROPERTY, EXIT_RANGE = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


class PropertyViolation(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _add_input(p):
    p.add_argument("--in", dest="input", metavar="PATH", help="diagram file ('-' for stdin)")
    p.add_argument("--code", metavar="TEXT", help="inline diagram text")


def _add_common(p):
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out", metavar="PATH")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="knotfib", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("compute", help="U, U~ and homological U per component")
    _add_input(p)
    _add_common(p)

    p = sub.add_parser("link", help="ordered knot and pairwise link invariants")
    _add_input(p)
    _add_common(p)

    p = sub.add_parser("annulus", help="partial linking polynomial, canonical form, range")
    _add_input(p)
    _add_common(p)
    p.add_argument("--component")

    p = sub.add_parser("fuzz", help="invariance campaign under random neutral moves")
    _add_input(p)
    _add_common(p)
    p.add_argument("--moves", type=int, default=50)
    p.add_argument("--trials", type=int, default=10)

    p = sub.add_parser("jump", help="predicted versus recomputed jumps under fiber flips")
    _add_input(p)
    _add_common(p)
    p.add_argument("--trials", type=int, default=20)

    p = sub.add_parser("twist", help="apply a meridian Dehn twist of the solid torus")
    _add_input(p)
    _add_common(p)
    p.add_argument("--component")
    p.add_argument("--direction", type=int, choices=(1, -1), default=1)

    p = sub.add_parser("realize", help="build a knot with a prescribed A polynomial")
    _add_common(p)
    p.add_argument("--h", type=int, required=True)
    p.add_argument("--target", required=True, metavar="POLY")
    p.add_argument("--component", default="K")
    return parser


# ---------------------------------------------------------------------------


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("KNOTFIB_SEED")
    if env is None:
        return 0
    try:
        return int(env)
    except ValueError:
        raise UsageError(f"KNOTFIB_SEED is not an integer: {env!r}") from None


def _load(args, required=True) -> Diagram | None:
    if args.input and args.code:
        raise UsageError("give either --in or --code, not both")
    if args.code is not None:
        return parse(args.code)
    if args.input is None:
        if required:
            raise UsageError("missing --in")
        return None
    if args.input == "-":
        return parse(sys.stdin.read())
    try:
        with open(args.input, encoding="utf-8") as fh:
            return parse(fh.read())
    except OSError as e:
        raise UsageError(f"cannot read {args.input}: {e.strerror}") from None


def _emit(args, text: str) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2)


def _elem(u: ModuleElement, rank: int):
    return u.to_list(rank)


def cmd_compute(args) -> int:
    d = _load(args)
    rows = []
    for c in d.component_names():
        rows.append(
            {
                "name": c,
                "u_knot": u_knot(d, c),
                "u_tilde": u_tilde(d, c),
                "u_homological": u_homological(d, c),
            }
        )
    if args.format == "json":
        out = [
            {k: (v if k == "name" else _elem(v, d.rank)) for k, v in r.items()} for r in rows
        ]
        _emit(args, _dump({"rank": d.rank, "components": out}))
    else:
        lines = []
        for r in rows:
            lines.append(f"component {r['name']}")
            lines.append(f"  U_K  = {r['u_knot'].text(d.rank)}")
            lines.append(f"  U~_K = {r['u_tilde'].text(d.rank)}")
            lines.append(f"  U_H  = {r['u_homological'].text(d.rank)}")
        _emit(args, "\n".join(lines))
    return EXIT_OK


def cmd_link(args) -> int:
    d = _load(args)
    m = u_multi(d)
    if args.format == "json":
        obj = {
            "knots": [{"name": c, "u_knot": _elem(u, d.rank)} for c, u in m.knots.items()],
            "links": [
                {"first": a, "second": b, "u_link": _elem(u, d.rank), "total": u.total()}
                for (a, b), u in m.links.items()
            ],
        }
        _emit(args, _dump(obj))
    else:
        lines = [f"U_{c} = {u.text(d.rank)}" for c, u in m.knots.items()]
        lines += [
            f"U_({a},{b}) = {u.text(d.rank)}  [total {u.total()}]"
            for (a, b), u in m.links.items()
        ]
        _emit(args, "\n".join(lines))
    return EXIT_OK


def annulus_report(d: Diagram, c: str) -> dict:
    A = ann.a_poly(d, c)
    h = ann.homology(d, c)
    rep = {"component": c, "A": A.text(), "A_json": A.to_json_map(), "h": h}
    if ann.symmetry_check(A, h):
        C, n = ann.canonical_form(A, h)
        rep["canonical"] = C.text()
        rep["twists"] = n
    else:
        rep["canonical"] = None
        rep["twists"] = None
    rep["violations"] = ann.range_violations(A, h)
    rep["in_range"] = not rep["violations"]
    return rep


def _annulus_line(rep: dict) -> str:
    parts = [f"A = {rep['A']}", f"h = {rep['h']}"]
    if rep["canonical"] is None:
        parts.append("not symmetric")
    elif rep["twists"] == 0:
        parts.append("canonical")
    else:
        parts.append(f"canonical form = {rep['canonical']} (twists = {rep['twists']})")
    if rep["in_range"]:
        parts.append("in range: yes")
    else:
        parts.append("in range: no (" + ", ".join(rep["violations"]) + ")")
    return "; ".join(parts)


def cmd_annulus(args) -> int:
    d = _load(args)
    if d.rank != 1:
        raise DiagramError(f"annulus needs a rank 1 surface, got rank {d.rank}")
    names = [args.component] if args.component else d.component_names()
    reps = [annulus_report(d, c) for c in names]
    if args.format == "json":
        _emit(args, _dump(reps))
    else:
        many = len(reps) > 1
        _emit(
            args,
            "\n".join((f"{r['component']}: " if many else "") + _annulus_line(r) for r in reps),
        )
    return EXIT_OK


def invariant_snapshot(d: Diagram) -> dict:
    snap = {}
    for c in d.component_names():
        snap[("u_knot", c)] = u_knot(d, c)
        snap[("u_tilde", c)] = u_tilde(d, c)
        snap[("u_homological", c)] = u_homological(d, c)
        if d.rank == 1:
            snap[("a_poly", c)] = ann.a_poly(d, c)
    for pair, u in u_multi(d).links.items():
        snap[("u_link", pair)] = u
    return snap


def _campaign_start(seed: int) -> Diagram:
    rng = random.Random(seed)
    return random_diagram(
        rng.randint(0, 3), rng.randint(1, 3), rng.randint(0, 6), rng.randint(0, 8), seed
    )


def run_campaign(start: Diagram, moves: int, seed: int):
    """Fuzz ``start`` move by move; return ``(ok, log, key)`` with the first
    broken invariant key on failure."""
    base = invariant_snapshot(start)
    log = MoveLog(start=start)
    cur = start
    rng = random.Random(seed)
    for _ in range(moves):
        cur, step = fuzz(cur, 1, rng.randrange(1 << 30))
        log.moves += step.moves
        snap = invariant_snapshot(cur)
        if snap != base:
            bad = next(k for k in base.keys() | snap.keys() if base.get(k) != snap.get(k))
            return False, log, bad
    return True, log, None


def cmd_fuzz(args) -> int:
    d = _load(args, required=False)
    seed = _seed(args)
    for t in range(args.trials):
        s = seed + t
        start = d if d is not None else _campaign_start(s)
        ok, log, bad = run_campaign(start, args.moves, s)
        if not ok:
            sys.stderr.write(
                f"knotfib: error=property reason=fuzz seed {s} broke {bad[0]} {bad[1]}\n"
            )
            if args.out:
                with open(args.out, "w", encoding="utf-8") as fh:
                    fh.write(log.to_jsonl())
            else:
                sys.stdout.write(log.to_jsonl())
            return EXIT_PROPERTY
    if args.format == "json":
        print(_dump({"campaigns": args.trials, "moves": args.moves, "seed": seed, "status": "pass"}))
    else:
        print(f"fuzz: {args.trials} campaigns x {args.moves} moves from seed {seed}: pass")
    return EXIT_OK


def jump_rows(d: Diagram) -> list[dict]:
    rows = []
    for q in d.crossing_ids():
        flipped = fiber_flip(d, q)
        if d.is_self_crossing(q):
            c = d.visits(q)[0][0]
            du, dt = predicted_jump(d, q)
            ru = u_knot(flipped, c) - u_knot(d, c)
            rt = u_tilde(flipped, c) - u_tilde(d, c)
            ok = du == ru and dt == rt
            rows.append(
                {"crossing": q, "kind": "self", "predicted": dt.text(d.rank),
                 "recomputed": rt.text(d.rank), "predicted_u": du.text(d.rank),
                 "recomputed_u": ru.text(d.rank), "ok": ok}
            )
        else:
            order = d.component_names()
            c1, c2 = sorted({c for c, _ in d.visits(q)}, key=order.index, reverse=True)
            pl = predicted_link_jump(d, q, c1, c2)
            rl = u_link(flipped, c1, c2) - u_link(d, c1, c2)
            rows.append(
                {"crossing": q, "kind": "mixed", "predicted": pl.text(d.rank),
                 "recomputed": rl.text(d.rank), "ok": pl == rl}
            )
    return rows


def cmd_jump(args) -> int:
    d = _load(args, required=False)
    diagrams = [d] if d is not None else [
        _campaign_start(_seed(args) + t) for t in range(args.trials)
    ]
    all_rows = []
    for k, dia in enumerate(diagrams):
        for r in jump_rows(dia):
            r["diagram"] = k
            all_rows.append(r)
    if args.format == "json":
        _emit(args, _dump(all_rows))
    else:
        lines = [
            f"[{r['diagram']}] {r['crossing']} {r['kind']}: predicted {r['predicted']}; "
            f"recomputed {r['recomputed']}; {'ok' if r['ok'] else 'MISMATCH'}"
            for r in all_rows
        ]
        _emit(args, "\n".join(lines) if lines else "no crossings")
    if not all(r["ok"] for r in all_rows):
        bad = next(r for r in all_rows if not r["ok"])
        raise PropertyViolation(f"jump mismatch at crossing {bad['crossing']}")
    return EXIT_OK


def cmd_twist(args) -> int:
    d = _load(args)
    out = ann.twist_diagram(d, args.component, args.direction)
    _emit(args, serialize(out))
    return EXIT_OK


def cmd_realize(args) -> int:
    try:
        target = ann.parse_poly(args.target)
    except ValueError as e:
        raise UsageError(f"bad --target: {e}") from None
    d = ann.realize_polynomial(args.h, target, args.component)
    text = serialize(d)
    check = parse(text)
    got = ann.a_poly(check, args.component)
    if got != target or ann.homology(check, args.component) != args.h:
        raise PropertyViolation(f"realized diagram recomputes to {got}, expected {target}")
    _emit(args, text)
    return EXIT_OK


COMMANDS = {
    "compute": cmd_compute,
    "link": cmd_link,
    "annulus": cmd_annulus,
    "fuzz": cmd_fuzz,
    "jump": cmd_jump,
    "twist": cmd_twist,
    "realize": cmd_realize,
}


def _fail(kind: str, reason: str) -> None:
    reason = " ".join(str(reason).split())
    sys.stderr.write(f"knotfib: error={kind} reason={reason}\n")


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not args.command:
            raise UsageError("missing subcommand")
        return COMMANDS[args.command](args)
    except UsageError as e:
        _fail("usage", e)
        return EXIT_USAGE
    except ann.RangeError as e:
        _fail("range", e)
        return EXIT_RANGE
    except PropertyViolation as e:
        _fail("property", e)
        return EXIT_PROPERTY
    except (DiagramError, MoveError, ann.SymmetryError) as e:
        _fail("parse", e)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
