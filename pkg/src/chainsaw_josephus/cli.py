"""
Command-line interface.

    tcj survivor --n 605 --k 7
    tcj order --n 10 --k 2
    tcj elim-time --n 52 --k 3 --soldier 48
    tcj card-trick --cards 52 --k 3
    tcj verify --subject Theorem1 --k-max 12 --n-max 2000 --format json --out t1.json

Labels are 0-based everywhere except the 1-based card positions printed by
``card-trick``.  Exit codes: 0 success, 2 usage or domain error, 3 a
verification report with mismatches, 4 a slot budget was hit.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field
from math import gcd
from typing import Optional

from . import closed_form as cf
from . import explorer
from .bench import bench
from .cards import card_trick
from .errors import DomainError, ResourceCapError
from .game import GameConfig, Mode, events, one_life_snapshot, run
from .rings import RingKind

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_MISMATCH = 3
EXIT_RESOURCE = 4

RING_CHOICES = [r.value for r in RingKind]
SUBJECT_CHOICES = [s.value for s in explorer.Subject]
SWEEP_KINDS = ["constant", "k-gt-n", "noncoprime", "table"]


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}")


def _bounded(lo: int):
    def convert(text: str) -> int:
        try:
            value = int(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"invalid integer: {text!r}")
        if value < lo:
            raise argparse.ArgumentTypeError(f"must be >= {lo}, got {value}")
        return value

    convert.__name__ = "int"
    return convert


positive = _bounded(1)
nonnegative = _bounded(0)


def _ring_list(text: str) -> str:
    parts = [p.strip() for p in text.split(",") if p.strip()]
    bad = [p for p in parts if p not in RING_CHOICES]
    if not parts or bad:
        raise argparse.ArgumentTypeError(f"rings must be a comma list of {RING_CHOICES}")
    return ",".join(parts)


def _common(p, *, lives=True, ring=True, fmt=True):
    p.add_argument("--n", type=positive, required=True, help="number of soldiers")
    p.add_argument("--k", type=positive, required=True, help="hit-block length")
    if lives:
        p.add_argument("--lives", type=positive, default=1)
    if ring:
        p.add_argument("--ring", choices=RING_CHOICES, default="linked")
    if fmt:
        _output(p)


def _output(p):
    p.add_argument("--format", choices=["text", "json", "csv"], default="text")
    p.add_argument("--out", default=None, metavar="PATH")


def _range(p, **defaults):
    for name in ("k-min", "k-max", "n-min", "n-max", "lives-min", "lives-max"):
        p.add_argument(f"--{name}", type=positive, default=defaults.get(name.replace("-", "_"), 1))
    p.add_argument("--coprime-only", action="store_true")


def build_parser() -> tuple[_Parser, dict[str, _Parser]]:
    parser = _Parser(prog="tcj", description="Chainsaw Josephus game: simulation, closed forms, sweeps")
    sub = parser.add_subparsers(dest="command", required=True)
    subs = {}

    p = subs["survivor"] = sub.add_parser("survivor", help="survivor label")
    _common(p)
    p.add_argument("--method", choices=["auto", "closed", "simulate"], default="auto")
    p.add_argument("--mode", choices=["reconciled", "paper"], default="reconciled")

    p = subs["simulate"] = sub.add_parser("simulate", help="full game outcome")
    _common(p)
    p.add_argument("--deplete", action="store_true", help="run until the circle is empty (lives=1)")
    p.add_argument("--trace", action="store_true", help="include every event")

    p = subs["order"] = sub.add_parser("order", help="elimination order")
    _common(p)
    p.add_argument("--deplete", action="store_true")

    p = subs["elim-time"] = sub.add_parser("elim-time", help="elimination ordinal of one soldier")
    _common(p, lives=False)
    p.add_argument("--soldier", type=nonnegative, required=True)
    p.add_argument("--method", choices=["auto", "closed", "simulate"], default="auto")

    p = subs["one-life"] = sub.add_parser("one-life", help="one-life snapshot vs construction")
    _common(p)

    p = subs["verify"] = sub.add_parser("verify", help="compare a claim with simulation")
    p.add_argument("--subject", choices=SUBJECT_CHOICES, required=True)
    _range(p)
    p.add_argument("--ring", choices=RING_CHOICES, default="linked")
    p.add_argument("--jobs", type=positive, default=1)
    p.add_argument("--max-slots", type=positive, default=explorer.DEFAULT_SLOT_BUDGET)
    _output(p)

    p = subs["sweep"] = sub.add_parser("sweep", help="open-problem surveys")
    p.add_argument("--kind", choices=SWEEP_KINDS, required=True)
    _range(p)
    p.add_argument("--ring", choices=RING_CHOICES, default="linked")
    _output(p)

    p = subs["card-trick"] = sub.add_parser("card-trick", help="predict the last cards of a deck")
    p.add_argument("--cards", type=positive, default=52)
    p.add_argument("--k", type=positive, default=3)
    p.add_argument("--last", type=positive, default=4)
    _output(p)

    p = subs["bench"] = sub.add_parser("bench", help="time each ring structure")
    _common(p, ring=False)
    p.add_argument("--deplete", action="store_true")
    p.add_argument("--rings", type=_ring_list, default=",".join(RING_CHOICES))
    p.add_argument("--repeat", type=positive, default=1)
    return parser, subs


@dataclass(frozen=True)
class Command:
    name: str
    options: dict = field(default_factory=dict)

    def to_argv(self) -> list[str]:
        """Canonical argument vector; ``parse(cmd.to_argv()) == cmd``."""
        _, subs = build_parser()
        argv = [self.name]
        for action in subs[self.name]._actions:
            if not action.option_strings or action.dest == "help":
                continue
            value = self.options[action.dest]
            if isinstance(action, argparse._StoreTrueAction):
                if value:
                    argv.append(action.option_strings[0])
            elif value is not None:
                argv += [action.option_strings[0], str(value)]
        return argv

    def __str__(self) -> str:
        return " ".join(self.to_argv())


def parse(argv: list[str]) -> Command:
    parser, _ = build_parser()
    ns = vars(parser.parse_args(argv))
    name = ns.pop("command")
    return Command(name, ns)


# -- JSON schemas of every command's output -----------------------------------

_INT = {"type": "integer"}
_NINT = {"type": "integer", "minimum": 0}
_LABELS = {"type": "array", "items": _NINT}

OUTCOME_SCHEMA = {
    "type": "object",
    "required": ["n", "k", "lives", "survivor", "order"],
    "properties": {
        "n": _INT,
        "k": _INT,
        "lives": _INT,
        "survivor": {"type": ["integer", "null"]},
        "order": {
            "type": "array",
            "items": {"type": "array", "items": _NINT, "minItems": 2, "maxItems": 2},
        },
    },
}

SCHEMAS = {
    "survivor": {
        "type": "object",
        "required": ["n", "k", "lives", "survivor", "method", "mode"],
        "properties": {"n": _INT, "k": _INT, "lives": _INT, "survivor": _NINT, "method": {"enum": ["closed", "simulate"]}, "mode": {"enum": ["reconciled", "paper"]}},
    },
    "simulate": OUTCOME_SCHEMA,
    "order": OUTCOME_SCHEMA,
    "elim-time": {
        "type": "object",
        "required": ["n", "k", "soldier", "ordinal", "method"],
        "properties": {"n": _INT, "k": _INT, "soldier": _NINT, "ordinal": _INT, "method": {"enum": ["closed", "simulate"]}},
    },
    "one-life": {
        "type": "object",
        "required": ["n", "k", "lives", "snapshot", "construction", "agrees"],
        "properties": {
            "snapshot": {
                "type": ["object", "null"],
                "required": ["alive", "cursor", "slots_elapsed"],
                "properties": {"alive": _LABELS, "cursor": _NINT, "slots_elapsed": _NINT},
            },
            "construction": {
                "type": ["object", "null"],
                "required": ["positions", "offset", "drop_count", "result", "anomalous"],
                "properties": {"positions": _LABELS, "offset": _NINT, "drop_count": _INT, "result": _LABELS, "anomalous": {"type": "boolean"}},
            },
            "agrees": {"type": ["boolean", "null"]},
        },
    },
    "verify": {
        "type": "object",
        "required": ["subject", "range", "checked", "incomplete", "mismatches"],
        "properties": {
            "subject": {"enum": SUBJECT_CHOICES},
            "checked": _NINT,
            "incomplete": {"type": "boolean"},
            "mismatches": {
                "type": "array",
                "items": {"type": "object", "required": ["k", "n", "lives", "expected", "oracle"]},
            },
        },
    },
    "sweep": {
        "type": "object",
        "required": ["kind", "columns", "rows"],
        "properties": {"kind": {"enum": SWEEP_KINDS}, "columns": {"type": "array"}, "rows": {"type": "array", "items": {"type": "array"}}},
    },
    "card-trick": {
        "type": "object",
        "required": ["cards", "k", "last", "last_positions", "ordinals"],
        "properties": {"cards": _INT, "k": _INT, "last": _LABELS, "last_positions": {"type": "array", "items": _INT}, "ordinals": {"type": "array", "items": _INT}},
    },
    "bench": {
        "type": "object",
        "required": ["n", "k", "lives", "mode", "results"],
        "properties": {
            "results": {
                "type": "array",
                "items": {"type": "object", "required": ["ring", "seconds", "slots"]},
            }
        },
    },
}


# -- execution ----------------------------------------------------------------


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _json(obj) -> str:
    return json.dumps(obj, sort_keys=True) + "\n"


def _ordinal(i: int) -> str:
    if 10 <= i % 100 <= 20:
        suffix = "th"
    else:
        suffix = {1: "st", 2: "nd", 3: "rd"}.get(i % 10, "th")
    return f"{i}{suffix}"


def _outcome_dict(out) -> dict:
    c = out.config
    return {
        "n": c.n,
        "k": c.k,
        "lives": c.lives,
        "survivor": out.survivor,
        "order": [list(p) for p in out.order],
        "mode": out.mode.value,
        "slots": out.slots,
    }


def _mode(o) -> Mode:
    return Mode.DEPLETION if o.get("deplete") else Mode.SURVIVOR


def _do_survivor(o, fmt):
    n, k, lives = o["n"], o["k"], o["lives"]
    method = o["method"]
    if method == "simulate":
        value = run(GameConfig(n, k, lives), ring=o["ring"]).survivor
        used = "simulate"
    elif method == "closed":
        value = cf.survivor_closed(n, k, lives, o["mode"])
        used = "closed"
    else:
        try:
            value = cf.survivor_closed(n, k, lives, o["mode"])
            used = "closed"
        except cf.NoClosedForm:
            value = cf.survivor_feline(n, k, lives)
            used = "simulate"
    doc = {"n": n, "k": k, "lives": lives, "survivor": value, "method": used, "mode": o["mode"]}
    if fmt == "json":
        return EXIT_OK, _json(doc)
    if fmt == "csv":
        return EXIT_OK, _csv(list(doc), [list(doc.values())])
    return EXIT_OK, f"{value}\n"


def _do_simulate(o, fmt):
    config = GameConfig(o["n"], o["k"], o["lives"])
    mode = _mode(o)
    out = run(config, mode, o["ring"])
    trace = list(events(config, mode, o["ring"])) if o.get("trace") else None
    if fmt == "json":
        doc = _outcome_dict(out)
        if trace is not None:
            doc["events"] = [
                {key: (val.value if key == "kind" else val) for key, val in ev._asdict().items() if val is not None}
                for ev in trace
            ]
        return EXIT_OK, _json(doc)
    if fmt == "csv":
        return EXIT_OK, _csv(["label", "ordinal"], out.order)
    lines = [
        f"survivor: {'-' if out.survivor is None else out.survivor}",
        f"order: {','.join(str(x) for x in out.labels)}",
        f"slots: {out.slots}",
    ]
    for ev in trace or ():
        parts = [ev.kind.value] + [f"{key}={val}" for key, val in ev._asdict().items() if key != "kind" and val is not None]
        lines.append(" ".join(parts))
    return EXIT_OK, "\n".join(lines) + "\n"


def _do_order(o, fmt):
    out = run(GameConfig(o["n"], o["k"], o["lives"]), _mode(o), o["ring"])
    if fmt == "json":
        return EXIT_OK, _json(_outcome_dict(out))
    if fmt == "csv":
        return EXIT_OK, _csv(["label", "ordinal"], out.order)
    return EXIT_OK, ",".join(str(x) for x in out.labels) + "\n"


def _do_elim_time(o, fmt):
    n, k, x = o["n"], o["k"], o["soldier"]
    if x >= n:
        raise DomainError(f"--soldier must be < n={n}")
    if o["method"] == "simulate":
        out = run(GameConfig(n, k), Mode.DEPLETION, o["ring"])
        ordinal = dict(out.order)[x]
        used = "simulate"
    else:
        ordinal = cf.elim_time_t2(n, k, x)
        used = "closed"
    doc = {"n": n, "k": k, "soldier": x, "ordinal": ordinal, "method": used}
    if fmt == "json":
        return EXIT_OK, _json(doc)
    if fmt == "csv":
        return EXIT_OK, _csv(list(doc), [list(doc.values())])
    return EXIT_OK, f"{ordinal}\n"


def _do_one_life(o, fmt):
    n, k, lives = o["n"], o["k"], o["lives"]
    snap = one_life_snapshot(GameConfig(n, k, lives), o["ring"])
    alg = None
    if gcd(n, k + 1) == 1 and lives < k:
        alg = cf.one_life_algebra(n, k, lives)
    agrees = None
    if alg is not None:
        agrees = snap is not None and set(alg.result) == set(snap.alive)
    doc = {
        "n": n,
        "k": k,
        "lives": lives,
        "snapshot": None if snap is None else {"alive": snap.alive, "cursor": snap.cursor, "slots_elapsed": snap.slots_elapsed},
        "construction": None
        if alg is None
        else {
            "positions": alg.positions,
            "offset": alg.offset,
            "drop_count": alg.drop_count,
            "result": alg.result,
            "anomalous": alg.anomalous,
        },
        "agrees": agrees,
    }
    if fmt == "json":
        return EXIT_OK, _json(doc)
    join = lambda xs: " ".join(str(x) for x in xs)  # noqa: E731
    if fmt == "csv":
        rows = []
        if snap is not None:
            rows.append(["snapshot", join(snap.alive), snap.cursor, snap.slots_elapsed])
        if alg is not None:
            rows.append(["construction", join(alg.result), "", ""])
        return EXIT_OK, _csv(["source", "alive", "cursor", "slots_elapsed"], rows)
    lines = []
    if snap is None:
        lines.append("snapshot: none (no round boundary with every soldier on one life)")
    else:
        lines.append(f"snapshot: alive {join(snap.alive)}; cursor {snap.cursor}; after {snap.slots_elapsed} slots")
    if alg is None:
        lines.append("construction: not applicable (needs gcd(n, k+1) = 1 and lives < k)")
    else:
        lines.append(
            f"construction: positions {join(alg.positions)}; offset {alg.offset}; "
            f"drop {alg.drop_count}{' (negative)' if alg.anomalous else ''}; result {join(alg.result)}"
        )
        lines.append(f"agrees: {'yes' if agrees else 'no'}")
    return EXIT_OK, "\n".join(lines) + "\n"


def _range_from(o) -> explorer.SweepRange:
    return explorer.SweepRange(
        o["k_min"], o["k_max"], o["n_min"], o["n_max"], o["lives_min"], o["lives_max"], o["coprime_only"]
    )


def _do_verify(o, fmt):
    report = explorer.verify(
        o["subject"], _range_from(o), ring=o["ring"], workers=o["jobs"], slot_budget=o["max_slots"]
    )
    if report.mismatches:
        code = EXIT_MISMATCH
    elif report.incomplete:
        code = EXIT_RESOURCE
    else:
        code = EXIT_OK
    if fmt == "json":
        return code, report.to_json() + "\n"
    if fmt == "csv":
        return code, report.to_csv()
    lines = [
        f"{report.subject.value}: checked {report.checked}, mismatches {len(report.mismatches)}"
        + (", INCOMPLETE (slot budget hit)" if report.incomplete else "")
    ]
    for m in report.mismatches[:20]:
        who = f" soldier={m.soldier}" if m.soldier is not None else ""
        lines.append(f"  k={m.k} n={m.n} lives={m.lives}{who}: expected {m.expected}, oracle {m.oracle}")
    if len(report.mismatches) > 20:
        lines.append(f"  ... {len(report.mismatches) - 20} more")
    return code, "\n".join(lines) + "\n"


def _do_sweep(o, fmt):
    kind = o["kind"]
    rng = _range_from(o)
    ring = o["ring"]
    if kind == "constant":
        columns = ["k", "n", "survivor"]
        rows = [
            [k, n, s]
            for k in range(rng.k_min, rng.k_max + 1)
            for n, s in explorer.sweep_constant_survivor(k, rng.n_max, rng.lives_max, ring)
        ]
    elif kind == "k-gt-n":
        columns = ["n", "k", "survivor"]
        rows = [list(r) for r in explorer.survey_k_greater_than_n(rng.k_max, rng.n_max, ring)]
    elif kind == "noncoprime":
        columns = ["n", "k", "lives", "survivor", "scaling_holds"]
        rows = [[r.n, r.k, r.lives, r.survivor, r.scaling_holds] for r in explorer.survey_noncoprime(rng, ring)]
    else:
        columns = ["n", "k", "lives", "survivor"]
        rows = [list(r) for r in explorer.survivor_table(rng, ring)]
    if fmt == "json":
        return EXIT_OK, _json({"kind": kind, "columns": columns, "rows": rows})
    if fmt == "csv":
        return EXIT_OK, _csv(columns, [["" if v is None else v for v in r] for r in rows])
    lines = [" ".join(columns)] + [" ".join("-" if v is None else str(v) for v in r) for r in rows]
    return EXIT_OK, "\n".join(lines) + "\n"


def _do_card_trick(o, fmt):
    trick = card_trick(o["cards"], o["k"], o["last"])
    if fmt == "json":
        doc = {
            "cards": trick.cards,
            "k": trick.k,
            "last": trick.last,
            "last_positions": trick.last_positions,
            "ordinals": trick.ordinals,
        }
        return EXIT_OK, _json(doc)
    if fmt == "csv":
        return EXIT_OK, _csv(["label", "position", "ordinal"], [[x, x + 1, t] for x, t in enumerate(trick.ordinals)])
    positions = ", ".join(_ordinal(p) for p in trick.last_positions)
    lines = [
        f"last {len(trick.last)} in order: {', '.join(str(x) for x in trick.last)}",
        f"(the {positions} cards as dealt)",
    ]
    for x, t in enumerate(trick.ordinals):
        lines.append(f"card {x + 1:>3} (label {x}): laid down {_ordinal(t)}")
    return EXIT_OK, "\n".join(lines) + "\n"


def _do_bench(o, fmt):
    config = GameConfig(o["n"], o["k"], o["lives"])
    results = bench(config, _mode(o), o["rings"].split(","), o["repeat"])
    if fmt == "json":
        doc = {
            "n": config.n,
            "k": config.k,
            "lives": config.lives,
            "mode": _mode(o).value,
            "results": [{"ring": r.ring.value, "seconds": r.seconds, "slots": r.slots} for r in results],
        }
        return EXIT_OK, _json(doc)
    if fmt == "csv":
        return EXIT_OK, _csv(["ring", "seconds", "slots"], [[r.ring.value, f"{r.seconds:.6f}", r.slots] for r in results])
    return EXIT_OK, "".join(f"{r.ring.value:8s} {r.seconds:10.4f} s  {r.slots} slots\n" for r in results)


_HANDLERS = {
    "survivor": _do_survivor,
    "simulate": _do_simulate,
    "order": _do_order,
    "elim-time": _do_elim_time,
    "one-life": _do_one_life,
    "verify": _do_verify,
    "sweep": _do_sweep,
    "card-trick": _do_card_trick,
    "bench": _do_bench,
}


def execute(cmd: Command) -> tuple[int, str]:
    """Run a parsed command; return (exit code, serialized output)."""
    try:
        return _HANDLERS[cmd.name](cmd.options, cmd.options.get("format", "text"))
    except (DomainError, OverflowError) as exc:
        return EXIT_USAGE, f"error: {exc}\n"
    except ResourceCapError as exc:
        return EXIT_RESOURCE, f"error: {exc}\n"


def main(argv: Optional[list[str]] = None) -> int:
    try:
        cmd = parse(sys.argv[1:] if argv is None else argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    code, text = execute(cmd)
    if text.startswith("error: "):
        sys.stderr.write(text)
        return code
    out_path = cmd.options.get("out")
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
