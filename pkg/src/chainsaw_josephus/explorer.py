"""
Sweeps that compare closed forms against simulation over parameter ranges.

Each subject names a claim.  :func:`verify` enumerates every admissible
configuration of a :class:`SweepRange`, evaluates the claim's formula and the
simulated value, and collects every disagreement.  Work is split into
contiguous chunks that may run in worker processes; chunk results are merged
in enumeration order, so the report does not depend on the worker count.

A sweep is also bounded by a budget of simulated slots.  Configurations are
accumulated in enumeration order and the report is cut at the first one that
pushes the running total past the budget; such a report is flagged
``incomplete``.
"""

from __future__ import annotations

import csv
import enum
import io
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from math import gcd
from typing import Any, Iterable, Optional

from . import closed_form as cf
from .errors import DomainError
from .game import GameConfig, Mode, one_life_snapshot, run
from .rings import RingKind

DEFAULT_SLOT_BUDGET = 10**9


class Subject(enum.Enum):
    THEOREM1 = "Theorem1"
    THEOREM2 = "Theorem2"
    THEOREM3_PAPER = "Theorem3PaperPrinted"
    THEOREM3_RECONCILED = "Theorem3Reconciled"
    LEMMA1 = "Lemma1"
    LEMMA2 = "Lemma2"
    ONE_LIFE_PAPER = "OneLifeSetPaperPrinted"
    ONE_LIFE_RECONCILED = "OneLifeSetReconciled"
    CONSTANT_SURVIVOR = "ConstantSurvivor"
    K_GREATER_THAN_N = "KGreaterThanN"
    NONCOPRIME = "NonCoprimeSurvey"


@dataclass(frozen=True)
class SweepRange:
    k_min: int = 1
    k_max: int = 1
    n_min: int = 1
    n_max: int = 1
    lives_min: int = 1
    lives_max: int = 1
    coprime_only: bool = False

    def __post_init__(self):
        for lo, hi in (("k_min", "k_max"), ("n_min", "n_max"), ("lives_min", "lives_max")):
            a, b = getattr(self, lo), getattr(self, hi)
            if a < 1 or b < 1:
                raise DomainError(f"{lo}/{hi} must be >= 1")
            if a > b:
                raise DomainError(f"{lo}={a} exceeds {hi}={b}")

    def pairs(self) -> Iterable[tuple[int, int]]:
        """All (k, n) in the range, sorted."""
        for k in range(self.k_min, self.k_max + 1):
            for n in range(self.n_min, self.n_max + 1):
                if not self.coprime_only or gcd(n, k + 1) == 1:
                    yield k, n

    def configs(self) -> Iterable[tuple[int, int, int]]:
        """All (k, n, lives) in the range, sorted."""
        for k, n in self.pairs():
            for lives in range(self.lives_min, self.lives_max + 1):
                yield k, n, lives


@dataclass(frozen=True)
class Mismatch:
    k: int
    n: int
    lives: int
    expected: Any
    oracle: Any
    soldier: Optional[int] = None

    def sort_key(self):
        return (self.k, self.n, self.lives, -1 if self.soldier is None else self.soldier)


@dataclass
class VerificationReport:
    subject: Subject
    range: SweepRange
    checked: int = 0
    mismatches: list[Mismatch] = field(default_factory=list)
    incomplete: bool = False
    slots: int = 0

    @property
    def ok(self) -> bool:
        return not self.mismatches and not self.incomplete

    def to_dict(self) -> dict:
        return {
            "subject": self.subject.value,
            "range": asdict(self.range),
            "checked": self.checked,
            "incomplete": self.incomplete,
            "slots": self.slots,
            "mismatches": [
                {
                    "k": m.k,
                    "n": m.n,
                    "lives": m.lives,
                    "soldier": m.soldier,
                    "expected": m.expected,
                    "oracle": m.oracle,
                }
                for m in self.mismatches
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["subject", "k", "n", "lives", "expected", "oracle", "soldier"])
        for m in self.mismatches:
            w.writerow(
                [
                    self.subject.value,
                    m.k,
                    m.n,
                    m.lives,
                    _cell(m.expected),
                    _cell(m.oracle),
                    "" if m.soldier is None else m.soldier,
                ]
            )
        return buf.getvalue()


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, (list, tuple)):
        return " ".join(str(v) for v in value)
    return str(value)


# -- per-config checks --------------------------------------------------------
#
# Each check takes (k, n, lives, ring) and returns (checked, mismatches, slots),
# or None when the configuration is outside the claim's hypotheses.


def _sim(n, k, lives, ring, mode=Mode.SURVIVOR):
    return run(GameConfig(n, k, lives), mode, ring)


def _check_theorem1(k, n, lives, ring):
    if lives != 1:
        return None
    out = _sim(n, k, 1, ring)
    expected = cf.survivor_t1(n, k)
    bad = [] if expected == out.survivor else [Mismatch(k, n, 1, expected, out.survivor)]
    return 1, bad, out.slots


def _check_theorem2(k, n, lives, ring):
    if lives != 1:
        return None
    out = _sim(n, k, 1, ring, Mode.DEPLETION)
    bad = []
    for x, ordinal in out.order:
        expected = cf.elim_time_t2(n, k, x)
        if expected != ordinal:
            bad.append(Mismatch(k, n, 1, expected, ordinal, soldier=x))
    return n, bad, out.slots


def _theorem3(mode):
    def check(k, n, lives, ring):
        if lives != k or n <= k or gcd(n, k + 1) != 1:
            return None
        out = _sim(n, k, k, ring)
        expected = cf.survivor_t3(n, k, mode)
        bad = [] if expected == out.survivor else [Mismatch(k, n, k, expected, out.survivor)]
        return 1, bad, out.slots

    return check


def _check_lemma1(k, n, lives, ring):
    if n < k:
        return None
    inner = _sim(n, k, lives, ring)
    outer = _sim((k + 1) * n, k, lives, ring)
    expected = cf.scale_lemma1(n, k, lives, inner.survivor)
    bad = [] if expected == outer.survivor else [Mismatch(k, n, lives, expected, outer.survivor)]
    return 1, bad, inner.slots + outer.slots


def _check_lemma2(k, n, lives, ring):
    if lives <= k or gcd(n, k + 1) != 1:
        return None
    reduced = cf.reduce_lives_lemma2(n, k, lives)
    a = _sim(n, k, reduced, ring)
    b = _sim(n, k, lives, ring)
    bad = [] if a.survivor == b.survivor else [Mismatch(k, n, lives, a.survivor, b.survivor)]
    return 1, bad, a.slots + b.slots


def _snapshot_set(n, k, lives, ring):
    snap = one_life_snapshot(GameConfig(n, k, lives), ring)
    slots = snap.slots_elapsed if snap else cf._estimated_slots(n, k, lives)
    return (None if snap is None else sorted(snap.alive)), slots


def _check_one_life_paper(k, n, lives, ring):
    if lives >= k or gcd(n, k + 1) != 1:
        return None
    expected = sorted(set(cf.one_life_algebra(n, k, lives).result))
    oracle, slots = _snapshot_set(n, k, lives, ring)
    bad = [] if expected == oracle else [Mismatch(k, n, lives, expected, oracle)]
    return 1, bad, slots


def _check_one_life_reconciled(k, n, lives, ring):
    if lives >= k or gcd(n, k + 1) != 1:
        return None
    got = cf.one_life_set(n, k, lives)
    expected = None if got is None else sorted(got)
    # independent path: the dense reference ring
    oracle, slots = _snapshot_set(n, k, lives, RingKind.DENSE)
    bad = [] if expected == oracle else [Mismatch(k, n, lives, expected, oracle)]
    return 1, bad, slots


def _check_constant_survivor(k, n, lives, ring):
    # claim: survivor at this lives count equals the survivor with one life
    if n <= k:
        return None
    base = _sim(n, k, 1, ring)
    out = _sim(n, k, lives, ring)
    bad = [] if base.survivor == out.survivor else [Mismatch(k, n, lives, base.survivor, out.survivor)]
    return 1, bad, base.slots + out.slots


def _check_k_greater_than_n(k, n, lives, ring):
    # literal claim: survivor with k lives is n; labels only run to n-1
    if k <= n or lives != k or gcd(n, k + 1) != 1:
        return None
    out = _sim(n, k, k, ring)
    bad = [] if out.survivor == n else [Mismatch(k, n, k, n, out.survivor)]
    return 1, bad, out.slots


def _check_noncoprime(k, n, lives, ring):
    # scaling relation on circles sharing a factor with k+1, where it applies
    if gcd(n, k + 1) == 1 or n % (k + 1) or n // (k + 1) < k:
        return None
    inner = _sim(n // (k + 1), k, lives, ring)
    out = _sim(n, k, lives, ring)
    expected = (k + 1) * inner.survivor
    bad = [] if expected == out.survivor else [Mismatch(k, n, lives, expected, out.survivor)]
    return 1, bad, inner.slots + out.slots


_CHECKS = {
    Subject.THEOREM1: _check_theorem1,
    Subject.THEOREM2: _check_theorem2,
    Subject.THEOREM3_PAPER: _theorem3(cf.FormulaMode.PAPER),
    Subject.THEOREM3_RECONCILED: _theorem3(cf.FormulaMode.RECONCILED),
    Subject.LEMMA1: _check_lemma1,
    Subject.LEMMA2: _check_lemma2,
    Subject.ONE_LIFE_PAPER: _check_one_life_paper,
    Subject.ONE_LIFE_RECONCILED: _check_one_life_reconciled,
    Subject.CONSTANT_SURVIVOR: _check_constant_survivor,
    Subject.K_GREATER_THAN_N: _check_k_greater_than_n,
    Subject.NONCOPRIME: _check_noncoprime,
}


def _configs_for(subject: Subject, rng: SweepRange) -> list[tuple[int, int, int]]:
    if subject in (Subject.THEOREM1, Subject.THEOREM2):
        return [(k, n, 1) for k, n in rng.pairs()]
    if subject in (Subject.THEOREM3_PAPER, Subject.THEOREM3_RECONCILED, Subject.K_GREATER_THAN_N):
        # these claims fix lives = k
        return [(k, n, k) for k, n in rng.pairs()]
    return list(rng.configs())


def _run_chunk(subject: Subject, chunk, ring: str, budget: int):
    """Evaluate a contiguous slice of configs, stopping once its own slots pass the budget."""
    check = _CHECKS[subject]
    rows = []
    used = 0
    for k, n, lives in chunk:
        res = check(k, n, lives, ring)
        if res is None:
            continue
        rows.append((k, n, lives) + res)
        used += res[2]
        if used > budget:
            break
    return rows


def verify(
    subject: Subject | str,
    rng: SweepRange,
    *,
    ring: RingKind | str = RingKind.LINKED,
    workers: int = 1,
    slot_budget: int = DEFAULT_SLOT_BUDGET,
) -> VerificationReport:
    """
    Compare a claim against simulation on every admissible config in ``rng``.

    >>> rep = verify("Theorem3PaperPrinted", SweepRange(4, 4, 13, 13))
    >>> rep.checked, [(m.expected, m.oracle) for m in rep.mismatches]
    (1, [(9, 10)])
    """
    subject = Subject(subject)
    ring = RingKind(ring).value
    configs = _configs_for(subject, rng)
    nchunks = max(1, min(len(configs), workers * 4))
    size = -(-len(configs) // nchunks) if configs else 0
    chunks = [configs[i : i + size] for i in range(0, len(configs), size)] if configs else []

    if workers > 1 and len(chunks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            m = len(chunks)
            parts = list(pool.map(_run_chunk, [subject] * m, chunks, [ring] * m, [slot_budget] * m))
    else:
        parts = [_run_chunk(subject, c, ring, slot_budget) for c in chunks]

    report = VerificationReport(subject, rng)
    for rows in parts:
        for k, n, lives, checked, bad, slots in rows:
            if report.slots + slots > slot_budget:
                report.incomplete = True
                break
            report.slots += slots
            report.checked += checked
            report.mismatches.extend(bad)
        if report.incomplete:
            break
    report.mismatches.sort(key=Mismatch.sort_key)
    return report


# -- open-problem surveys -----------------------------------------------------


def sweep_constant_survivor(
    k: int, n_max: int, lives_max: int, ring: RingKind | str = RingKind.LINKED
) -> list[tuple[int, int]]:
    """Every ``n`` in ``k+1..n_max`` whose survivor is the same for all lives in ``1..lives_max``."""
    found = []
    for n in range(k + 1, n_max + 1):
        survivors = {_sim(n, k, lives, ring).survivor for lives in range(1, lives_max + 1)}
        if len(survivors) == 1:
            found.append((n, survivors.pop()))
    return found


def survey_k_greater_than_n(
    k_max: int, n_max: int, ring: RingKind | str = RingKind.LINKED
) -> list[tuple[int, int, int]]:
    """Survivors with ``k`` lives for every ``n < k`` with ``gcd(n, k+1) == 1``."""
    rows = []
    for n in range(1, n_max + 1):
        for k in range(n + 1, k_max + 1):
            if gcd(n, k + 1) == 1:
                rows.append((n, k, _sim(n, k, k, ring).survivor))
    return rows


@dataclass(frozen=True)
class NoncoprimeRow:
    n: int
    k: int
    lives: int
    survivor: int
    scaling_holds: Optional[bool]


def survey_noncoprime(rng: SweepRange, ring: RingKind | str = RingKind.LINKED) -> list[NoncoprimeRow]:
    """
    Simulated survivors for every config with ``gcd(n, k+1) != 1``.

    ``scaling_holds`` compares the survivor with ``(k+1)`` times the survivor
    of ``n/(k+1)`` soldiers when that inner circle has at least ``k``
    soldiers, and is ``None`` otherwise.
    """
    rows = []
    for k, n, lives in rng.configs():
        if gcd(n, k + 1) == 1:
            continue
        s = _sim(n, k, lives, ring).survivor
        holds = None
        if n % (k + 1) == 0 and n // (k + 1) >= k:
            holds = s == (k + 1) * _sim(n // (k + 1), k, lives, ring).survivor
        rows.append(NoncoprimeRow(n, k, lives, s, holds))
    return rows


def survivor_table(rng: SweepRange, ring: RingKind | str = RingKind.LINKED) -> list[tuple[int, int, int, int]]:
    """Raw (n, k, lives, survivor) rows for every config in the range."""
    return [(n, k, lives, _sim(n, k, lives, ring).survivor) for k, n, lives in rng.configs()]
