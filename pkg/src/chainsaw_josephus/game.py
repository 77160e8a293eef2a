"""
Event-level simulation of the chainsaw Josephus game.

Soldiers ``0..n-1`` stand in a circle, each with the same number of lives.
A round skips the soldier under the cursor and then hits the next ``k`` alive
soldiers, one life each.  A soldier leaves the circle when its lives reach
zero.  The first action of every game skips soldier 0.

Two stopping rules are supported.  In survivor mode the game stops the instant
one soldier is left, even in the middle of a hit block.  Depletion mode (one
life only) keeps going until the circle is empty, so the survivor is the last
soldier eliminated.

This module is the ground truth that every closed form is checked against.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterator, NamedTuple, Optional

from .errors import DomainError, GameStateError, UnsupportedModeError
from .rings import AliveRing, RingKind, make_ring


class Mode(enum.Enum):
    SURVIVOR = "survivor"
    DEPLETION = "depletion"


@dataclass(frozen=True)
class GameConfig:
    n: int
    k: int
    lives: int = 1

    def __post_init__(self):
        for name in ("n", "k", "lives"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, int):
                raise DomainError(f"{name} must be an integer, got {value!r}")
            if value < 1:
                raise DomainError(f"{name} must be >= 1, got {value}")


class EventKind(enum.Enum):
    SKIP = "skip"
    HIT = "hit"
    ELIMINATE = "eliminate"
    FINISHED = "finished"


class GameEvent(NamedTuple):
    kind: EventKind
    soldier: Optional[int] = None
    remaining_lives: Optional[int] = None
    ordinal: Optional[int] = None
    survivor: Optional[int] = None


@dataclass(frozen=True)
class GameOutcome:
    config: GameConfig
    mode: Mode
    survivor: Optional[int]
    order: list[tuple[int, int]]
    slots: int
    survivor_lives: Optional[int] = None

    @property
    def labels(self) -> list[int]:
        """Eliminated labels in order, without ordinals."""
        return [label for label, _ in self.order]


@dataclass(frozen=True)
class OneLifeSnapshot:
    """Round-boundary state where every alive soldier has exactly one life."""

    alive: list[int]
    cursor: int
    slots_elapsed: int


def _check_mode(config: GameConfig, mode: Mode) -> None:
    if Mode(mode) is Mode.DEPLETION and config.lives != 1:
        raise UnsupportedModeError("depletion mode is only defined for lives = 1")


def _simulate(config: GameConfig, mode: Mode, ring: RingKind | str, want_snapshot: bool):
    n, k, lives = config.n, config.k, config.lives
    r = make_ring(ring, n)
    floor = 1 if mode is Mode.SURVIVOR else 0
    adv = r.advance
    remove = r.remove_current
    order: list[int] = []
    append = order.append
    size = n
    slots = 0

    if lives == 1:
        if want_snapshot:
            return OneLifeSnapshot(r.labels(), r.current, 0), r
        while size > floor:
            adv(1)
            hits = min(k, size - floor)
            for _ in range(hits):
                append(remove())
            slots += hits + 1
            size -= hits
        return order, slots, r, None

    lv = [lives] * n
    multi = n  # soldiers holding more than one life
    while size > floor:
        if want_snapshot and not multi:
            return OneLifeSnapshot(r.labels(), r.current, slots), r
        adv(1)
        slots += 1
        for _ in range(k):
            x = r.current
            slots += 1
            c = lv[x] - 1
            lv[x] = c
            if c:
                if c == 1:
                    multi -= 1
                adv(1)
            else:
                remove()
                append(x)
                size -= 1
                if size == floor:
                    break
    if want_snapshot:
        return None, r
    return order, slots, r, lv


def run(
    config: GameConfig,
    mode: Mode | str = Mode.SURVIVOR,
    ring: RingKind | str = RingKind.LINKED,
) -> GameOutcome:
    """
    Play a full game and return its outcome.

    >>> out = run(GameConfig(10, 2))
    >>> out.survivor, out.labels
    (6, [1, 2, 4, 5, 7, 8, 0, 3, 9])
    """
    mode = Mode(mode)
    _check_mode(config, mode)
    order, slots, r, lv = _simulate(config, mode, ring, want_snapshot=False)
    survivor = r.current if len(r) else None
    survivor_lives = None
    if survivor is not None:
        survivor_lives = lv[survivor] if lv is not None else 1
    return GameOutcome(
        config=config,
        mode=mode,
        survivor=survivor,
        order=[(label, i) for i, label in enumerate(order, 1)],
        slots=slots,
        survivor_lives=survivor_lives,
    )


def survivor(n: int, k: int, lives: int = 1, ring: RingKind | str = RingKind.LINKED) -> int:
    """Survivor label by direct simulation."""
    return run(GameConfig(n, k, lives), Mode.SURVIVOR, ring).survivor


def one_life_snapshot(
    config: GameConfig, ring: RingKind | str = RingKind.LINKED
) -> Optional[OneLifeSnapshot]:
    """
    First round boundary at which every alive soldier has exactly one life.

    The check happens immediately before each skip.  Returns ``None`` when the
    game ends without ever reaching such a state.
    """
    snap, _ = _simulate(config, Mode.SURVIVOR, ring, want_snapshot=True)
    return snap


def resume_from_snapshot(
    snapshot: OneLifeSnapshot, k: int, ring: RingKind | str = RingKind.LINKED
) -> int:
    """Finish a one-life game from ``snapshot`` and return the survivor's original label."""
    inner = run(GameConfig(len(snapshot.alive), k, 1), Mode.SURVIVOR, ring)
    return snapshot.alive[inner.survivor]


class GameState:
    """
    A game being played one slot at a time.

    Each call to :meth:`step` performs one skip or one hit and reports it.
    Once the stopping rule is met, the next call reports ``FINISHED`` and any
    further call raises :class:`GameStateError`.
    """

    def __init__(
        self,
        config: GameConfig,
        mode: Mode | str = Mode.SURVIVOR,
        ring: RingKind | str = RingKind.LINKED,
    ):
        self.config = config
        self.mode = Mode(mode)
        _check_mode(config, self.mode)
        self.ring: AliveRing = make_ring(ring, config.n)
        self.lives = [config.lives] * config.n
        self.slots = 0
        self.eliminated = 0
        self._floor = 1 if self.mode is Mode.SURVIVOR else 0
        self._hits_left = 0
        self._multi = config.n if config.lives > 1 else 0
        self._finished = False

    @property
    def over(self) -> bool:
        return len(self.ring) <= self._floor

    @property
    def finished(self) -> bool:
        return self._finished

    @property
    def at_round_boundary(self) -> bool:
        return self._hits_left == 0

    @property
    def all_single_life(self) -> bool:
        return self._multi == 0

    def snapshot(self) -> OneLifeSnapshot:
        return OneLifeSnapshot(self.ring.labels(), self.ring.current, self.slots)

    def step(self) -> GameEvent:
        if self._finished:
            raise GameStateError("game already finished")
        ring = self.ring
        if self.over:
            self._finished = True
            survivor = ring.current if len(ring) else None
            return GameEvent(EventKind.FINISHED, survivor=survivor)
        self.slots += 1
        x = ring.current
        if self._hits_left == 0:
            ring.advance(1)
            self._hits_left = self.config.k
            return GameEvent(EventKind.SKIP, soldier=x)
        self._hits_left -= 1
        left = self.lives[x] - 1
        self.lives[x] = left
        if left == 0:
            ring.remove_current()
            self.eliminated += 1
            return GameEvent(EventKind.ELIMINATE, soldier=x, ordinal=self.eliminated)
        if left == 1:
            self._multi -= 1
        ring.advance(1)
        return GameEvent(EventKind.HIT, soldier=x, remaining_lives=left)


def events(
    config: GameConfig,
    mode: Mode | str = Mode.SURVIVOR,
    ring: RingKind | str = RingKind.LINKED,
) -> Iterator[GameEvent]:
    """Yield every event of a game, ending with ``FINISHED``."""
    state = GameState(config, mode, ring)
    while True:
        ev = state.step()
        yield ev
        if ev.kind is EventKind.FINISHED:
            return
