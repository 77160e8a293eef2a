"""Chainsaw Josephus game: exact simulation, closed forms and verification sweeps."""

from .closed_form import (
    FormulaMode,
    decompose_t1,
    decompose_t2,
    decompose_t3,
    elim_time_t2,
    one_life_algebra,
    one_life_set,
    reduce_lives_lemma2,
    scale_lemma1,
    survivor_closed,
    survivor_feline,
    survivor_t1,
    survivor_t3,
)
from .errors import (
    DomainError,
    GameStateError,
    PreconditionError,
    ResourceCapError,
    UnsupportedModeError,
)
from .game import (
    EventKind,
    GameConfig,
    GameEvent,
    GameOutcome,
    GameState,
    Mode,
    OneLifeSnapshot,
    events,
    one_life_snapshot,
    resume_from_snapshot,
    run,
)
from .rings import RingKind, make_ring

__version__ = "0.1.0"
