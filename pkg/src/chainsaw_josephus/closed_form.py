"""
Closed forms for the chainsaw Josephus game.

Everything here is pure integer arithmetic.  Inputs must fit a signed 64-bit
word and intermediates are checked against a 128-bit bound, so a result is
either exact or an :class:`OverflowError` -- never a silent wraparound.
Exponents are found by repeated multiplication, never through float logs.

Where the printed statement of a result disagrees with simulation, both forms
are available through :class:`FormulaMode`; ``RECONCILED`` (the default) is
the one that agrees with :func:`chainsaw_josephus.game.run`.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from math import gcd
from typing import Optional

from .errors import DomainError, PreconditionError, ResourceCapError
from .game import GameConfig, Mode, one_life_snapshot, run

WORD_MAX = 2**63 - 1
WIDE_MAX = 2**127 - 1

# Fallback simulations larger than this many slots are refused.
DEFAULT_MAX_SLOTS = 10**8


class FormulaMode(enum.Enum):
    RECONCILED = "reconciled"
    PAPER = "paper"


class NoClosedForm(DomainError):
    """No closed form covers the requested configuration."""


def _word(name: str, value: int) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise DomainError(f"{name} must be an integer, got {value!r}")
    if value > WORD_MAX:
        raise OverflowError(f"{name}={value} does not fit in a 64-bit word")
    return value


def _mul(a: int, b: int) -> int:
    p = a * b
    if abs(p) > WIDE_MAX:
        raise OverflowError(f"{a} * {b} overflows the wide intermediate")
    return p


def _narrow(value: int) -> int:
    if abs(value) > WORD_MAX:
        raise OverflowError(f"result {value} does not fit in a 64-bit word")
    return value


def _check_nk(n: int, k: int) -> None:
    _word("n", n)
    _word("k", k)
    if n < 1 or k < 1:
        raise DomainError(f"need n >= 1 and k >= 1, got n={n}, k={k}")


def _largest_power_at_most(base: int, coeff: int, bound: int) -> tuple[int, int]:
    """Largest b with coeff * base**b <= bound, and base**b."""
    b, power = 0, 1
    while _mul(_mul(coeff, power), base) <= bound:
        power = _mul(power, base)
        b += 1
    return b, power


@dataclass(frozen=True)
class T1Decomposition:
    """``n = a*(k+1)**b + k*m`` with ``a = n mod k`` in ``1..k`` and ``b`` maximal."""

    n: int
    k: int
    a: int
    b: int
    m: int

    def rebuild(self) -> int:
        return self.a * (self.k + 1) ** self.b + self.k * self.m


def decompose_t1(n: int, k: int) -> T1Decomposition:
    """
    >>> decompose_t1(605, 7)
    T1Decomposition(n=605, k=7, a=3, b=2, m=59)
    """
    _check_nk(n, k)
    a = n % k or k
    b, power = _largest_power_at_most(k + 1, a, n)
    m = (n - _mul(a, power)) // k
    return T1Decomposition(n, k, a, b, m)


def survivor_t1(n: int, k: int) -> int:
    """Survivor of the one-life game: ``(k+1) * m`` from :func:`decompose_t1`."""
    return _narrow(_mul(k + 1, decompose_t1(n, k).m))


@dataclass(frozen=True)
class T2Decomposition:
    """Decomposition behind the elimination time of soldier ``x``.

    For ``x = (k+1)*m + s`` with ``1 <= s <= k`` only ``m`` and ``s`` matter.
    For ``x = (k+1)*m`` the remaining fields satisfy ``n - k*m = a*(k+1)**b``
    with ``a = (k+1)*q + r`` and ``0 < r < k+1``; they are ``None`` otherwise.
    """

    n: int
    k: int
    x: int
    m: int
    s: int
    a: Optional[int] = None
    b: Optional[int] = None
    q: Optional[int] = None
    r: Optional[int] = None


def decompose_t2(n: int, k: int, x: int) -> T2Decomposition:
    _check_nk(n, k)
    _word("x", x)
    if not 0 <= x < n:
        raise DomainError(f"soldier {x} is not in 0..{n - 1}")
    m, s = divmod(x, k + 1)
    if s:
        return T2Decomposition(n, k, x, m, s)
    a = n - _mul(k, m)
    b = 0
    while a % (k + 1) == 0:
        a //= k + 1
        b += 1
    q, r = divmod(a, k + 1)
    return T2Decomposition(n, k, x, m, 0, a, b, q, r)


def elim_time_t2(n: int, k: int, x: int) -> int:
    """
    1-based position of soldier ``x`` in the full elimination order of a
    one-life game that runs until the circle is empty.

    >>> [elim_time_t2(52, 3, x) for x in (28, 16, 48)]
    [45, 50, 52]
    """
    d = decompose_t2(n, k, x)
    if d.s:
        return x - d.m
    return n - d.q


def elimination_order_t2(n: int, k: int) -> list[int]:
    """Full depletion order, assembled from :func:`elim_time_t2` alone."""
    order = [0] * n
    for x in range(n):
        order[elim_time_t2(n, k, x) - 1] = x
    return order


def scale_lemma1(n: int, k: int, lives: int, inner_survivor: int) -> int:
    """Survivor among ``(k+1)*n`` soldiers given the survivor among ``n``."""
    _check_nk(n, k)
    if n < k:
        raise PreconditionError(f"scaling needs n >= k, got n={n}, k={k}")
    if not 0 <= inner_survivor < n:
        raise DomainError(f"inner survivor {inner_survivor} is not in 0..{n - 1}")
    return _narrow(_mul(k + 1, inner_survivor))


def reduce_lives_lemma2(n: int, k: int, lives: int) -> int:
    """
    Equivalent lives count in ``1..k`` for a circle with ``gcd(n, k+1) == 1``.

    >>> reduce_lives_lemma2(13, 4, 7)
    3
    """
    _check_nk(n, k)
    _word("lives", lives)
    if lives < 1:
        raise DomainError(f"lives must be >= 1, got {lives}")
    if gcd(n, k + 1) != 1:
        raise PreconditionError(f"lives reduction needs gcd(n, k+1) = 1; gcd({n}, {k + 1}) != 1")
    if lives <= k:
        return lives
    return (lives - 1) % k + 1


@dataclass(frozen=True)
class T3Decomposition:
    """``n = q*(k+1) + r``, ``(k+1)**b <= q < (k+1)**(b+1)``, ``i = (q-1) mod k``.

    ``t`` and ``i`` locate the one-life survivor ``t*k + i`` among the ``q*k``
    soldiers left once every alive soldier is down to a single life.
    """

    n: int
    k: int
    q: int
    r: int
    b: int
    i: int
    t: int

    @property
    def inner_survivor(self) -> int:
        return self.t * self.k + self.i


def decompose_t3(n: int, k: int) -> T3Decomposition:
    _check_nk(n, k)
    if n <= k or gcd(n, k + 1) != 1:
        raise PreconditionError(f"needs n > k and gcd(n, k+1) = 1, got n={n}, k={k}")
    q, r = divmod(n, k + 1)
    b, power = _largest_power_at_most(k + 1, 1, q)
    i = (q - 1) % k
    inner = _mul(k + 1, q - power)
    t = (inner - i) // k
    return T3Decomposition(n, k, q, r, b, i, t)


def survivor_t3(n: int, k: int, mode: FormulaMode | str = FormulaMode.RECONCILED) -> int:
    """
    Survivor when every soldier starts with ``k`` lives.

    ``PAPER`` evaluates the printed expression
    ``r + ((k+1)**2 * (q - (k+1)**b) - i) / k``.  Simulation puts the one-life
    circle at ``r+1, r+2, ...`` rather than ``r, r+1, ...``, so ``RECONCILED``
    is the printed value plus one.

    >>> survivor_t3(13, 4, "paper"), survivor_t3(13, 4)
    (9, 10)
    """
    d = decompose_t3(n, k)
    power = (k + 1) ** d.b
    numerator = _mul(_mul(k + 1, k + 1), d.q - power) - d.i
    printed = d.r + numerator // k
    if FormulaMode(mode) is FormulaMode.PAPER:
        return _narrow(printed)
    return _narrow(printed + 1)


@dataclass(frozen=True)
class OneLifeAlgebra:
    """Intermediate sets of the printed one-life-set construction.

    ``slot_starts`` are the skip slots ``t`` in ``0..lives*n-1`` (multiples of
    ``k+1``), ``positions`` their labels ``t mod n``, ``offset`` the printed
    ``L``, and ``result`` what is left after dropping ``drop_count`` leading
    positions.  A drop count that is negative or longer than ``positions`` is
    flagged as ``anomalous``; a negative one drops nothing.
    """

    n: int
    k: int
    lives: int
    slot_starts: list[int]
    positions: list[int]
    offset: int
    drop_count: int
    result: list[int]

    @property
    def anomalous(self) -> bool:
        return not 0 <= self.drop_count <= len(self.positions)


def _check_one_life(n: int, k: int, lives: int, allow_equal: bool) -> None:
    _check_nk(n, k)
    if gcd(n, k + 1) != 1:
        raise PreconditionError(f"needs gcd(n, k+1) = 1; gcd({n}, {k + 1}) != 1")
    top = k if allow_equal else k - 1
    if not 1 <= lives <= top:
        raise PreconditionError(f"needs 1 <= lives <= {top}, got lives={lives}")


def one_life_algebra(n: int, k: int, lives: int) -> OneLifeAlgebra:
    """
    Run the printed construction step by step.

    >>> alg = one_life_algebra(13, 4, 3)
    >>> alg.positions, alg.offset, alg.drop_count
    ([0, 5, 10, 2, 7, 12, 4, 9], 9, 0)
    """
    _check_one_life(n, k, lives, allow_equal=False)
    total = _mul(lives, n)
    slot_starts = list(range(0, total, k + 1))
    positions = [t % n for t in slot_starts]
    offset = (total - total % (k + 1)) % n
    drop = k - (n - offset)
    result = positions[max(drop, 0):]
    return OneLifeAlgebra(n, k, lives, slot_starts, positions, offset, drop, result)


def one_life_set(
    n: int, k: int, lives: int, mode: FormulaMode | str = FormulaMode.RECONCILED
) -> Optional[list[int]]:
    """
    Soldiers left when every alive soldier is down to its last life.

    ``PAPER`` returns the printed construction's list.  No uniform correction
    of that construction matches simulation, so ``RECONCILED`` takes the set
    from :func:`chainsaw_josephus.game.one_life_snapshot` (circle order from
    the next soldier to be skipped), or ``None`` when the game never reaches
    such a state at a round boundary.
    """
    mode = FormulaMode(mode)
    if mode is FormulaMode.PAPER:
        return one_life_algebra(n, k, lives).result
    _check_one_life(n, k, lives, allow_equal=True)
    snap = one_life_snapshot(GameConfig(n, k, lives))
    return None if snap is None else snap.alive


@dataclass(frozen=True)
class OneLifeComparison:
    algebra: OneLifeAlgebra
    oracle: Optional[list[int]]

    @property
    def agrees(self) -> bool:
        return self.oracle is not None and set(self.algebra.result) == set(self.oracle)


def compare_one_life(n: int, k: int, lives: int) -> OneLifeComparison:
    return OneLifeComparison(one_life_algebra(n, k, lives), one_life_set(n, k, lives))


def _estimated_slots(n: int, k: int, lives: int) -> int:
    hits = n * lives
    return hits + hits // k + 1


def _closed_or_none(n: int, k: int, lives: int, mode: FormulaMode):
    """Return (scale, n, lives, survivor-or-None) after applying every reduction."""
    scale = 1
    while n % (k + 1) == 0 and n // (k + 1) >= k:
        n //= k + 1
        scale = _mul(scale, k + 1)
    coprime = gcd(n, k + 1) == 1
    if coprime:
        lives = reduce_lives_lemma2(n, k, lives)
    if lives == 1:
        return scale, n, lives, survivor_t1(n, k)
    if coprime and lives == k and n > k:
        return scale, n, lives, survivor_t3(n, k, mode)
    return scale, n, lives, None


def survivor_closed(
    n: int, k: int, lives: int = 1, mode: FormulaMode | str = FormulaMode.RECONCILED
) -> int:
    """Closed-form survivor; raises :class:`NoClosedForm` instead of simulating."""
    GameConfig(_word("n", n), _word("k", k), _word("lives", lives))
    scale, n2, lives2, inner = _closed_or_none(n, k, lives, FormulaMode(mode))
    if inner is None:
        raise NoClosedForm(f"no closed form for n={n2}, k={k}, lives={lives2}")
    return _narrow(_mul(scale, inner))


def survivor_feline(
    n: int, k: int, lives: int = 1, max_slots: int = DEFAULT_MAX_SLOTS
) -> int:
    """
    Survivor for any configuration: closed forms where they apply, simulation
    of the reduced game otherwise.

    Multiples of ``k+1`` are scaled down first, lives are reduced into
    ``1..k`` for coprime circles, and the one-life and ``k``-life formulas
    are tried.  Raises :class:`ResourceCapError` if the leftover game would
    need more than ``max_slots`` slots.

    >>> survivor_feline(7, 3, 2), survivor_feline(28, 3, 2), survivor_feline(13, 4, 7)
    (4, 16, 10)
    """
    GameConfig(_word("n", n), _word("k", k), _word("lives", lives))
    scale, n2, lives2, inner = _closed_or_none(n, k, lives, FormulaMode.RECONCILED)
    if inner is None:
        if _estimated_slots(n2, k, lives2) > max_slots:
            raise ResourceCapError(
                f"simulating n={n2}, k={k}, lives={lives2} exceeds {max_slots} slots"
            )
        inner = run(GameConfig(n2, k, lives2), Mode.SURVIVOR).survivor
    return _narrow(_mul(scale, inner))
