"""
Alive-set ring structures.

A ring holds the labels of the soldiers still in the circle, in label order,
together with a cursor.  Three interchangeable implementations are provided:

* :class:`DenseRing` -- a plain Python list of alive labels.  Removal is a
  ``list.pop`` and the cursor is an index.  Slow for huge circles but trivially
  correct, so it serves as the reference in differential tests.
* :class:`LinkedRing` -- a doubly linked circle stored as two integer arrays.
  Constant work per single-step move or removal.
* :class:`IndexedRing` -- a Fenwick tree over the alive bitmap.  Any jump of
  ``steps`` alive positions is a select-kth query in O(log n).

>>> ring = make_ring("indexed", 10)
>>> ring.advance(3)
3
>>> ring.remove_current()
3
>>> ring.current
4
"""

from __future__ import annotations

import enum
from abc import ABC, abstractmethod

from .errors import GameStateError


class RingKind(enum.Enum):
    DENSE = "dense"
    LINKED = "linked"
    INDEXED = "indexed"


class AliveRing(ABC):
    """Cyclic ordered set of alive labels with a cursor."""

    @abstractmethod
    def __len__(self) -> int: ...

    @property
    @abstractmethod
    def current(self) -> int:
        """Label under the cursor."""

    @abstractmethod
    def advance(self, steps: int = 1) -> int:
        """Move the cursor ``steps`` alive positions forward; return the new label."""

    @abstractmethod
    def remove_current(self) -> int:
        """Remove the label under the cursor and move to the next alive label."""

    @abstractmethod
    def labels(self) -> list[int]:
        """Alive labels in circle order, starting at the cursor."""

    def _check_nonempty(self) -> None:
        if not len(self):
            raise GameStateError("ring is empty")

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.labels()!r})"


class DenseRing(AliveRing):
    def __init__(self, n: int):
        self._alive = list(range(n))
        self._idx = 0

    def __len__(self) -> int:
        return len(self._alive)

    @property
    def current(self) -> int:
        self._check_nonempty()
        return self._alive[self._idx]

    def advance(self, steps: int = 1) -> int:
        self._check_nonempty()
        if steps < 0:
            raise ValueError("steps must be non-negative")
        self._idx = (self._idx + steps) % len(self._alive)
        return self._alive[self._idx]

    def remove_current(self) -> int:
        self._check_nonempty()
        label = self._alive.pop(self._idx)
        if self._idx == len(self._alive):
            self._idx = 0
        return label

    def labels(self) -> list[int]:
        return self._alive[self._idx:] + self._alive[: self._idx]


class LinkedRing(AliveRing):
    def __init__(self, n: int):
        self._next = list(range(1, n)) + [0] if n else []
        self._prev = [n - 1] + list(range(n - 1)) if n else []
        self._cursor = 0
        self._size = n

    def __len__(self) -> int:
        return self._size

    @property
    def current(self) -> int:
        self._check_nonempty()
        return self._cursor

    def advance(self, steps: int = 1) -> int:
        self._check_nonempty()
        if steps < 0:
            raise ValueError("steps must be non-negative")
        nxt = self._next
        cur = self._cursor
        for _ in range(steps % self._size):
            cur = nxt[cur]
        self._cursor = cur
        return cur

    def remove_current(self) -> int:
        self._check_nonempty()
        cur = self._cursor
        nx = self._next[cur]
        pv = self._prev[cur]
        self._next[pv] = nx
        self._prev[nx] = pv
        self._size -= 1
        self._cursor = nx
        return cur

    def labels(self) -> list[int]:
        out = []
        cur = self._cursor
        for _ in range(self._size):
            out.append(cur)
            cur = self._next[cur]
        return out


class IndexedRing(AliveRing):
    """Fenwick tree over the alive bitmap; the cursor is kept as a rank."""

    def __init__(self, n: int):
        self._n = n
        # tree[i] covers the lowbit(i) labels ending at i (1-based); all alive.
        self._tree = [0] + [i & -i for i in range(1, n + 1)]
        self._top = 1 << (n.bit_length() - 1) if n else 0
        self._size = n
        self._rank = 0
        self._cursor = 0

    def __len__(self) -> int:
        return self._size

    def _select(self, rank: int) -> int:
        # smallest label whose alive prefix count exceeds rank
        tree, n = self._tree, self._n
        pos = 0
        rem = rank + 1
        step = self._top
        while step:
            nxt = pos + step
            if nxt <= n and tree[nxt] < rem:
                pos = nxt
                rem -= tree[nxt]
            step >>= 1
        return pos

    @property
    def current(self) -> int:
        self._check_nonempty()
        return self._cursor

    def advance(self, steps: int = 1) -> int:
        self._check_nonempty()
        if steps < 0:
            raise ValueError("steps must be non-negative")
        self._rank = (self._rank + steps) % self._size
        self._cursor = self._select(self._rank)
        return self._cursor

    def remove_current(self) -> int:
        self._check_nonempty()
        label = self._cursor
        tree, n = self._tree, self._n
        i = label + 1
        while i <= n:
            tree[i] -= 1
            i += i & -i
        self._size -= 1
        if self._size:
            if self._rank == self._size:
                self._rank = 0
            self._cursor = self._select(self._rank)
        return label

    def labels(self) -> list[int]:
        return [self._select((self._rank + j) % self._size) for j in range(self._size)]


_RINGS = {
    RingKind.DENSE: DenseRing,
    RingKind.LINKED: LinkedRing,
    RingKind.INDEXED: IndexedRing,
}


def make_ring(kind: RingKind | str, n: int) -> AliveRing:
    """Build a ring over labels ``0..n-1`` with the cursor on 0."""
    return _RINGS[RingKind(kind)](n)
