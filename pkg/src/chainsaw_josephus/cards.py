"""Card-trick predictions: a deck dealt as "one card to the bottom, k cards down"."""

from __future__ import annotations

from dataclasses import dataclass

from .closed_form import elim_time_t2, elimination_order_t2


@dataclass(frozen=True)
class CardTrick:
    cards: int
    k: int
    last: list[int]          # 0-based labels of the final cards, in order
    ordinals: list[int]      # ordinals[x] = when card x is laid down (1-based)

    @property
    def last_positions(self) -> list[int]:
        """1-based positions in the original deck of the final cards."""
        return [x + 1 for x in self.last]


def card_trick(cards: int, k: int, last: int = 4) -> CardTrick:
    """
    >>> trick = card_trick(52, 3)
    >>> trick.last, trick.last_positions
    ([0, 16, 32, 48], [1, 17, 33, 49])
    """
    order = elimination_order_t2(cards, k)
    ordinals = [elim_time_t2(cards, k, x) for x in range(cards)]
    return CardTrick(cards, k, order[max(0, cards - last):], ordinals)
