"""Reference closed forms for E_w[fix] on a few short words, used by ``verify-table1``."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .ratfunc import RatFunc

__all__ = ["Table1Row", "TABLE1", "reference"]

Q = RatFunc.Q()


def _commutator(q: int) -> RatFunc:
    return 2 + ((q - 1) ** 2 * Q - (q - 1) ** 3) / ((Q - 1) * (Q - q))


def _a2b3(q: int) -> RatFunc:
    return {2: 2 + 2 / (Q - 2), 3: 2 + 4 / (Q - 3)}[q]


def _comm_sq(q: int) -> RatFunc:
    assert q == 2
    return 3 + 2 * (Q * Q - 9 * Q + 26) / ((Q - 1) * (Q - 2) * (Q - 8))


def _a2b2c2(q: int) -> RatFunc:
    return {
        2: 2 + 1 / (Q - 2) ** 2,
        3: 2 + 8 * (Q * Q - 4 * Q + 5) / ((Q - 1) ** 2 * (Q - 3) ** 2),
    }[q]


@dataclass(frozen=True)
class Table1Row:
    word: str
    qs: tuple
    formula: Callable[[int], RatFunc]
    n_min: int
    heavy: tuple = ()


TABLE1 = [
    Table1Row("a", (2, 3, 4, 5), lambda q: RatFunc.const(2), 1),
    Table1Row("a^2", (2, 3, 4, 5), lambda q: RatFunc.const(3 if q % 2 == 0 else 4), 2),
    Table1Row("a^3", (2, 3, 4, 5, 7), lambda q: RatFunc.const(8 if q % 3 == 1 else 4), 3),
    Table1Row("[a,b]", (2, 3, 4, 5), _commutator, 2),
    Table1Row("a^2b^3", (2, 3), _a2b3, 3),
    Table1Row("[a,b]^2", (2,), _comm_sq, 4, heavy=(2,)),
    Table1Row("a^2b^2c^2", (2, 3), _a2b2c2, 2, heavy=(3,)),
]


def reference(word: str, q: int) -> RatFunc:
    for row in TABLE1:
        if row.word == word:
            return row.formula(q)
    raise KeyError(word)
