"""q-primitivity rank up to 2, critical ideals of rank 1 and 2, and Prim^2 counts.

An ideal of rank 2 containing w-1 has w-1 as a primitive element iff some f in the
ideal, supported on the same tree, makes {f, w-1} a generating pair.  That is tested by
saturating {f, w-1} for every f in Delta up to scalars and modulo w-1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from .enumeration import enum_ideals, word_task
from .forest import hull_forest
from .gf import field_make, monic_divisors, poly_str
from .ideals import IdealRep, is_proper, saturate, w_minus_one
from .linalg import Subspace
from .words import Word, free_reduce, power_decompose

__all__ = [
    "PiQResult",
    "crit_rank1",
    "rank2_primitive_test",
    "crit2_and_prim2",
    "rank2_classification",
    "pi_q_upto2",
    "polynomial_of_root",
]


def polynomial_of_root(coeffs, root: Word, conj: Word) -> dict:
    """p(u') as a sparse element, where u' = z u z^-1 and p has the given coefficients."""
    out: dict = {}
    for i, c in enumerate(coeffs):
        if c:
            mono = free_reduce(conj.letters + root.letters * i + tuple(-x for x in reversed(conj.letters)))
            out[(0, mono)] = c
    return out


def crit_rank1(w: Word, q: int) -> list[tuple[str, IdealRep]]:
    """The ideals (p(u)) for monic p dividing x^d - 1 with p != 1, x^d - 1, where w = u^d."""
    if w.is_trivial():
        raise ValueError("the trivial word has no critical ideals")
    F = field_make(q)
    rd = power_decompose(w)
    if rd.exponent == 1:
        return []
    out = []
    for p in monic_divisors(rd.exponent, 1, F):
        if len(p) == 1 or len(p) == rd.exponent + 1:
            continue
        f = polynomial_of_root(p, rd.root, rd.conjugator)
        forest = hull_forest(list(f.keys()) + [(0, ())], w.rank)
        out.append((poly_str(p, "x", F), saturate([f], forest, F)))
    return out


def rank2_primitive_test(I: IdealRep, w: Word) -> bool:
    """Whether w-1 is a primitive element of the rank-2 ideal I."""
    if I.rank != 2:
        raise ValueError(f"ideal has rank {I.rank}, expected 2")
    fo, F = I.forest, I.F
    r = w_minus_one(fo, w.letters, F)
    if r not in I.delta:
        raise ValueError("w - 1 is not in the ideal")
    # candidates f range over Delta / <w-1>, projectively
    quot = Subspace.span(F, fo.n, [r])
    basis = []
    for row in I.delta.basis():
        if quot.add(row):
            basis.append(row)
    k = len(basis)
    for lead in range(k):
        # first nonzero coordinate (in basis order) is 1
        for tail in product(range(F.q), repeat=k - lead - 1):
            f = list(basis[lead])
            for c, b in zip(tail, basis[lead + 1:]):
                if c:
                    f = F.axpy(f, F.neg[c], b)
            if saturate([f, r], fo, F).d == I.d:
                return True
    return False


def rank2_classification(w: Word, q: int, budget: int | None = None) -> list[tuple[IdealRep, bool, bool]]:
    """Every rank-2 ideal on [1,w] containing w-1, with (proper, w-1 primitive) flags."""
    F = field_make(q)
    out = []
    for I in enum_ideals(word_task(w, F, rank_filter=2, budget=budget)):
        out.append((I, is_proper(I), rank2_primitive_test(I, w)))
    return out


def crit2_and_prim2(w: Word, q: int, budget: int | None = None) -> tuple[list[IdealRep], int]:
    """Critical rank-2 ideals on [1,w] containing w-1, and the number of rank-2 ideals where it is primitive."""
    if w.is_trivial() or power_decompose(w).exponent > 1:
        raise ValueError(f"{w} is trivial or a proper power")
    rows = rank2_classification(w, q, budget)
    crit = [I for I, proper, prim in rows if proper and not prim]
    return crit, sum(prim for _, _, prim in rows)


@dataclass
class PiQResult:
    value: object  # 0, 1, 2 or the string ">=3-or-inf"
    witnesses: list = field(default_factory=list)
    crit_count: int | None = None
    note: str = ""

    def to_json(self) -> dict:
        return {
            "value": self.value,
            "crit_count": self.crit_count,
            "critical_ideals": [I.generator_strings() for I in self.witnesses],
            "note": self.note,
        }


def pi_q_upto2(w: Word, q: int, budget: int | None = None) -> PiQResult:
    """pi_q(w) when it is at most 2, from ideals generated on [1,w]; otherwise '>=3-or-inf'."""
    if w.is_trivial():
        return PiQResult(0, [], 1, "the zero ideal")
    F = field_make(q)
    ideals = list(enum_ideals(word_task(w, F, max_rank=2, budget=budget)))
    r = w_minus_one(ideals[0].forest, w.letters, F)
    rank1 = [I for I in ideals if I.rank == 1 and is_proper(I) and not _is_principal_w(I, r)]
    if rank1:
        return PiQResult(1, rank1, len(rank1))
    crit = [I for I in ideals if I.rank == 2 and is_proper(I) and not rank2_primitive_test(I, w)]
    if crit:
        return PiQResult(2, crit, len(crit))
    note = "no critical ideal of rank <= 2"
    if w.rank <= 2:
        note = "inf (primitive): rank-2 ambient group and no critical ideal of rank <= 2"
    return PiQResult(">=3-or-inf", [], None, note)


def _is_principal_w(I: IdealRep, r) -> bool:
    return saturate([r], I.forest, I.F).delta == I.delta
