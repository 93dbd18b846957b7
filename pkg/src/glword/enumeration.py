"""Enumeration of ideals / submodules generated on a forest that contain given elements.

Every C2-closed subspace Delta of K^T corresponds to exactly one ideal generated on T.
The smart search grows Delta_t = Delta restricted to the first t vertices, one vertex at a
time.  Each step is forced (the new row is determined), free (nothing new) or a
coincidence (a new row with pivot at the vertex, free coefficients on earlier
non-pivot vertices).  Every branch it keeps is C2-closed, so nothing is discarded
late except by the containment requirement.

The brute search lists every subspace containing the required elements and keeps the
C2-closed ones; it is the oracle for the smart search.
"""

from __future__ import annotations

import os
from collections import Counter
from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Iterator, Sequence

from .errors import BudgetExceeded, SupportError
from .forest import SupportForest, build_support
from .gf import GF
from .ideals import IdealRep, check_c2, shift, w_minus_one
from .linalg import Subspace, leading
from .words import Word

__all__ = [
    "EnumTask",
    "DEFAULT_BUDGET",
    "default_budget",
    "enum_ideals",
    "enum_submodules",
    "eq_set",
    "count_by_rank",
    "word_task",
]

DEFAULT_BUDGET = 10 ** 8


def default_budget() -> int:
    env = os.environ.get("GLWORD_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


@dataclass
class EnumTask:
    forest: SupportForest
    F: GF
    required: list = field(default_factory=list)
    rank_filter: int | None = None
    max_rank: int | None = None
    mode: str = "smart"
    budget: int | None = None

    def __post_init__(self):
        self.required = [self.forest.vector(r) if isinstance(r, dict) else list(r) for r in self.required]
        for r in self.required:
            if len(r) != self.forest.n:
                raise SupportError("required element is not supported on the forest")
        if self.mode not in ("smart", "brute"):
            raise ValueError(f"unknown mode {self.mode!r}")


@dataclass
class EnumStats:
    nodes: int = 0


class _Step:
    __slots__ = ("parent", "letter", "src", "dst")

    def __init__(self, forest: SupportForest, t: int):
        self.parent = None
        self.letter = 0
        self.src: list[int] = []
        self.dst: list[int] = []
        par = forest.parent[t]
        if par is None:
            return
        u, b = par
        g = abs(b)
        self.parent = u
        self.letter = g
        pairs = [(o, e) for o, e in zip(forest.origins[g], forest.termini[g]) if o <= t and e <= t]
        if b > 0:
            self.src, self.dst = [o for o, _ in pairs], [e for _, e in pairs]
        else:
            self.src, self.dst = [e for _, e in pairs], [o for o, _ in pairs]


def _smart(task: EnumTask, stats: EnumStats) -> Iterator[IdealRep]:
    fo, F = task.forest, task.F
    n, q = fo.n, F.q
    budget = task.budget if task.budget is not None else default_budget()
    cap = task.max_rank
    if task.rank_filter is not None:
        cap = task.rank_filter if cap is None else min(cap, task.rank_filter)
    steps = [_Step(fo, t) for t in range(n)]
    req_at: dict[int, list[list[int]]] = {}
    for r in task.required:
        lead = leading(r)
        if lead < 0:
            continue
        req_at.setdefault(lead, []).append(r)
    letters = list(range(1, fo.rank + 1))

    def emit(delta: Subspace, coinc: int, forced: tuple) -> IdealRep:
        rep = IdealRep(fo, F, delta)
        rep._d_b = {g: forced[g - 1] for g in letters}
        return rep

    # explicit stack: (t, delta, coincidences, forced-per-letter)
    stack = [(0, Subspace(F, n), 0, (0,) * fo.rank)]
    while stack:
        t, delta, coinc, forced = stack.pop()
        if t == n:
            if task.rank_filter is None or coinc == task.rank_filter:
                yield emit(delta, coinc, forced)
            continue
        stats.nodes += 1
        if stats.nodes > budget:
            raise BudgetExceeded(budget)
        st = steps[t]
        reqs = req_at.get(t, ())
        children = []
        if st.parent is not None:
            u = st.parent
            f = next((r for r in delta.restrict(st.src).basis() if r[u]), None)
            if f is not None:
                new = delta.copy()
                new.add(shift(f, st.src, st.dst))
                if all(r in new for r in reqs):
                    fc = list(forced)
                    fc[st.letter - 1] += 1
                    stack.append((t + 1, new, coinc, tuple(fc)))
                continue
        if not reqs:
            children.append((t + 1, delta, coinc, forced))
        if cap is None or coinc < cap:
            blocked = None
            if st.parent is not None:
                # a new row g may not lie in Delta + K^{dst}: that would force a row on src
                blocked = delta.copy()
                for s in st.dst:
                    if s != t:
                        e = [0] * n
                        e[s] = 1
                        blocked.add(e)
            if reqs:
                g = delta.reduce(reqs[0])
                g = F.scale(F.inv[g[t]], g)
                cands = [g]
            else:
                free_pos = [j for j in range(t) if j not in delta.rows]
                cands = _candidates(n, t, free_pos, q)
            for g in cands:
                if blocked is not None:
                    x = list(g)
                    x[t] = 0
                    if x in blocked:
                        continue
                new = delta.copy()
                new.rows[t] = g
                if reqs and not all(r in new for r in reqs):
                    continue
                children.append((t + 1, new, coinc + 1, forced))
        # push in reverse so branches are visited in coefficient-code order
        stack.extend(reversed(children))


def _candidates(n: int, t: int, free_pos: list[int], q: int) -> Iterator[list[int]]:
    for coeffs in product(range(q), repeat=len(free_pos)):
        g = [0] * n
        g[t] = 1
        for j, c in zip(free_pos, coeffs):
            g[j] = c
        yield g


def _brute(task: EnumTask, stats: EnumStats) -> Iterator[IdealRep]:
    fo, F = task.forest, task.F
    n, q = fo.n, F.q
    budget = task.budget if task.budget is not None else default_budget()
    base = Subspace.span(F, n, task.required)
    coords = [i for i in range(n) if i not in base.rows]
    k = len(coords)
    # every subspace containing ``base`` is base + (an RREF subspace on the other coordinates)
    for dim in range(k + 1):
        for piv in _subsets(k, dim):
            pivset = set(piv)
            slots = [(p, [j for j in range(p) if j not in pivset]) for p in piv]
            nfree = sum(len(s) for _, s in slots)
            for vals in product(range(q), repeat=nfree):
                stats.nodes += 1
                if stats.nodes > budget:
                    raise BudgetExceeded(budget)
                delta = base.copy()
                it = iter(vals)
                for p, free in slots:
                    v = [0] * n
                    v[coords[p]] = 1
                    for j in free:
                        v[coords[j]] = next(it)
                    delta.add(v)
                if not check_c2(delta, fo):
                    continue
                rep = IdealRep(fo, F, delta)
                if task.rank_filter is not None and rep.rank != task.rank_filter:
                    continue
                if task.max_rank is not None and rep.rank > task.max_rank:
                    continue
                yield rep


def _subsets(k: int, r: int):
    from itertools import combinations
    return combinations(range(k), r)


def enum_ideals(task: EnumTask, stats: EnumStats | None = None) -> Iterator[IdealRep]:
    stats = stats if stats is not None else EnumStats()
    if task.mode == "brute":
        return _brute(task, stats)
    return _smart(task, stats)


def eq_set(w: Word, B: Sequence[Sequence[int]], F: GF, forest: SupportForest | None = None) -> list[list[int]]:
    """The m elements e_i w - sum_j B[i][j] e_j on the m-component forest of w."""
    m = len(B)
    forest = forest or build_support(w, m)
    out = []
    for i in range(m):
        v = [0] * forest.n
        v[forest.index[(i, w.letters)]] = 1
        for j in range(m):
            idx = forest.index[(j, ())]
            v[idx] = F.sub[v[idx]][B[i][j] % F.q]
        out.append(v)
    return out


def word_task(w: Word, F: GF, **kw) -> EnumTask:
    forest = build_support(w, 1)
    return EnumTask(forest, F, [w_minus_one(forest, w.letters, F)], **kw)


def enum_submodules(w: Word, B: Sequence[Sequence[int]], F: GF, **kw) -> Iterator[IdealRep]:
    m = len(B)
    forest = build_support(w, m)
    return enum_ideals(EnumTask(forest, F, eq_set(w, B, F, forest), **kw))


def count_by_rank(seq: Iterable[IdealRep]) -> dict[int, int]:
    return dict(sorted(Counter(I.rank for I in seq).items()))
