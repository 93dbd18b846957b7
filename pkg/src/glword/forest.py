"""Finite subforests of the Cayley tree of a free group (or of m disjoint copies of it).

A vertex is a monomial ``(i, z)``: component ``i`` (the basis vector e_i of the free
module) and a reduced word ``z``.  Edges join ``(i, z)`` and ``(i, z b)`` and carry the
positive generator ``b``, oriented ``z -> z b``.  ``D_b`` is the list of edge origins.

Vertices are kept in an exploration order; the default is ShortLex restricted to the
forest with components interleaved level by level (e_1, ..., e_m, e_1 b, ..., e_m b, ...).
"""

from __future__ import annotations

import random
from typing import Iterable, Mapping

from .errors import SupportError
from .words import Word, free_reduce, invert

__all__ = ["SupportForest", "build_support", "hull_forest", "support_stats", "shortlex_key"]

Vertex = tuple  # (component, letters)


def shortlex_key(v: Vertex):
    comp, z = v
    return (len(z), comp, tuple(2 * abs(x) - (x > 0) for x in z))


def step(z: tuple, b: int) -> tuple:
    return free_reduce(z + (b,))


class SupportForest:
    """Immutable labelled forest with a fixed exploration order."""

    def __init__(self, vertices: Iterable[Vertex], rank: int, m: int = 1, order: list[Vertex] | None = None):
        vs = {(int(c), tuple(z)) for c, z in vertices}
        for c, z in vs:
            if not 0 <= c < m:
                raise SupportError(f"component {c} out of range for m={m}")
            if free_reduce(z) != z or any(abs(x) > rank for x in z):
                raise SupportError(f"vertex {z} is not a reduced word of rank {rank}")
        self.rank = rank
        self.m = m
        if order is None:
            order = sorted(vs, key=shortlex_key)
        elif set(order) != vs or len(order) != len(vs):
            raise SupportError("order is not a permutation of the vertex set")
        self.vertices: tuple[Vertex, ...] = tuple(order)
        self.n = len(self.vertices)
        self.index = {v: i for i, v in enumerate(self.vertices)}

        # neighbours[i] = list of (j, label) with vertex_i * label == vertex_j
        self.neighbours: list[list[tuple[int, int]]] = [[] for _ in range(self.n)]
        self.origins: dict[int, list[int]] = {g: [] for g in range(1, rank + 1)}
        self.termini: dict[int, list[int]] = {g: [] for g in range(1, rank + 1)}
        for i, (c, z) in enumerate(self.vertices):
            for g in range(1, rank + 1):
                j = self.index.get((c, step(z, g)))
                if j is not None:
                    self.origins[g].append(i)
                    self.termini[g].append(j)
                    self.neighbours[i].append((j, g))
                    self.neighbours[j].append((i, -g))

        # parent[i] = (u, label) where u precedes i and vertex_u * label == vertex_i
        self.parent: list[tuple[int, int] | None] = []
        for i in range(self.n):
            earlier = [(j, -lab) for j, lab in self.neighbours[i] if j < i]
            if len(earlier) > 1:
                raise SupportError("vertex order is not an exploration (cycle)")
            self.parent.append(earlier[0] if earlier else None)
        firsts = [i for i in range(self.n) if self.parent[i] is None]
        comps = [self.vertices[i][0] for i in firsts]
        if len(set(comps)) != len(comps):
            raise SupportError("a component is disconnected or the order is not an exploration")

    # -- basic queries -------------------------------------------------------
    def __len__(self) -> int:
        return self.n

    def __contains__(self, v) -> bool:
        return v in self.index

    def __eq__(self, other) -> bool:
        return (isinstance(other, SupportForest) and self.rank == other.rank and self.m == other.m
                and self.vertices == other.vertices)

    def __hash__(self):
        return hash((self.rank, self.m, self.vertices))

    def e(self, g: int) -> int:
        return len(self.origins[g])

    def n_min(self) -> int:
        return max((self.e(g) for g in self.origins), default=0)

    def vertex_sets(self) -> dict[int, set]:
        out: dict[int, set] = {}
        for c, z in self.vertices:
            out.setdefault(c, set()).add(z)
        return out

    def label(self, v: Vertex) -> str:
        from .words import format_word
        c, z = v
        w = format_word(z)
        return w if self.m == 1 else f"e{c + 1}" + ("" if not z else "." + w)

    # -- coefficient vectors -------------------------------------------------
    def vector(self, element: Mapping[Vertex, int]) -> list[int]:
        """Dense coefficient list from a sparse ``{vertex: code}`` mapping."""
        v = [0] * self.n
        for mono, c in element.items():
            mono = (mono[0], tuple(mono[1]))
            if c == 0:
                continue
            i = self.index.get(mono)
            if i is None:
                raise SupportError(f"monomial {mono} is not a vertex of the forest")
            v[i] = c
        return v

    def element(self, vec) -> dict[Vertex, int]:
        return {self.vertices[i]: c for i, c in enumerate(vec) if c}

    # -- explorations --------------------------------------------------------
    def is_exploration(self, order: list[int]) -> bool:
        if sorted(order) != list(range(self.n)):
            return False
        seen: set[int] = set()
        started: set[int] = set()
        for i in order:
            c = self.vertices[i][0]
            if not any(j in seen for j, _ in self.neighbours[i]):
                if c in started:
                    return False
            started.add(c)
            seen.add(i)
        return True

    def random_exploration(self, rng: random.Random) -> list[int]:
        order: list[int] = []
        seen: set[int] = set()
        frontier: set[int] = set()
        comps = sorted({c for c, _ in self.vertices})
        unstarted = {c: [i for i, v in enumerate(self.vertices) if v[0] == c] for c in comps}
        while len(order) < self.n:
            pool = sorted(frontier) + [i for c in unstarted for i in unstarted[c]]
            i = rng.choice(pool)
            unstarted.pop(self.vertices[i][0], None)
            order.append(i)
            seen.add(i)
            frontier.discard(i)
            frontier.update(j for j, _ in self.neighbours[i] if j not in seen)
        return order

    def reordered(self, order: list[int]) -> "SupportForest":
        return SupportForest(self.vertices, self.rank, self.m, [self.vertices[i] for i in order])


def build_support(w: Word, m: int = 1) -> SupportForest:
    """m copies of the path [1, w] of prefixes of ``w``."""
    if m < 1:
        raise ValueError("m must be at least 1")
    s = w.letters
    verts = [(c, s[:j]) for c in range(m) for j in range(len(s) + 1)]
    return SupportForest(verts, w.rank, m)


def geodesic(x: tuple, y: tuple) -> list[tuple]:
    path = free_reduce(invert(x) + y)
    return [free_reduce(x + path[:k]) for k in range(len(path) + 1)]


def hull_forest(vertices: Iterable[Vertex], rank: int, m: int = 1) -> SupportForest:
    """Smallest forest (per component, the convex hull in the Cayley tree) containing ``vertices``."""
    by_comp: dict[int, list[tuple]] = {}
    for c, z in vertices:
        by_comp.setdefault(c, []).append(tuple(z))
    out = set()
    for c, zs in by_comp.items():
        base = zs[0]
        for z in zs:
            out.update((c, p) for p in geodesic(base, z))
    return SupportForest(out, rank, m)


def support_stats(f: SupportForest) -> dict[int, tuple[list[Vertex], int]]:
    """Per generator: the edge-origin vertices D_b and their count e_b."""
    return {g: ([f.vertices[i] for i in f.origins[g]], f.e(g)) for g in f.origins}
