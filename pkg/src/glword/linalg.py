"""Row-reduced subspaces of GF(q)^n.

Coordinates are positions 0..n-1 (a forest's exploration order).  The pivot of a row
is its LARGEST nonzero coordinate, normalised to 1, and every pivot coordinate is
zero in all other rows.  Rows are dense lists of field codes.
"""

from __future__ import annotations

from typing import Iterable

from .gf import GF

__all__ = ["Subspace", "span_insert", "span_restrict", "leading"]


def leading(v) -> int:
    for i in range(len(v) - 1, -1, -1):
        if v[i]:
            return i
    return -1


class Subspace:
    __slots__ = ("F", "n", "rows")

    def __init__(self, F: GF, n: int, rows: dict[int, list[int]] | None = None):
        self.F = F
        self.n = n
        self.rows: dict[int, list[int]] = rows if rows is not None else {}

    @classmethod
    def span(cls, F: GF, n: int, vectors: Iterable) -> "Subspace":
        s = cls(F, n)
        for v in vectors:
            s.add(v)
        return s

    @classmethod
    def full(cls, F: GF, n: int) -> "Subspace":
        return cls(F, n, {i: [int(i == j) for j in range(n)] for i in range(n)})

    def copy(self) -> "Subspace":
        return Subspace(self.F, self.n, dict(self.rows))

    @property
    def dim(self) -> int:
        return len(self.rows)

    def __len__(self) -> int:
        return len(self.rows)

    def pivots(self) -> list[int]:
        return sorted(self.rows)

    def basis(self) -> list[list[int]]:
        return [self.rows[p] for p in sorted(self.rows)]

    def key(self) -> tuple:
        """Canonical hashable form."""
        return tuple(tuple(self.rows[p]) for p in sorted(self.rows))

    def __eq__(self, other) -> bool:
        return isinstance(other, Subspace) and self.n == other.n and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def reduce(self, v) -> list[int]:
        v = list(v)
        axpy = self.F.axpy
        for p, row in self.rows.items():
            c = v[p]
            if c:
                v = axpy(v, c, row)
        return v

    def __contains__(self, v) -> bool:
        return leading(self.reduce(v)) < 0

    def add(self, v) -> bool:
        """Insert v in place; return True iff the dimension grew."""
        if len(v) != self.n:
            raise ValueError("vector length does not match the ambient dimension")
        v = self.reduce(v)
        p = leading(v)
        if p < 0:
            return False
        F = self.F
        if v[p] != 1:
            v = F.scale(F.inv[v[p]], v)
        for q, row in self.rows.items():
            c = row[p]
            if c:
                self.rows[q] = F.axpy(row, c, v)
        self.rows[p] = v
        return True

    def contains_space(self, other: "Subspace") -> bool:
        return all(r in self for r in other.rows.values())

    def restrict(self, support) -> "Subspace":
        """Elements supported on the coordinate set ``support``."""
        support = set(support)
        F = self.F
        rows = [r for r in self.rows.values()]
        outside = [i for i in range(self.n) if i not in support]
        for col in outside:
            k = next((t for t, r in enumerate(rows) if r[col]), None)
            if k is None:
                continue
            piv = rows.pop(k)
            inv = F.inv[piv[col]]
            rows = [F.axpy(r, F.mul[r[col]][inv], piv) if r[col] else r for r in rows]
        return Subspace.span(F, self.n, rows)

    def restrict_dim(self, support) -> int:
        support = set(support)
        rows = [r for r in self.rows.values()]
        F = self.F
        dropped = 0
        for col in range(self.n):
            if col in support:
                continue
            k = next((t for t, r in enumerate(rows) if r[col]), None)
            if k is None:
                continue
            piv = rows.pop(k)
            dropped += 1
            inv = F.inv[piv[col]]
            rows = [F.axpy(r, F.mul[r[col]][inv], piv) if r[col] else r for r in rows]
        return self.dim - dropped

    def reranked(self, rank: list[int]) -> "Subspace":
        """Same subspace with coordinates permuted: new position of old coordinate i is rank[i]."""
        out = Subspace(self.F, self.n)
        for r in self.rows.values():
            v = [0] * self.n
            for i, c in enumerate(r):
                v[rank[i]] = c
            out.add(v)
        return out

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, n={self.n}, rows={self.basis()})"


def span_insert(s: Subspace, v) -> tuple[Subspace, bool]:
    t = s.copy()
    grew = t.add(v)
    return t, grew


def span_restrict(s: Subspace, support) -> Subspace:
    return s.restrict(support)
