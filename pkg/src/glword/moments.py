"""Expected values of fix and of the B-statistics under word measures, as rational functions of Q = q^N.

For B in GL_m(F_q) the statistic counts m x N matrices M with M g = B M; ``fix`` is the
case m = 1, B = (1).  The expectation over w(g_1..g_r) equals a finite sum over the
submodules generated on m copies of [1, w] that contain e_i w - sum_j B_ij e_j:

    sum  indep(m(|w|+1) - d) / prod_b indep(e_b - d_b)

and is valid for N >= max_b e_b.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .enumeration import EnumStats, EnumTask, enum_ideals, eq_set
from .forest import build_support
from .gf import GF, field_make
from .linalg import Subspace
from .ratfunc import LaurentTail, RatFunc, indep_poly
from .words import Word, cyclic_reduction, power_decompose

__all__ = [
    "StatSpec",
    "ExpectationResult",
    "expected_stat",
    "expected_fix",
    "limit_value",
    "q1_coefficient",
    "beta_w_direct",
    "principal_summand",
    "projective_expectation",
    "cycle_stats",
]


@dataclass(frozen=True)
class StatSpec:
    matrix: tuple
    tag: str = "custom"

    @property
    def m(self) -> int:
        return len(self.matrix)

    @classmethod
    def fix(cls) -> "StatSpec":
        return cls(((1,),), "fix")

    @classmethod
    def eigen(cls, lam: int) -> "StatSpec":
        if lam == 0:
            raise ValueError("eigenvalue must be nonzero")
        return cls(((lam,),), f"eigen({lam})")

    @classmethod
    def moment(cls, k: int) -> "StatSpec":
        return cls(tuple(tuple(int(i == j) for j in range(k)) for i in range(k)), f"moment({k})")

    @classmethod
    def fix_of_power(cls, k: int) -> "StatSpec":
        return cls(tuple(tuple(int(j == (i + 1) % k) for j in range(k)) for i in range(k)), f"fixpow({k})")

    @classmethod
    def custom(cls, B: Sequence[Sequence[int]]) -> "StatSpec":
        B = tuple(tuple(int(x) for x in row) for row in B)
        if any(len(row) != len(B) for row in B) or not B:
            raise ValueError("matrix must be square and nonempty")
        return cls(B, "custom")

    def validate(self, F: GF):
        if any(not 0 <= x < F.q for row in self.matrix for x in row):
            raise ValueError(f"matrix entries must be field codes in 0..{F.q - 1}")
        if Subspace.span(F, self.m, [list(r) for r in self.matrix]).dim != self.m:
            raise ValueError("matrix is not invertible")

    def kernel_dim_minus_identity(self, F: GF) -> int:
        rows = [[F.sub[x][int(i == j)] for j, x in enumerate(row)] for i, row in enumerate(self.matrix)]
        return self.m - Subspace.span(F, self.m, rows).dim


@dataclass
class ExpectationResult:
    word: Word
    q: int
    stat: StatSpec
    ratfunc: RatFunc
    n_min: int
    laurent: LaurentTail
    limit: Fraction | None
    rank_counts: dict = field(default_factory=dict)
    summands: list | None = None
    nodes: int = 0


def _sum_signatures(sigs: Counter, total_dim: int, e: dict[int, int], q: int) -> RatFunc:
    # group by denominator so most additions share a denominator
    out = RatFunc.const(0)
    for (d, db), count in sorted(sigs.items()):
        den = RatFunc.const(1)
        for g, dg in zip(sorted(e), db):
            den = den * indep_poly(e[g] - dg, q)
        out = out + RatFunc.const(count) * indep_poly(total_dim - d, q) / den
    return out


def expected_stat(w: Word, s: StatSpec, q: int, explain: bool = False, budget: int | None = None,
                  K: int = 3) -> ExpectationResult:
    F = field_make(q)
    s.validate(F)
    m = s.m
    if w.is_trivial():
        k = s.kernel_dim_minus_identity(F)
        f = RatFunc.Q() ** k
        lim = Fraction(1) if k == 0 else None
        return ExpectationResult(w, q, s, f, 0, f.laurent(K), lim, {})
    forest = build_support(w, m)
    task = EnumTask(forest, F, eq_set(w, s.matrix, F, forest), budget=budget)
    stats = EnumStats()
    sigs: Counter = Counter()
    ranks: Counter = Counter()
    summands = [] if explain else None
    e = {g: forest.e(g) for g in forest.origins}
    total = forest.n
    for I in enum_ideals(task, stats):
        db = tuple(I.d_b[g] for g in sorted(e))
        sigs[(I.d, db)] += 1
        ranks[I.rank] += 1
        if explain:
            summands.append({"rank": I.rank, "d": I.d, "d_b": list(db),
                             "generators": I.generator_strings()})
    f = _sum_signatures(sigs, total, e, q)
    if explain:
        for row in summands:
            den = RatFunc.const(1)
            for g, dg in zip(sorted(e), row["d_b"]):
                den = den * indep_poly(e[g] - dg, q)
            row["summand"] = str(indep_poly(total - row["d"], q) / den)
    lt = f.laurent(K)
    lim = lt.coeffs[0] if not lt.poly else None
    return ExpectationResult(w, q, s, f, forest.n_min(), lt, lim, dict(sorted(ranks.items())), summands,
                             stats.nodes)


def expected_fix(w: Word, q: int, **kw) -> ExpectationResult:
    return expected_stat(w, StatSpec.fix(), q, **kw)


def limit_value(w: Word, s: StatSpec, q: int, budget: int | None = None) -> int:
    """Number of rank-m submodules in the index set: the N -> infinity limit of the expectation."""
    if w.is_trivial():
        raise ValueError("the trivial word has no finite limit in general")
    F = field_make(q)
    s.validate(F)
    forest = build_support(w, s.m)
    task = EnumTask(forest, F, eq_set(w, s.matrix, F, forest), rank_filter=s.m, budget=budget)
    return sum(1 for _ in enum_ideals(task))


def q1_coefficient(w: Word, q: int, **kw) -> Fraction:
    """Coefficient of 1/q^N in E_w[fix] for a non-power w."""
    if w.is_trivial() or power_decompose(w).exponent > 1:
        raise ValueError(f"{w} is trivial or a proper power; use limit_value instead")
    return expected_fix(w, q, **kw).laurent.coeffs[1]


def cycle_stats(w: Word) -> tuple[int, dict[int, int]]:
    """Length of the cyclic reduction of w and the number of occurrences of each generator in it."""
    c, _ = cyclic_reduction(w)
    counts = {g: 0 for g in range(1, w.rank + 1)}
    for x in c.letters:
        counts[abs(x)] += 1
    return len(c), counts


def beta_w_direct(w: Word, q: int) -> Fraction:
    if w.is_trivial():
        raise ValueError("beta is undefined for the trivial word")
    v, e = cycle_stats(w)
    out = -Fraction(q ** v - 1, q - 1)
    for g in e:
        out += Fraction(q ** e[g] - 1, q - 1)
    return out


def principal_summand(w: Word, q: int) -> RatFunc:
    """The summand of the principal ideal (w - 1): d = 1 and every d_b = 0."""
    forest = build_support(w, 1)
    den = RatFunc.const(1)
    for g in forest.origins:
        den = den * indep_poly(forest.e(g), q)
    return indep_poly(len(w), q) / den


def projective_expectation(w: Word, q: int, **kw) -> ExpectationResult:
    """(1/(q-1)) sum_lambda (E[eigen(lambda)] - 1) - 1."""
    F = field_make(q)
    total = RatFunc.const(0)
    n_min = 0
    for lam in F.units():
        r = expected_stat(w, StatSpec.eigen(lam), q, **kw)
        n_min = max(n_min, r.n_min)
        total = total + (r.ratfunc - 1)
    f = total / (q - 1) - 1
    lt = f.laurent(kw.get("K", 3))
    return ExpectationResult(w, q, StatSpec(((0,),), "projective"), f, n_min, lt,
                             lt.coeffs[0] if not lt.poly else None)
