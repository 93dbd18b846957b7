"""Ground truth over small matrix groups, Monte Carlo estimates, and the limiting law of fix.

Matrices are numpy integer arrays of field codes; arithmetic goes through the field's
lookup tables, batched over a leading sample axis.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

import mpmath
import numpy as np

from .errors import BudgetExceeded
from .gf import GF, field_make
from .moments import StatSpec
from .words import Word, power_decompose

__all__ = [
    "Tables",
    "fix_count",
    "gl_elements",
    "exact_expectation",
    "mc_expectation",
    "sample_gl",
    "ac_mass",
    "ac_truncation_bound",
    "LimitMeasure",
    "limit_measure",
    "galois_number",
    "gaussian_binomial",
    "distribution_compare",
    "PRNG_ID",
]

PRNG_ID = "numpy.PCG64 via SeedSequence(seed).spawn(blocks)"


class Tables:
    """Field tables as numpy arrays, with batched matrix routines."""

    def __init__(self, F: GF):
        self.F = F
        self.q = F.q
        self.ADD = np.array(F.add, dtype=np.int64)
        self.MUL = np.array(F.mul, dtype=np.int64)
        self.SUB = np.array(F.sub, dtype=np.int64)
        self.INV = np.array(F.inv, dtype=np.int64)
        self.prime = F.k == 1

    def matmul(self, A: np.ndarray, B: np.ndarray) -> np.ndarray:
        if self.prime:
            return (A @ B) % self.q
        S, R, K = A.shape
        C = np.zeros((S, R, B.shape[2]), dtype=np.int64)
        for k in range(K):
            C = self.ADD[C, self.MUL[A[:, :, k, None], B[:, None, k, :]]]
        return C

    def rref(self, A: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Batched Gauss-Jordan elimination without row swaps.

        Returns (reduced matrices, ranks, pivot_row) where pivot_row[s, c] is the row holding
        the pivot of column c, or -1.
        """
        A = A.astype(np.int64, copy=True)
        S, R, C = A.shape
        ar = np.arange(S)
        used = np.zeros((S, R), dtype=bool)
        rank = np.zeros(S, dtype=np.int64)
        pivot_row = np.full((S, C), -1, dtype=np.int64)
        p = self.q
        for col in range(C):
            colv = A[:, :, col]
            cand = (colv != 0) & ~used
            has = cand.any(axis=1)
            if not has.any():
                continue
            piv = cand.argmax(axis=1)
            pv = colv[ar, piv]
            if self.prime:
                prow = (self.INV[pv][:, None] * A[ar, piv]) % p
                factors = colv.copy()
                factors[ar, piv] = 0
                factors[~has] = 0
                A = (A - factors[:, :, None] * prow[:, None, :]) % p
            else:
                prow = self.MUL[self.INV[pv][:, None], A[ar, piv]]
                factors = colv.copy()
                factors[ar, piv] = 0
                factors[~has] = 0
                A = self.SUB[A, self.MUL[factors[:, :, None], prow[:, None, :]]]
            keep = A[ar, piv]
            A[ar, piv] = np.where(has[:, None], prow, keep)
            used[ar, piv] |= has
            rank += has
            pivot_row[:, col] = np.where(has, piv, -1)
        return A, rank, pivot_row

    def rank(self, A: np.ndarray) -> np.ndarray:
        return self.rref(A)[1]

    def inverse(self, G: np.ndarray) -> np.ndarray:
        S, N, _ = G.shape
        eye = np.broadcast_to(np.eye(N, dtype=np.int64), (S, N, N))
        red, r, pr = self.rref(np.concatenate([G, eye], axis=2))
        if (r < N).any():
            raise ValueError("singular matrix in inverse")
        return red[np.arange(S)[:, None], pr[:, :N], N:]

    def stat_exponent(self, g: np.ndarray, B: tuple) -> np.ndarray:
        """Dimension of {M : M g = B M} for each g in the batch (so the statistic is q^dim)."""
        S, N, _ = g.shape
        m = len(B)
        if m == 1 and B[0][0] == 1:
            L = self.SUB[np.swapaxes(g, 1, 2), np.eye(N, dtype=np.int64)[None]]
            return N - self.rank(L)
        Bm = np.array(B, dtype=np.int64)
        # unknown M[j, a] at column j*N + a; equation (i, b) at row i*N + b
        gt = np.swapaxes(g, 1, 2)  # gt[s, b, a] = g[s, a, b]
        t1 = np.zeros((S, m * N, m * N), dtype=np.int64)
        for i in range(m):
            t1[:, i * N:(i + 1) * N, i * N:(i + 1) * N] = gt
        t2 = np.kron(Bm, np.eye(N, dtype=np.int64))
        L = self.SUB[t1, t2[None]]
        return m * N - self.rank(L)


class Bits2:
    """GF(2) matrices packed one row per int64 (bit c = column c), batched."""

    @staticmethod
    def rank_and_pivots(rows: np.ndarray, ncols: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        rows = rows.copy()
        S, R = rows.shape
        ar = np.arange(S)
        used = np.zeros((S, R), dtype=bool)
        rank = np.zeros(S, dtype=np.int64)
        pivot_row = np.full((S, ncols), -1, dtype=np.int64)
        for col in range(ncols):
            hit = ((rows >> col) & 1).astype(bool)
            cand = hit & ~used
            has = cand.any(axis=1)
            if not has.any():
                continue
            piv = cand.argmax(axis=1)
            prow = np.where(has, rows[ar, piv], 0)
            hit[ar, piv] = False
            rows ^= np.where(hit, prow[:, None], 0)
            used[ar, piv] |= has
            rank += has
            pivot_row[:, col] = np.where(has, piv, -1)
        return rows, rank, pivot_row

    @staticmethod
    def matmul(A: np.ndarray, B: np.ndarray, N: int) -> np.ndarray:
        C = np.zeros_like(A)
        for k in range(N):
            C ^= np.where(((A >> k) & 1).astype(bool), B[:, k][:, None], 0)
        return C

    @classmethod
    def inverse(cls, G: np.ndarray, N: int) -> np.ndarray:
        S = G.shape[0]
        eye = (np.int64(1) << np.arange(N, dtype=np.int64))
        red, r, pr = cls.rank_and_pivots(G | (eye[None, :] << N), N)
        if (r < N).any():
            raise ValueError("singular matrix in inverse")
        return red[np.arange(S)[:, None], pr] >> N

    @classmethod
    def sample_gl(cls, N: int, size: int, rng: np.random.Generator) -> np.ndarray:
        out, have = [], 0
        while have < size:
            cand = rng.integers(0, 1 << N, size=(max(2 * (size - have), 16), N), dtype=np.int64)
            ok = cand[cls.rank_and_pivots(cand, N)[1] == N]
            out.append(ok)
            have += len(ok)
        return np.concatenate(out)[:size]

    @classmethod
    def fix_exponent(cls, g: np.ndarray, N: int) -> np.ndarray:
        eye = (np.int64(1) << np.arange(N, dtype=np.int64))
        return N - cls.rank_and_pivots(g ^ eye[None, :], N)[1]


def fix_count(g, q: int) -> int:
    T = Tables(field_make(q))
    g = np.asarray(g, dtype=np.int64)[None]
    return q ** int(T.stat_exponent(g, ((1,),))[0])


def gl_elements(N: int, q: int, limit: int = 10 ** 6) -> np.ndarray:
    """All invertible N x N matrices over GF(q), in lexicographic order of their entries."""
    if q ** (N * N) > limit:
        raise BudgetExceeded(limit, "matrices to scan for GL enumeration")
    T = Tables(field_make(q))
    allm = np.array(list(product(range(q), repeat=N * N)), dtype=np.int64).reshape(-1, N, N)
    return allm[T.rank(allm) == N]


def _evaluate(T: Tables, w: Word, gens: dict[int, np.ndarray], invs: dict[int, np.ndarray], N: int, S: int):
    P = np.broadcast_to(np.eye(N, dtype=np.int64), (S, N, N)).copy()
    for x in w.letters:
        P = T.matmul(P, gens[x] if x > 0 else invs[-x])
    return P


def exact_expectation(w: Word, s: StatSpec, N: int, q: int, budget: int = 10 ** 8, chunk: int = 50000) -> Fraction:
    """Average of the statistic over all tuples in GL_N(F_q)^r, as an exact rational."""
    F = field_make(q)
    s.validate(F)
    T = Tables(F)
    used = sorted({abs(x) for x in w.letters})
    G = gl_elements(N, q)
    n = len(G)
    if n ** len(used) > budget:
        raise BudgetExceeded(budget, "tuple evaluations")
    Ginv = T.inverse(G)
    total = 0
    count = n ** len(used)
    shape = (n,) * len(used)
    for start in range(0, count, chunk):
        flat = np.arange(start, min(start + chunk, count))
        idx = np.unravel_index(flat, shape) if used else ()
        gens = {g: G[i] for g, i in zip(used, idx)}
        invs = {g: Ginv[i] for g, i in zip(used, idx)}
        P = _evaluate(T, w, gens, invs, N, len(flat))
        ks = T.stat_exponent(P, s.matrix)
        total += sum(int(c) * q ** int(k) for k, c in zip(*np.unique(ks, return_counts=True)))
    return Fraction(total, count)


def sample_gl(T: Tables, N: int, size: int, rng: np.random.Generator) -> np.ndarray:
    """Uniform elements of GL_N(F_q) by rejection from uniform matrices."""
    out = []
    have = 0
    while have < size:
        cand = rng.integers(0, T.q, size=(max(2 * (size - have), 16), N, N), dtype=np.int64)
        ok = cand[T.rank(cand) == N]
        out.append(ok)
        have += len(ok)
    return np.concatenate(out)[:size]


def _mc_exponents(w: Word, s: StatSpec, N: int, q: int, samples: int, seed: int, block: int = 4096,
                  threads: int = 1):
    """Statistic exponents for ``samples`` draws; blocks have their own substreams, so the
    result does not depend on ``threads``."""
    T = Tables(field_make(q))
    used = sorted({abs(x) for x in w.letters})
    nblocks = -(-samples // block)
    streams = np.random.SeedSequence(seed).spawn(nblocks)

    packed = q == 2 and s.tag == "fix" and N <= 30

    def run(b: int) -> np.ndarray:
        size = min(block, samples - b * block)
        rng = np.random.default_rng(streams[b])
        if packed:
            gens = {g: Bits2.sample_gl(N, size, rng) for g in used}
            invs = {g: Bits2.inverse(gens[g], N) for g in used if -g in w.letters}
            P = np.broadcast_to(np.int64(1) << np.arange(N, dtype=np.int64), (size, N)).copy()
            for x in w.letters:
                P = Bits2.matmul(P, gens[x] if x > 0 else invs[-x], N)
            return Bits2.fix_exponent(P, N)
        gens = {g: sample_gl(T, N, size, rng) for g in used}
        invs = {g: T.inverse(gens[g]) for g in used if -g in w.letters}
        P = _evaluate(T, w, gens, invs, N, size)
        return T.stat_exponent(P, s.matrix)

    if threads > 1 and nblocks > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            out = list(ex.map(run, range(nblocks)))
    else:
        out = [run(b) for b in range(nblocks)]
    return np.concatenate(out)


def mc_expectation(w: Word, s: StatSpec, N: int, q: int, samples: int, seed: int, threads: int = 1) -> dict:
    ks = _mc_exponents(w, s, N, q, samples, seed, threads=threads)
    vals = np.power(float(q), ks.astype(np.float64))
    est = float(vals.mean())
    se = float(vals.std(ddof=1) / np.sqrt(len(vals))) if len(vals) > 1 else float("nan")
    return {"estimate": est, "stderr": se, "samples": samples, "seed": seed, "prng": PRNG_ID}


# -- the limiting law of fix for non-powers ----------------------------------------

def ac_truncation_bound(q: int, terms: int) -> float:
    """Relative error bound from cutting (p;p)_inf after ``terms`` factors, p = 1/q."""
    p = mpmath.mpf(1) / q
    return float(p ** (terms + 1) / (1 - p))


def ac_mass(k: int, q: int, terms: int = 200, dps: int = 50):
    """Mass at q^k of the Al-Salam-Carlitz law with a = 1, p = 1/q."""
    if k < 0:
        raise ValueError("k must be non-negative")
    with mpmath.workdps(dps):
        p = mpmath.mpf(1) / q
        full = mpmath.fprod(1 - p ** j for j in range(1, terms + 1))
        part = mpmath.fprod(1 - p ** j for j in range(1, k + 1))
        return +(full * p ** (k * k) / part ** 2)


@dataclass
class LimitMeasure:
    q: int
    masses: list
    truncation_error: float

    def moment(self, n: int):
        return mpmath.fsum(mpmath.mpf(self.q) ** (n * k) * m for k, m in enumerate(self.masses))


def limit_measure(q: int, T: int = 40, terms: int = 200) -> LimitMeasure:
    return LimitMeasure(q, [ac_mass(k, q, terms) for k in range(T + 1)], ac_truncation_bound(q, terms))


def gaussian_binomial(n: int, k: int, q: int) -> int:
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def galois_number(n: int, q: int) -> int:
    """Number of subspaces of F_q^n."""
    return sum(gaussian_binomial(n, k, q) for k in range(n + 1))


def distribution_compare(w: Word, N: int, q: int, samples: int, seed: int, allow_powers: bool = False,
                         threads: int = 1) -> dict:
    """Empirical law of fix(w(g)) against the limiting law; total variation and per-atom rows."""
    if w.is_trivial() or (power_decompose(w).exponent > 1 and not allow_powers):
        raise ValueError(f"{w} is trivial or a proper power; the limit law applies to non-powers")
    ks = _mc_exponents(w, StatSpec.fix(), N, q, samples, seed, threads=threads)
    counts = np.bincount(ks, minlength=N + 1)
    nu = limit_measure(q, T=N)
    rows = []
    tv = 0.0
    for k in range(N + 1):
        emp = counts[k] / samples
        lim = float(nu.masses[k])
        rows.append({"atom": q ** k, "k": k, "empirical": emp, "limit": lim, "abs_diff": abs(emp - lim)})
        tv += abs(emp - lim)
    tail = float(1 - mpmath.fsum(nu.masses))
    tv = 0.5 * (tv + max(tail, 0.0))
    mean = float(np.mean(np.power(float(q), ks)))
    second = float(np.mean(np.power(float(q), 2 * ks)))
    return {"word": str(w), "N": N, "q": q, "samples": samples, "seed": seed, "prng": PRNG_ID,
            "tv": tv, "rows": rows, "moments": {"1": mean, "2": second},
            "galois": {"1": galois_number(1, q), "2": galois_number(2, q)}}
