"""Finite fields GF(q), q <= 64, and polynomials over them.

Elements are integer codes 0..q-1.  For q = p^k with k > 1 the code of
c_0 + c_1 z + ... + c_{k-1} z^{k-1} is sum(c_i p^i), where z is a root of the
lexicographically smallest monic irreducible of degree k over GF(p) (smallest when
its coefficients are read as a base-p integer).
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product

import numpy as np

from .errors import FieldError

__all__ = ["GF", "field_make", "monic_divisors", "poly_divmod", "poly_str", "poly_mul"]


def _prime_power(q: int) -> tuple[int, int] | None:
    if q < 2:
        return None
    p = next(d for d in range(2, q + 1) if q % d == 0)
    k, r = 0, q
    while r % p == 0:
        r //= p
        k += 1
    return (p, k) if r == 1 else None


def _poly_mod_p(a: list[int], m: list[int], p: int) -> list[int]:
    """Remainder of a by monic m over GF(p), coefficient lists low to high."""
    a = a[:]
    dm = len(m) - 1
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i] % p
        if c:
            for j in range(dm + 1):
                a[i - dm + j] = (a[i - dm + j] - c * m[j]) % p
    return [x % p for x in a[:dm]] + [0] * max(0, dm - len(a))


def _is_irreducible(m: list[int], p: int) -> bool:
    k = len(m) - 1
    for d in range(1, k // 2 + 1):
        for low in product(range(p), repeat=d):
            if not any(_poly_mod_p(m, list(low) + [1], p)):
                return False
    return True


def _smallest_irreducible(p: int, k: int) -> tuple[int, ...]:
    for code in range(p ** k):
        low = [(code // p ** i) % p for i in range(k)]
        m = low + [1]
        if _is_irreducible(m, p):
            return tuple(m)
    raise AssertionError("no irreducible polynomial found")


class GF:
    """Table-driven finite field.  Construct through :func:`field_make`."""

    def __init__(self, q: int):
        pk = _prime_power(q)
        if pk is None:
            raise FieldError(f"q={q} is not a prime power")
        if q > 64:
            raise FieldError(f"q={q} is out of the supported range (q <= 64)")
        self.q = q
        self.p, self.k = pk
        p, k = self.p, self.k
        self.modulus: tuple[int, ...] | None = None
        if k == 1:
            add = [[(a + b) % p for b in range(q)] for a in range(q)]
            mul = [[(a * b) % p for b in range(q)] for a in range(q)]
        else:
            self.modulus = _smallest_irreducible(p, k)
            digits = [[(a // p ** i) % p for i in range(k)] for a in range(q)]

            def enc(ds):
                return sum(d * p ** i for i, d in enumerate(ds))

            add = [[enc([(x + y) % p for x, y in zip(digits[a], digits[b])]) for b in range(q)] for a in range(q)]
            mul = [[0] * q for _ in range(q)]
            for a in range(q):
                for b in range(q):
                    prod = [0] * (2 * k - 1)
                    for i, x in enumerate(digits[a]):
                        if x:
                            for j, y in enumerate(digits[b]):
                                prod[i + j] += x * y
                    mul[a][b] = enc(_poly_mod_p(prod, list(self.modulus), p))
        self.add = add
        self.mul = mul
        self.neg = [add[a].index(0) for a in range(q)]
        self.sub = [[add[a][self.neg[b]] for b in range(q)] for a in range(q)]
        self.inv = [0] + [mul[a].index(1) for a in range(1, q)]
        self._check_axioms()
        self._build_row_ops()

    def _check_axioms(self):
        A = np.array(self.add, dtype=np.int64)
        M = np.array(self.mul, dtype=np.int64)
        r = np.arange(self.q)
        ok = ((A == A.T).all() and (M == M.T).all()
              and (A[0] == r).all() and (M[1] == r).all() and (M[0] == 0).all())
        # associativity and distributivity over all triples (a, b, c)
        a, b, c = r[:, None, None], r[None, :, None], r[None, None, :]
        assoc_add = A[A[a, b], c] == A[a, A[b, c]]
        assoc_mul = M[M[a, b], c] == M[a, M[b, c]]
        distrib = M[a, A[b, c]] == A[M[a, b], M[a, c]]
        inverses = all(self.mul[a][self.inv[a]] == 1 for a in range(1, self.q))
        if not (ok and assoc_add.all() and assoc_mul.all() and distrib.all() and inverses):
            raise FieldError(f"field tables for q={self.q} fail the axioms")

    def _build_row_ops(self):
        p = self.p
        if self.k == 1:
            def axpy(x, c, y):
                return [(a - c * b) % p for a, b in zip(x, y)]

            def scale(c, y):
                return [(c * b) % p for b in y]
        else:
            sub, mul = self.sub, self.mul

            def axpy(x, c, y):
                t = mul[c]
                return [sub[a][t[b]] for a, b in zip(x, y)]

            def scale(c, y):
                t = mul[c]
                return [t[b] for b in y]
        self.axpy = axpy  # x - c*y
        self.scale = scale

    # -- scalar helpers --------------------------------------------------------
    @property
    def one(self) -> int:
        return 1

    @property
    def minus_one(self) -> int:
        return self.neg[1]

    def elements(self) -> range:
        return range(self.q)

    def units(self) -> range:
        return range(1, self.q)

    def from_int(self, n: int) -> int:
        """Image of the integer n under Z -> GF(q)."""
        r = n % self.p
        return r

    def elem_str(self, a: int) -> str:
        if self.k == 1:
            return str(a)
        ds = [(a // self.p ** i) % self.p for i in range(self.k)]
        return poly_str(ds, var="z") if a else "0"

    def describe(self) -> dict:
        d = {"q": self.q, "p": self.p, "k": self.k}
        if self.modulus is not None:
            d["modulus"] = poly_str(list(self.modulus), var="z")
        return d

    def __repr__(self) -> str:
        return f"GF({self.q})"

    def __eq__(self, other) -> bool:
        return isinstance(other, GF) and other.q == self.q

    def __hash__(self):
        return hash(("GF", self.q))


@lru_cache(maxsize=None)
def field_make(q: int) -> GF:
    return GF(q)


# -- polynomials over GF(q), coefficient tuples low to high ---------------------

def poly_trim(a) -> tuple[int, ...]:
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return tuple(a)


def poly_mul(F: GF, a, b) -> tuple[int, ...]:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            row = F.mul[x]
            for j, y in enumerate(b):
                out[i + j] = F.add[out[i + j]][row[y]]
    return poly_trim(out)


def poly_divmod(F: GF, a, b) -> tuple[tuple[int, ...], tuple[int, ...]]:
    a = list(poly_trim(a))
    b = poly_trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    db = len(b) - 1
    lead_inv = F.inv[b[-1]]
    quot = [0] * max(0, len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = F.mul[a[i]][lead_inv]
        if c:
            quot[i - db] = c
            for j in range(db + 1):
                a[i - db + j] = F.sub[a[i - db + j]][F.mul[c][b[j]]]
    return poly_trim(quot), poly_trim(a[:db])


def poly_str(coeffs, var: str = "x", F: GF | None = None) -> str:
    """Render low-to-high coefficients as e.g. ``x^2+x+1``."""
    coeffs = poly_trim(coeffs)
    if not coeffs:
        return "0"
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if not c:
            continue
        cs = F.elem_str(c) if F is not None else str(c)
        if F is not None and F.k > 1 and "+" in cs and i > 0:
            cs = f"({cs})"
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        if i == 0:
            terms.append(cs)
        elif c == 1:
            terms.append(mono)
        else:
            terms.append(f"{cs}{mono}" if F is not None and F.k > 1 else f"{cs}{mono}")
    return "+".join(terms)


def monic_divisors(d: int, lam: int, F: GF) -> list[tuple[int, ...]]:
    """All monic divisors of x^d - lam over F by trial division, sorted by (degree, coefficients)."""
    if d < 1:
        raise ValueError("d must be at least 1")
    if lam == 0 or not 0 < lam < F.q:
        raise FieldError("lambda must be a nonzero field element")
    target = tuple([F.neg[lam]] + [0] * (d - 1) + [1])
    out = []
    for deg in range(d + 1):
        for low in product(range(F.q), repeat=deg):
            cand = tuple(low) + (1,)
            _, r = poly_divmod(F, target, cand)
            if not r:
                out.append(cand)
    return out
