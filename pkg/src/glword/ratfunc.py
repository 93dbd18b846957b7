"""Exact rational functions in one indeterminate Q (standing for q^N).

Coefficients are :class:`fractions.Fraction`.  The canonical form has coprime numerator
and denominator with a monic denominator, so equality is structural.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import PoleError

__all__ = ["RatFunc", "LaurentTail", "indep_poly", "rf_eval", "laurent_at_infinity", "frac_str"]

Poly = tuple  # Fractions, low to high degree, no trailing zeros


def _trim(a) -> Poly:
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return tuple(Fraction(x) for x in a)


def p_add(a: Poly, b: Poly) -> Poly:
    n = max(len(a), len(b))
    return _trim((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n))


def p_neg(a: Poly) -> Poly:
    return tuple(-x for x in a)


def p_mul(a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return ()
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def p_divmod(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    db = len(b) - 1
    quot = [Fraction(0)] * max(0, len(a) - db)
    lead = b[-1]
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i] / lead
        if c:
            quot[i - db] = c
            for j in range(db + 1):
                a[i - db + j] -= c * b[j]
    return _trim(quot), _trim(a[:db])


def p_monic(a: Poly) -> Poly:
    return tuple(x / a[-1] for x in a) if a else a


def p_gcd(a: Poly, b: Poly) -> Poly:
    while b:
        a, b = b, p_divmod(a, b)[1]
    return p_monic(a)


def p_eval(a: Poly, x) -> Fraction:
    acc = Fraction(0)
    for c in reversed(a):
        acc = acc * x + c
    return acc


def frac_str(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def p_str(a: Poly, var: str = "Q") -> str:
    if not a:
        return "0"
    out = ""
    for i in range(len(a) - 1, -1, -1):
        c = a[i]
        if not c:
            continue
        mag = abs(c)
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        body = frac_str(mag) if (mono == "" or mag != 1) else ""
        body = body + mono if body and mono else (body or mono)
        if not out:
            out = ("-" if c < 0 else "") + body
        else:
            out += (" - " if c < 0 else " + ") + body
    return out


class RatFunc:
    __slots__ = ("num", "den")

    def __init__(self, num=(0,), den=(1,), _canonical: bool = False):
        num, den = _trim(num), _trim(den)
        if not den:
            raise PoleError("zero denominator")
        if not _canonical:
            if not num:
                den = (Fraction(1),)
            else:
                g = p_gcd(num, den)
                if len(g) > 1:
                    num, den = p_divmod(num, g)[0], p_divmod(den, g)[0]
                lead = den[-1]
                num = tuple(x / lead for x in num)
                den = tuple(x / lead for x in den)
        self.num: Poly = num
        self.den: Poly = den

    @classmethod
    def const(cls, c) -> "RatFunc":
        return cls((Fraction(c),), (Fraction(1),), _canonical=True)

    @classmethod
    def Q(cls) -> "RatFunc":
        return cls((0, 1), (1,), _canonical=True)

    @staticmethod
    def _lift(x) -> "RatFunc":
        return x if isinstance(x, RatFunc) else RatFunc.const(x)

    def __add__(self, other):
        o = self._lift(other)
        if self.den == o.den:
            return RatFunc(p_add(self.num, o.num), self.den)
        return RatFunc(p_add(p_mul(self.num, o.den), p_mul(o.num, self.den)), p_mul(self.den, o.den))

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(p_neg(self.num), self.den, _canonical=True)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        o = self._lift(other)
        return RatFunc(p_mul(self.num, o.num), p_mul(self.den, o.den))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if not o.num:
            raise PoleError("division by the zero function")
        return RatFunc(p_mul(self.num, o.den), p_mul(self.den, o.num))

    def __rtruediv__(self, other):
        return self._lift(other) / self

    def __pow__(self, k: int):
        if k < 0:
            return RatFunc.const(1) / (self ** -k)
        out = RatFunc.const(1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, RatFunc):
            try:
                other = RatFunc.const(Fraction(other))
            except (TypeError, ValueError):
                return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def is_constant(self) -> bool:
        return len(self.num) <= 1 and len(self.den) == 1

    def __call__(self, x) -> Fraction:
        d = p_eval(self.den, x)
        if d == 0:
            raise PoleError(f"pole at Q = {x}")
        return p_eval(self.num, x) / d

    def laurent(self, K: int = 3) -> "LaurentTail":
        return laurent_at_infinity(self, K)

    def to_json(self, q: int | None = None) -> dict:
        d = {"num": [frac_str(c) for c in self.num] or ["0"], "den": [frac_str(c) for c in self.den], "var": "Q"}
        if q is not None:
            d["q"] = q
        return d

    @classmethod
    def from_json(cls, d: dict) -> "RatFunc":
        return cls([Fraction(x) for x in d["num"]], [Fraction(x) for x in d["den"]])

    def __str__(self) -> str:
        if len(self.den) == 1:
            return p_str(self.num)
        return f"({p_str(self.num)})/({p_str(self.den)})"

    def __repr__(self) -> str:
        return f"RatFunc({self})"


@lru_cache(maxsize=None)
def indep_poly(h: int, q: int) -> RatFunc:
    """prod_{i<h} (Q - q^i): the number of independent h-tuples in a space of size Q."""
    if h < 0:
        raise ValueError("h must be non-negative")
    p: Poly = (Fraction(1),)
    for i in range(h):
        p = p_mul(p, (Fraction(-(q ** i)), Fraction(1)))
    return RatFunc(p, (1,), _canonical=True)


def rf_eval(f: RatFunc, q: int, N: int) -> Fraction:
    return f(Fraction(q) ** N)


@dataclass(frozen=True)
class LaurentTail:
    """f = sum_{e>0} poly[e] Q^e + sum_{j=0..K} coeffs[j] Q^-j + O(Q^-(K+1))."""

    poly: dict
    coeffs: tuple

    @property
    def K(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, j: int) -> Fraction:
        return self.coeffs[j]

    def to_json(self) -> dict:
        return {"poly": {str(e): frac_str(c) for e, c in sorted(self.poly.items())},
                "coeffs": [frac_str(c) for c in self.coeffs]}

    def as_ratfunc(self) -> RatFunc:
        out = RatFunc.const(0)
        for e, c in self.poly.items():
            out = out + RatFunc.const(c) * _qpow(e)
        for j, c in enumerate(self.coeffs):
            out = out + RatFunc.const(c) / _qpow(j)
        return out

    def pretty(self, var: str = "q^N") -> str:
        """Render like ``2 + 4/q^N + O(1/(q^N)^2)``."""
        def power(e: int) -> str:
            return var if e == 1 else f"({var})^{e}"

        parts: list[tuple[Fraction, str, bool]] = []
        for e in sorted(self.poly, reverse=True):
            parts.append((self.poly[e], power(e), False))
        for j, c in enumerate(self.coeffs):
            if c != 0:
                parts.append((c, power(j) if j else "", True))
        out = ""
        for c, mono, below in parts:
            mag = frac_str(abs(c))
            if not mono:
                body = mag
            elif below:
                body = f"{mag}/{mono}"
            else:
                body = mono if abs(c) == 1 else f"{mag}*{mono}"
            if not out:
                out = ("-" if c < 0 else "") + body
            else:
                out += (" - " if c < 0 else " + ") + body
        return (out or "0") + f" + O(1/{power(self.K + 1)})"


def _qpow(e: int) -> RatFunc:
    return RatFunc((0,) * e + (1,), (1,), _canonical=True)


def laurent_at_infinity(f: RatFunc, K: int = 3) -> LaurentTail:
    """Expansion of f in descending powers of Q, up to Q^-K, by exact long division."""
    if K < 0:
        raise ValueError("K must be non-negative")
    if not f.num:
        return LaurentTail({}, tuple(Fraction(0) for _ in range(K + 1)))
    dp, dd = len(f.num) - 1, len(f.den) - 1
    shift = dp - dd
    P = list(reversed(f.num))  # P[i] = coefficient of Q^(dp - i)
    D = list(reversed(f.den))  # D[0] = 1
    count = shift + K + 1
    s: list[Fraction] = []
    for i in range(max(count, 0)):
        acc = P[i] if i < len(P) else Fraction(0)
        for j in range(1, min(i, dd) + 1):
            acc -= D[j] * s[i - j]
        s.append(acc)  # D[0] == 1
    poly = {shift - i: s[i] for i in range(len(s)) if shift - i > 0 and s[i] != 0}
    coeffs = tuple(s[shift + j] if 0 <= shift + j < len(s) else Fraction(0) for j in range(K + 1))
    return LaurentTail(poly, coeffs)
