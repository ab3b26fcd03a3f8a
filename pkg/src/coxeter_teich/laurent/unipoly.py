"""Single-variable integer polynomials, specialization and real-root isolation.

Root isolation works over exact integers: Sturm chains are built from
sign-preserving pseudo-remainders and evaluated at dyadic rationals, so the
bisection is deterministic and free of floating-point rounding.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

from .poly import LaurentPoly


class NoRealRoot(ArithmeticError):
    pass


@dataclass(frozen=True)
class UniPoly:
    """Integer polynomial ``sum coeffs[i] * t**i`` (ascending order)."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        c = list(self.coeffs)
        while len(c) > 1 and c[-1] == 0:
            c.pop()
        if not c:
            c = [0]
        object.__setattr__(self, "coeffs", tuple(int(x) for x in c))

    @classmethod
    def from_descending(cls, coeffs: Sequence[int]) -> UniPoly:
        return cls(tuple(reversed(list(coeffs))))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1 if self.coeffs != (0,) else -1

    @property
    def leading(self) -> int:
        return self.coeffs[-1]

    def is_zero(self) -> bool:
        return self.coeffs == (0,)

    def __call__(self, t):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def derivative(self) -> UniPoly:
        return UniPoly(tuple(i * c for i, c in enumerate(self.coeffs))[1:] or (0,))

    def content(self) -> int:
        g = 0
        for c in self.coeffs:
            g = gcd(g, c)
        return g

    def primitive(self) -> UniPoly:
        g = self.content()
        if g <= 1:
            return self
        return UniPoly(tuple(c // g for c in self.coeffs))

    def __neg__(self) -> UniPoly:
        return UniPoly(tuple(-c for c in self.coeffs))

    def __str__(self) -> str:
        p = LaurentPoly(("t",), {(i,): c for i, c in enumerate(self.coeffs)})
        return str(p)


def specialize(p: LaurentPoly, alpha: Sequence[int]) -> UniPoly:
    """Replace every monomial ``x^e`` by ``t^(alpha·e)`` and clear the
    negative powers of ``t``."""
    if len(alpha) != p.nvars:
        raise ValueError(f"alpha needs {p.nvars} entries, got {len(alpha)}")
    coeffs: dict[int, int] = {}
    for e, c in p.terms.items():
        k = sum(a * x for a, x in zip(alpha, e))
        coeffs[k] = coeffs.get(k, 0) + c
    coeffs = {k: c for k, c in coeffs.items() if c}
    if not coeffs:
        return UniPoly((0,))
    lo = min(coeffs)
    hi = max(coeffs)
    return UniPoly(tuple(coeffs.get(k, 0) for k in range(lo, hi + 1)))


# ---------------------------------------------------------------------------
# exact univariate helpers
# ---------------------------------------------------------------------------


def _prem(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    """Pseudo-remainder scaled by a positive factor, so signs are preserved."""
    a = list(a)
    lb = b[-1]
    db = len(b) - 1
    mult = abs(lb)
    sgn = 1 if lb > 0 else -1
    while len(a) - 1 >= db and any(a):
        la = a[-1]
        shift = len(a) - 1 - db
        # a <- |lb| * a - sign(lb) * la * t^shift * b
        a = [mult * x for x in a]
        for i, y in enumerate(b):
            a[i + shift] -= sgn * la * y
        a.pop()
        while len(a) > 1 and a[-1] == 0:
            a.pop()
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    return tuple(a) if a else (0,)


def _primitive(c: tuple[int, ...]) -> tuple[int, ...]:
    g = 0
    for x in c:
        g = gcd(g, x)
    return tuple(x // g for x in c) if g > 1 else c


def poly_gcd(p: UniPoly, q: UniPoly) -> UniPoly:
    """Primitive gcd over Z[t] (content ignored), positive leading coefficient."""
    a, b = p.primitive().coeffs, q.primitive().coeffs
    if b == (0,):
        a, b = b, a
    while b != (0,) and len(b) > 0:
        r = _prem(a, b)
        a, b = b, (_primitive(r) if r != (0,) else (0,))
    g = UniPoly(a).primitive()
    return -g if g.leading < 0 else g


def poly_exact_quotient(p: UniPoly, q: UniPoly) -> UniPoly:
    """Quotient of an exact division in Q[t] with integral result checked."""
    num = [Fraction(c) for c in p.coeffs]
    den = q.coeffs
    dq = len(den) - 1
    out = [Fraction(0)] * max(len(num) - dq, 1)
    while len(num) - 1 >= dq and any(num):
        f = num[-1] / den[-1]
        s = len(num) - 1 - dq
        out[s] = f
        for i, y in enumerate(den):
            num[i + s] -= f * y
        num.pop()
    if any(num):
        raise ArithmeticError("inexact polynomial division")
    return UniPoly(tuple(int(x) if x.denominator == 1 else _raise() for x in out))


def _raise():
    raise ArithmeticError("non-integral quotient")


def squarefree_part(p: UniPoly) -> UniPoly:
    d = p.derivative()
    if d.is_zero():
        return p.primitive()
    g = poly_gcd(p, d)
    if g.degree <= 0:
        return p.primitive()
    # Gauss's lemma: the cofactor of a primitive divisor is integral
    return poly_exact_quotient(p, g).primitive()


def sturm_chain(p: UniPoly) -> list[tuple[int, ...]]:
    chain = [p.coeffs, p.derivative().coeffs]
    while chain[-1] != (0,) and len(chain[-1]) > 1:
        r = _prem(chain[-2], chain[-1])
        if r == (0,):
            break
        chain.append(_primitive(tuple(-x for x in r)))
    return chain


def _sign_at(c: tuple[int, ...], x: Fraction) -> int:
    # sign of b^n * p(a/b), b > 0, evaluated in integers
    a, b = x.numerator, x.denominator
    n = len(c) - 1
    total = 0
    apow = 1
    bpow = b**n
    for k in range(n + 1):
        total += c[k] * apow * bpow
        apow *= a
        if k < n:
            bpow //= b
    return (total > 0) - (total < 0)


def _variations(chain: list[tuple[int, ...]], x: Fraction) -> int:
    signs = [s for s in (_sign_at(c, x) for c in chain) if s]
    return sum(1 for s, t in zip(signs, signs[1:]) if s != t)


def count_real_roots(p: UniPoly, lo: Fraction, hi: Fraction) -> int:
    """Number of distinct real roots in ``(lo, hi]``."""
    sf = squarefree_part(p)
    chain = sturm_chain(sf)
    return _variations(chain, Fraction(lo)) - _variations(chain, Fraction(hi))


def root_bound(p: UniPoly) -> Fraction:
    """Cauchy bound: every root has absolute value below the returned value."""
    lead = abs(p.leading)
    return 1 + Fraction(max(abs(c) for c in p.coeffs[:-1]), lead) if p.degree > 0 else Fraction(1)


def largest_real_root(p: UniPoly, tol: float = 1e-10) -> float:
    """Largest real root of ``p`` located to within ``tol`` by Sturm bisection."""
    if p.degree < 1:
        raise ValueError("polynomial must have degree at least 1")
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    sf = squarefree_part(p)
    chain = sturm_chain(sf)
    hi = root_bound(sf)
    lo = -hi
    if _variations(chain, lo) - _variations(chain, hi) == 0:
        raise NoRealRoot(f"{p} has no real roots")
    # invariant: the largest root lies in (lo, hi]
    v_hi = _variations(chain, hi)
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if _variations(chain, mid) - v_hi >= 1:
            lo = mid
        else:
            hi = mid
            v_hi = _variations(chain, hi)
    return float((lo + hi) / 2)


def int_charpoly(rows: Sequence[Sequence[int]]) -> UniPoly:
    """``det(tI - A)`` of an integer matrix by Berkowitz's division-free recurrence."""
    n = len(rows)
    vect = [1]  # descending coefficients for the leading k x k block
    for k in range(n):
        col = [1, -rows[k][k]]
        v = [rows[i][k] for i in range(k)]
        for _ in range(k):
            col.append(-sum(rows[k][i] * v[i] for i in range(k)))
            v = [sum(rows[i][j] * v[j] for j in range(k)) for i in range(k)]
        vect = [
            sum(col[i - j] * vect[j] for j in range(len(vect)) if 0 <= i - j < len(col))
            for i in range(k + 2)
        ]
    return UniPoly.from_descending(vect)
