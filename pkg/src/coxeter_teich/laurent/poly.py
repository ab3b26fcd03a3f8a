"""Multivariate Laurent polynomials with integer coefficients.

A :class:`LaurentPoly` is a sparse map from integer exponent vectors to
nonzero integer coefficients over a fixed tuple of variable names.  Terms are
ordered graded-lexicographically (total degree first, then lex in the variable
order) for printing and for the leading term used in exact division.
"""

from __future__ import annotations

import heapq
import re
from itertools import product
from typing import Iterable, Mapping, Sequence

Exps = tuple[int, ...]


class NonExactDivision(ArithmeticError):
    """Raised when a claimed exact quotient leaves a nonzero remainder."""


def _grlex_key(e: Exps) -> tuple[int, Exps]:
    return (sum(e), e)


class LaurentPoly:
    __slots__ = ("variables", "terms", "_hash")

    def __init__(self, variables: Sequence[str], terms: Mapping[Exps, int] | None = None):
        self.variables = tuple(variables)
        n = len(self.variables)
        clean: dict[Exps, int] = {}
        if terms:
            for e, c in terms.items():
                if c:
                    if len(e) != n:
                        raise ValueError(f"exponent {e} does not match variables {self.variables}")
                    clean[tuple(e)] = int(c)
        self.terms = clean
        self._hash = None

    # -- constructors -------------------------------------------------------

    @classmethod
    def _raw(cls, variables: tuple[str, ...], terms: dict[Exps, int]) -> LaurentPoly:
        # trusted fast path: terms already clean
        p = object.__new__(cls)
        p.variables = variables
        p.terms = terms
        p._hash = None
        return p

    @classmethod
    def zero(cls, variables: Sequence[str]) -> LaurentPoly:
        return cls._raw(tuple(variables), {})

    @classmethod
    def constant(cls, variables: Sequence[str], c: int) -> LaurentPoly:
        variables = tuple(variables)
        return cls._raw(variables, {(0,) * len(variables): int(c)} if c else {})

    @classmethod
    def monomial(cls, variables: Sequence[str], exps: Sequence[int], coeff: int = 1) -> LaurentPoly:
        variables = tuple(variables)
        return cls._raw(variables, {tuple(int(e) for e in exps): int(coeff)} if coeff else {})

    @classmethod
    def var(cls, variables: Sequence[str], name: str, power: int = 1) -> LaurentPoly:
        variables = tuple(variables)
        e = [0] * len(variables)
        e[variables.index(name)] = power
        return cls._raw(variables, {tuple(e): 1})

    # -- basic queries ------------------------------------------------------

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def is_zero(self) -> bool:
        return not self.terms

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_value(self) -> int:
        if not self.is_constant():
            raise ValueError("not a constant polynomial")
        return next(iter(self.terms.values()), 0)

    def sorted_terms(self, descending: bool = True) -> list[tuple[Exps, int]]:
        return sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]), reverse=descending)

    def leading_term(self) -> tuple[Exps, int]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self.terms, key=_grlex_key)
        return e, self.terms[e]

    def min_exponents(self) -> Exps:
        if not self.terms:
            return (0,) * self.nvars
        return tuple(map(min, zip(*self.terms)))

    def max_exponents(self) -> Exps:
        if not self.terms:
            return (0,) * self.nvars
        return tuple(map(max, zip(*self.terms)))

    def degree(self, name: str) -> int:
        i = self.variables.index(name)
        return max(e[i] for e in self.terms) if self.terms else 0

    def min_degree(self, name: str) -> int:
        i = self.variables.index(name)
        return min(e[i] for e in self.terms) if self.terms else 0

    def content(self) -> int:
        from math import gcd

        g = 0
        for c in self.terms.values():
            g = gcd(g, c)
        return g

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> LaurentPoly:
        if isinstance(other, LaurentPoly):
            if other.variables != self.variables:
                raise ValueError(f"variable mismatch: {self.variables} vs {other.variables}")
            return other
        if isinstance(other, int):
            return LaurentPoly.constant(self.variables, other)
        return NotImplemented

    def __add__(self, other) -> LaurentPoly:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if len(other.terms) > len(self.terms):
            a, b = other, self
        else:
            a, b = self, other
        out = dict(a.terms)
        for e, c in b.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return LaurentPoly._raw(self.variables, out)

    __radd__ = __add__

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly._raw(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> LaurentPoly:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) - c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return LaurentPoly._raw(self.variables, out)

    def __rsub__(self, other) -> LaurentPoly:
        return (-self) + other

    def __mul__(self, other) -> LaurentPoly:
        if isinstance(other, int):
            if not other:
                return LaurentPoly.zero(self.variables)
            return LaurentPoly._raw(self.variables, {e: c * other for e, c in self.terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self.terms or not other.terms:
            return LaurentPoly.zero(self.variables)
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        out: dict[Exps, int] = {}
        get = out.get
        bitems = list(b.items())
        if self.nvars == 2:
            for (e0, e1), c in a.items():
                for (f0, f1), d in bitems:
                    k = (e0 + f0, e1 + f1)
                    out[k] = get(k, 0) + c * d
        else:
            for e, c in a.items():
                for f, d in bitems:
                    k = tuple([x + y for x, y in zip(e, f)])
                    out[k] = get(k, 0) + c * d
        return LaurentPoly._raw(self.variables, {k: v for k, v in out.items() if v})

    __rmul__ = __mul__

    def __pow__(self, n: int) -> LaurentPoly:
        if n < 0:
            if not self.is_monomial() or abs(next(iter(self.terms.values()))) != 1:
                raise ValueError("negative powers only exist for unit monomials")
            (e, c), = self.terms.items()
            return LaurentPoly._raw(self.variables, {tuple(x * n for x in e): c ** -n})
        result = LaurentPoly.constant(self.variables, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def shift(self, exps: Sequence[int]) -> LaurentPoly:
        """Multiply by the monomial with exponent vector ``exps``."""
        if not any(exps):
            return self
        s = tuple(exps)
        return LaurentPoly._raw(
            self.variables, {tuple(a + b for a, b in zip(e, s)): c for e, c in self.terms.items()}
        )

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            return self.is_constant() and self.constant_value() == other
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.variables == other.variables and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.variables, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self.terms)

    # -- evaluation and variable changes -------------------------------------

    def evaluate(self, values: Mapping[str, object]) -> object:
        """Evaluate at numeric values for every variable (ints, Fractions or floats)."""
        vals = [values[v] for v in self.variables]
        total = 0
        for e, c in self.terms.items():
            t = c
            for x, k in zip(vals, e):
                if k:
                    t = t * x**k
            total = total + t
        return total

    def partial_evaluate(self, values: Mapping[str, int]) -> LaurentPoly:
        """Set some variables to integer values (only ±1 keeps integrality for
        negative exponents); the remaining variables are kept."""
        keep = [i for i, v in enumerate(self.variables) if v not in values]
        fixed = [(i, values[v]) for i, v in enumerate(self.variables) if v in values]
        out: dict[Exps, int] = {}
        for e, c in self.terms.items():
            for i, x in fixed:
                k = e[i]
                if k >= 0:
                    c = c * x**k
                elif x in (1, -1):
                    c = c * x ** (-k)
                else:
                    raise ValueError("negative exponent at a non-unit integer value")
            key = tuple(e[i] for i in keep)
            out[key] = out.get(key, 0) + c
        return LaurentPoly(tuple(self.variables[i] for i in keep), out)

    def rename(self, names: Sequence[str]) -> LaurentPoly:
        names = tuple(names)
        if len(names) != self.nvars:
            raise ValueError("rename needs one name per variable")
        return LaurentPoly._raw(names, dict(self.terms))

    def embed(self, variables: Sequence[str]) -> LaurentPoly:
        """Re-express over a larger (or reordered) variable tuple."""
        variables = tuple(variables)
        idx = [variables.index(v) for v in self.variables]
        out = {}
        for e, c in self.terms.items():
            f = [0] * len(variables)
            for i, k in zip(idx, e):
                f[i] = k
            out[tuple(f)] = c
        return LaurentPoly._raw(variables, out)

    # -- text ---------------------------------------------------------------

    def __str__(self) -> str:
        return format_text(self)

    def __repr__(self) -> str:
        return f"LaurentPoly({self.variables!r}, '{format_text(self)}')"


# ---------------------------------------------------------------------------
# exact division
# ---------------------------------------------------------------------------


def _poly_exact_div(num: dict[Exps, int], den: dict[Exps, int], nvars: int) -> dict[Exps, int]:
    """Exact division of ordinary polynomials (nonnegative exponents, neither
    divisible by a variable) by leading-term elimination under graded lex."""
    if len(den) == 1:
        (d_e, d_c), = den.items()
        out = {}
        for e, c in num.items():
            q, r = divmod(c, d_c)
            if r:
                raise NonExactDivision("coefficient not divisible")
            out[tuple(a - b for a, b in zip(e, d_e))] = q
        return out

    lt_e = max(den, key=_grlex_key)
    lt_c = den[lt_e]
    lt_deg = sum(lt_e)
    rest = [(e, c) for e, c in den.items() if e != lt_e]
    rem = dict(num)
    # max-heap on graded lex via negated keys
    heap = [(-sum(e), tuple(-x for x in e)) for e in rem]
    heapq.heapify(heap)
    quot: dict[Exps, int] = {}
    while heap:
        nd, ne = heapq.heappop(heap)
        e = tuple(-x for x in ne)
        c = rem.pop(e, 0)
        if not c:
            continue
        # skip duplicate heap entries for the same key
        while heap and heap[0] == (nd, ne):
            heapq.heappop(heap)
        q_e = tuple(a - b for a, b in zip(e, lt_e))
        if min(q_e) < 0 or -nd - lt_deg < 0:
            raise NonExactDivision(f"leading term {e} not divisible by {lt_e}")
        q_c, r = divmod(c, lt_c)
        if r:
            raise NonExactDivision("leading coefficient not divisible")
        quot[q_e] = q_c
        for f, d in rest:
            k = tuple(a + b for a, b in zip(q_e, f))
            v = rem.get(k, 0) - q_c * d
            if v:
                if k not in rem:
                    heapq.heappush(heap, (-sum(k), tuple(-x for x in k)))
                rem[k] = v
            else:
                rem.pop(k, None)
    return quot


def exact_div(num: LaurentPoly, den: LaurentPoly) -> LaurentPoly:
    """Return ``q`` with ``q * den == num``; raise :class:`NonExactDivision` otherwise."""
    if den.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if num.variables != den.variables:
        raise ValueError("variable mismatch")
    if num.is_zero():
        return LaurentPoly.zero(num.variables)
    mn = num.min_exponents()
    md = den.min_exponents()
    n_terms = {tuple(a - b for a, b in zip(e, mn)): c for e, c in num.terms.items()}
    d_terms = {tuple(a - b for a, b in zip(e, md)): c for e, c in den.terms.items()}
    q = _poly_exact_div(n_terms, d_terms, num.nvars)
    shift = tuple(a - b for a, b in zip(mn, md))
    return LaurentPoly._raw(num.variables, {tuple(a + b for a, b in zip(e, shift)): c for e, c in q.items()})


# ---------------------------------------------------------------------------
# canonical forms and unit equivalence
# ---------------------------------------------------------------------------


def normalize(p: LaurentPoly) -> LaurentPoly:
    """Canonical representative of ``p`` up to multiplication by ±monomials.

    Exponents are shifted so every variable has minimum exponent 0, then the
    sign is fixed so the graded-lex leading coefficient is positive.
    """
    if p.is_zero():
        raise ValueError("cannot normalize the zero polynomial")
    m = p.min_exponents()
    q = p.shift(tuple(-x for x in m))
    if q.leading_term()[1] < 0:
        q = -q
    return q


def invert_variables(p: LaurentPoly, names: Iterable[str]) -> LaurentPoly:
    """Substitute ``v -> v^-1`` for every variable in ``names``."""
    flip = [v in set(names) for v in p.variables]
    return LaurentPoly._raw(
        p.variables,
        {tuple(-x if f else x for x, f in zip(e, flip)): c for e, c in p.terms.items()},
    )


def equivalent_up_to_units(
    p: LaurentPoly,
    q: LaurentPoly,
    allow_inversion: bool = False,
    invertible: Iterable[str] | None = None,
) -> bool:
    """Test ``p ≐ q`` up to ±monomials.

    With ``allow_inversion`` every pattern of inverting the ``invertible``
    variables (default: all variables except ``u``) is tried on ``q``.
    """
    if p.variables != q.variables:
        raise ValueError("variable mismatch")
    if p.is_zero() or q.is_zero():
        return p.is_zero() and q.is_zero()
    target = normalize(p)
    if not allow_inversion:
        return normalize(q) == target
    if invertible is None:
        invertible = [v for v in q.variables if v != "u"]
    invertible = list(invertible)
    for mask in product((False, True), repeat=len(invertible)):
        names = [v for v, m in zip(invertible, mask) if m]
        if normalize(invert_variables(q, names)) == target:
            return True
    return False


# ---------------------------------------------------------------------------
# monomial substitution
# ---------------------------------------------------------------------------


def _int_det(rows: list[list[int]]) -> int:
    from fractions import Fraction

    n = len(rows)
    m = [[Fraction(x) for x in r] for r in rows]
    det = Fraction(1)
    for k in range(n):
        piv = next((i for i in range(k, n) if m[i][k]), None)
        if piv is None:
            return 0
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            det = -det
        det *= m[k][k]
        for i in range(k + 1, n):
            f = m[i][k] / m[k][k]
            if f:
                for j in range(k, n):
                    m[i][j] -= f * m[k][j]
    return int(det)


class SubstitutionError(ValueError):
    pass


def substitute(
    p: LaurentPoly,
    mapping: Mapping[str, LaurentPoly],
    new_variables: Sequence[str] | None = None,
    check_unimodular: bool = True,
) -> LaurentPoly:
    """Apply a monomial change of variables ``v -> mapping[v]``.

    Every image must be a monomial with coefficient 1 over ``new_variables``;
    unmapped variables are sent to themselves (they must then appear in
    ``new_variables``).  The exponent matrix must be unimodular unless
    ``check_unimodular`` is off.
    """
    if new_variables is None:
        imgs = [m for m in mapping.values()]
        new_variables = imgs[0].variables if imgs else p.variables
    new_variables = tuple(new_variables)
    rows = []
    for v in p.variables:
        if v in mapping:
            img = mapping[v]
            if img.variables != new_variables:
                img = img.embed(new_variables)
        elif v in new_variables:
            img = LaurentPoly.var(new_variables, v)
        else:
            raise SubstitutionError(f"no image for variable {v!r}")
        if not img.is_monomial() or next(iter(img.terms.values())) != 1:
            raise SubstitutionError(f"image of {v!r} is not a monomial: {img}")
        rows.append(next(iter(img.terms)))
    if check_unimodular:
        if len(rows) != len(new_variables) or abs(_int_det([list(r) for r in rows])) != 1:
            raise SubstitutionError("substitution is not unimodular")
    out: dict[Exps, int] = {}
    m = len(new_variables)
    for e, c in p.terms.items():
        f = [0] * m
        for k, r in zip(e, rows):
            if k:
                for j in range(m):
                    f[j] += k * r[j]
        key = tuple(f)
        out[key] = out.get(key, 0) + c
    return LaurentPoly(new_variables, out)


def inverse_substitution(
    old_variables: Sequence[str], mapping: Mapping[str, LaurentPoly], new_variables: Sequence[str]
) -> dict[str, LaurentPoly]:
    """Inverse of a unimodular monomial map, as a map new -> old."""
    from fractions import Fraction

    old_variables = tuple(old_variables)
    new_variables = tuple(new_variables)
    rows = []
    for v in old_variables:
        img = mapping[v] if v in mapping else LaurentPoly.var(new_variables, v)
        rows.append(list(next(iter(img.embed(new_variables).terms))))
    n = len(rows)
    # invert the exponent matrix over Q (it is unimodular so the inverse is integral)
    aug = [[Fraction(x) for x in r] + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(rows)]
    for k in range(n):
        piv = next(i for i in range(k, n) if aug[i][k])
        aug[k], aug[piv] = aug[piv], aug[k]
        pv = aug[k][k]
        aug[k] = [x / pv for x in aug[k]]
        for i in range(n):
            if i != k and aug[i][k]:
                f = aug[i][k]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[k])]
    inv = [[int(x) for x in r[n:]] for r in aug]
    # exponents transform as row vectors (f = e R), so new variable j is row j of R^-1
    return {w: LaurentPoly.monomial(old_variables, inv[j]) for j, w in enumerate(new_variables)}


# ---------------------------------------------------------------------------
# text rendering and parsing
# ---------------------------------------------------------------------------


def _monomial_text(variables: Sequence[str], e: Exps) -> str:
    parts = []
    for v, k in zip(variables, e):
        if k == 1:
            parts.append(v)
        elif k:
            parts.append(f"{v}^{k}")
    return "*".join(parts)


def format_text(p: LaurentPoly) -> str:
    """Canonical rendering: graded-lex descending, explicit ``*`` and ``^``."""
    if p.is_zero():
        return "0"
    out = []
    for i, (e, c) in enumerate(p.sorted_terms()):
        mono = _monomial_text(p.variables, e)
        a = abs(c)
        if not mono:
            body = str(a)
        elif a == 1:
            body = mono
        else:
            body = f"{a}*{mono}"
        if i == 0:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append((" - " if c < 0 else " + ") + body)
    return "".join(out)


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*^()]))")


def _tokenize(text: str) -> list[str]:
    pos = 0
    toks = []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse polynomial near {text[pos:pos + 10]!r}")
        toks.append(m.group(1) or m.group(2) or ("^" if m.group(3) == "**" else m.group(3)))
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
    return toks


def parse_poly(text: str, variables: Sequence[str] | None = None) -> LaurentPoly:
    """Parse ``+ - * ^`` expressions with integer exponents (possibly negative)
    and parentheses, e.g. ``(x0*u - 2*x0)^2 - y0*y1^-1``.

    When ``variables`` is omitted, names are taken in order of first
    appearance.
    """
    toks = _tokenize(text)
    if variables is None:
        seen = []
        for t in toks:
            if t[0].isalpha() or t[0] == "_":
                if t not in seen:
                    seen.append(t)
        variables = seen
    variables = tuple(variables)
    pos = 0

    def peek():
        return toks[pos] if pos < len(toks) else None

    def take(expected=None):
        nonlocal pos
        t = peek()
        if t is None or (expected is not None and t != expected):
            raise ValueError(f"expected {expected!r}, got {t!r} in {text!r}")
        pos += 1
        return t

    def expr():
        sign = 1
        if peek() in ("+", "-"):
            sign = -1 if take() == "-" else 1
        acc = term() * sign
        while peek() in ("+", "-"):
            op = take()
            t = term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term():
        acc = factor()
        while peek() == "*":
            take()
            acc = acc * factor()
        return acc

    def exponent() -> int:
        sign = 1
        if peek() == "(":
            take("(")
            k = exponent()
            take(")")
            return k
        if peek() in ("+", "-"):
            sign = -1 if take() == "-" else 1
        t = take()
        if not t.isdigit():
            raise ValueError(f"bad exponent {t!r}")
        return sign * int(t)

    def factor():
        t = peek()
        if t == "(":
            take("(")
            base = expr()
            take(")")
        elif t is not None and t.isdigit():
            base = LaurentPoly.constant(variables, int(take()))
        elif t is not None and (t[0].isalpha() or t[0] == "_"):
            name = take()
            if name not in variables:
                raise ValueError(f"unknown variable {name!r}")
            base = LaurentPoly.var(variables, name)
        else:
            raise ValueError(f"unexpected token {t!r} in {text!r}")
        if peek() == "^":
            take()
            base = base ** exponent()
        return base

    result = expr()
    if pos != len(toks):
        raise ValueError(f"trailing input in {text!r}")
    return result
