"""Square matrices over Laurent polynomials and their determinants."""

from __future__ import annotations

from itertools import permutations
from typing import Callable, Sequence

from .poly import LaurentPoly, NonExactDivision, exact_div


class LaurentMatrix:
    """Immutable square matrix with :class:`LaurentPoly` entries sharing one
    variable context."""

    __slots__ = ("variables", "rows")

    def __init__(self, variables: Sequence[str], rows: Sequence[Sequence[LaurentPoly | int]]):
        self.variables = tuple(variables)
        n = len(rows)
        out = []
        for r in rows:
            if len(r) != n:
                raise ValueError("LaurentMatrix must be square")
            row = []
            for x in r:
                if isinstance(x, int):
                    x = LaurentPoly.constant(self.variables, x)
                elif x.variables != self.variables:
                    raise ValueError("entry variables differ from matrix variables")
                row.append(x)
            out.append(tuple(row))
        self.rows = tuple(out)

    @property
    def n(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij: tuple[int, int]) -> LaurentPoly:
        i, j = ij
        return self.rows[i][j]

    @classmethod
    def identity(cls, variables: Sequence[str], n: int) -> LaurentMatrix:
        return cls.diagonal(variables, [1] * n)

    @classmethod
    def diagonal(cls, variables: Sequence[str], entries: Sequence[LaurentPoly | int]) -> LaurentMatrix:
        n = len(entries)
        zero = LaurentPoly.zero(variables)
        rows = [[entries[i] if i == j else zero for j in range(n)] for i in range(n)]
        return cls(variables, rows)

    @classmethod
    def from_ints(cls, variables: Sequence[str], rows: Sequence[Sequence[int]]) -> LaurentMatrix:
        return cls(variables, [[int(x) for x in r] for r in rows])

    def __matmul__(self, other: LaurentMatrix) -> LaurentMatrix:
        if self.variables != other.variables or self.n != other.n:
            raise ValueError("incompatible matrices")
        n = self.n
        zero = LaurentPoly.zero(self.variables)
        cols = list(zip(*other.rows))
        out = []
        for r in self.rows:
            nz = [(k, a) for k, a in enumerate(r) if a]
            row = []
            for c in cols:
                acc = zero
                for k, a in nz:
                    b = c[k]
                    if b:
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return LaurentMatrix(self.variables, out)

    def __add__(self, other: LaurentMatrix) -> LaurentMatrix:
        return LaurentMatrix(
            self.variables, [[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)]
        )

    def __sub__(self, other: LaurentMatrix) -> LaurentMatrix:
        return LaurentMatrix(
            self.variables, [[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)]
        )

    def scale(self, c: LaurentPoly | int) -> LaurentMatrix:
        return LaurentMatrix(self.variables, [[a * c for a in r] for r in self.rows])

    def map(self, f: Callable[[LaurentPoly], LaurentPoly], variables: Sequence[str] | None = None) -> LaurentMatrix:
        return LaurentMatrix(variables or self.variables, [[f(a) for a in r] for r in self.rows])

    def embed(self, variables: Sequence[str]) -> LaurentMatrix:
        return self.map(lambda a: a.embed(variables), variables)

    def is_diagonal(self) -> bool:
        return all(not a for i, r in enumerate(self.rows) for j, a in enumerate(r) if i != j)

    def diagonal_entries(self) -> list[LaurentPoly]:
        return [self.rows[i][i] for i in range(self.n)]

    def specialize_ones(self, names: Sequence[str] | None = None) -> list[list[int]]:
        """Integer matrix obtained by setting the given variables (default:
        all) to 1; every variable must be set."""
        names = self.variables if names is None else names
        if set(names) != set(self.variables):
            raise ValueError("every variable must be specialized to obtain an integer matrix")
        return [[sum(a.terms.values()) for a in r] for r in self.rows]

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentMatrix):
            return NotImplemented
        return self.variables == other.variables and self.rows == other.rows

    def __hash__(self) -> int:
        return hash((self.variables, self.rows))

    def __repr__(self) -> str:
        body = "\n".join("  [" + ", ".join(str(a) for a in r) + "]" for r in self.rows)
        return f"LaurentMatrix({self.variables!r},\n{body})"


def char_matrix(m: LaurentMatrix, var: str = "u") -> LaurentMatrix:
    """``var*I - M`` over the variable context of ``m`` (which must contain ``var``)."""
    u = LaurentPoly.var(m.variables, var)
    n = m.n
    return LaurentMatrix(
        m.variables, [[(u if i == j else 0) - m.rows[i][j] for j in range(n)] for i in range(n)]
    )


def det_cofactor(m: LaurentMatrix) -> LaurentPoly:
    """Laplace expansion along the first row (exponential; small sizes only)."""
    rows = [list(r) for r in m.rows]
    return _cofactor(rows, m.variables)


def _cofactor(rows: list[list[LaurentPoly]], variables) -> LaurentPoly:
    n = len(rows)
    if n == 0:
        return LaurentPoly.constant(variables, 1)
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    acc = LaurentPoly.zero(variables)
    for j, a in enumerate(rows[0]):
        if not a:
            continue
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = a * _cofactor(minor, variables)
        acc = acc + term if j % 2 == 0 else acc - term
    return acc


def det_bareiss(m: LaurentMatrix) -> LaurentPoly:
    """Fraction-free Bareiss elimination with exact multivariate division.

    Each row is first multiplied by a monomial so that all its entries are
    ordinary polynomials; the determinant is corrected by the inverse
    monomials at the end.
    """
    n = m.n
    variables = m.variables
    if n == 0:
        return LaurentPoly.constant(variables, 1)
    nv = len(variables)
    total_shift = [0] * nv
    a: list[list[LaurentPoly]] = []
    for r in m.rows:
        nz = [x for x in r if x]
        if not nz:
            return LaurentPoly.zero(variables)
        mins = [min(x.min_exponents()[k] for x in nz) for k in range(nv)]
        neg = [-v for v in mins]
        a.append([x.shift(neg) for x in r])
        for k in range(nv):
            total_shift[k] += mins[k]

    sign = 1
    prev = LaurentPoly.constant(variables, 1)
    prev_is_one = True
    for k in range(n - 1):
        if not a[k][k]:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return LaurentPoly.zero(variables)
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        piv = a[k][k]
        rowk = a[k]
        for i in range(k + 1, n):
            rowi = a[i]
            aik = rowi[k]
            for j in range(k + 1, n):
                val = rowi[j] * piv
                if aik and rowk[j]:
                    val = val - aik * rowk[j]
                if not prev_is_one and val:
                    val = exact_div(val, prev)
                rowi[j] = val
            rowi[k] = LaurentPoly.zero(variables)
        prev = piv
        prev_is_one = piv == 1
    d = a[n - 1][n - 1]
    d = d.shift(total_shift)
    return -d if sign < 0 else d


def det(m: LaurentMatrix) -> LaurentPoly:
    """Exact determinant: cofactor expansion up to size 4, Bareiss above."""
    if m.n <= 4:
        return det_cofactor(m)
    return det_bareiss(m)


def det_leibniz(m: LaurentMatrix) -> LaurentPoly:
    """Permutation-sum determinant (reference implementation for tiny sizes)."""
    n = m.n
    acc = LaurentPoly.zero(m.variables)
    for perm in permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = LaurentPoly.constant(m.variables, -1 if inv % 2 else 1)
        for i, p in enumerate(perm):
            term = term * m.rows[i][p]
            if not term:
                break
        acc = acc + term
    return acc


def _unit_inverse(p: LaurentPoly) -> LaurentPoly | None:
    """Inverse of ``±monomial`` in the Laurent ring, ``None`` otherwise."""
    if len(p.terms) != 1:
        return None
    (e, c), = p.terms.items()
    if c not in (1, -1):
        return None
    return LaurentPoly._raw(p.variables, {tuple(-x for x in e): c})


def _is_unit(p: LaurentPoly) -> bool:
    return len(p.terms) == 1 and abs(next(iter(p.terms.values()))) == 1


def _try_div(p: LaurentPoly, f: LaurentPoly) -> LaurentPoly | None:
    try:
        return exact_div(p, f)
    except NonExactDivision:
        return None


def det_quotient(m: LaurentMatrix, factors: Sequence[LaurentPoly] = ()) -> LaurentPoly:
    """``det(m) / prod(factors)``, computed with the factors cancelled early.

    Elimination pivots on unit entries (``±monomials``, invertible in the
    Laurent ring) chosen by the Markowitz rule, so no division is needed.
    Between rounds, any row or column that is divisible by one of the pending
    factors is divided by it.  A block left without unit entries goes to
    :func:`det_bareiss`.  Raises :class:`NonExactDivision` if the factors do
    not divide the determinant.
    """
    variables = m.variables
    n = m.n
    pending = list(factors)
    rows: dict[int, dict[int, LaurentPoly]] = {
        i: {j: a for j, a in enumerate(r) if a} for i, r in enumerate(m.rows)
    }
    cols: dict[int, set[int]] = {j: set() for j in range(n)}
    for i, r in rows.items():
        for j in r:
            cols[j].add(i)
    acc = LaurentPoly.constant(variables, 1)
    row_order = list(range(n))
    col_order = list(range(n))
    sign = 1

    def extract() -> bool:
        nonlocal acc
        found = False
        for f in list(dict.fromkeys(pending)):
            for i, r in rows.items():
                if f not in pending:
                    break
                if not r:
                    continue
                q = {}
                for j, a in r.items():
                    d = _try_div(a, f)
                    if d is None:
                        break
                    q[j] = d
                else:
                    rows[i] = q
                    pending.remove(f)
                    found = True
            for j, members in cols.items():
                if f not in pending:
                    break
                if not members:
                    continue
                q = {}
                for i in members:
                    d = _try_div(rows[i][j], f)
                    if d is None:
                        break
                    q[i] = d
                else:
                    for i, d in q.items():
                        rows[i][j] = d
                    pending.remove(f)
                    found = True
        return found

    while rows:
        best = None
        for i, r in rows.items():
            if not r:
                return LaurentPoly.zero(variables)
            for j, a in r.items():
                if _is_unit(a):
                    cost = (len(r) - 1) * (len(cols[j]) - 1)
                    if best is None or cost < best[0]:
                        best = (cost, i, j)
            if best is not None and best[0] == 0:
                break
        if best is None:
            if pending and extract():
                continue
            break
        _, pi, pj = best
        ri = row_order.index(pi)
        cj = col_order.index(pj)
        if (ri + cj) % 2:
            sign = -sign
        row_order.pop(ri)
        col_order.pop(cj)
        prow = rows.pop(pi)
        piv = prow[pj]
        acc = acc * piv
        inv = _unit_inverse(piv)
        for j in prow:
            cols[j].discard(pi)
        for i in list(cols[pj]):
            r = rows[i]
            factor = r.pop(pj) * inv
            for j, b in prow.items():
                if j == pj:
                    continue
                val = r.get(j)
                val = -(factor * b) if val is None else val - factor * b
                if val:
                    r[j] = val
                    cols[j].add(i)
                else:
                    r.pop(j, None)
                    cols[j].discard(i)
        del cols[pj]
    if rows:
        rest = LaurentMatrix(
            variables,
            [[rows[i].get(j, LaurentPoly.zero(variables)) for j in col_order] for i in row_order],
        )
        acc = acc * (det_cofactor(rest) if rest.n <= 4 else det_bareiss(rest))
    for f in pending:
        acc = exact_div(acc, f)
    return -acc if sign < 0 else acc


def det_sparse(m: LaurentMatrix) -> LaurentPoly:
    """Determinant by unit-pivot elimination (see :func:`det_quotient`)."""
    return det_quotient(m)
