"""Closed-form block matrices for the path trees A_n with n odd.

This builds U, V, W directly from the block pattern of the path, without any
train-track geometry, and serves as an independent check on the general
construction.
"""

from __future__ import annotations

from .laurent import LaurentMatrix, LaurentPoly
from .plane_tree import PlaneTree, parse_plane_tree
from .teich import LiftedMatrices, TeichResult, evaluate_formula

VARIABLES = ("x0", "u")


def path_tree(n: int) -> PlaneTree:
    """A_n with the standard bipartite labels: a1 b1 a2 b2 ... (a vertical)."""
    if n < 1:
        raise ValueError("n must be positive")
    ids = [f"a{i // 2 + 1}" if i % 2 == 0 else f"b{i // 2 + 1}" for i in range(n)]
    lines = []
    for i, v in enumerate(ids):
        nbrs = [ids[j] for j in (i - 1, i + 1) if 0 <= j < n]
        lines.append(f"{v} {'V' if i % 2 == 0 else 'H'} : {' '.join(nbrs)}")
    return parse_plane_tree("\n".join(lines) + "\n")


def _check(n: int) -> None:
    if not isinstance(n, int) or n < 3 or n % 2 == 0:
        raise ValueError(f"closed form needs an odd n >= 3, got {n!r}")


def an_matrices(n: int, r_sign: int = -1, mod4_rule: bool = False) -> LiftedMatrices:
    """Block matrices for A_n.

    The lower-left entry of the i-th ``R`` block is ``x0^(r_sign * (-1)^(i+1))``;
    ``r_sign=-1`` gives ``x0^-1`` in the first block, as in the worked A_5 case.
    The horizontal correction blocks are ``diag(1, x0, x0, 1)`` for every n.
    ``mod4_rule=True`` switches them to ``diag(x0, 1, 1, x0)`` when
    ``n = 3 (mod 4)``, which breaks exact divisibility.
    """
    _check(n)
    h = n - 1
    x = LaurentPoly.var(VARIABLES, "x0")
    xi = LaurentPoly.var(VARIABLES, "x0", -1)
    zero = LaurentPoly.zero(VARIABLES)
    one = LaurentPoly.constant(VARIABLES, 1)

    P = [[zero] * h for _ in range(h)]
    for b in range(0, h, 2):
        for i in range(2):
            for j in range(2):
                P[b + i][b + j] = one

    Y = [[zero] * h for _ in range(h)]
    Y[0][0] = one
    Y[h - 1][h - 1] = one
    for i in range(1, (n - 3) // 2 + 1):
        b = 2 * i - 1
        corner = x if r_sign * (-1) ** (i + 1) > 0 else xi
        Y[b][b] = Y[b][b + 1] = Y[b + 1][b + 1] = one
        Y[b + 1][b] = corner

    L = [x, one, one, x]
    M = L if mod4_rule and n % 4 == 3 else [one, x, x, one]
    S = [L[i % 4] for i in range(h)]
    N = [M[i % 4] for i in range(h)]

    size = 2 * h
    U = [[one if i == j else zero for j in range(size)] for i in range(size)]
    V = [[one if i == j else zero for j in range(size)] for i in range(size)]
    for i in range(h):
        for j in range(h):
            if Y[i][j]:
                U[i][h + j] = Y[i][j]
            if P[i][j]:
                V[h + i][j] = P[i][j]
    ident = LaurentMatrix.identity(VARIABLES, size)
    return LiftedMatrices(
        U=LaurentMatrix(VARIABLES, U),
        V=LaurentMatrix(VARIABLES, V),
        W=LaurentMatrix.diagonal(VARIABLES, S + N),
        T=ident,
        Q=LaurentMatrix.diagonal(VARIABLES, S),
        R=LaurentMatrix.identity(VARIABLES, h),
    )


def an_closed_form(n: int, r_sign: int = -1, mod4_rule: bool = False) -> TeichResult:
    """Θ of A_n from the closed-form blocks (canonical lift)."""
    return evaluate_formula(an_matrices(n, r_sign, mod4_rule), path_tree(n))
