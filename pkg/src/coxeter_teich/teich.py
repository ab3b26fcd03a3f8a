"""Lifted multitwist matrices and the determinant formula for the
Teichmüller polynomial of an alternating-sign Coxeter link."""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Sequence

from .laurent import (
    LaurentMatrix,
    LaurentPoly,
    char_matrix,
    det,
    det_quotient,
    exact_div,
    int_charpoly,
    largest_real_root,
    normalize,
    specialize,
)
from .plane_tree import KernelBasis, PlaneTree, tree_kernel
from .track import (
    Arrangement,
    PathTable,
    StructureMaps,
    TrainTrack,
    build_train_track,
    embed_arrangement,
    spanning_paths,
    structure_maps,
)

IntMatrix = tuple[tuple[int, ...], ...]


def _variables(kb: KernelBasis) -> tuple[str, ...]:
    return kb.variables + ("u",)


def _mono(variables, expo: Sequence[int]) -> LaurentPoly:
    return LaurentPoly.monomial(variables, tuple(expo) + (0,))


def _scaled(vec: Sequence[int], k: int) -> tuple[int, ...]:
    return tuple(k * x for x in vec)


def _add(a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    return tuple(x + y for x, y in zip(a, b))


def geometric_multitwists(tt: TrainTrack, maps: StructureMaps) -> tuple[IntMatrix, IntMatrix]:
    """Actions of the vertical and horizontal multitwists on the edge space of τ."""
    m = tt.n_edges
    ta = [[int(i == j) for j in range(m)] for i in range(m)]
    tb = [[int(i == j) for j in range(m)] for i in range(m)]
    for i in range(m):
        for j in range(m):
            pi, pj = maps.p(i), maps.p(j)
            if pi and not pj and maps.g(i, maps.t(j)):
                ta[i][j] += 1
            if pj and not pi and maps.g(i, maps.s(j)):
                tb[i][j] += 1
    return tuple(map(tuple, ta)), tuple(map(tuple, tb))


def build_UV(
    tt: TrainTrack, maps: StructureMaps, kb: KernelBasis, literal: bool = False
) -> tuple[LaurentMatrix, LaurentMatrix]:
    """Multitwist matrices with deck-transformation weights on the wound edges.

    The image of a horizontal edge under the vertical twist is the edge
    followed by a loop around the vertical segment at its end; the image of a
    vertical edge under the horizontal twist is a loop around the horizontal
    segment at its start, followed by the edge.  A loop climbs one level of
    the cover when it passes the glued endpoint of its segment.

    Two level shifts only matter when horizontal segments carry kernel weight:
    the loop appended to a horizontal wrap edge starts one level up, and a
    vertical edge traversed after its loop sits one level up.  ``literal=True``
    omits both (the bare entrywise formula).
    """
    variables = _variables(kb)
    m = tt.n_edges
    zero = LaurentPoly.zero(variables)
    one = LaurentPoly.constant(variables, 1)
    U = [[one if i == j else zero for j in range(m)] for i in range(m)]
    V = [[one if i == j else zero for j in range(m)] for i in range(m)]
    if not literal:
        for j, e in enumerate(tt.edges):
            if e.vertical:
                V[j][j] = _mono(variables, kb.exponent(maps.a(j)))
    for i in range(m):
        seg = maps.d(i)
        k = kb.exponent(seg)
        top = maps.l(seg)
        for j in range(m):
            pi, pj = maps.p(i), maps.p(j)
            if pi and not pj and maps.g(i, maps.t(j)):
                expo = _scaled(k, maps.c(i, top, maps.t(j)))
                if not literal and tt.edges[j].wrap:
                    expo = _add(expo, kb.exponent(maps.d(j)))
                U[i][j] = U[i][j] + _mono(variables, expo)
            if pj and not pi and maps.g(i, maps.s(j)):
                V[i][j] = V[i][j] + _mono(variables, _scaled(k, maps.c(i, top, maps.s(j))))
    return LaurentMatrix(variables, U), LaurentMatrix(variables, V)


@dataclass(frozen=True)
class LiftedMatrices:
    U: LaurentMatrix
    V: LaurentMatrix
    W: LaurentMatrix
    T: LaurentMatrix
    Q: LaurentMatrix
    R: LaurentMatrix

    @property
    def P_E(self) -> LaurentMatrix:
        return self.U @ self.W @ self.V @ self.T

    @property
    def P_V(self) -> LaurentMatrix:
        return self.Q @ self.R

    def rescaled(self, m: LaurentPoly) -> LiftedMatrices:
        """Same matrices for the lift composed with the deck transformation ``m``."""
        return LiftedMatrices(self.U, self.V, self.W.scale(m), self.T, self.Q.scale(m), self.R)

    def canonical(self) -> LiftedMatrices:
        """Rescale so the largest exponent of each x-variable on ``P_V`` is zero.

        Moving the basepoint multiplies ``P_E`` and ``P_V`` by one common
        monomial, so this representative does not depend on the basepoint.
        """
        diag = self.P_V.diagonal_entries()
        if not diag:
            return self
        nv = len(self.P_V.variables)
        top = [max(d.max_exponents()[k] for d in diag) for k in range(nv - 1)]
        if not any(top):
            return self
        return self.rescaled(LaurentPoly.monomial(self.P_V.variables, [-x for x in top] + [0]))

    def pencil(self) -> LaurentMatrix | None:
        """``u(I - N) - WVT`` with ``N = U - I``, or ``None`` unless ``N^2 = 0``.

        When ``N`` squares to zero, ``U`` has determinant one and inverse
        ``I - N``, so the pencil has the same determinant as ``uI - UWVT``.
        Its off-diagonal entries are single monomials.
        """
        n = self.U.n
        variables = self.U.variables
        ident = LaurentMatrix.identity(variables, n)
        N = self.U - ident
        if any(a for r in (N @ N).rows for a in r):
            return None
        u = LaurentPoly.var(variables, "u")
        return (ident - N).scale(u) - self.W @ self.V @ self.T

    def vertex_factors(self) -> list[LaurentPoly]:
        u = LaurentPoly.var(self.Q.variables, "u")
        return [u - d for d in self.P_V.diagonal_entries()]


def vertex_levels(
    tt: TrainTrack, maps: StructureMaps, paths: PathTable, kb: KernelBasis
) -> tuple[list[tuple[int, ...]], list[tuple[int, ...]]]:
    """Per-crossing exponents collected along the basepoint paths.

    The first list sums over horizontal path edges, the second over vertical ones.
    """
    r = kb.rank
    qs, rs = [], []
    for path in paths.paths:
        q = (0,) * r
        w = (0,) * r
        for e, sign in path:
            k = _scaled(kb.exponent(maps.a(e)), sign)
            if maps.p(e):
                w = _add(w, k)
            else:
                q = _add(q, k)
        qs.append(q)
        rs.append(w)
    return qs, rs


def build_WTQR(
    tt: TrainTrack, maps: StructureMaps, paths: PathTable, kb: KernelBasis
) -> tuple[LaurentMatrix, LaurentMatrix, LaurentMatrix, LaurentMatrix]:
    variables = _variables(kb)
    qs, rs = vertex_levels(tt, maps, paths, kb)
    W = LaurentMatrix.diagonal(variables, [_mono(variables, qs[maps.s(i)]) for i in range(tt.n_edges)])
    T = LaurentMatrix.diagonal(variables, [_mono(variables, rs[maps.s(i)]) for i in range(tt.n_edges)])
    Q = LaurentMatrix.diagonal(variables, [_mono(variables, q) for q in qs])
    R = LaurentMatrix.diagonal(variables, [_mono(variables, x) for x in rs])
    return W, T, Q, R


@dataclass(frozen=True)
class Pipeline:
    tree: PlaneTree
    kernel: KernelBasis
    arrangement: Arrangement
    track: TrainTrack
    maps: StructureMaps


def prepare(tree: PlaneTree) -> Pipeline:
    kb = tree_kernel(tree)
    arr = embed_arrangement(tree)
    tt = build_train_track(arr)
    return Pipeline(tree, kb, arr, tt, structure_maps(tt, arr))


def lifted_matrices(pipe: Pipeline, basepoint: int = 0) -> LiftedMatrices:
    paths = spanning_paths(pipe.track, basepoint)
    U, V = build_UV(pipe.track, pipe.maps, pipe.kernel)
    W, T, Q, R = build_WTQR(pipe.track, pipe.maps, paths, pipe.kernel)
    return LiftedMatrices(U, V, W, T, Q, R)


@dataclass(frozen=True)
class TeichResult:
    tree: PlaneTree | None
    variables: tuple[str, ...]
    denominator: LaurentPoly
    raw: LaurentPoly
    theta: LaurentPoly
    rank: int
    n_edges: int
    n_vertices: int

    @property
    def numerator(self) -> LaurentPoly:
        """``det(uI - P_E)``, rebuilt from the quotient."""
        return self.raw * self.denominator

    @property
    def euler_characteristic(self) -> int:
        return -self.n_vertices


def evaluate_formula(
    mats: LiftedMatrices, tree: PlaneTree | None = None, lift: bool = True
) -> TeichResult:
    """``det(uI - P_E) / det(uI - P_V)``, by default for the canonical lift.

    With an empty kernel the cover is trivial and the vertex chain group keeps
    one factor ``u - 1`` that the edge chain group never sees; it is left out
    of the denominator so that the quotient stays a polynomial.
    """
    if lift:
        mats = mats.canonical()
    variables = mats.U.variables
    rank = len(variables) - 1
    factors = mats.vertex_factors()
    if rank == 0 and factors:
        factors.remove(LaurentPoly.var(variables, "u") - 1)
    den = LaurentPoly.constant(variables, 1)
    for f in factors:
        den = den * f
    pencil = mats.pencil()
    if pencil is not None:
        raw = det_quotient(pencil, factors)
    else:
        raw = exact_div(det(char_matrix(mats.P_E)), den)
    return TeichResult(tree, variables, den, raw, normalize(raw), rank, mats.U.n, mats.Q.n)


def teichmuller_polynomial(
    tree: PlaneTree, basepoint: int | None = None, lift: bool = True
) -> TeichResult:
    """Θ of the fibered cone of ``tree``.

    ``basepoint`` is a crossing index (default 0).  With ``lift=False`` the
    lift picked by the basepoint paths is used as is.
    """
    pipe = prepare(tree)
    if pipe.track.n_vertices == 0:
        # empty train track: both determinants are empty products
        variables = _variables(pipe.kernel)
        one = LaurentPoly.constant(variables, 1)
        return TeichResult(tree, variables, one, one, one, pipe.kernel.rank, 0, 0)
    mats = lifted_matrices(pipe, 0 if basepoint is None else basepoint)
    return evaluate_formula(mats, tree, lift=lift)


def edge_charpoly(tree: PlaneTree) -> LaurentPoly:
    """``det(uI - T_a T_b)`` for the multitwists acting on the edge space of τ."""
    pipe = prepare(tree)
    ta, tb = geometric_multitwists(pipe.track, pipe.maps)
    m = [[sum(a * b for a, b in zip(r, c)) for c in zip(*tb)] for r in ta]
    cp = int_charpoly(m)
    return LaurentPoly(("u",), {(i,): c for i, c in enumerate(cp.coeffs)})


class DegenerateClass(ValueError):
    """The requested class has no dilatation (constant specialization or unsupported)."""


def fiber_class(result: TeichResult) -> tuple[int, ...]:
    """The class dual to ``u``: zero on every x-variable."""
    return (0,) * result.rank + (1,)


def dilatation(result: TeichResult, alpha: Sequence[int] | None = None, tol: float = 1e-10) -> float:
    """Largest real root of the ``alpha``-specialization of Θ (default: fiber class)."""
    alpha = fiber_class(result) if alpha is None else tuple(alpha)
    special = specialize(result.theta, alpha)
    if special.degree < 1:
        raise DegenerateClass(f"specialization at {list(alpha)} is constant")
    return largest_real_root(special, tol)


def normalized_dilatation(
    result: TeichResult, alpha: Sequence[int] | None = None, tol: float = 1e-10
) -> float:
    """``λ^|χ(S)|`` for the fiber class; other classes are not supported."""
    if alpha is not None and tuple(alpha) != fiber_class(result):
        raise DegenerateClass("normalized dilatation is only available for the fiber class")
    if result.n_vertices <= 1:
        warnings.warn("trees with fewer than three vertices do not give pseudo-Anosov maps")
        raise DegenerateClass("normalized dilatation needs at least two edges")
    lam = dilatation(result, None, tol)
    return lam ** abs(result.euler_characteristic)
