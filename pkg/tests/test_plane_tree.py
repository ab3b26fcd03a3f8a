import math
import random

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy.matrices.normalforms import smith_normal_form

from coxeter_teich.plane_tree import (
    HORIZONTAL,
    VERTICAL,
    PlaneTreeError,
    adjacency_matrix,
    bipartite_block,
    enumerate_plane_trees,
    homological_multitwists,
    integer_kernel,
    kernel_basis,
    matmul,
    parse_plane_tree,
    tree_kernel,
)

from conftest import fixture_path, load, trees_up_to

A3_TEXT = "# A_3\nb V : a\na H : b c\nc V : a\n"


def test_parse_a3():
    t = parse_plane_tree(A3_TEXT)
    assert len(t) == 3
    assert len(t.edges) == 2
    assert t["a"].orientation == HORIZONTAL and t["a"].sign == 1
    assert t["b"].orientation == VERTICAL and t["b"].sign == -1


def test_single_vertex_is_valid():
    t = parse_plane_tree("v H :\n")
    assert len(t) == 1 and t.edges == ()


def test_rotation_is_normalized():
    a = parse_plane_tree("c H : x y z\nx V : c\ny V : c\nz V : c\n")
    b = parse_plane_tree("c H : y z x\nx V : c\ny V : c\nz V : c\n")
    c = parse_plane_tree("c H : x z y\nx V : c\ny V : c\nz V : c\n")
    assert a == b
    assert a != c
    assert a["c"].neighbors == ("x", "y", "z")


@pytest.mark.parametrize(
    "name, fragment, line",
    [
        ("bad_cycle", "cycle", 5),
        ("bad_inconsistent", "does not list it back", 2),
        ("bad_coloring", "2-coloring", 1),
        ("bad_syntax", "expected", 1),
    ],
)
def test_malformed_fixtures(name, fragment, line):
    with pytest.raises(PlaneTreeError) as info:
        load(name)
    assert fragment in str(info.value)
    assert info.value.line == line


@pytest.mark.parametrize(
    "text, fragment",
    [
        ("a V : b\nb H : a\nc V :\n", "disconnected"),
        ("a V : b\nb H : a\na V : b\n", "duplicate"),
        ("a X : b\nb H : a\n", "class"),
        ("a V : a\n", "itself"),
        ("a V : q\n", "unknown"),
        ("a V : b b\nb H : a\n", "twice"),
        ("# nothing\n", "no vertices"),
    ],
)
def test_validation_errors(text, fragment):
    with pytest.raises(PlaneTreeError, match=fragment):
        parse_plane_tree(text)


def test_adjacency_examples():
    assert adjacency_matrix(load("single_edge")) == ((0, 1), (1, 0))
    assert bipartite_block(load("a5")) == ((1, 0), (1, 1), (0, 1))
    x9 = bipartite_block(parse_plane_tree(_path_text(9)))
    assert x9 == ((1, 0, 0, 0), (1, 1, 0, 0), (0, 1, 1, 0), (0, 0, 1, 1), (0, 0, 0, 1))


def _path_text(n):
    from coxeter_teich.an_series import path_tree

    return path_tree(n).to_text()


@pytest.mark.parametrize("tree", trees_up_to(8), ids=lambda t: t.to_text().replace("\n", "|"))
def test_adjacency_properties(tree):
    a = adjacency_matrix(tree)
    n = len(tree)
    order = tree.bipartite_order
    assert all(a[i][j] == a[j][i] for i in range(n) for j in range(n))
    assert all(a[i][i] == 0 for i in range(n))
    assert [sum(r) for r in a] == [tree[v].degree for v in order]
    nv = tree.n_vertical
    assert all(a[i][j] == 0 for i in range(nv) for j in range(nv))


def test_kernel_examples():
    kb = tree_kernel(load("a5"))
    assert kb.matrix == ((1,), (-1,), (1,), (0,), (0,))
    assert kb.variables == ("x0",)
    assert tree_kernel(load("single_edge")).rank == 0
    assert tree_kernel(parse_plane_tree(_path_text(4))).rank == 0


def test_kernel_of_zero_matrix():
    kb = kernel_basis(((0,),))
    assert kb.matrix == ((1,),)


def _saturated(cols, n):
    if not cols:
        return True
    b = sympy.Matrix([[c[i] for c in cols] for i in range(n)])
    snf = smith_normal_form(b, domain=sympy.ZZ)
    return all(abs(snf[i, i]) == 1 for i in range(len(cols)))


@pytest.mark.parametrize("tree", trees_up_to(9), ids=lambda t: t.to_text().replace("\n", "|"))
def test_kernel_invariants(tree):
    a = adjacency_matrix(tree)
    kb = tree_kernel(tree)
    n = len(tree)
    cols = kb.columns()
    rank_a = sympy.Matrix(a).rank()
    assert kb.rank == n - rank_a
    for c in cols:
        assert all(sum(a[i][j] * c[j] for j in range(n)) == 0 for i in range(n))
        assert next(x for x in c if x) > 0
        assert math.gcd(*c) == 1
    assert _saturated(cols, n)


@settings(max_examples=150, deadline=None)
@given(
    st.integers(2, 6).flatmap(
        lambda m: st.lists(
            st.lists(st.integers(-2, 2), min_size=m, max_size=m), min_size=1, max_size=m
        )
    )
)
def test_integer_kernel_random(rows):
    # integer kernel of a random matrix: A B = 0, full rank, saturated
    n = len(rows[0])
    basis = integer_kernel(rows)
    assert len(basis) == n - sympy.Matrix(rows).rank()
    for v in basis:
        assert all(sum(r[j] * v[j] for j in range(n)) == 0 for r in rows)
    assert _saturated([tuple(v) for v in basis], n)


@pytest.mark.parametrize("p", [2, 3, 5, 7, 11, 13])
def test_saturation_by_scaled_combinations(p):
    # integral vectors of the form (integer combination)/p lie in the Z-span
    rng = random.Random(p)
    for tree in trees_up_to(9):
        kb = tree_kernel(tree)
        if kb.rank == 0:
            continue
        cols = kb.columns()
        n = len(tree)
        for _ in range(3):
            coeffs = [rng.randint(-3, 3) for _ in cols]
            v = [sum(c * col[i] for c, col in zip(coeffs, cols)) for i in range(n)]
            if all(x % p == 0 for x in v):
                w = [x // p for x in v]
                b = sympy.Matrix([[c[i] for c in cols] for i in range(n)])
                sol = (b.T * b).solve(b.T * sympy.Matrix(w))
                assert all(x.is_integer for x in sol)
                assert b * sol == sympy.Matrix(w)


def test_multitwist_examples():
    ta, tb = homological_multitwists(load("single_edge"))
    assert matmul(ta, tb) == ((2, 1), (1, 1))
    ta, tb = homological_multitwists(load("a5"))
    x = ((1, 0), (1, 1), (0, 1))
    for i in range(3):
        for j in range(2):
            assert ta[i][3 + j] == x[i][j]
            assert tb[3 + j][i] == x[i][j]


@pytest.mark.parametrize("tree", trees_up_to(9), ids=lambda t: t.to_text().replace("\n", "|"))
def test_monodromy_fixes_exactly_the_kernel(tree):
    ta, tb = homological_multitwists(tree)
    m = matmul(ta, tb)
    n = len(tree)
    for c in tree_kernel(tree).columns():
        assert tuple(sum(m[i][j] * c[j] for j in range(n)) for i in range(n)) == c
    a = adjacency_matrix(tree)
    rng = random.Random(n)
    for _ in range(5):
        v = [rng.randint(-3, 3) for _ in range(n)]
        if any(sum(a[i][j] * v[j] for j in range(n)) for i in range(n)):
            assert [sum(m[i][j] * v[j] for j in range(n)) for i in range(n)] != v


def test_enumeration_counts():
    # unlabeled plane trees (rotation systems on unrooted trees)
    expected = [1, 1, 1, 2, 3, 6, 14, 34, 95, 280]
    assert [len(enumerate_plane_trees(n)) for n in range(1, 11)] == expected


def test_enumeration_is_deterministic_and_distinct():
    a = enumerate_plane_trees(7)
    b = enumerate_plane_trees(7)
    assert a == b
    assert len({t.to_text() for t in a}) == len(a)


def test_swapped_classes():
    t = load("a5")
    s = t.swapped()
    assert s.n_vertical == 2
    assert s.swapped() == t


def test_fixture_files_parse():
    for name in ("a3", "a5", "a7", "a11", "gamma1", "gamma2", "single_edge", "single_vertex"):
        parse_plane_tree(open(fixture_path(name), encoding="utf-8").read())
