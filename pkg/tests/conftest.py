from __future__ import annotations

from functools import lru_cache
from pathlib import Path

from coxeter_teich.laurent import LaurentPoly, parse_poly, substitute
from coxeter_teich.plane_tree import enumerate_plane_trees, read_plane_tree

FIXTURES = Path(__file__).parent / "fixtures"
Y = ("y0", "y1")


def fixture_path(name: str) -> str:
    return str(FIXTURES / f"{name}.ptree")


def load(name: str):
    return read_plane_tree(fixture_path(name))


def ypoly(text: str) -> LaurentPoly:
    return parse_poly(text, Y)


A3 = "y0*y1 - 2*y0 - 2*y1 + 1"
A5 = "y0^2*y1^2 - 4*y0^2*y1 - 4*y0*y1^2 + 4*y0^2 + 9*y0*y1 + 4*y1^2 - 4*y0 - 4*y1 + 1"
A5_MID8 = A5.replace("9*y0*y1", "8*y0*y1")
A5_MID7 = A5.replace("9*y0*y1", "7*y0*y1")
THETA_1_FACTOR = "y1^2 - 3*y1 + 1"
THETA_1_COFACTOR = "y0*y1^3 - 7*y0*y1^2 - 2*y1^3 + 9*y0*y1 + 9*y1^2 - 2*y0 + 7*y1 + 1"
THETA_2 = (
    "y0^3*y1^3 - 6*y0^3*y1^2 - 6*y0^2*y1^3 + 8*y0^3*y1 + 30*y0^2*y1^2 + 8*y0*y1^3"
    " - 2*y0^3 - 34*y0^2*y1 - 34*y0*y1^2 - 2*y1^3 + 8*y0^2 + 30*y0*y1 + 8*y1^2"
    " - 6*y0 - 6*y1 + 1"
)


def golden(name: str) -> LaurentPoly:
    """Expanded fixture polynomials in meridian coordinates (y0, y1)."""
    table = {
        "a3": ypoly(A3),
        "a5": ypoly(A5),
        "a7": ypoly(A3) * ypoly(A5_MID8),
        "a11": ypoly(A3) * ypoly(A5_MID7) * ypoly(A5),
        "gamma1": ypoly(THETA_1_FACTOR) * ypoly(THETA_1_COFACTOR),
        "gamma1_corrected": ypoly(THETA_1_FACTOR) * ypoly(THETA_1_COFACTOR.replace("+ 7*y1", "- 7*y1")),
        "gamma2": ypoly(THETA_2),
    }
    return table[name]


def a_series(p: LaurentPoly) -> LaurentPoly:
    """x0 -> y0*y1^-1, u -> y1."""
    return substitute(p, {"x0": ypoly("y0*y1^-1"), "u": ypoly("y1")}, Y)


def power_iteration(m, iters: int = 5000) -> float:
    """Spectral radius of a nonnegative integer matrix by normalized power iteration."""
    n = len(m)
    v = [1.0] * n
    lam = 0.0
    for _ in range(iters):
        w = [sum(m[i][j] * v[j] for j in range(n)) for i in range(n)]
        norm = max(abs(x) for x in w)
        v = [x / norm for x in w]
        if abs(norm - lam) < 1e-14 * norm:
            lam = norm
            break
        lam = norm
    return lam


@lru_cache(maxsize=None)
def trees_up_to(n: int) -> tuple:
    out = []
    for k in range(1, n + 1):
        out.extend(enumerate_plane_trees(k))
    return tuple(out)


# acceptance lines are repeated at the end of the run so they survive output capture
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
