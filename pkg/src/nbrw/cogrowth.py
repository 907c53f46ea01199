"""Non-backtracking path counting and its generating functions.

The series here are computed by direct dynamic programming over oriented
edges named by endpoint labels, carrying integer path counts and exact
rational path weights. This is intentionally a separate route from the
transition-matrix code in walks: the weighted series must reproduce the
n-step walk distribution coefficient by coefficient, and the two
implementations confirm each other.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .budgets import resolve_budget
from .errors import BadParamsError, BudgetExceededError, NotRegularError
from .multigraph import Multigraph
from .powerseries import PowerSeries
from .sources import GraphSource
from .walks import SpectralEstimate, nbrw_return_sequence, root_test_estimate

__all__ = [
    "CogrowthSeries",
    "FunctionalEquationReport",
    "sphere_counts",
    "cogrowth_series",
    "cogrowth_rate",
    "green_series",
    "functional_equation_check",
]


# --------------------------------------------------------------------------
# oriented edges by label, for the counting DP

def _out_edges_of(g):
    """Adapter: vertex label -> list of oriented-edge tokens.

    A token is (tail, head, copy, flag); reversal swaps endpoints for a
    simple edge and flips the flag for a loop, so following a token never
    confuses parallel copies.
    """
    if isinstance(g, Multigraph):
        def out(v: str):
            i = g.index(v)
            edges = []
            for w, m in g.neighbor_mults(i):
                lab = g.labels[w]
                for c in range(m):
                    edges.append((v, lab, c, 0))
            for c in range(g.loops_at(i)):
                edges.append((v, v, c, 1))
                edges.append((v, v, c, 2))
            return edges
    else:
        def out(v: str):
            edges = []
            for w, m in g.neighbor_items(v):
                if w == v:
                    for c in range(m):
                        edges.append((v, v, c, 1))
                        edges.append((v, v, c, 2))
                else:
                    for c in range(m):
                        edges.append((v, w, c, 0))
            return edges
    return out


def _reverse_token(e):
    tail, head, c, flag = e
    if flag == 0:
        return (head, tail, c, 0)
    return (tail, head, c, 3 - flag)


@dataclass(frozen=True)
class CogrowthSeries:
    """Coefficients of a non-backtracking series based at (x, y).

    In "ordinary" mode coefficient n is (number of non-backtracking paths
    x to y of length n) / (number of all such paths of length n from x):
    the fraction of the covering tree's n-sphere lying over y. In
    "nbrw_weighted" mode each path carries its walk probability and
    coefficient n is exactly the n-step mass at y.
    """

    x: str
    y: str
    mode: str
    n_max: int
    coefficients: tuple
    path_counts: Optional[tuple]
    sphere_sizes: tuple


def _count_dp(g, x: str, n_max: int, weighted: bool, budget: int):
    """Run the edge DP; yields (n, counts_by_vertex, weights_by_vertex,
    total_count) for n = 0 .. n_max."""
    out = _out_edges_of(g)
    yield 0, {x: 1}, {x: Fraction(1)}, 1
    if n_max == 0:
        return
    start = out(x)
    deg_x = len(start)
    cur: dict = {}
    for e in start:
        cur[e] = (1, Fraction(1, deg_x) if weighted else None)
    work = 0
    for n in range(1, n_max + 1):
        by_v_count: dict = {}
        by_v_weight: dict = {}
        total = 0
        for (tail, head, c, flag), (cnt, wt) in cur.items():
            by_v_count[head] = by_v_count.get(head, 0) + cnt
            total += cnt
            if weighted:
                by_v_weight[head] = by_v_weight.get(head, Fraction(0)) + wt
        yield n, by_v_count, by_v_weight, total
        if n == n_max:
            return
        nxt: dict = {}
        for e, (cnt, wt) in cur.items():
            head = e[1]
            rev = _reverse_token(e)
            succ = [f for f in out(head) if f != rev]
            branch = len(succ)
            step_wt = wt / branch if weighted else None
            for f in succ:
                if f in nxt:
                    c0, w0 = nxt[f]
                    nxt[f] = (c0 + cnt, w0 + step_wt if weighted else None)
                else:
                    nxt[f] = (cnt, step_wt)
            work += branch
            if work > budget:
                raise BudgetExceededError(
                    f"path counting exceeded budget {budget} at length {n + 1}",
                    visited=work)
        cur = nxt


def sphere_counts(g, x: Optional[str] = None, n_max: int = 20, *,
                  budget: int | None = None) -> list[int]:
    """Sizes of the spheres of the universal covering tree based over x:
    the number of non-backtracking paths of each length from x."""
    x = _base(g, x)
    budget = resolve_budget(budget)
    return [total for _, _, _, total in _count_dp(g, x, n_max, False, budget)]


def _base(g, x):
    if x is not None:
        return x
    return g.labels[0] if isinstance(g, Multigraph) else g.root


def cogrowth_series(g, x: Optional[str] = None, y: Optional[str] = None,
                    n_max: int = 20, *, mode: str = "ordinary",
                    budget: int | None = None) -> CogrowthSeries:
    """Exact series coefficients through order n_max (see CogrowthSeries)."""
    if mode not in ("ordinary", "nbrw_weighted"):
        raise BadParamsError(f"unknown mode {mode!r}")
    x = _base(g, x)
    y = x if y is None else y
    budget = resolve_budget(budget)
    weighted = mode == "nbrw_weighted"
    coeffs = []
    counts = []
    spheres = []
    for n, by_count, by_weight, total in _count_dp(g, x, n_max, weighted, budget):
        cnt = by_count.get(y, 0)
        counts.append(cnt)
        spheres.append(total)
        if weighted:
            coeffs.append(by_weight.get(y, Fraction(0)))
        else:
            coeffs.append(Fraction(cnt, total))
    return CogrowthSeries(x=x, y=y, mode=mode, n_max=n_max,
                          coefficients=tuple(coeffs),
                          path_counts=tuple(counts),
                          sphere_sizes=tuple(spheres))


def cogrowth_rate(g, x: Optional[str] = None, y: Optional[str] = None,
                  n_max: int = 40, *, mode: str = "ordinary",
                  budget: int | None = None) -> SpectralEstimate:
    """Growth-rate estimate of the series coefficients, under the same
    windowed root-test policy as the spectral-radius estimators.

    For weighted series on neighbor oracles the coefficients are the
    n-step return masses, so this reuses the fast float walk iteration
    rather than the exact counting DP.
    """
    x = _base(g, x)
    y = x if y is None else y
    if mode == "nbrw_weighted" and not isinstance(g, Multigraph):
        seq = nbrw_return_sequence(g, x, y, n_max, budget=budget)
        return root_test_estimate(seq)
    series = cogrowth_series(g, x, y, n_max, mode=mode, budget=budget)
    return root_test_estimate(series.coefficients)


# --------------------------------------------------------------------------
# simple-walk generating function and the regular-graph identity

def green_series(g: Multigraph, x: Optional[str] = None,
                 y: Optional[str] = None, n_max: int = 20) -> PowerSeries:
    """Truncated return series of the simple walk: sum p^(n)(x, y) t^n,
    with exact rational coefficients."""
    from .walks import srw_kernel

    if not isinstance(g, Multigraph):
        raise BadParamsError("the simple-walk series needs a finite graph")
    x = _base(g, x)
    y = x if y is None else y
    xi, yi = g.index(x), g.index(y)
    mat = srw_kernel(g)
    v = [Fraction(0)] * g.num_vertices
    v[xi] = Fraction(1)
    coeffs = [v[yi]]
    for _ in range(n_max):
        v = mat.apply_left(v, exact=True)
        coeffs.append(v[yi])
    return PowerSeries(coeffs)


@dataclass(frozen=True)
class FunctionalEquationReport:
    """Comparison of the ordinary cogrowth series against the substituted
    simple-walk series on a d-regular graph.

    With z(t) = d t / (d - 1 + t^2), the identity verified
    coefficientwise through order n_max is

        C(x,y|t) = (1/d) delta_x(y)
                   + ((d-1)^2 - t^2) / (d (d - 1 + t^2)) * G(x,y|z(t)).

    max_residual is an exact Fraction; zero means the identity holds
    through order n_max.
    """

    x: str
    y: str
    d: int
    n_max: int
    lhs: PowerSeries
    rhs: PowerSeries
    residuals: tuple
    max_residual: Fraction

    def __bool__(self) -> bool:
        return self.max_residual == 0


def functional_equation_check(g: Multigraph, x: Optional[str] = None,
                              y: Optional[str] = None, n_max: int = 20, *,
                              budget: int | None = None) -> FunctionalEquationReport:
    if not isinstance(g, Multigraph):
        raise BadParamsError(
            "regularity cannot be certified from a neighbor oracle")
    d = g.regular_degree()
    if d is None or d < 3:
        raise NotRegularError(
            "the substitution identity needs a regular graph of degree >= 3")
    x = _base(g, x)
    y = x if y is None else y
    lhs = PowerSeries(
        cogrowth_series(g, x, y, n_max, mode="ordinary", budget=budget).coefficients)
    green = green_series(g, x, y, n_max)
    denom = PowerSeries.constant(d - 1, n_max) + PowerSeries.monomial(1, 2, n_max)
    z = PowerSeries.monomial(d, 1, n_max) * denom.inverse()
    prefactor = (PowerSeries.constant((d - 1) ** 2, n_max)
                 - PowerSeries.monomial(1, 2, n_max)) * denom.inverse().scale(
                     Fraction(1, d))
    delta = Fraction(1, d) if x == y else Fraction(0)
    rhs = PowerSeries.constant(delta, n_max) + prefactor * green.compose(z)
    residuals = tuple(a - b for a, b in zip(lhs.coeffs, rhs.coeffs))
    return FunctionalEquationReport(
        x=x, y=y, d=d, n_max=n_max, lhs=lhs, rhs=rhs, residuals=residuals,
        max_residual=max((abs(r) for r in residuals), default=Fraction(0)))
