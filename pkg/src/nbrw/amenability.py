"""Isoperimetric ratios, Folner-style ball trends, and the combined
amenability diagnostic for infinite graphs.

All quantities use Vol(F) = sum of degrees over F and Area(F) = number of
unoriented edges with exactly one endpoint in F. Nothing here decides
amenability: finite computation only gathers evidence, and the verdict
says whether that evidence is consistent with the spectral dichotomy
(growth rate 1 exactly for amenable graphs with dense short cycles).
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from .budgets import resolve_budget
from .errors import (
    BadParamsError,
    BudgetExceededError,
    PrerequisiteUnverified,
)
from .multigraph import Multigraph, ball
from .sources import GraphSource
from .walks import SpectralEstimate, probe_dense_cycles, spectral_radius_nbrw

__all__ = [
    "IsoperimetricReport",
    "FolnerTrend",
    "AmenabilityDiagnostic",
    "area_vol",
    "iota_bruteforce",
    "folner_trend",
    "diagnose",
]

RHO_NEAR_ONE = 0.95
FOLNER_SMALL = 0.1
RHO_AWAY_FROM_ONE = 0.9
FOLNER_BOUNDED_BELOW = 0.1


def area_vol(g, labels: Iterable[str]) -> tuple[int, int]:
    """Boundary-edge count and degree volume of a finite vertex set.

    Area counts unoriented edges with exactly one endpoint in the set;
    loops stay internal and never contribute. Works on finite multigraphs
    and neighbor oracles.
    """
    f = list(dict.fromkeys(labels))
    fset = set(f)
    if not f:
        raise BadParamsError("the vertex set must be nonempty")
    vol = 0
    internal = 0  # ordered pairs (v, w) in F x F weighted by e(v, w)
    if isinstance(g, Multigraph):
        for lab in f:
            i = g.index(lab)
            vol += g.degree(i)
            internal += 2 * g.loops_at(i)
            for w, m in g.neighbor_mults(i):
                if g.labels[w] in fset:
                    internal += m
    else:
        for lab in f:
            for w, m in g.neighbor_items(lab):
                if w == lab:
                    vol += 2 * m
                    internal += 2 * m
                else:
                    vol += m
                    if w in fset:
                        internal += m
    return vol - internal, vol


@dataclass(frozen=True)
class FolnerTrend:
    """Boundary-to-volume ratios of metric balls, radius by radius.

    rows holds (radius, area, vol, exact ratio); a trend to zero is
    amenability evidence with the balls as witness sets. truncated_at is
    the first radius the vertex budget refused to expand, if any.
    """

    center: str
    rows: tuple
    truncated_at: Optional[int] = None

    def ratios(self) -> list[float]:
        return [float(r) for _, _, _, r in self.rows]

    def last_ratio(self) -> float:
        return float(self.rows[-1][3])


@dataclass(frozen=True)
class IsoperimetricReport:
    """Result of a bounded search for small boundary-to-volume ratios.

    lower_bound_exact is the exact minimum of Area/Vol over the stated
    scope (all nonempty sets of at most size_cap vertices within the
    searched graph); every upper bound carries its witness set and
    recomputable Area and Vol. folner_trend rides along when a ball scan
    was part of the same diagnostic.
    """

    scope: str
    size_cap: int
    lower_bound_exact: Optional[Fraction]
    best_set: tuple
    best_area: int
    best_vol: int
    upper_bounds: tuple  # (witness set, area, vol, ratio) per set size
    visited: int
    folner_trend: Optional[FolnerTrend] = None
    notes: tuple = ()

    @property
    def best_ratio(self) -> Optional[Fraction]:
        return self.lower_bound_exact


def _connected_subsets(adj: list[list[int]], k: int, visit, budget: int) -> int:
    """Enumerate the connected vertex sets of size <= k exactly once each.

    For every anchor s, sets with minimum element s grow by binary
    include/exclude decisions over a frontier of neighbors > s; each
    connected set corresponds to exactly one decision path. visit(S) is
    called once per set; the return value is the number of visits.
    Raises BudgetExceededError past the budget.
    """
    n = len(adj)
    visited = 0

    def bump():
        nonlocal visited
        visited += 1
        if visited > budget:
            raise BudgetExceededError(
                f"connected-subset enumeration passed {budget} sets",
                visited=visited)

    for s in range(n):
        bump()
        visit([s])
        if k == 1:
            continue
        base_cand = [w for w in adj[s] if w > s]

        def rec(members: list[int], cand: list[int], banned: set):
            if len(members) == k or not cand:
                return
            v, rest = cand[0], cand[1:]
            rec(members, rest, banned | {v})
            grown = members + [v]
            bump()
            visit(grown)
            seen = set(grown) | banned | set(rest)
            extra = [w for w in adj[v] if w > s and w not in seen]
            rec(grown, rest + extra, banned)

        rec([s], base_cand, set())
    return visited


def iota_bruteforce(g: Multigraph, k: int, *, budget: int | None = None,
                    true_degrees: Optional[dict] = None,
                    scope: str = "") -> IsoperimetricReport:
    """Exact minimum of Area/Vol over nonempty vertex sets of size <= k.

    Only connected sets are enumerated, which loses nothing: a
    disconnected F splits into components with no edges between them, so
    Area and Vol are both sums over components and the ratio of F is a
    mediant of the component ratios, hence >= the smallest of them. The
    connected minimum is therefore the global minimum.

    true_degrees substitutes ambient degrees when g is a ball inside a
    larger graph; boundary-vertex scores then reflect the ambient graph
    (edges between ball vertices are the ambient ones already).
    """
    if not isinstance(g, Multigraph):
        raise BadParamsError("brute force needs a finite graph or ball")
    if k < 1:
        raise BadParamsError("size cap must be >= 1")
    k = min(k, g.num_vertices)
    budget = resolve_budget(budget)
    if true_degrees is None:
        deg = list(g.degrees())
    else:
        deg = [true_degrees[lab] for lab in g.labels]
    adj = [[w for w, _ in g.neighbor_mults(i)] for i in range(g.num_vertices)]

    mult: dict = {}
    for (i, j), m in g.edge_mult.items():
        mult[(i, j)] = m
        mult[(j, i)] = m

    best = {"ratio": None, "set": (), "area": 0, "vol": 0}
    per_size: dict = {}

    def visit(members: list[int]):
        vol = 0
        internal = 0
        mset = set(members)
        for v in members:
            vol += deg[v]
            internal += 2 * g.loops_at(v)
            for w in adj[v]:
                if w in mset:
                    internal += mult[(v, w)]
        area = vol - internal
        ratio = Fraction(area, vol)
        size = len(members)
        if size not in per_size or ratio < per_size[size][3]:
            per_size[size] = (tuple(g.labels[v] for v in members),
                              area, vol, ratio)
        if best["ratio"] is None or ratio < best["ratio"]:
            best.update(ratio=ratio,
                        set=tuple(g.labels[v] for v in members),
                        area=area, vol=vol)

    visited = _connected_subsets(adj, k, visit, budget)
    return IsoperimetricReport(
        scope=scope or f"nonempty vertex sets of size <= {k}",
        size_cap=k,
        lower_bound_exact=best["ratio"],
        best_set=best["set"],
        best_area=best["area"],
        best_vol=best["vol"],
        upper_bounds=tuple(per_size[s] for s in sorted(per_size)),
        visited=visited)


def folner_trend(source: GraphSource, x: Optional[str] = None,
                 r_max: int = 40, *, budget: int | None = None) -> FolnerTrend:
    """Area/Vol of the balls B(x, r) for r = 0 .. r_max.

    Expands one BFS layer per radius; every neighbor of a radius-r vertex
    lies within radius r + 1, so the boundary count of B(x, r) needs only
    the next layer. Stops early (with truncated_at set) if the vertex
    budget would be exceeded.
    """
    if isinstance(source, Multigraph):
        raise BadParamsError("ball trends are for neighbor oracles")
    x = x if x is not None else source.root
    budget = resolve_budget(budget)
    dist = {x: 0}
    layer = [x]
    vol = source.degree(x)
    rows = []
    truncated = None
    for r in range(r_max + 1):
        nxt = []
        area = 0
        for v in layer:
            for w, m in source.neighbor_items(v):
                if w == v:
                    continue
                if w not in dist:
                    dist[w] = r + 1
                    nxt.append(w)
                if dist[w] == r + 1:
                    area += m
        if len(dist) > budget:
            truncated = r
            break
        rows.append((r, area, vol, Fraction(area, vol)))
        vol += sum(source.degree(w) for w in nxt)
        layer = nxt
    return FolnerTrend(center=x, rows=tuple(rows), truncated_at=truncated)


@dataclass(frozen=True)
class AmenabilityDiagnostic:
    """Evidence bundle for an infinite graph's amenability.

    verdict is "consistent_amenable", "consistent_nonamenable", or
    "inconclusive"; it may only leave "inconclusive" when the dense-cycle
    prerequisite of the spectral dichotomy was verified near the base
    point. evidence summarizes which way the numbers lean regardless.
    """

    source_name: str
    base: str
    prerequisites: dict
    rho_estimate: SpectralEstimate
    iota_report: Optional[IsoperimetricReport]
    folner: FolnerTrend
    evidence: str
    verdict: str
    notes: tuple


def diagnose(source: GraphSource, x: Optional[str] = None, *,
             n_max: int = 200, r_max: int = 40, k: int = 5,
             iota_radius: int = 4,
             budget: int | None = None) -> AmenabilityDiagnostic:
    """Combine a growth-rate estimate with isoperimetric evidence.

    Consistency gates: amenable-like needs the ball ratios below
    FOLNER_SMALL and the rate estimate at least RHO_NEAR_ONE;
    nonamenable-like needs ball ratios bounded below, a positive exact
    isoperimetric minimum on the scanned scope, and a rate estimate
    at most RHO_AWAY_FROM_ONE. Without a verified dense-cycle
    prerequisite the verdict stays inconclusive (with a warning) and the
    leaning is reported as informational evidence only.
    """
    if isinstance(source, Multigraph):
        raise BadParamsError(
            "diagnosis is for infinite sources; a finite graph has "
            "isoperimetric constant 0 and growth rate 1 outright")
    x = x if x is not None else source.root
    budget = resolve_budget(budget)
    notes = []
    cycle_radius = probe_dense_cycles(source, x, budget=budget)
    verified = cycle_radius is not None
    prerequisites = {
        "dense_cycles_verified": verified,
        "dense_cycle_radius": cycle_radius,
        "degree_bound": source.degree_bound,
    }
    if not verified:
        warnings.warn(PrerequisiteUnverified(
            "no cycle within the probe radius near the base point; the "
            "spectral dichotomy does not apply (trees are the typical "
            "case), so the verdict stays inconclusive"))
        notes.append("dense-cycle prerequisite unverified: evidence below "
                     "is informational only")
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        rho = spectral_radius_nbrw(source, x, n_max=n_max, budget=budget)
    # exponential-growth sources would soak the whole budget into the
    # ball scan; a modest cap shows the same trend
    folner = folner_trend(source, x, r_max, budget=min(budget, 200_000))
    if folner.truncated_at is not None:
        notes.append(f"ball trend stopped at radius {folner.truncated_at} "
                     "by the vertex budget")
    iota = None
    k_used = k
    while k_used >= 1:
        try:
            view = ball(source, x, iota_radius, max_vertices=budget)
            iota = iota_bruteforce(
                view.graph, k_used, budget=budget,
                true_degrees=view.true_degrees,
                scope=f"connected sets of size <= {k_used} in the radius-"
                      f"{iota_radius} ball at {x!r}, ambient degrees")
            break
        except BudgetExceededError:
            notes.append(f"subset scan at size cap {k_used} exceeded the "
                         "budget; retrying smaller")
            k_used -= 1
    if iota is not None and iota.folner_trend is None:
        iota = IsoperimetricReport(
            scope=iota.scope, size_cap=iota.size_cap,
            lower_bound_exact=iota.lower_bound_exact, best_set=iota.best_set,
            best_area=iota.best_area, best_vol=iota.best_vol,
            upper_bounds=iota.upper_bounds, visited=iota.visited,
            folner_trend=folner, notes=iota.notes)

    rho_val = float(rho.value)
    ratios = folner.ratios()
    amenable_like = (rho_val >= RHO_NEAR_ONE
                     and ratios[-1] < FOLNER_SMALL)
    nonamenable_like = (rho_val <= RHO_AWAY_FROM_ONE
                        and min(ratios[1:] or ratios) >= FOLNER_BOUNDED_BELOW
                        and iota is not None
                        and iota.lower_bound_exact is not None
                        and iota.lower_bound_exact > 0)
    if amenable_like:
        evidence = "amenable_like"
        notes.append("ball ratios fall below the smallness threshold and "
                     "the rate estimate sits near 1")
    elif nonamenable_like:
        evidence = "nonamenable_like"
        notes.append("ball ratios stay bounded below, the scanned "
                     "isoperimetric minimum is positive, and the rate "
                     "estimate stays away from 1")
    else:
        evidence = "mixed"
        notes.append("estimates do not line up on one side of the "
                     "dichotomy at these parameters")
    verdict = "inconclusive"
    if verified and evidence == "amenable_like":
        verdict = "consistent_amenable"
    elif verified and evidence == "nonamenable_like":
        verdict = "consistent_nonamenable"
    return AmenabilityDiagnostic(
        source_name=source.name, base=x, prerequisites=prerequisites,
        rho_estimate=rho, iota_report=iota, folner=folner,
        evidence=evidence, verdict=verdict, notes=tuple(notes))
