"""Walk distributions and their long-run behavior.

Covers exact and floating n-step distributions for the non-backtracking
walk and the simple walk, convergence profiles against the stationary
targets, growth-rate (spectral radius) estimates, operator norms, Monte
Carlo sampling, and the uniform-irreducibility constants.

Infinite graphs enter through truncated balls: an n-step walk from x
never leaves the ball of radius n, and transition rows are built from
true ambient degrees, so truncation is exact rather than approximate.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .budgets import resolve_budget
from .edge_space import NbrwKernel, analyze_structure, build_kernel
from .errors import (
    AllZeroError,
    BadParamsError,
    BudgetExceededError,
    DenseCyclesUnverified,
)
from .linalg import RowRational, gram_operator_norm
from .multigraph import Multigraph, ball, contains_cycle, is_bipartite
from .sources import GraphSource

__all__ = [
    "VertexDistribution",
    "LimitProfile",
    "SpectralEstimate",
    "UniformIrreducibilityReport",
    "nbrw_nstep",
    "nbrw_return_sequence",
    "nbrw_limit_profile",
    "srw_kernel",
    "srw_nstep",
    "srw_limit_profile",
    "root_test_estimate",
    "probe_dense_cycles",
    "spectral_radius_nbrw",
    "spectral_radius_srw",
    "qe_operator_norm",
    "monte_carlo_nbrw",
    "uniform_irreducibility_check",
]

_EXACT_WORK_LIMIT = 500_000  # edge-updates; rational mode refuses beyond this


@dataclass(frozen=True)
class VertexDistribution:
    """Distribution of a walk's position, keyed by vertex label.

    Entries absent from values are zero. Exact instances hold Fractions
    and sum to exactly 1.
    """

    start: str
    n: int
    exact: bool
    values: dict

    def __getitem__(self, label: str):
        return self.values.get(label, Fraction(0) if self.exact else 0.0)

    def support(self) -> set:
        return {k for k, v in self.values.items() if v}

    def total(self):
        return sum(self.values.values())

    def tv_distance(self, other: "VertexDistribution") -> float:
        keys = set(self.values) | set(other.values)
        return 0.5 * float(sum(abs(self[k] - other[k]) for k in keys))


def _resolve_label(g, x: Optional[str]) -> str:
    if x is not None:
        return x
    return g.labels[0] if isinstance(g, Multigraph) else g.root


# --------------------------------------------------------------------------
# finite-graph stepping

def _edge_start_vector(kernel: NbrwKernel, xi: int, exact: bool):
    space = kernel.space
    deg = len(space.out_edges[xi])
    mass = Fraction(1, deg) if exact else 1.0 / deg
    zero = Fraction(0) if exact else 0.0
    v = [zero] * space.num_edges
    for e in space.out_edges[xi]:
        v[e] = mass
    return v


def _aggregate_by_head(kernel: NbrwKernel, v, exact: bool) -> dict:
    space = kernel.space
    g = space.graph
    zero = Fraction(0) if exact else 0.0
    out: dict = {}
    for e, mass in enumerate(v):
        if mass:
            lab = g.labels[space.heads[e]]
            out[lab] = out.get(lab, zero) + mass
    return out


def _finite_vertex_masses(g: Multigraph, x: str, n_max: int, exact: bool,
                          kernel: NbrwKernel | None = None):
    """Yield (n, masses dict) for n = 0 .. n_max on a finite graph."""
    xi = g.index(x)
    one = Fraction(1) if exact else 1.0
    yield 0, {x: one}
    if n_max == 0:
        return
    kernel = kernel or build_kernel(g)
    v = _edge_start_vector(kernel, xi, exact)
    yield 1, _aggregate_by_head(kernel, v, exact)
    for n in range(2, n_max + 1):
        v = kernel.matrix.apply_left(v, exact=exact)
        yield n, _aggregate_by_head(kernel, v, exact)


# --------------------------------------------------------------------------
# truncated systems for neighbor oracles

class _TruncatedEdgeSystem:
    """Oriented edges of a ball, with transition rows from true degrees.

    Rows exist only for edges whose head is interior (distance < radius);
    a walk of length <= radius started at the center never needs the
    missing rows, so results are exact.
    """

    def __init__(self, source: GraphSource, x: str, radius: int, budget: int):
        view = ball(source, x, radius, max_vertices=budget)
        g = view.graph
        self.view = view
        self.center = x
        self.radius = radius
        self.labels = g.labels
        self.true_deg = [view.true_degrees[lab] for lab in g.labels]
        dist_from_center = _bfs_distances(g, g.index(x))
        tails: list[int] = []
        heads: list[int] = []
        out: list[list[int]] = [[] for _ in range(g.num_vertices)]
        for (i, j), m in sorted(g.edge_mult.items()):
            for _ in range(m):
                e = len(tails)
                tails.extend((i, j))
                heads.extend((j, i))
                out[i].append(e)
                out[j].append(e + 1)
        for i in sorted(g.loops):
            for _ in range(g.loops[i]):
                e = len(tails)
                tails.extend((i, i))
                heads.extend((i, i))
                out[i].extend((e, e + 1))
        self.tails = tails
        self.heads = heads
        self.out_edges = out
        self.num_edges = len(tails)
        self.interior = [dist_from_center[v] < radius for v in range(g.num_vertices)]
        rows = []
        denoms = []
        for e in range(self.num_edges):
            h = heads[e]
            if self.interior[h]:
                succ = [f for f in out[h] if f != e ^ 1]
                # interior heads have all their neighbors inside the ball
                assert len(succ) == self.true_deg[h] - 1
                rows.append([(f, 1) for f in succ])
                denoms.append(self.true_deg[h] - 1)
            else:
                rows.append([])
                denoms.append(1)
        self.matrix = RowRational.from_rows(rows, denoms)

    def start_vector_float(self, xi: int) -> np.ndarray:
        v = np.zeros(self.num_edges)
        deg = len(self.out_edges[xi])
        for e in self.out_edges[xi]:
            v[e] = 1.0 / deg
        return v

    def masses_by_head(self, v, exact: bool) -> dict:
        zero = Fraction(0) if exact else 0.0
        out: dict = {}
        for e, mass in enumerate(v):
            if mass:
                lab = self.labels[self.heads[e]]
                out[lab] = out.get(lab, zero) + mass
        return out


def _bfs_distances(g: Multigraph, start: int) -> dict:
    dist = {start: 0}
    frontier = [start]
    while frontier:
        nxt = []
        for u in frontier:
            for w, _ in g.neighbor_mults(u):
                if w not in dist:
                    dist[w] = dist[u] + 1
                    nxt.append(w)
        frontier = nxt
    return dist


def _source_vertex_masses(source: GraphSource, x: str, n_max: int, exact: bool,
                          budget: int, targets: Optional[set] = None):
    """Yield (n, masses) for n = 0 .. n_max from a neighbor oracle.

    When targets is given, masses dicts are restricted to those labels.
    """
    one = Fraction(1) if exact else 1.0

    def restrict(d: dict) -> dict:
        if targets is None:
            return d
        return {k: v for k, v in d.items() if k in targets}

    yield 0, restrict({x: one})
    if n_max == 0:
        return
    sys = _TruncatedEdgeSystem(source, x, n_max, budget)
    if exact:
        if sys.num_edges * n_max > _EXACT_WORK_LIMIT:
            raise BudgetExceededError(
                f"exact mode over {sys.num_edges} oriented edges for {n_max} "
                "steps exceeds the rational work limit; use float mode",
                visited=sys.num_edges * n_max)
        xi = sys.labels.index(x)
        deg = len(sys.out_edges[xi])
        v = [Fraction(0)] * sys.num_edges
        for e in sys.out_edges[xi]:
            v[e] = Fraction(1, deg)
        yield 1, restrict(sys.masses_by_head(v, True))
        for n in range(2, n_max + 1):
            v = sys.matrix.apply_left(v, exact=True)
            yield n, restrict(sys.masses_by_head(v, True))
    else:
        mat = sys.matrix.to_scipy().T.tocsr()  # left action as matvec
        v = sys.start_vector_float(sys.labels.index(x))
        heads = np.asarray(sys.heads)
        num_v = len(sys.labels)
        for n in range(1, n_max + 1):
            if n > 1:
                v = mat @ v
            by_vertex = np.bincount(heads, weights=v, minlength=num_v)
            nz = np.flatnonzero(by_vertex)
            yield n, restrict({sys.labels[i]: float(by_vertex[i]) for i in nz})


def _vertex_masses(g, x: str, n_max: int, exact: bool, budget: int,
                   targets: Optional[set] = None):
    if isinstance(g, Multigraph):
        for n, masses in _finite_vertex_masses(g, x, n_max, exact):
            if targets is not None:
                masses = {k: v for k, v in masses.items() if k in targets}
            yield n, masses
    else:
        yield from _source_vertex_masses(g, x, n_max, exact, budget, targets)


def nbrw_nstep(g, x: Optional[str] = None, n: int = 1, *, exact: bool = False,
               budget: int | None = None) -> VertexDistribution:
    """Distribution of the non-backtracking walk after exactly n steps.

    The walk starts at x with its first oriented edge uniform over the
    deg(x) edges leaving x. Works on finite multigraphs and on neighbor
    oracles (via an exact ball truncation of radius n).
    """
    if n < 0:
        raise BadParamsError("step count must be >= 0")
    x = _resolve_label(g, x)
    budget = resolve_budget(budget)
    masses = None
    for k, m in _vertex_masses(g, x, n, exact, budget):
        if k == n:
            masses = m
    return VertexDistribution(start=x, n=n, exact=exact, values=masses)


def nbrw_return_sequence(g, x: Optional[str] = None, y: Optional[str] = None,
                         n_max: int = 50, *, exact: bool = False,
                         budget: int | None = None) -> list:
    """[q^(0)(x,y), ..., q^(n_max)(x,y)]; y defaults to x."""
    x = _resolve_label(g, x)
    y = x if y is None else y
    budget = resolve_budget(budget)
    zero = Fraction(0) if exact else 0.0
    return [m.get(y, zero)
            for _, m in _vertex_masses(g, x, n_max, exact, budget, targets={y})]


# --------------------------------------------------------------------------
# limit profiles

@dataclass(frozen=True)
class LimitProfile:
    """Trajectories of q^(n)(x, y) against their stationary targets.

    trajectories[y][n] is the n-step mass at y for n = 0 .. n_max, and
    cesaro[y][k] averages steps 1 .. k+1. The pointwise target is
    deg(y) / total degree, doubled within the reachable parity class for
    bipartite walks; residue_tails[y][r] is the last trajectory value with
    n = r mod period.
    """

    chain: str
    start: str
    n_max: int
    targets: tuple
    period: Optional[int]
    bipartite: Optional[bool]
    trajectories: dict
    cesaro: dict
    pointwise_target: Optional[dict]
    cesaro_target: Optional[dict]
    residue_tails: dict
    notes: tuple = ()

    def final_cesaro_residual(self) -> float:
        if self.cesaro_target is None:
            return float("nan")
        return max(abs(float(self.cesaro[y][-1]) - float(self.cesaro_target[y]))
                   for y in self.targets)

    def residue_residuals(self, y: str, limits: dict) -> dict:
        """abs difference between each residue tail at y and a claimed
        per-residue limit."""
        return {r: abs(float(self.residue_tails[y][r]) - float(v))
                for r, v in limits.items()}


def _profile(chain: str, x: str, n_max: int, targets, exact: bool,
             masses_iter, period: Optional[int],
             bipartite: Optional[bool], pointwise, cesaro_target, notes):
    zero = Fraction(0) if exact else 0.0
    traj = {y: [] for y in targets}
    for _, masses in masses_iter:
        for y in targets:
            traj[y].append(masses.get(y, zero))
    cesaro = {}
    for y in targets:
        acc = zero
        ces = []
        for n in range(1, n_max + 1):
            acc += traj[y][n]
            ces.append(acc / n)
        cesaro[y] = ces
    tails: dict = {}
    p = period or 1
    for y in targets:
        tails[y] = {}
        for r in range(p):
            idx = [n for n in range(1, n_max + 1) if n % p == r]
            if idx:
                tails[y][r] = traj[y][idx[-1]]
    return LimitProfile(
        chain=chain, start=x, n_max=n_max, targets=tuple(targets),
        period=period, bipartite=bipartite, trajectories=traj, cesaro=cesaro,
        pointwise_target=pointwise, cesaro_target=cesaro_target,
        residue_tails=tails, notes=tuple(notes))


def nbrw_limit_profile(g, x: Optional[str] = None, n_max: int = 200, *,
                       targets: Optional[Sequence[str]] = None,
                       exact: bool = False,
                       budget: int | None = None) -> LimitProfile:
    """Convergence profile of the non-backtracking walk from x.

    On a finite graph the stationary target at y is deg(y) / total degree;
    the pointwise version applies when the edge chain is irreducible and
    aperiodic, and within parity classes (doubled) when it has period 2.
    On a neighbor oracle all pointwise masses tend to zero; targets must
    be supplied explicitly there.
    """
    x = _resolve_label(g, x)
    budget = resolve_budget(budget)
    notes = []
    if isinstance(g, Multigraph):
        targets = tuple(targets) if targets is not None else g.labels
        kernel = build_kernel(g)
        structure = analyze_structure(kernel)
        period = structure.period
        bip = bool(is_bipartite(g))
        total = g.num_oriented_edges
        cesaro_target = {y: _as_mode(Fraction(g.degree(y), total), exact)
                         for y in targets}
        pointwise = None
        if structure.irreducible and period == 1:
            pointwise = dict(cesaro_target)
            notes.append("irreducible aperiodic edge chain: pointwise limit "
                         "equals the degree-proportional target")
        elif structure.irreducible and period == 2:
            pointwise = {y: _as_mode(Fraction(2 * g.degree(y), total), exact)
                         for y in targets}
            notes.append("period-2 edge chain: within the reachable parity "
                         "class the limit doubles to 2 deg(y) / total degree")
        else:
            notes.append("edge chain is periodic or reducible: only the "
                         "averaged (Cesaro) limit is asserted")
        masses = _finite_vertex_masses(g, x, n_max, exact, kernel)
        return _profile("nbrw", x, n_max, targets, exact, masses,
                        period, bip, pointwise, cesaro_target, notes)
    if targets is None:
        raise BadParamsError("neighbor-oracle profiles need explicit targets")
    targets = tuple(targets)
    zero = Fraction(0) if exact else 0.0
    notes.append("infinite graph: every pointwise mass tends to zero")
    masses = _source_vertex_masses(g, x, n_max, exact, budget, set(targets))
    return _profile("nbrw", x, n_max, targets, exact, masses,
                    None, None, {y: zero for y in targets},
                    {y: zero for y in targets}, notes)


def _as_mode(fr: Fraction, exact: bool):
    return fr if exact else float(fr)


# --------------------------------------------------------------------------
# simple random walk

def srw_kernel(g: Multigraph) -> RowRational:
    """Vertex chain p(u, w) = multiplicity(u, w) / deg(u); a loop at u
    contributes 2 / deg(u) on the diagonal."""
    rows = []
    denoms = []
    for u in range(g.num_vertices):
        row = [(w, m) for w, m in g.neighbor_mults(u)]
        lo = g.loops_at(u)
        if lo:
            row.append((u, 2 * lo))
        rows.append(row)
        denoms.append(g.degree(u))
    return RowRational.from_rows(rows, denoms)


def _finite_srw_masses(g: Multigraph, x: str, n_max: int, exact: bool):
    xi = g.index(x)
    mat = srw_kernel(g)
    one = Fraction(1) if exact else 1.0
    zero = Fraction(0) if exact else 0.0
    v = [zero] * g.num_vertices
    v[xi] = one
    yield 0, {x: one}
    for n in range(1, n_max + 1):
        v = mat.apply_left(v, exact=exact)
        yield n, {g.labels[i]: m for i, m in enumerate(v) if m}


def _source_srw_masses(source: GraphSource, x: str, n_max: int, exact: bool,
                       budget: int):
    view = ball(source, x, n_max, max_vertices=budget)
    g = view.graph
    dist = _bfs_distances(g, g.index(x))
    rows = []
    denoms = []
    for u in range(g.num_vertices):
        if dist[u] < n_max:
            row = [(w, m) for w, m in g.neighbor_mults(u)]
            lo = g.loops_at(u)
            if lo:
                row.append((u, 2 * lo))
            # interior vertices keep their full ambient neighborhood
            assert sum(m for _, m in row) == view.true_degrees[g.labels[u]]
            rows.append(row)
            denoms.append(view.true_degrees[g.labels[u]])
        else:
            rows.append([])
            denoms.append(1)
    mat = RowRational.from_rows(rows, denoms)
    one = Fraction(1) if exact else 1.0
    zero = Fraction(0) if exact else 0.0
    yield 0, {x: one}
    if exact:
        v = [zero] * g.num_vertices
        v[g.index(x)] = one
        for n in range(1, n_max + 1):
            v = mat.apply_left(v, exact=True)
            yield n, {g.labels[i]: m for i, m in enumerate(v) if m}
    else:
        sm = mat.to_scipy().T.tocsr()
        v = np.zeros(g.num_vertices)
        v[g.index(x)] = 1.0
        for n in range(1, n_max + 1):
            v = sm @ v
            nz = np.flatnonzero(v)
            yield n, {g.labels[i]: float(v[i]) for i in nz}


def srw_nstep(g, x: Optional[str] = None, n: int = 1, *, exact: bool = False,
              budget: int | None = None) -> VertexDistribution:
    """Distribution of the simple random walk after exactly n steps."""
    if n < 0:
        raise BadParamsError("step count must be >= 0")
    x = _resolve_label(g, x)
    budget = resolve_budget(budget)
    it = (_finite_srw_masses(g, x, n, exact) if isinstance(g, Multigraph)
          else _source_srw_masses(g, x, n, exact, budget))
    masses = None
    for k, m in it:
        if k == n:
            masses = m
    return VertexDistribution(start=x, n=n, exact=exact, values=masses)


def srw_limit_profile(g: Multigraph, x: Optional[str] = None, n_max: int = 200,
                      *, targets: Optional[Sequence[str]] = None,
                      exact: bool = False) -> LimitProfile:
    """Convergence profile of the simple walk on a finite graph, with the
    same degree-proportional targets as the non-backtracking profile."""
    if not isinstance(g, Multigraph):
        raise BadParamsError("simple-walk profiles are for finite graphs")
    x = _resolve_label(g, x)
    targets = tuple(targets) if targets is not None else g.labels
    bip = is_bipartite(g)
    period = 2 if bip else 1
    total = g.num_oriented_edges
    cesaro_target = {y: _as_mode(Fraction(g.degree(y), total), exact)
                     for y in targets}
    if bip:
        pointwise = {y: _as_mode(Fraction(2 * g.degree(y), total), exact)
                     for y in targets}
        notes = ["bipartite: period 2, parity-class limits are doubled"]
    else:
        pointwise = dict(cesaro_target)
        notes = ["non-bipartite: aperiodic, pointwise limit holds"]
    masses = _finite_srw_masses(g, x, n_max, exact)
    return _profile("srw", x, n_max, targets, exact, masses,
                    period, bool(bip), pointwise, cesaro_target, notes)


# --------------------------------------------------------------------------
# growth-rate estimation

@dataclass(frozen=True)
class SpectralEstimate:
    """Estimate of a growth rate limsup c_n^(1/n).

    method is "exact_eigen" when the value is structural, "root_test" for
    the windowed n-th root maximum (a certified lower bound with a
    nondecreasing trend), and "subsequence_root" when a residue
    subsequence visibly stabilized (exact geometric tails, or bounded
    positive tails forcing the limit 1).
    """

    value: object
    method: str
    n_used: int
    period: Optional[int] = None
    residue_class: Optional[int] = None
    lower_bound_only: bool = False
    trend_tail: tuple = ()
    notes: tuple = ()

    def as_float(self) -> float:
        return float(self.value)

    @property
    def monotonicity_note(self) -> str:
        return "; ".join(self.notes)


def root_test_estimate(values: Sequence, *, window: int | None = None) -> SpectralEstimate:
    """Growth-rate estimate for a nonnegative sequence c_0 .. c_N.

    Policy, in order: restrict to the indices with c_n > 0 in the final
    window (a quarter of the range by default); an exactly geometric
    residue tail gives its ratio; a tail pinned at a positive level, or
    Cesaro averages that have settled at a positive level, force the
    rate 1 (non-decaying coefficients); otherwise report the windowed
    maximum of c_n^(1/n), which only ever underestimates the limsup.
    """
    n_max = len(values) - 1
    positive = [n for n in range(1, n_max + 1) if values[n] > 0]
    if not positive:
        raise AllZeroError("all coefficients beyond n = 0 vanish")
    window = window or max(2, -(-n_max // 4))
    tail = [n for n in positive if n > n_max - window]
    if not tail:
        tail = positive[-min(len(positive), window):]
    # residue structure of the admissible indices in the tail
    gaps = {b - a for a, b in zip(tail, tail[1:])}
    stride = gaps.pop() if len(gaps) == 1 else None

    if stride and len(tail) >= 3:
        ratios = [_ratio(values[b], values[a])
                  for a, b in zip(tail, tail[1:])]
        exact_mode = all(isinstance(values[n], (Fraction, int)) for n in tail)
        if exact_mode and len(set(ratios)) == 1:
            r = ratios[0]
            value = r if stride == 1 else float(r) ** (1.0 / stride)
            return SpectralEstimate(
                value=value, method="subsequence_root", n_used=tail[-1],
                period=stride, residue_class=tail[-1] % stride,
                lower_bound_only=False,
                trend_tail=tuple(float(v) for v in ratios[-4:]),
                notes=("tail is exactly geometric along its residue class",))
        floats = [float(values[n]) for n in tail]
        spread = (max(floats) - min(floats)) / max(floats)
        if spread <= 1e-6 and min(floats) > 1e-12:
            return SpectralEstimate(
                value=1.0, method="subsequence_root", n_used=tail[-1],
                period=stride, residue_class=tail[-1] % stride,
                lower_bound_only=False,
                trend_tail=tuple(floats[-4:]),
                notes=("tail stabilized at a positive level, so the "
                       "coefficients do not decay and the rate is 1",))
    # Cesaro detector: averages of a sequence with positive limit points
    # settle at a positive level, while averages of any decaying sequence
    # keep shrinking visibly across a constant-fraction window
    acc = 0.0
    cesaro = []
    for n in range(1, n_max + 1):
        acc += float(values[n])
        cesaro.append(acc / n)
    ces_tail = cesaro[-window:]
    ces_spread = (max(ces_tail) - min(ces_tail)) / max(ces_tail) \
        if max(ces_tail) > 0 else 1.0
    if len(ces_tail) >= 3 and ces_spread <= 0.05 and min(ces_tail) > 1e-9:
        return SpectralEstimate(
            value=1.0, method="cesaro_root", n_used=n_max,
            period=stride, residue_class=None,
            lower_bound_only=False,
            trend_tail=tuple(ces_tail[-4:]),
            notes=("Cesaro averages stabilized at a positive level, so "
                   "the coefficients cannot decay exponentially",))
    roots = [(float(values[n]) ** (1.0 / n), n) for n in tail]
    best, n_best = max(roots)
    return SpectralEstimate(
        value=best, method="root_test", n_used=n_best,
        period=stride, residue_class=(n_best % stride) if stride else None,
        lower_bound_only=True,
        trend_tail=tuple(r for r, _ in roots[-6:]),
        notes=("windowed n-th root maximum: a lower bound whose trend "
               "only improves with larger n_max",))


def _ratio(b, a):
    if isinstance(b, (Fraction, int)) and isinstance(a, (Fraction, int)):
        return Fraction(b) / Fraction(a)
    return float(b) / float(a)


def probe_dense_cycles(source: GraphSource, x: Optional[str] = None, *,
                       span: int = 2, radius_cap: int = 4,
                       budget: int | None = None) -> Optional[int]:
    """Try to certify that every vertex near x has a cycle within a small
    ball. Returns the verified radius, or None when some probed center has
    no cycle within radius_cap (as on trees)."""
    x = _resolve_label(source, x)
    budget = resolve_budget(budget)
    centers = ball(source, x, span, max_vertices=budget).graph.labels
    worst = 0
    for c in centers:
        found = None
        for r in range(radius_cap + 1):
            if contains_cycle(ball(source, c, r, max_vertices=budget).graph):
                found = r
                break
        if found is None:
            return None
        worst = max(worst, found)
    return worst


def _geodesic_ray_coefficients(source: GraphSource, x: str, n_max: int) -> list:
    """Exact q^(n)(x, y_n) down a distance-increasing ray y_0 = x, y_1, ...

    On a graph whose balls around the ray are acyclic the geodesic is the
    unique non-backtracking path from x to y_n, so the product of the
    branching factors is the full n-step mass; in general it is still a
    single-path lower bound.
    """
    seen = {x}
    cur = x
    coeffs = [Fraction(1)]
    mass = Fraction(1)
    for n in range(1, n_max + 1):
        options = [w for w, _ in source.neighbor_items(cur) if w not in seen]
        if not options:
            raise BadParamsError(f"ray from {x!r} dead-ends at {cur!r}")
        nxt = min(options)
        mass *= Fraction(1, source.degree(cur) - (0 if n == 1 else 1))
        seen.add(nxt)
        cur = nxt
        coeffs.append(mass)
    return coeffs


def spectral_radius_nbrw(g, x: Optional[str] = None, y: Optional[str] = None,
                         n_max: int = 200, *, exact: bool | None = None,
                         probe_radius: int = 4,
                         budget: int | None = None) -> SpectralEstimate:
    """Spectral radius of the non-backtracking transition operator.

    Finite connected graphs give exactly 1 (row-stochastic irreducible
    kernel). For neighbor oracles the estimate is a root test on return
    masses q^(n)(x, x) once short cycles are certified near x; without
    that certificate (trees) it degrades, with a warning, to the geodesic
    ray coefficients, which decay at rate 1 / (branching factor).
    """
    if isinstance(g, Multigraph):
        return SpectralEstimate(
            value=Fraction(1), method="exact_eigen", n_used=0,
            notes=("finite connected graph: the kernel is row-stochastic "
                   "with an invariant counting measure, so the radius is 1",))
    x = _resolve_label(g, x)
    budget = resolve_budget(budget)
    verified = probe_dense_cycles(g, x, radius_cap=probe_radius, budget=budget)
    if verified is None:
        warnings.warn(DenseCyclesUnverified(
            "no cycle found near the base point; falling back to geodesic "
            "ray coefficients"))
        coeffs = _geodesic_ray_coefficients(g, x, n_max)
        est = root_test_estimate(coeffs)
        return SpectralEstimate(
            value=est.value, method=est.method, n_used=est.n_used,
            period=est.period, residue_class=est.residue_class,
            lower_bound_only=est.lower_bound_only, trend_tail=est.trend_tail,
            notes=est.notes + (
                "cycles unverified within the probe radius: the estimate "
                "follows a moving target along a geodesic ray",))
    seq = nbrw_return_sequence(g, x, y, n_max, exact=bool(exact), budget=budget)
    est = root_test_estimate(seq)
    return SpectralEstimate(
        value=est.value, method=est.method, n_used=est.n_used,
        period=est.period, residue_class=est.residue_class,
        lower_bound_only=est.lower_bound_only, trend_tail=est.trend_tail,
        notes=est.notes + (
            f"short cycles certified within radius {verified} near {x!r}",))


def spectral_radius_srw(g, x: Optional[str] = None, n_max: int = 200, *,
                        budget: int | None = None) -> SpectralEstimate:
    """Spectral radius of the simple-walk operator on l2 with degree
    weights; 1 on finite connected graphs, root test on returns otherwise."""
    if isinstance(g, Multigraph):
        mat = srw_kernel(g)
        degs = np.array(g.degrees(), dtype=float)
        sqrt_d = np.sqrt(degs)
        v = sqrt_d / np.linalg.norm(sqrt_d)
        # (I + P) / 2 keeps the bipartite -1 eigenvalue from stalling the
        # iteration; undo the shift at the end
        a = mat.to_scipy()
        ray = None
        for _ in range(5000):
            w = 0.5 * (v + np.asarray(a @ v))
            norm = np.sqrt(float((degs * w * w).sum()))
            w /= norm
            new_ray = float((degs * w * (0.5 * (w + np.asarray(a @ w)))).sum())
            if ray is not None and abs(new_ray - ray) < 1e-15:
                ray = new_ray
                break
            ray = new_ray
            v = w
        value = 2.0 * ray - 1.0
        return SpectralEstimate(
            value=value, method="exact_eigen", n_used=0,
            notes=("power iteration in the degree-weighted inner product",))
    x = _resolve_label(g, x)
    budget = resolve_budget(budget)
    seq = [m.get(x, 0.0)
           for _, m in _source_srw_masses(g, x, n_max, False, budget)]
    est = root_test_estimate(seq)
    return SpectralEstimate(
        value=est.value, method=est.method, n_used=est.n_used,
        period=est.period, residue_class=est.residue_class,
        lower_bound_only=True, trend_tail=est.trend_tail,
        notes=est.notes)


def qe_operator_norm(g, *, tol: float = 1e-13, seed: int = 0,
                     max_iter: int = 5000) -> float:
    """Operator norm of the non-backtracking kernel on Euclidean edge
    space, via power iteration on the Gram matrix. Accepts a finite
    multigraph or a prebuilt kernel."""
    kernel = build_kernel(g) if isinstance(g, Multigraph) else g
    return gram_operator_norm(kernel.matrix, tol=tol, max_iter=max_iter,
                              seed=seed)


# --------------------------------------------------------------------------
# sampling

def monte_carlo_nbrw(g: Multigraph, x: Optional[str] = None, n: int = 1, *,
                     trials: int = 10000, seed: int = 0) -> VertexDistribution:
    """Empirical n-step distribution from seeded trajectories.

    One row of the uniform random matrix drives one trial, so enlarging
    `trials` extends the sample without disturbing earlier trials, and a
    fixed seed reproduces exactly.
    """
    if not isinstance(g, Multigraph):
        raise BadParamsError("sampling runs on finite graphs")
    if n < 0 or trials <= 0:
        raise BadParamsError("need n >= 0 and trials > 0")
    x = _resolve_label(g, x)
    xi = g.index(x)
    if n == 0:
        return VertexDistribution(start=x, n=0, exact=False, values={x: 1.0})
    kernel = build_kernel(g)
    space = kernel.space
    succ = [space.successors(e) for e in range(space.num_edges)]
    branch = np.array([len(s) for s in succ])
    pad = np.zeros((space.num_edges, int(branch.max())), dtype=np.int64)
    for e, s in enumerate(succ):
        pad[e, : len(s)] = s
    out0 = np.array(space.out_edges[xi], dtype=np.int64)
    rng = np.random.default_rng(seed)
    u = rng.random((trials, n))
    cur = out0[(u[:, 0] * len(out0)).astype(np.int64)]
    for k in range(1, n):
        cur = pad[cur, (u[:, k] * branch[cur]).astype(np.int64)]
    finals = np.asarray(space.heads)[cur]
    counts = np.bincount(finals, minlength=g.num_vertices)
    values = {g.labels[i]: float(counts[i]) / trials
              for i in range(g.num_vertices) if counts[i]}
    return VertexDistribution(start=x, n=n, exact=False, values=values)


# --------------------------------------------------------------------------
# uniform irreducibility

@dataclass(frozen=True)
class UniformIrreducibilityReport:
    """Constants (K, eps0) with: every ordered pair of edges adjacent in
    the undirected transition shadow satisfies q^(k)(e, f) >= eps0 for
    some k <= K.

    minimal_k is the least feasible K; eps0_at_minimal_k the best constant
    there. k_from_turnaround = 2 L + 1 and eps0_from_degrees =
    (max degree - 1)^(-(2 L + 1)) are the structural fallback bounds.
    """

    feasible: bool
    reason: Optional[str]
    minimal_k: Optional[int] = None
    eps0_at_minimal_k: Optional[Fraction] = None
    turnaround: Optional[int] = None
    k_from_turnaround: Optional[int] = None
    eps0_from_degrees: Optional[Fraction] = None
    requested: Optional[tuple] = None

    def __bool__(self) -> bool:
        return self.feasible


def uniform_irreducibility_check(g: Multigraph, k: int | None = None,
                                 eps0: Fraction | float | None = None
                                 ) -> UniformIrreducibilityReport:
    kernel = build_kernel(g)
    space = kernel.space
    structure = analyze_structure(kernel)
    if not structure.irreducible:
        return UniformIrreducibilityReport(
            feasible=False,
            reason=f"edge chain splits into {len(structure.components)} "
                   "communicating classes")
    succ = [space.successors(e) for e in range(space.num_edges)]
    pairs = sorted({(e, f) for e in range(space.num_edges)
                    for f in succ[e] + space.predecessors(e)})
    # directed BFS distance realizes the least k with q^(k)(e, f) > 0
    need_k = 0
    for e in range(space.num_edges):
        dist = {e: 0}
        frontier = [e]
        while frontier:
            nxt = []
            for a in frontier:
                for b in succ[a]:
                    if b not in dist:
                        dist[b] = dist[a] + 1
                        nxt.append(b)
            frontier = nxt
        for (a, f) in pairs:
            if a == e:
                need_k = max(need_k, dist[f])
    # exact powers give the attained constant; when a larger K is under
    # test, extra powers can only improve the per-pair maxima
    k_scan = max(need_k, k or 0)
    m = kernel.matrix
    rows = []
    for e in range(space.num_edges):
        v = [Fraction(0)] * space.num_edges
        v[e] = Fraction(1)
        rows.append(v)
    best: dict = {p: Fraction(0) for p in pairs}
    attained = Fraction(0)
    for step in range(1, k_scan + 1):
        rows = [m.apply_left(v, exact=True) for v in rows]
        for (e, f) in pairs:
            if rows[e][f] > best[(e, f)]:
                best[(e, f)] = rows[e][f]
        if step == need_k:
            attained = min(best.values())
    el = structure.turnaround_bound
    max_deg = max(g.degrees())
    requested = None
    if k is not None and eps0 is not None:
        ok = k >= need_k and Fraction(eps0) <= min(best.values())
        requested = (k, Fraction(eps0), ok)
    return UniformIrreducibilityReport(
        feasible=True, reason=None, minimal_k=need_k,
        eps0_at_minimal_k=attained, turnaround=el,
        k_from_turnaround=None if el is None else 2 * el + 1,
        eps0_from_degrees=None if el is None
        else Fraction(1, (max_deg - 1) ** (2 * el + 1)),
        requested=requested)
