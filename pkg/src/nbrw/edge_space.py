"""Oriented edges, the non-backtracking transition kernel, and its
directed-graph structure (communicating classes, periods, turnaround).

Each unoriented edge contributes two oriented copies stored at adjacent
indices, so reversal is e ^ 1. A loop likewise contributes two oriented
copies that are each other's reversal. From an oriented edge e the walk
moves to any edge leaving head(e) except the reversal of e, uniformly;
the row denominator is deg(head(e)) - 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Optional

from .errors import DegreeError
from .linalg import RowRational
from .multigraph import Multigraph

__all__ = [
    "OrientedEdgeSpace",
    "NbrwKernel",
    "OlgStructure",
    "ReversalSymmetryReport",
    "oriented_edges",
    "build_kernel",
    "analyze_structure",
    "turnaround_bound",
    "solg_distance",
    "check_reversal_symmetry",
]


@dataclass(frozen=True)
class OrientedEdgeSpace:
    """Indexed oriented edges of a multigraph.

    tails[e] and heads[e] give endpoints; reverse(e) = e ^ 1 because the
    two orientations of each unoriented edge sit at indices 2k, 2k + 1.
    out_edges[v] lists edges with tail v (loops appear twice).
    """

    graph: Multigraph
    tails: tuple[int, ...]
    heads: tuple[int, ...]
    out_edges: tuple[tuple[int, ...], ...]

    @property
    def num_edges(self) -> int:
        return len(self.tails)

    @staticmethod
    def reverse(e: int) -> int:
        return e ^ 1

    def successors(self, e: int) -> tuple[int, ...]:
        head = self.heads[e]
        rev = e ^ 1
        return tuple(f for f in self.out_edges[head] if f != rev)

    def predecessors(self, e: int) -> tuple[int, ...]:
        # f -> e exactly when reverse(e) -> reverse(f): reversal is an
        # anti-automorphism of the transition structure.
        return tuple(h ^ 1 for h in self.successors(e ^ 1))

    def describe(self, e: int) -> str:
        g = self.graph
        return f"{g.labels[self.tails[e]]}->{g.labels[self.heads[e]]}#{e}"


def oriented_edges(g: Multigraph) -> OrientedEdgeSpace:
    tails: list[int] = []
    heads: list[int] = []
    out: list[list[int]] = [[] for _ in range(g.num_vertices)]

    def add(u: int, v: int):
        e = len(tails)
        tails.extend((u, v))
        heads.extend((v, u))
        out[u].append(e)
        out[v].append(e + 1)

    for (i, j), m in sorted(g.edge_mult.items()):
        for _ in range(m):
            add(i, j)
    for i in sorted(g.loops):
        for _ in range(g.loops[i]):
            # both orientations of a loop start and end at i
            e = len(tails)
            tails.extend((i, i))
            heads.extend((i, i))
            out[i].extend((e, e + 1))
    return OrientedEdgeSpace(g, tuple(tails), tuple(heads),
                             tuple(tuple(o) for o in out))


@dataclass(frozen=True)
class NbrwKernel:
    """Non-backtracking transition kernel on oriented edges.

    Row e is uniform over successors(e); the denominator deg(head(e)) - 1
    is positive because minimum degree 2 is enforced at graph build time.
    """

    space: OrientedEdgeSpace
    matrix: RowRational

    @property
    def num_edges(self) -> int:
        return self.space.num_edges


def build_kernel(g: Multigraph) -> NbrwKernel:
    if g.min_degree() < 2:
        raise DegreeError("non-backtracking kernel needs minimum degree 2")
    space = oriented_edges(g)
    rows = []
    denoms = []
    for e in range(space.num_edges):
        succ = space.successors(e)
        d = g.degree(space.heads[e]) - 1
        assert len(succ) == d
        rows.append([(f, 1) for f in succ])
        denoms.append(d)
    return NbrwKernel(space, RowRational.from_rows(rows, denoms))


@dataclass(frozen=True)
class OlgStructure:
    """Communicating-class structure of the oriented-edge chain.

    components lists strongly connected classes as edge-index tuples;
    essential flags classes with no arcs leaving them; period is the gcd
    of cycle lengths (set when the chain is irreducible, along with the
    per-class periods either way). turnaround_bound is the largest over e
    of the least number of steps from e to its own reversal, or None when
    some reversal is unreachable.
    """

    components: tuple[tuple[int, ...], ...]
    essential: tuple[bool, ...]
    irreducible: bool
    period: Optional[int]
    component_periods: tuple[int, ...]
    turnaround_bound: Optional[int]

    @property
    def num_essential(self) -> int:
        return sum(self.essential)


def _strongly_connected_components(succ: list[tuple[int, ...]]) -> list[list[int]]:
    """Tarjan's algorithm, iterative to survive deep recursion."""
    n = len(succ)
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack: list[int] = []
    comps: list[list[int]] = []
    counter = 0
    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        while work:
            v, pi = work[-1]
            if pi == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack[v] = True
            advanced = False
            for k in range(pi, len(succ[v])):
                w = succ[v][k]
                if index[w] == -1:
                    work[-1] = (v, k + 1)
                    work.append((w, 0))
                    advanced = True
                    break
                if on_stack[w]:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                comps.append(comp)
            if work:
                u, _ = work[-1]
                low[u] = min(low[u], low[v])
    return comps


def _component_period(members: list[int], succ: list[tuple[int, ...]]) -> int:
    """gcd of closed-walk lengths inside one strongly connected class,
    via BFS levels: every internal arc u -> w contributes
    level(u) + 1 - level(w) to the gcd."""
    mem = set(members)
    start = members[0]
    level = {start: 0}
    order = [start]
    qi = 0
    while qi < len(order):
        u = order[qi]
        qi += 1
        for w in succ[u]:
            if w in mem and w not in level:
                level[w] = level[u] + 1
                order.append(w)
    g = 0
    for u in members:
        for w in succ[u]:
            if w in mem:
                g = gcd(g, level[u] + 1 - level[w])
    return abs(g) if g else 1


def analyze_structure(kernel: NbrwKernel) -> OlgStructure:
    space = kernel.space
    succ = [space.successors(e) for e in range(space.num_edges)]
    comps = _strongly_connected_components(succ)
    comp_of = {}
    for ci, comp in enumerate(comps):
        for e in comp:
            comp_of[e] = ci
    essential = []
    for ci, comp in enumerate(comps):
        essential.append(all(comp_of[w] == ci for e in comp for w in succ[e]))
    periods = tuple(_component_period(comp, succ) for comp in comps)
    irreducible = len(comps) == 1
    return OlgStructure(
        components=tuple(tuple(sorted(c)) for c in comps),
        essential=tuple(essential),
        irreducible=irreducible,
        period=periods[0] if irreducible else None,
        component_periods=periods,
        turnaround_bound=turnaround_bound(kernel),
    )


def turnaround_bound(kernel: NbrwKernel) -> Optional[int]:
    """max over e of the least n >= 1 with reverse(e) reachable from e in
    exactly n transitions, or None if some reversal is unreachable (as on
    a plain cycle, where walks never turn around)."""
    space = kernel.space
    succ = [space.successors(e) for e in range(space.num_edges)]
    worst = 0
    for e in range(space.num_edges):
        target = e ^ 1
        dist = {e: 0}
        frontier = [e]
        found = None
        while frontier and found is None:
            nxt = []
            for u in frontier:
                for w in succ[u]:
                    if w not in dist:
                        dist[w] = dist[u] + 1
                        if w == target:
                            found = dist[w]
                            break
                        nxt.append(w)
                if found is not None:
                    break
            frontier = nxt
        if found is None:
            return None
        worst = max(worst, found)
    return worst


def solg_distance(space: OrientedEdgeSpace, e: int, f: int) -> Optional[int]:
    """Distance in the undirected shadow of the transition structure
    (arcs usable in either direction); None when e, f are not connected."""
    if e == f:
        return 0
    dist = {e: 0}
    frontier = [e]
    while frontier:
        nxt = []
        for u in frontier:
            for w in space.successors(u) + space.predecessors(u):
                if w not in dist:
                    dist[w] = dist[u] + 1
                    if w == f:
                        return dist[w]
                    nxt.append(w)
        frontier = nxt
    return None


@dataclass(frozen=True)
class ReversalSymmetryReport:
    """Verdict for the identity q^(n)(e, f) = q^(n)(reverse(f), reverse(e)).

    max_violation is an exact Fraction (zero when the identity holds);
    violations lists offending (n, e, f) triples, capped at 20.
    """

    n_max: int
    ok: bool
    max_violation: Fraction
    violations: tuple

    def __bool__(self) -> bool:
        return self.ok


def check_reversal_symmetry(kernel: NbrwKernel, n_max: int) -> ReversalSymmetryReport:
    """Exact check of the reversal identity for all pairs and 1 <= n <= n_max."""
    m = kernel.matrix
    size = m.size
    # rows[e] is the distribution of the chain n steps after starting at e
    rows = []
    for e in range(size):
        v = [Fraction(0)] * size
        v[e] = Fraction(1)
        rows.append(v)
    worst = Fraction(0)
    bad = []
    for n in range(1, n_max + 1):
        rows = [m.apply_left(v, exact=True) for v in rows]
        for e in range(size):
            for f in range(size):
                diff = rows[e][f] - rows[f ^ 1][e ^ 1]
                if diff:
                    worst = max(worst, abs(diff))
                    if len(bad) < 20:
                        bad.append((n, e, f))
    return ReversalSymmetryReport(n_max, not bad, worst, tuple(bad))
