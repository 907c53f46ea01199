"""Finite multigraphs with parallel edges and loops, plus local geometry.

Degrees count loops twice. Vertices carry string labels; all operations
accept labels and report labels, with integer indices used internally.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional

from .errors import (
    BudgetExceededError,
    DegreeError,
    DisconnectedError,
    ParseError,
    UnknownVertexError,
)

__all__ = [
    "Multigraph",
    "BallView",
    "BipartitenessReport",
    "make_multigraph",
    "load_multigraph",
    "ball",
    "distance",
    "is_bipartite",
    "small_cycle_radius",
    "contains_cycle",
]


@dataclass(frozen=True)
class Multigraph:
    """Connected multigraph, immutable after construction.

    edge_mult maps index pairs (i, j) with i < j to multiplicities;
    loops maps a vertex index to its loop count. deg(v) = sum of incident
    multiplicities + 2 * loops(v). Build through make_multigraph or
    load_multigraph so validation runs.
    """

    labels: tuple[str, ...]
    edge_mult: dict = field(repr=False)
    loops: dict = field(repr=False)

    def __post_init__(self):
        index = {lab: i for i, lab in enumerate(self.labels)}
        if len(index) != len(self.labels):
            raise ParseError("duplicate vertex labels")
        adj: list[list[tuple[int, int]]] = [[] for _ in self.labels]
        for (i, j), m in sorted(self.edge_mult.items()):
            adj[i].append((j, m))
            adj[j].append((i, m))
        degrees = [sum(m for _, m in adj[i]) + 2 * self.loops.get(i, 0)
                   for i in range(len(self.labels))]
        object.__setattr__(self, "_index", index)
        object.__setattr__(self, "_adj", tuple(tuple(a) for a in adj))
        object.__setattr__(self, "_degrees", tuple(degrees))

    # -- basic accessors ---------------------------------------------------

    @property
    def num_vertices(self) -> int:
        return len(self.labels)

    @property
    def num_unoriented_edges(self) -> int:
        return sum(self.edge_mult.values()) + sum(self.loops.values())

    @property
    def num_oriented_edges(self) -> int:
        return sum(self._degrees)

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise UnknownVertexError(f"no vertex labeled {label!r}") from None

    def degree(self, v: int | str) -> int:
        return self._degrees[self._resolve(v)]

    def degrees(self) -> tuple[int, ...]:
        return self._degrees

    def min_degree(self) -> int:
        return min(self._degrees)

    def regular_degree(self) -> Optional[int]:
        """The common degree if the graph is regular, else None."""
        d = self._degrees[0]
        return d if all(x == d for x in self._degrees) else None

    def neighbor_mults(self, v: int | str) -> tuple[tuple[int, int], ...]:
        """Pairs (neighbor index, multiplicity), loops excluded."""
        return self._adj[self._resolve(v)]

    def loops_at(self, v: int | str) -> int:
        return self.loops.get(self._resolve(v), 0)

    def multiplicity(self, u: int | str, v: int | str) -> int:
        """Number of unoriented edges between u and v; a loop counts twice
        toward multiplicity(v, v) so that row sums match degrees."""
        i, j = self._resolve(u), self._resolve(v)
        if i == j:
            return 2 * self.loops.get(i, 0)
        key = (i, j) if i < j else (j, i)
        return self.edge_mult.get(key, 0)

    def _resolve(self, v: int | str) -> int:
        if isinstance(v, str):
            return self.index(v)
        if not 0 <= v < len(self.labels):
            raise UnknownVertexError(f"vertex index {v} out of range")
        return v

    def is_cycle_graph(self) -> bool:
        """True when every vertex has degree 2 (a single closed cycle,
        including the loop and double-edge degenerate cases)."""
        return all(d == 2 for d in self._degrees)


@dataclass(frozen=True)
class BallView:
    """Metric ball of a given radius, materialized as a finite multigraph.

    graph is the induced multigraph on the ball; boundary holds labels at
    exactly the ball radius; true_degrees records degrees in the ambient
    graph, which exceed induced degrees on and near the boundary.
    """

    center: str
    radius: int
    graph: Multigraph
    boundary: frozenset
    true_degrees: dict


@dataclass(frozen=True)
class BipartitenessReport:
    bipartite: bool
    coloring: Optional[dict]
    odd_closed_walk: Optional[tuple]

    def __bool__(self) -> bool:
        return self.bipartite


def make_multigraph(labels: Iterable[str], edge_mult: dict, loops: dict | None = None,
                    *, min_degree: int = 2, require_connected: bool = True) -> Multigraph:
    """Validated constructor.

    Endpoints in edge_mult and loops may be vertex labels or indices, and
    edge keys may come in either orientation; everything is normalized to
    index pairs (i, j) with i < j. Raises DegreeError / DisconnectedError
    when the defaults are violated; relax min_degree only for induced
    subgraphs.
    """
    labels = tuple(labels)
    index = {lab: i for i, lab in enumerate(labels)}

    def resolve(v):
        if isinstance(v, str):
            try:
                return index[v]
            except KeyError:
                raise UnknownVertexError(f"no vertex labeled {v!r}") from None
        if not 0 <= v < len(labels):
            raise UnknownVertexError(f"vertex index {v} out of range")
        return v

    norm: dict = {}
    for (u, v), m in edge_mult.items():
        i, j = resolve(u), resolve(v)
        if m <= 0:
            raise ParseError(f"multiplicity of edge ({u}, {v}) must be positive")
        if i == j:
            raise ParseError("use the loops mapping for loops, not edge_mult")
        key = (i, j) if i < j else (j, i)
        norm[key] = norm.get(key, 0) + m
    loops = {resolve(v): c for v, c in (loops or {}).items()}
    for i, c in loops.items():
        if c <= 0:
            raise ParseError(f"loop count at vertex {labels[i]} must be positive")
    g = Multigraph(labels, norm, loops)
    if min_degree > 0:
        bad = [g.labels[i] for i, d in enumerate(g.degrees()) if d < min_degree]
        if bad:
            raise DegreeError(
                f"vertices below minimum degree {min_degree}: {', '.join(bad)}"
            )
    if require_connected and g.num_vertices > 0 and len(_component(g, 0)) != g.num_vertices:
        raise DisconnectedError("graph is not connected")
    return g


def load_multigraph(text: str, *, min_degree: int = 2) -> Multigraph:
    """Parse the line-oriented edge-list format.

    Lines: `edge <u> <v> [mult]`, `loop <v> [count]`, blank lines and
    `#` comments ignored. Vertices are declared implicitly, in order of
    first appearance.
    """
    labels: list[str] = []
    index: dict[str, int] = {}

    def vid(tok: str) -> int:
        if tok not in index:
            index[tok] = len(labels)
            labels.append(tok)
        return index[tok]

    edge_mult: dict = {}
    loops: dict = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        kind, args = parts[0], parts[1:]
        try:
            if kind == "edge":
                if len(args) not in (2, 3):
                    raise ValueError("expected: edge <u> <v> [mult]")
                u, v = vid(args[0]), vid(args[1])
                m = int(args[2]) if len(args) == 3 else 1
                if m <= 0:
                    raise ValueError("multiplicity must be positive")
                if u == v:
                    raise ValueError("edge with equal endpoints; use `loop`")
                key = (u, v) if u < v else (v, u)
                edge_mult[key] = edge_mult.get(key, 0) + m
            elif kind == "loop":
                if len(args) not in (1, 2):
                    raise ValueError("expected: loop <v> [count]")
                v = vid(args[0])
                c = int(args[1]) if len(args) == 2 else 1
                if c <= 0:
                    raise ValueError("loop count must be positive")
                loops[v] = loops.get(v, 0) + c
            else:
                raise ValueError(f"unknown directive {kind!r}")
        except ValueError as exc:
            raise ParseError(f"line {lineno}: {exc}") from None
    if not labels:
        raise ParseError("empty graph description")
    return make_multigraph(labels, edge_mult, loops, min_degree=min_degree)


def _component(g: Multigraph, start: int) -> set:
    seen = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        for w, _ in g.neighbor_mults(u):
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return seen


def distance(g: Multigraph, x: str, y: str) -> int:
    """Graph distance between two vertices (BFS)."""
    xi, yi = g.index(x), g.index(y)
    if xi == yi:
        return 0
    dist = {xi: 0}
    frontier = [xi]
    while frontier:
        nxt = []
        for u in frontier:
            for w, _ in g.neighbor_mults(u):
                if w not in dist:
                    dist[w] = dist[u] + 1
                    if w == yi:
                        return dist[w]
                    nxt.append(w)
        frontier = nxt
    raise DisconnectedError(f"no path from {x!r} to {y!r}")


def ball(g, x: str, radius: int, *, max_vertices: int | None = None) -> BallView:
    """Closed metric ball around x, as an induced multigraph.

    Works on a Multigraph or on any object with the neighbor-oracle
    interface (root, degree, neighbor_items). max_vertices caps BFS
    growth and raises BudgetExceededError when exceeded.
    """
    if isinstance(g, Multigraph):
        g.index(x)
        items = lambda v: [(g.labels[w], m) for w, m in g.neighbor_mults(g.index(v))]
        loops_of = lambda v: g.loops_at(v)
        deg_of = lambda v: g.degree(v)
    else:
        items = lambda v: [(w, m) for w, m in g.neighbor_items(v) if w != v]
        loops_of = lambda v: dict(g.neighbor_items(v)).get(v, 0)
        deg_of = lambda v: g.degree(v)
    dist = {x: 0}
    order = [x]
    frontier = [x]
    for r in range(radius):
        nxt = []
        for v in frontier:
            for w, _ in items(v):
                if w not in dist:
                    dist[w] = r + 1
                    order.append(w)
                    nxt.append(w)
                    if max_vertices is not None and len(order) > max_vertices:
                        raise BudgetExceededError(
                            f"ball of radius {radius} around {x!r} exceeds "
                            f"{max_vertices} vertices", visited=len(order))
        frontier = nxt
    index = {lab: i for i, lab in enumerate(order)}
    edge_mult: dict = {}
    loops: dict = {}
    for lab in order:
        i = index[lab]
        c = loops_of(lab)
        if c:
            loops[i] = c
        for w, m in items(lab):
            if w in index:
                j = index[w]
                if i < j:
                    edge_mult[(i, j)] = m
    induced = make_multigraph(order, edge_mult, loops,
                              min_degree=0, require_connected=False)
    return BallView(
        center=x,
        radius=radius,
        graph=induced,
        boundary=frozenset(lab for lab, d in dist.items() if d == radius),
        true_degrees={lab: deg_of(lab) for lab in order},
    )


def is_bipartite(g: Multigraph) -> BipartitenessReport:
    """2-color the graph or exhibit an odd closed walk.

    A loop is an odd closed walk of length 1; parallel edges do not affect
    bipartiteness. The odd walk witness is a vertex-label sequence whose
    consecutive entries are adjacent and which starts and ends at the same
    vertex with odd length.
    """
    for i, c in g.loops.items():
        if c > 0:
            lab = g.labels[i]
            return BipartitenessReport(False, None, (lab, lab))
    color = {0: 0}
    parent: dict[int, int] = {0: -1}
    frontier = [0]
    while frontier:
        nxt = []
        for u in frontier:
            for w, _ in g.neighbor_mults(u):
                if w not in color:
                    color[w] = 1 - color[u]
                    parent[w] = u
                    nxt.append(w)
                elif color[w] == color[u]:
                    return BipartitenessReport(
                        False, None, _odd_walk(g, parent, u, w))
        frontier = nxt
    return BipartitenessReport(
        True, {g.labels[i]: c for i, c in color.items()}, None)


def _odd_walk(g: Multigraph, parent: dict, u: int, v: int) -> tuple:
    # Join the BFS-tree paths of u and v through their lowest common
    # ancestor; with the violating edge (u, v) this closes an odd walk.
    def path_to_root(a):
        p = [a]
        while parent[p[-1]] != -1:
            p.append(parent[p[-1]])
        return p

    pu, pv = path_to_root(u), path_to_root(v)
    su = set(pu)
    k = next(i for i, a in enumerate(pv) if a in su)
    lca = pv[k]
    up = pu[: pu.index(lca) + 1]       # u .. lca
    down = pv[:k][::-1]                # lca-child .. v
    walk = up + down + [u]             # u .. lca .. v, then edge back to u
    return tuple(g.labels[a] for a in walk)


def contains_cycle(g: Multigraph) -> bool:
    """True when some closed non-backtracking walk exists: a loop, a
    parallel pair, or enough simple edges that some component has one."""
    if any(c > 0 for c in g.loops.values()):
        return True
    if any(m >= 2 for m in g.edge_mult.values()):
        return True
    seen: set[int] = set()
    components = 0
    for s in range(g.num_vertices):
        if s not in seen:
            components += 1
            seen |= _component(g, s)
    return len(g.edge_mult) >= g.num_vertices - components + 1


def small_cycle_radius(g: Multigraph) -> Optional[int]:
    """Least R such that every ball of radius R contains a cycle, or None
    when the graph is acyclic."""
    if not contains_cycle(g):
        return None
    worst = 0
    for lab in g.labels:
        r = 0
        while True:
            if contains_cycle(ball(g, lab, r).graph):
                break
            r += 1
        worst = max(worst, r)
    return worst
