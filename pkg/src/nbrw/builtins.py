"""Named example graphs and seeded random multigraphs."""

from __future__ import annotations

import numpy as np

from .errors import BadParamsError, DisconnectedError
from .multigraph import Multigraph, make_multigraph
from .sources import FreeGroupSource, GraphSource, GridZ2Source, RegularTreeSource

__all__ = [
    "BUILTIN_NAMES",
    "builtin_graph",
    "cycle",
    "complete",
    "complete_bipartite",
    "petersen",
    "butterfly",
    "random_multigraph",
]


def cycle(n: int) -> Multigraph:
    """Cycle on n vertices; n = 2 is a doubled edge, n = 1 a single loop."""
    if n < 1:
        raise BadParamsError("cycle length must be >= 1")
    labels = [str(i) for i in range(n)]
    if n == 1:
        return make_multigraph(labels, {}, {0: 1})
    if n == 2:
        return make_multigraph(labels, {(0, 1): 2}, {})
    edges = {(i, i + 1): 1 for i in range(n - 1)}
    edges[(0, n - 1)] = 1
    return make_multigraph(labels, edges, {})


def complete(n: int) -> Multigraph:
    if n < 3:
        raise BadParamsError("complete graph needs n >= 3 to have min degree 2")
    labels = [str(i) for i in range(n)]
    edges = {(i, j): 1 for i in range(n) for j in range(i + 1, n)}
    return make_multigraph(labels, edges, {})


def complete_bipartite(m: int, n: int) -> Multigraph:
    if m < 2 or n < 2:
        raise BadParamsError("complete bipartite graph needs both sides >= 2")
    labels = [f"a{i}" for i in range(m)] + [f"b{j}" for j in range(n)]
    edges = {(i, m + j): 1 for i in range(m) for j in range(n)}
    return make_multigraph(labels, edges, {})


def petersen() -> Multigraph:
    """Outer 5-cycle o0..o4, inner 5-star i0..i4 stepping by 2, plus spokes."""
    labels = [f"o{k}" for k in range(5)] + [f"i{k}" for k in range(5)]
    edges = {}
    for k in range(5):
        edges[tuple(sorted((k, (k + 1) % 5)))] = 1          # outer cycle
        edges[(k, 5 + k)] = 1                               # spoke
        edges[tuple(sorted((5 + k, 5 + (k + 2) % 5)))] = 1  # inner pentagram
    return make_multigraph(labels, edges, {})


def butterfly() -> Multigraph:
    """Two triangles sharing the single vertex x; outer vertices a, b, c, d."""
    labels = ["x", "a", "b", "c", "d"]
    edges = {(0, 1): 1, (1, 2): 1, (0, 2): 1, (0, 3): 1, (3, 4): 1, (0, 4): 1}
    return make_multigraph(labels, edges, {})


def random_multigraph(n: int, seed: int, *, min_degree: int = 2,
                      max_degree: int = 5) -> Multigraph:
    """Seeded connected random multigraph via stub pairing.

    Degrees are drawn uniformly in [min_degree, max_degree], the stub
    multiset is shuffled and paired, and the whole draw repeats until the
    result is connected. Deterministic for a given (n, seed, bounds).
    """
    if n < 2:
        raise BadParamsError("need at least 2 vertices")
    if min_degree < 2 or max_degree < min_degree:
        raise BadParamsError("need 2 <= min_degree <= max_degree")
    rng = np.random.default_rng(seed)
    for _ in range(1000):
        degs = rng.integers(min_degree, max_degree + 1, size=n)
        if int(degs.sum()) % 2 == 1:
            # rebalance within the bounds
            below = np.flatnonzero(degs < max_degree)
            if len(below):
                degs[int(rng.choice(below))] += 1
            elif max_degree > min_degree:
                degs[int(rng.integers(n))] -= 1
            else:
                raise BadParamsError(
                    f"no even-sum degree sequence with degree {min_degree} "
                    f"on {n} vertices")
        stubs = np.repeat(np.arange(n), degs)
        rng.shuffle(stubs)
        edge_mult: dict = {}
        loops: dict = {}
        for u, v in zip(stubs[0::2], stubs[1::2]):
            u, v = int(u), int(v)
            if u == v:
                loops[u] = loops.get(u, 0) + 1
            else:
                key = (u, v) if u < v else (v, u)
                edge_mult[key] = edge_mult.get(key, 0) + 1
        try:
            return make_multigraph([str(i) for i in range(n)], edge_mult, loops)
        except DisconnectedError:
            continue
    raise BadParamsError(f"no connected pairing found for n={n}, seed={seed}")


def _parse_params(spec: str) -> list[int]:
    if not spec:
        return []
    try:
        return [int(tok) for tok in spec.split(",")]
    except ValueError:
        raise BadParamsError(f"expected integer parameters, got {spec!r}") from None


BUILTIN_NAMES = (
    "cycle:<n>",
    "complete:<n>",
    "complete_bipartite:<m>,<n>",
    "petersen",
    "butterfly",
    "grid_Z2",
    "tree_regular:<d>",
    "free_group:<s>",
    "random_min_deg2:<n>,<seed>",
)


def builtin_graph(spec: str) -> Multigraph | GraphSource:
    """Resolve a name like "petersen", "cycle:6", or "free_group:2"."""
    name, _, rest = spec.partition(":")
    params = _parse_params(rest)

    def arity(k):
        if len(params) != k:
            raise BadParamsError(f"{name} takes {k} integer parameter(s)")

    if name == "cycle":
        arity(1)
        return cycle(params[0])
    if name == "complete":
        arity(1)
        return complete(params[0])
    if name == "complete_bipartite":
        arity(2)
        return complete_bipartite(*params)
    if name == "petersen":
        arity(0)
        return petersen()
    if name == "butterfly":
        arity(0)
        return butterfly()
    if name == "grid_Z2":
        arity(0)
        return GridZ2Source()
    if name == "tree_regular":
        arity(1)
        return RegularTreeSource(params[0])
    if name == "free_group":
        arity(1)
        return FreeGroupSource(params[0])
    if name == "random_min_deg2":
        arity(2)
        return random_multigraph(params[0], params[1])
    raise BadParamsError(f"unknown builtin graph {name!r}")
