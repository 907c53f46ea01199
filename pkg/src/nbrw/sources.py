"""Neighbor oracles for infinite (or just very large) graphs.

A source exposes a root vertex, a global degree bound, and a neighbor
query; everything else in the package reaches infinite graphs through
finite balls built from these three calls. Labels are canonical strings
so results serialize the same way finite-graph results do.
"""

from __future__ import annotations

import abc

from .errors import BadParamsError, UnknownVertexError

__all__ = ["GraphSource", "GridZ2Source", "RegularTreeSource", "FreeGroupSource"]


class GraphSource(abc.ABC):
    """Locally finite connected vertex-transitive-friendly neighbor oracle.

    neighbor_items(v) returns (neighbor label, multiplicity) pairs; a loop
    at v appears as the pair (v, loop count). Degrees must respect
    degree_bound, and every vertex must have degree >= 2.
    """

    name: str = "source"
    degree_bound: int = 0

    @property
    @abc.abstractmethod
    def root(self) -> str: ...

    @abc.abstractmethod
    def neighbor_items(self, v: str) -> list[tuple[str, int]]: ...

    def degree(self, v: str) -> int:
        d = 0
        for w, m in self.neighbor_items(v):
            d += 2 * m if w == v else m
        return d

    @property
    def is_finite(self) -> bool:
        return False


class GridZ2Source(GraphSource):
    """The square lattice: vertices "i,j", edges to the four axis neighbors."""

    name = "grid_Z2"
    degree_bound = 4

    @property
    def root(self) -> str:
        return "0,0"

    def neighbor_items(self, v: str) -> list[tuple[str, int]]:
        i, j = self._parse(v)
        return [
            (f"{i + 1},{j}", 1),
            (f"{i - 1},{j}", 1),
            (f"{i},{j + 1}", 1),
            (f"{i},{j - 1}", 1),
        ]

    @staticmethod
    def _parse(v: str) -> tuple[int, int]:
        try:
            a, b = v.split(",")
            i, j = int(a), int(b)
        except ValueError:
            raise UnknownVertexError(f"grid labels look like 'i,j', got {v!r}") from None
        if v != f"{i},{j}":  # one canonical spelling per vertex
            raise UnknownVertexError(f"non-canonical grid label {v!r}")
        return i, j


class RegularTreeSource(GraphSource):
    """The infinite d-regular tree.

    Labels are dotted digit paths from the root "o": the root's children
    are "o.0" .. "o.<d-1>" and every other vertex has children obtained by
    appending ".0" .. ".<d-2>".
    """

    def __init__(self, d: int):
        if d < 2:
            raise BadParamsError("regular tree needs degree >= 2")
        self.d = d
        self.name = f"tree_regular({d})"
        self.degree_bound = d

    @property
    def root(self) -> str:
        return "o"

    def neighbor_items(self, v: str) -> list[tuple[str, int]]:
        parts = v.split(".")
        ok = parts[0] == "o" and all(
            p.isdigit() and p == str(int(p)) for p in parts[1:])
        if ok and len(parts) >= 2:
            ok = int(parts[1]) < self.d and all(
                int(p) < self.d - 1 for p in parts[2:])
        if not ok:
            raise UnknownVertexError(f"not a tree label: {v!r}")
        if v == "o":
            return [(f"o.{k}", 1) for k in range(self.d)]
        parent = ".".join(parts[:-1])
        return [(parent, 1)] + [(f"{v}.{k}", 1) for k in range(self.d - 1)]


_LETTERS = "abcdefgh"


class FreeGroupSource(GraphSource):
    """Cayley graph of the free group on s generators.

    Vertices are reduced words over a..(letter s) and their uppercase
    inverses; the empty word is labeled "1". Each vertex has degree 2s.
    """

    def __init__(self, s: int):
        if not 1 <= s <= len(_LETTERS):
            raise BadParamsError(f"free group rank must be in 1..{len(_LETTERS)}")
        self.s = s
        self.name = f"free_group({s})"
        self.degree_bound = 2 * s
        gens = _LETTERS[:s]
        self._alphabet = gens + gens.upper()

    @property
    def root(self) -> str:
        return "1"

    def neighbor_items(self, v: str) -> list[tuple[str, int]]:
        if not v:
            raise UnknownVertexError("the identity is labeled '1', not ''")
        word = "" if v == "1" else v
        if any(c not in self._alphabet for c in word):
            raise UnknownVertexError(f"not a reduced word: {v!r}")
        for a, b in zip(word, word[1:]):
            if a == b.swapcase():
                raise UnknownVertexError(f"not a reduced word: {v!r}")
        out = []
        for g in self._alphabet:
            if word and word[-1] == g.swapcase():
                w = word[:-1]
            else:
                w = word + g
            out.append((w or "1", 1))
        return out
