"""Even Artin-Tits systems: the labelled defining graph and graph-level decisions.

An :class:`ArtinSystem` is a finite simplicial graph whose edges carry even
labels ``m >= 2``.  The group it defines has one generator per vertex and the
relation ``prod(u, v, m) = prod(v, u, m)`` for every edge.
"""

from __future__ import annotations

import json
import re
from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Mapping

NAME_RE = re.compile(r"^[A-Za-z][A-Za-z0-9_]*$")


class StructureError(ValueError):
    """The input does not describe a simplicial graph with even labels."""


class NotEAFCError(ValueError):
    """The system has a triangle with two or more edges labelled above 2."""

    def __init__(self, triangle):
        self.triangle = tuple(triangle)
        super().__init__("not EAFC: triangle %s has two edges labelled > 2" % (self.triangle,))


class ArtinSystem:
    """Immutable even Artin-Tits system.

    ``vertices`` keeps the insertion order, which is the canonical order used
    for every deterministic tie-break in the package.  Labels are stored as
    the full even integer ``m``, keyed by ``frozenset({u, v})``.
    """

    __slots__ = ("_vertices", "_labels", "_index", "_adj", "_hash")

    def __init__(self, vertices: Iterable[str], edges: Iterable[tuple[str, str, int]] = ()):
        vertices = tuple(vertices)
        if not vertices:
            raise StructureError("an Artin system needs at least one vertex")
        index = {}
        for v in vertices:
            if not isinstance(v, str) or not NAME_RE.match(v):
                raise StructureError("invalid vertex name %r" % (v,))
            if v in index:
                raise StructureError("duplicate vertex %r" % v)
            index[v] = len(index)
        labels: dict[frozenset, int] = {}
        adj: dict[str, set] = {v: set() for v in vertices}
        for u, v, m in edges:
            if u not in index or v not in index:
                missing = u if u not in index else v
                raise StructureError("edge %s-%s uses unknown vertex %r" % (u, v, missing))
            if u == v:
                raise StructureError("loop at vertex %r" % u)
            key = frozenset((u, v))
            if key in labels:
                raise StructureError("repeated edge %s-%s" % (u, v))
            if isinstance(m, bool) or not isinstance(m, int):
                raise StructureError("label of edge %s-%s must be an integer, got %r" % (u, v, m))
            if m < 2 or m % 2:
                raise StructureError("label of edge %s-%s must be even and >= 2, got %d" % (u, v, m))
            labels[key] = m
            adj[u].add(v)
            adj[v].add(u)
        self._vertices = vertices
        self._labels = labels
        self._index = index
        self._adj = {v: frozenset(n) for v, n in adj.items()}
        self._hash = None

    # -- basic accessors -------------------------------------------------

    @property
    def vertices(self) -> tuple[str, ...]:
        return self._vertices

    @property
    def edges(self) -> list[tuple[str, str, int]]:
        """Edges as ``(u, v, m)`` with ``u`` before ``v`` in canonical order, sorted."""
        out = []
        for key, m in self._labels.items():
            u, v = sorted(key, key=self._index.__getitem__)
            out.append((u, v, m))
        out.sort(key=lambda e: (self._index[e[0]], self._index[e[1]]))
        return out

    def label(self, u: str, v: str) -> int | None:
        """Label of the edge ``{u, v}``, or None when the vertices are not adjacent."""
        return self._labels.get(frozenset((u, v)))

    def has_edge(self, u: str, v: str) -> bool:
        return frozenset((u, v)) in self._labels

    def neighbors(self, v: str) -> frozenset:
        return self._adj[v]

    def order_key(self, v: str) -> int:
        return self._index[v]

    def sort(self, vs: Iterable[str]) -> tuple[str, ...]:
        return tuple(sorted(vs, key=self._index.__getitem__))

    def __contains__(self, v) -> bool:
        return v in self._index

    def __len__(self) -> int:
        return len(self._vertices)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ArtinSystem):
            return NotImplemented
        return self._vertices == other._vertices and self._labels == other._labels

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._vertices, frozenset(self._labels.items())))
        return self._hash

    def __repr__(self) -> str:
        es = ", ".join("%s-%s:%d" % e for e in self.edges)
        return "ArtinSystem([%s], [%s])" % (", ".join(self._vertices), es)

    # -- derived systems -------------------------------------------------

    def induced(self, subset: Iterable[str]) -> "ArtinSystem":
        """Induced subsystem on ``subset``; vertices keep the host order."""
        s = set(subset)
        unknown = s - set(self._index)
        if unknown:
            raise KeyError("unknown vertices %s" % sorted(unknown))
        vs = [v for v in self._vertices if v in s]
        es = [(u, v, m) for u, v, m in self.edges if u in s and v in s]
        return ArtinSystem(vs, es)

    def is_complete(self) -> bool:
        n = len(self._vertices)
        return len(self._labels) == n * (n - 1) // 2

    def connected_components(self) -> list[tuple[str, ...]]:
        seen = set()
        comps = []
        for v in self._vertices:
            if v in seen:
                continue
            comp = {v}
            queue = deque([v])
            while queue:
                u = queue.popleft()
                for w in self._adj[u]:
                    if w not in comp:
                        comp.add(w)
                        queue.append(w)
            seen |= comp
            comps.append(self.sort(comp))
        return comps

    # -- serialisation ---------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "vertices": list(self._vertices),
            "edges": [{"u": u, "v": v, "m": m} for u, v, m in self.edges],
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "ArtinSystem":
        if not isinstance(data, Mapping):
            raise StructureError("graph document must be a JSON object")
        extra = set(data) - {"vertices", "edges"}
        if extra:
            raise StructureError("unknown fields in graph document: %s" % ", ".join(sorted(extra)))
        if "vertices" not in data:
            raise StructureError("graph document lacks 'vertices'")
        vertices = data["vertices"]
        if not isinstance(vertices, list):
            raise StructureError("'vertices' must be a list")
        raw_edges = data.get("edges", [])
        if not isinstance(raw_edges, list):
            raise StructureError("'edges' must be a list")
        edges = []
        for i, e in enumerate(raw_edges):
            if not isinstance(e, Mapping):
                raise StructureError("edge #%d must be an object" % i)
            if set(e) != {"u", "v", "m"}:
                raise StructureError("edge #%d must have exactly the fields u, v, m" % i)
            edges.append((e["u"], e["v"], e["m"]))
        return cls(vertices, edges)

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent)

    @classmethod
    def from_json(cls, text: str) -> "ArtinSystem":
        return cls.from_dict(json.loads(text))


# -- validation ----------------------------------------------------------------


def triangles(sys: ArtinSystem):
    """Yield every triangle once, as a canonically ordered vertex triple."""
    for i, u in enumerate(sys.vertices):
        later = [w for w in sys.neighbors(u) if sys.order_key(w) > i]
        for v, w in combinations(sys.sort(later), 2):
            if sys.has_edge(v, w):
                yield (u, v, w)


def validate_eafc(sys: ArtinSystem) -> tuple[str, str, str] | None:
    """Return None when ``sys`` is EAFC, else the first offending triangle.

    Structural problems (loops, odd labels, repeated edges) never reach this
    function: :class:`ArtinSystem` refuses to construct them.
    """
    for tri in triangles(sys):
        u, v, w = tri
        big = sum(1 for p, q in ((u, v), (v, w), (u, w)) if sys.label(p, q) > 2)
        if big > 1:
            return tri
    return None


def require_eafc(sys: ArtinSystem) -> None:
    tri = validate_eafc(sys)
    if tri is not None:
        raise NotEAFCError(tri)


def gamma_le2(sys: ArtinSystem) -> ArtinSystem:
    """Same vertices, only the edges labelled 2."""
    return ArtinSystem(sys.vertices, [e for e in sys.edges if e[2] == 2])


def link(sys: ArtinSystem, v: str) -> frozenset:
    if v not in sys:
        raise KeyError("unknown vertex %r" % v)
    return sys.neighbors(v)


def star(sys: ArtinSystem, v: str) -> frozenset:
    return link(sys, v) | {v}


# -- chordality ------------------------------------------------------------------


def lex_bfs(sys: ArtinSystem) -> list[str]:
    """Lexicographic breadth-first order by partition refinement.

    Ties go to the canonically earliest vertex, so the output is deterministic.
    """
    # Each part is a list of vertices; parts ordered from highest label down.
    parts = [list(sys.vertices)]
    order = []
    while parts:
        head = parts[0]
        v = head.pop(0)
        if not head:
            parts.pop(0)
        order.append(v)
        nbrs = sys.neighbors(v)
        refined = []
        for part in parts:
            inside = [u for u in part if u in nbrs]
            outside = [u for u in part if u not in nbrs]
            if inside:
                refined.append(inside)
            if outside:
                refined.append(outside)
        parts = refined
    return order


def _chordless_cycle_through(sys: ArtinSystem, v: str, a: str, b: str) -> list[str] | None:
    """Shortest path a..b avoiding the closed neighbourhood of v except a, b.

    Together with v it closes a chordless cycle of length >= 4 when it exists.
    """
    blocked = (sys.neighbors(v) | {v}) - {a, b}
    prev = {a: None}
    queue = deque([a])
    while queue:
        u = queue.popleft()
        if u == b:
            break
        for w in sys.sort(sys.neighbors(u)):
            if w in blocked or w in prev:
                continue
            prev[w] = u
            queue.append(w)
    if b not in prev:
        return None
    path = [b]
    while prev[path[-1]] is not None:
        path.append(prev[path[-1]])
    path.reverse()
    return [v] + path


def _canonical_cycle(sys: ArtinSystem, cycle: list[str]) -> list[str]:
    # Start at the earliest vertex, then head towards the earlier of its two neighbours.
    i = min(range(len(cycle)), key=lambda k: sys.order_key(cycle[k]))
    cycle = cycle[i:] + cycle[:i]
    if sys.order_key(cycle[-1]) < sys.order_key(cycle[1]):
        cycle = cycle[:1] + cycle[:0:-1]
    return cycle


def is_chordal(sys: ArtinSystem) -> tuple[bool, list[str] | None]:
    """Decide chordality, ignoring labels.

    Returns ``(True, None)`` or ``(False, cycle)`` where ``cycle`` is an induced
    chordless cycle with at least four vertices.
    """
    order = lex_bfs(sys)
    # The reverse of a Lex-BFS order is a perfect elimination order iff chordal.
    position = {v: i for i, v in enumerate(order)}
    failure = None
    for v in order:
        earlier = [u for u in sys.neighbors(v) if position[u] < position[v]]
        if not earlier:
            continue
        parent = max(earlier, key=position.__getitem__)
        for u in sys.sort(earlier):
            if u != parent and not sys.has_edge(u, parent):
                failure = (parent, v, u)
                break
        if failure:
            break
    if failure is None:
        return True, None
    parent, v, u = failure
    cycle = _chordless_cycle_through(sys, v, parent, u)
    if cycle is not None and len(cycle) >= 4:
        return False, _canonical_cycle(sys, cycle)
    # Exhaustive fallback: some vertex has two non-adjacent neighbours that
    # reconnect outside its neighbourhood.
    for x in sys.vertices:
        for a, b in combinations(sys.sort(sys.neighbors(x)), 2):
            if sys.has_edge(a, b):
                continue
            cycle = _chordless_cycle_through(sys, x, a, b)
            if cycle is not None:
                return False, _canonical_cycle(sys, cycle)
    raise AssertionError("perfect elimination check failed but no chordless cycle found")


@dataclass(frozen=True)
class Coherent:
    pass


@dataclass(frozen=True)
class Incoherent:
    graph: str  # "gamma" or "gamma_le2"
    cycle: tuple[str, ...]


def is_coherent(sys: ArtinSystem) -> Coherent | Incoherent:
    """Coherence of the group: both the graph and its label-2 part must be chordal."""
    require_eafc(sys)
    ok, cycle = is_chordal(sys)
    if not ok:
        return Incoherent("gamma", tuple(cycle))
    ok, cycle = is_chordal(gamma_le2(sys))
    if not ok:
        return Incoherent("gamma_le2", tuple(cycle))
    return Coherent()


# -- products and classification ---------------------------------------------------


def direct_factor_partition(sys: ArtinSystem) -> list[tuple[str, ...]]:
    """Finest splitting of the vertices into mutually commuting blocks.

    Blocks are the components of the graph joining two vertices whenever they
    are *not* connected by a label-2 edge.
    """
    seen = set()
    parts = []
    for v in sys.vertices:
        if v in seen:
            continue
        part = {v}
        queue = deque([v])
        while queue:
            u = queue.popleft()
            for w in sys.vertices:
                if w not in part and sys.label(u, w) != 2:
                    part.add(w)
                    queue.append(w)
        seen |= part
        parts.append(sys.sort(part))
    return parts


@dataclass(frozen=True)
class FreeAbelian:
    rank: int


@dataclass(frozen=True)
class Large:
    pass


def classify_group(sys: ArtinSystem) -> FreeAbelian | Large:
    require_eafc(sys)
    if sys.is_complete() and all(m == 2 for _, _, m in sys.edges):
        return FreeAbelian(len(sys))
    return Large()
