"""Splitting an EAFC group into free products, direct products and amalgams.

The recursion mirrors the structure of the groups: a disconnected graph gives
a free product, a graph whose vertices fall into mutually commuting blocks
gives a direct product, a complete graph is a product of dihedral and cyclic
factors, and otherwise a vertex ``v`` with non-full link splits the group as
``G_Star(v) *_{G_Link(v)} G_{V - v}``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Optional, Union

from .artin_system import ArtinSystem, direct_factor_partition, require_eafc
from .words import artin_relator


@dataclass(frozen=True)
class Dihedral:
    a: str
    b: str
    n: int


@dataclass(frozen=True)
class Cyclic:
    v: str


@dataclass(frozen=True)
class FreeProduct:
    vertices: tuple
    children: tuple


@dataclass(frozen=True)
class DirectProduct:
    vertices: tuple
    children: tuple


@dataclass(frozen=True)
class Amalgam:
    vertices: tuple
    vertex: str
    star_child: "Node"
    delta_child: "Node"
    link: tuple


@dataclass(frozen=True)
class CompleteBase:
    vertices: tuple
    factors: tuple


Node = Union[FreeProduct, DirectProduct, Amalgam, CompleteBase]

# A splitter picks the amalgam vertex: (subsystem, candidates in canonical order) -> vertex.
Splitter = Callable[[ArtinSystem, list], str]


def default_splitter(sub: ArtinSystem, candidates: list) -> str:
    """Smallest star, ties broken by canonical vertex order."""
    return min(candidates, key=lambda v: (len(sub.neighbors(v)) + 1, sub.order_key(v)))


def prefer_vertex(name: str, fallback: Splitter = default_splitter) -> Splitter:
    """Splitter that uses ``name`` whenever it is a valid splitting vertex."""

    def choose(sub, candidates):
        return name if name in candidates else fallback(sub, candidates)

    return choose


def split_candidates(sub: ArtinSystem) -> list:
    """Vertices whose link misses some other vertex, in canonical order."""
    n = len(sub)
    return [v for v in sub.vertices if len(sub.neighbors(v)) < n - 1]


def complete_factorization(sys: ArtinSystem) -> tuple:
    """Dihedral factors for the edges labelled above 2, cyclic factors for the rest."""
    if not sys.is_complete():
        raise ValueError("complete_factorization needs a complete graph")
    require_eafc(sys)
    factors = []
    used = set()
    for u, v, m in sys.edges:
        if m > 2:
            # EAFC makes the edges labelled > 2 of a complete graph pairwise disjoint.
            assert u not in used and v not in used
            factors.append(Dihedral(u, v, m // 2))
            used.update((u, v))
    for v in sys.vertices:
        if v not in used:
            factors.append(Cyclic(v))
    order = {v: i for i, v in enumerate(sys.vertices)}
    factors.sort(key=lambda f: order[f.a] if isinstance(f, Dihedral) else order[f.v])
    return tuple(factors)


def decompose(sys: ArtinSystem, splitter: Optional[Splitter] = None) -> Node:
    require_eafc(sys)
    return _decompose(sys, splitter or default_splitter)


def _decompose(sub: ArtinSystem, splitter: Splitter) -> Node:
    vs = sub.vertices
    comps = sub.connected_components()
    if len(comps) > 1:
        return FreeProduct(vs, tuple(_decompose(sub.induced(c), splitter) for c in comps))
    parts = direct_factor_partition(sub)
    if len(parts) > 1:
        return DirectProduct(vs, tuple(_decompose(sub.induced(p), splitter) for p in parts))
    if sub.is_complete():
        return CompleteBase(vs, complete_factorization(sub))
    candidates = split_candidates(sub)
    v = splitter(sub, candidates)
    if v not in candidates:
        raise ValueError("%r has full link and cannot split the group" % v)
    lk = sub.neighbors(v)
    star = sub.sort(lk | {v})
    delta = tuple(u for u in vs if u != v)
    return Amalgam(
        vs,
        v,
        _decompose(sub.induced(star), splitter),
        _decompose(sub.induced(delta), splitter),
        sub.sort(lk),
    )


# -- graphs of groups -------------------------------------------------------------


@dataclass(frozen=True)
class GogEdge:
    source: int
    target: int
    label: tuple


@dataclass
class GraphOfGroups:
    """Oriented graph with vertex and edge groups named by vertex subsets.

    ``tree`` lists the indices of the edges in the chosen maximal subtree;
    every other edge ``i`` carries the stable letter ``stable_letters[i]``.
    """

    vertex_labels: list
    edges: list
    tree: Optional[list] = None
    stable_letters: dict = field(default_factory=dict)

    def __post_init__(self):
        for e in self.edges:
            src = set(self.vertex_labels[e.source])
            tgt = set(self.vertex_labels[e.target])
            if not (set(e.label) <= src and set(e.label) <= tgt):
                raise ValueError("edge label %s not contained in both endpoint labels" % (e.label,))
        if self.tree is None:
            self.tree = _bfs_tree(len(self.vertex_labels), self.edges)
        self.stable_letters = {i: "t_%d" % i for i in range(len(self.edges)) if i not in self.tree}


def _bfs_tree(nv: int, edges: list) -> list:
    """Maximal subtree grown breadth-first from vertex 0."""
    adj = [[] for _ in range(nv)]
    for i, e in enumerate(edges):
        adj[e.source].append((i, e.target))
        adj[e.target].append((i, e.source))
    seen = {0} if nv else set()
    tree = []
    queue = deque(seen)
    while queue:
        u = queue.popleft()
        for i, w in adj[u]:
            if w not in seen:
                seen.add(w)
                tree.append(i)
                queue.append(w)
    return sorted(tree)


def to_graph_of_groups(node: Node) -> GraphOfGroups:
    if isinstance(node, Amalgam):
        delta = tuple(v for v in node.vertices if v != node.vertex)
        star = node.star_child.vertices
        return GraphOfGroups([star, delta], [GogEdge(0, 1, node.link)])
    if isinstance(node, FreeProduct):
        labels = [c.vertices for c in node.children]
        edges = [GogEdge(0, i, ()) for i in range(1, len(labels))]
        return GraphOfGroups(labels, edges)
    return GraphOfGroups([node.vertices], [])


def underlying_free_rank(gog: GraphOfGroups) -> int:
    """First Betti number of the underlying graph: edges outside the maximal subtree."""
    return len(gog.edges) - len(gog.tree)


# -- presentations and reports -------------------------------------------------------


@dataclass(frozen=True)
class Presentation:
    generators: tuple
    relators: tuple  # of Word


def emit_presentation(sys: ArtinSystem) -> Presentation:
    return Presentation(sys.vertices, tuple(artin_relator(sys, u, v) for u, v, _ in sys.edges))


def tree_to_dict(node: Node) -> dict:
    if isinstance(node, FreeProduct):
        return {"kind": "free_product", "vertices": list(node.vertices),
                "children": [tree_to_dict(c) for c in node.children]}
    if isinstance(node, DirectProduct):
        return {"kind": "direct_product", "vertices": list(node.vertices),
                "children": [tree_to_dict(c) for c in node.children]}
    if isinstance(node, Amalgam):
        return {"kind": "amalgam", "vertices": list(node.vertices), "vertex": node.vertex,
                "link": list(node.link), "star": tree_to_dict(node.star_child),
                "delta": tree_to_dict(node.delta_child)}
    factors = []
    for f in node.factors:
        if isinstance(f, Dihedral):
            factors.append({"kind": "dihedral", "a": f.a, "b": f.b, "n": f.n})
        else:
            factors.append({"kind": "cyclic", "v": f.v})
    return {"kind": "complete", "vertices": list(node.vertices), "factors": factors}


def format_tree(node: Node, indent: int = 0) -> str:
    pad = "  " * indent
    vs = "{%s}" % ", ".join(node.vertices)
    if isinstance(node, FreeProduct):
        lines = [pad + "FreeProduct " + vs]
        lines += [format_tree(c, indent + 1) for c in node.children]
    elif isinstance(node, DirectProduct):
        lines = [pad + "DirectProduct " + vs]
        lines += [format_tree(c, indent + 1) for c in node.children]
    elif isinstance(node, Amalgam):
        lines = [pad + "Amalgam %s at %s over link {%s}" % (vs, node.vertex, ", ".join(node.link))]
        lines.append(format_tree(node.star_child, indent + 1))
        lines.append(format_tree(node.delta_child, indent + 1))
    else:
        fs = []
        for f in node.factors:
            fs.append("D%d(%s,%s)" % (2 * f.n, f.a, f.b) if isinstance(f, Dihedral) else "Z(%s)" % f.v)
        lines = [pad + "CompleteBase %s: %s" % (vs, " x ".join(fs))]
    return "\n".join(lines)
