"""The kernel of the retraction onto a cone vertex, as an Artin group.

If ``x`` is adjacent to every other vertex, the kernel of ``rho_x`` (kill all
generators except ``x``) is the Artin group of a graph Omega with vertices
``u__j`` for ``u`` in the link of ``x`` and ``0 <= j < m(u, x)/2``.  Two Omega
vertices are adjacent, with the same label, when their types are adjacent in
the original graph.  The vertex ``u__j`` corresponds to ``x^j u x^-j``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .artin_system import ArtinSystem, require_eafc
from .words import Word, free_reduce


@dataclass(frozen=True)
class OmegaSystem:
    system: ArtinSystem
    type_of: dict
    index_of: dict
    apex: str
    host: ArtinSystem

    def substitution_table(self) -> list:
        return [
            {"vertex": w, "type": self.type_of[w], "index": self.index_of[w],
             "word": _format_conj(self.apex, self.type_of[w], self.index_of[w])}
            for w in self.system.vertices
        ]


def _format_conj(x: str, u: str, j: int) -> str:
    if j == 0:
        return u
    xp = x if j == 1 else "%s^%d" % (x, j)
    xm = "%s^-%d" % (x, j) if j != 1 else "%s^-1" % x
    return "%s %s %s" % (xp, u, xm)


def omega_name(u: str, j: int) -> str:
    return "%s__%d" % (u, j)


def build_omega(sys: ArtinSystem, x: str) -> OmegaSystem:
    require_eafc(sys)
    if x not in sys:
        raise KeyError("unknown vertex %r" % x)
    if len(sys) == 1:
        raise ValueError("the link of %r is empty, so Omega would have no vertices" % x)
    if len(sys.neighbors(x)) != len(sys) - 1:
        raise ValueError("%r is not adjacent to every other vertex" % x)
    vertices = []
    type_of = {}
    index_of = {}
    for u in sys.vertices:
        if u == x:
            continue
        for j in range(sys.label(u, x) // 2):
            name = omega_name(u, j)
            vertices.append(name)
            type_of[name] = u
            index_of[name] = j
    edges = []
    for i, p in enumerate(vertices):
        for q in vertices[i + 1:]:
            m = sys.label(type_of[p], type_of[q])
            if m is not None:
                edges.append((p, q, m))
    return OmegaSystem(ArtinSystem(vertices, edges), type_of, index_of, x, sys)


def embed(omega: OmegaSystem, w: Word) -> Word:
    """Substitute ``u__j -> x^j u x^-j`` and freely reduce."""
    x = omega.apex
    out = []
    for g, e in w.syllables:
        j = omega.index_of[g]
        out.extend(((x, j), (omega.type_of[g], e), (x, -j)))
    return Word(omega.host, free_reduce(out), reduced=True)
