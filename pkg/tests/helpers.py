"""Shared catalog, samplers and independent oracles for the test suite."""

from __future__ import annotations

import random
from itertools import combinations
from math import gcd

from eafc.artin_system import ArtinSystem
from eafc.words import Word, free_reduce, invert_syllables


def _sys(vertices, edges):
    return ArtinSystem(list(vertices), list(edges))


# Every entry is EAFC.  Names are stable because acceptance output refers to them.
CATALOG = {
    "vertex": _sys("a", []),
    "two_points": _sys("ab", []),
    "edge2": _sys("ab", [("a", "b", 2)]),
    "edge4": _sys("ab", [("a", "b", 4)]),
    "edge6": _sys("ab", [("a", "b", 6)]),
    "path46": _sys("abc", [("a", "b", 4), ("b", "c", 6)]),
    "star426": _sys("xabc", [("x", "a", 4), ("x", "b", 2), ("x", "c", 6)]),
    "path424": _sys("abcd", [("a", "b", 4), ("b", "c", 2), ("c", "d", 4)]),
    "triangle2": _sys("abc", [("a", "b", 2), ("b", "c", 2), ("a", "c", 2)]),
    "triangle4": _sys("abc", [("a", "b", 4), ("b", "c", 2), ("a", "c", 2)]),
    "square2": _sys("abcd", [("a", "b", 2), ("b", "c", 2), ("c", "d", 2), ("d", "a", 2)]),
    "square4": _sys("abcd", [("a", "b", 4), ("b", "c", 4), ("c", "d", 4), ("d", "a", 4)]),
    "chordal_square4": _sys("abcd", [("a", "b", 2), ("b", "c", 2), ("c", "d", 2), ("d", "a", 2), ("a", "c", 4)]),
    "chordal_square2": _sys("abcd", [("a", "b", 2), ("b", "c", 2), ("c", "d", 2), ("d", "a", 2), ("a", "c", 2)]),
    "pentagon": _sys("abcde", [("a", "b", 4), ("b", "c", 2), ("c", "d", 6), ("d", "e", 2), ("e", "a", 4)]),
    "cone4": _sys("xabc", [("x", "a", 4), ("x", "b", 2), ("x", "c", 2), ("a", "b", 2), ("b", "c", 2)]),
    "k4_two_dihedral": _sys(
        "abcd", [("a", "b", 4), ("c", "d", 4), ("a", "c", 2), ("a", "d", 2), ("b", "c", 2), ("b", "d", 2)]
    ),
}

TREES = ["vertex", "edge2", "edge4", "edge6", "path46", "star426", "path424"]


def letters_of(sys: ArtinSystem) -> list:
    return [(v, e) for v in sys.vertices for e in (1, -1)]


def random_syllables(rng: random.Random, sys: ArtinSystem, length: int) -> tuple:
    """Freely reduced word with exactly ``length`` letters."""
    alphabet = letters_of(sys)
    out = []
    while len(out) < length:
        g = rng.choice(alphabet)
        if out and out[-1] == (g[0], -g[1]):
            continue
        out.append(g)
    return free_reduce(out)


def random_word(rng: random.Random, sys: ArtinSystem, max_len: int) -> Word:
    return Word(sys, random_syllables(rng, sys, rng.randint(0, max_len)), reduced=True)


def relator_syllables(sys: ArtinSystem, u: str, v: str) -> tuple:
    m = sys.label(u, v)
    left = [(u, 1) if i % 2 == 0 else (v, 1) for i in range(m)]
    right = [(v, 1) if i % 2 == 0 else (u, 1) for i in range(m)]
    return free_reduce(left + list(invert_syllables(tuple(right))))


def random_trivial(rng: random.Random, sys: ArtinSystem, pieces: int = 2, conj_len: int = 3) -> tuple:
    """Product of conjugated relators: trivial by construction."""
    out: tuple = ()
    if not sys.edges:
        c = random_syllables(rng, sys, conj_len)
        return free_reduce(c + invert_syllables(c))
    for _ in range(pieces):
        u, v, _m = rng.choice(sys.edges)
        r = relator_syllables(sys, u, v)
        if rng.random() < 0.5:
            r = invert_syllables(r)
        c = random_syllables(rng, sys, rng.randint(0, conj_len))
        out = free_reduce(out + c + r + invert_syllables(c))
    return out


# -- right-angled oracle: piling ---------------------------------------------------


class Piles:
    """Piling normal form for a right-angled Artin group.

    Placing ``x^e`` pushes it on the pile of ``x`` and a blocker on the pile of
    every vertex that does not commute with ``x``.  It cancels instead when the
    top of the ``x`` pile is ``x^-e``, removing that letter and its blockers.
    The element is trivial iff every pile is empty.  Undo information makes the
    structure suitable for depth-first enumeration.
    """

    def __init__(self, sys: ArtinSystem):
        self.piles = {v: [] for v in sys.vertices}
        # Pile objects of the vertices that do not commute with each vertex.
        self.blocked = {
            v: [self.piles[u] for u in sys.vertices if u != v and not sys.has_edge(u, v)] for v in sys.vertices
        }
        self.size = 0

    def push(self, g: str, e: int) -> bool:
        """Place ``g^e``; returns True when it cancelled against the pile top."""
        pile = self.piles[g]
        if pile and pile[-1] == -e:
            pile.pop()
            for other in self.blocked[g]:
                other.pop()
            self.size -= 1
            return True
        pile.append(e)
        for other in self.blocked[g]:
            other.append(0)
        self.size += 1
        return False

    def undo(self, g: str, e: int, cancelled: bool) -> None:
        pile = self.piles[g]
        if cancelled:
            pile.append(-e)
            for other in self.blocked[g]:
                other.append(0)
            self.size += 1
        else:
            pile.pop()
            for other in self.blocked[g]:
                other.pop()
            self.size -= 1

    @property
    def trivial(self) -> bool:
        return self.size == 0


def exhaustive_raag_check(sys: ArtinSystem, max_len: int, trivial) -> tuple[int, list]:
    """Compare ``trivial(syllables)`` with the piling oracle on every reduced word.

    Returns the number of words visited and the first few disagreements.
    """
    piles = Piles(sys)
    alphabet = letters_of(sys)
    syl: list = []
    count = 0
    bad: list = []

    def visit(depth, last):
        nonlocal count
        t = tuple(syl)
        if trivial(t) != piles.trivial and len(bad) < 10:
            bad.append(t)
        count += 1
        if depth == max_len:
            return
        for g, e in alphabet:
            if last is not None and last[0] == g and last[1] == -e:
                continue
            cancelled = piles.push(g, e)
            if syl and syl[-1][0] == g:
                old = syl[-1]
                syl[-1] = (g, old[1] + e)
                visit(depth + 1, (g, e))
                syl[-1] = old
            else:
                syl.append((g, e))
                visit(depth + 1, (g, e))
                syl.pop()
            piles.undo(g, e, cancelled)

    visit(0, None)
    return count, bad


def raag_systems(n: int) -> list:
    """One all-label-2 system per isomorphism class of graphs on ``n`` vertices."""
    import networkx as nx

    names = "abcdefg"[:n]
    out = []
    for g in nx.graph_atlas_g():
        if g.number_of_nodes() == n:
            out.append(ArtinSystem(list(names), [(names[u], names[v], 2) for u, v in g.edges()]))
    return out


def raag_trivial(sys: ArtinSystem, syllables) -> bool:
    piles = Piles(sys)
    for g, e in syllables:
        step = 1 if e > 0 else -1
        for _ in range(abs(e)):
            piles.push(g, step)
    return piles.trivial


# -- free group oracle ------------------------------------------------------------


def free_trivial(syllables) -> bool:
    return not free_reduce(syllables)


# -- chordality by brute force ------------------------------------------------------


def has_chordless_cycle(vertices, adj) -> bool:
    """Search every vertex subset of size >= 4 for an induced cycle."""
    vs = list(vertices)
    for k in range(4, len(vs) + 1):
        for sub in combinations(vs, k):
            s = set(sub)
            if all(len(adj[v] & s) == 2 for v in sub) and _connected(sub, adj):
                return True
    return False


def _connected(sub, adj) -> bool:
    s = set(sub)
    seen = {sub[0]}
    todo = [sub[0]]
    while todo:
        v = todo.pop()
        for w in adj[v] & s:
            if w not in seen:
                seen.add(w)
                todo.append(w)
    return seen == s


def is_induced_cycle(sys: ArtinSystem, cycle) -> bool:
    k = len(cycle)
    if k < 4 or len(set(cycle)) != k:
        return False
    for i in range(k):
        for j in range(i + 1, k):
            adjacent = (j - i) in (1, k - 1)
            if sys.has_edge(cycle[i], cycle[j]) != adjacent:
                return False
    return True


# -- invariant factors from determinantal divisors ------------------------------


def _det(M):
    n = len(M)
    if n == 0:
        return 1
    if n == 1:
        return M[0][0]
    total = 0
    for j in range(n):
        if M[0][j]:
            minor = [row[:j] + row[j + 1:] for row in M[1:]]
            total += (-1) ** j * M[0][j] * _det(minor)
    return total


def invariant_factors(M) -> list:
    """``d_k = D_k / D_(k-1)`` where ``D_k`` is the gcd of all k-by-k minors."""
    rows, cols = len(M), len(M[0]) if M else 0
    prev = 1
    out = []
    for k in range(1, min(rows, cols) + 1):
        g = 0
        for rs in combinations(range(rows), k):
            for cs in combinations(range(cols), k):
                g = gcd(g, _det([[M[r][c] for c in cs] for r in rs]))
        if g == 0:
            break
        out.append(g // prev)
        prev = g
    return out


# -- kernel rank via Fox calculus ------------------------------------------------


def alexander_rank(sys: ArtinSystem) -> int:
    """``dim H_1(ker phi; Q)`` for ``phi: v -> t`` on a tree-shaped system.

    The presentation has deficiency one.  Removing one generator column from
    the Fox Jacobian leaves a square matrix whose determinant is the order of
    ``H_1`` of the infinite cyclic cover (every generator maps to ``t``), so when
    the kernel is finitely generated its Betti number is the degree span.
    """
    import sympy

    t = sympy.symbols("t")
    gens = list(sys.vertices)
    rows = []
    for u, v, _m in sys.edges:
        rel = relator_syllables(sys, u, v)
        letters = [(g, 1 if e > 0 else -1) for g, e in rel for _ in range(abs(e))]
        row = {g: 0 for g in gens}
        height = 0
        for g, e in letters:
            if e > 0:
                row[g] += t**height
                height += 1
            else:
                height -= 1
                row[g] -= t**height
        rows.append([row[g] for g in gens])
    if not rows:
        return 0
    M = sympy.Matrix([r[1:] for r in rows])
    p = sympy.Poly(sympy.expand(M.det()), t)
    degs = [m[0] for m in p.monoms()]
    return max(degs) - min(degs)
