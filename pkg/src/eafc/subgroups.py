"""The finite-index subgroup G_0, Schreier rewriting over its quotient, and largeness certificates.

For an edge ``e = {a, b}`` with label ``2n`` the dihedral group ``G_e`` maps
onto ``C_n`` by ``a -> 0, b -> 1``; its kernel ``N_e`` is ``F_n x Z``.  G_0 is
the common kernel of the composites ``G -> G_e -> C_n`` over all edges, so it
is the kernel of one map ``G -> prod_e C_(n_e)``.  Which endpoint plays ``a``
is a free choice per edge, recorded in a :class:`G0Map`.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from math import prod
from typing import Mapping, Optional, Sequence

from .artin_system import ArtinSystem, FreeAbelian, classify_group, require_eafc
from .decompose import Presentation
from .dihedral import DihedralContext, appropriate_gens, cn_quotient_image
from .snf import abelianization_invariants, smith_normal_form
from .words import Word, free_reduce, format_syllables, invert_syllables, parse_syllables, retraction

__all__ = [
    "G0Map", "FiniteAbelianElement", "SchreierData", "g0_image", "g0_index", "g0_index_bound",
    "in_g0", "reidemeister_schreier_g0", "smith_normal_form", "abelianization_invariants",
    "kernel_phi_rank", "VirtuallyAbelian", "FreeRetraction", "DihedralRoute",
    "largeness_certificate", "verify_certificate",
]


# -- G_0 ------------------------------------------------------------------------


@dataclass(frozen=True)
class G0Map:
    """Per-edge choice of the endpoint sent to 0 (the ``a`` role).

    ``edges`` follows the canonical edge order of the system; ``a_roles[i]``
    is the endpoint of ``edges[i]`` mapped to 0 and ``moduli[i] = m/2``.
    """

    edges: tuple
    a_roles: tuple
    moduli: tuple

    def b_role(self, i: int) -> str:
        u, v = self.edges[i]
        return v if self.a_roles[i] == u else u

    @classmethod
    def lexicographic(cls, sys: ArtinSystem) -> "G0Map":
        """The lexicographically smaller endpoint of every edge takes the ``a`` role."""
        es = sys.edges
        return cls(tuple((u, v) for u, v, _ in es), tuple(min(u, v) for u, v, _ in es),
                   tuple(m // 2 for _, _, m in es))

    @classmethod
    def default(cls, sys: ArtinSystem) -> "G0Map":
        """Orientation giving G_0 the largest index this construction allows.

        Edges with ``n_e >= 2`` receive pairwise distinct ``b`` endpoints via a
        maximum bipartite matching whenever possible, which makes the quotient
        map onto ``prod C_(n_e)`` surjective.  Ties and unmatched edges follow
        the lexicographic rule.
        """
        lex = cls.lexicographic(sys)
        heavy = [i for i, n in enumerate(lex.moduli) if n >= 2]
        owner: dict = {}  # vertex -> edge index using it as b endpoint

        def prefs(i):
            b = lex.b_role(i)
            a = lex.a_roles[i]
            return (b, a)

        def augment(i, seen):
            for vtx in prefs(i):
                if vtx in seen:
                    continue
                seen.add(vtx)
                if vtx not in owner or augment(owner[vtx], seen):
                    owner[vtx] = i
                    return True
            return False

        for i in heavy:
            augment(i, set())
        a_roles = list(lex.a_roles)
        for vtx, i in owner.items():
            u, v = lex.edges[i]
            a_roles[i] = v if vtx == u else u
        return cls(lex.edges, tuple(a_roles), lex.moduli)

    def with_overrides(self, overrides: Mapping) -> "G0Map":
        """Replace the ``a`` role on the edges named in ``overrides`` (``frozenset({u, v}) -> a``)."""
        roles = list(self.a_roles)
        known = {frozenset(e): i for i, e in enumerate(self.edges)}
        for key, a in overrides.items():
            key = frozenset(key)
            if key not in known:
                raise ValueError("orientation names a non-edge %s" % sorted(key))
            if a not in key:
                raise ValueError("%r is not an endpoint of edge %s" % (a, sorted(key)))
            roles[known[key]] = a
        return G0Map(self.edges, tuple(roles), self.moduli)

    @classmethod
    def from_json(cls, sys: ArtinSystem, text: str) -> "G0Map":
        """Read ``[{"u": .., "v": .., "a": ..}, ...]``; unlisted edges keep the default."""
        data = json.loads(text)
        if not isinstance(data, list):
            raise ValueError("orientation file must hold a JSON list")
        overrides = {}
        for item in data:
            if not isinstance(item, dict) or set(item) != {"u", "v", "a"}:
                raise ValueError("orientation entries need exactly the fields u, v, a")
            overrides[frozenset((item["u"], item["v"]))] = item["a"]
        return cls.default(sys).with_overrides(overrides)

    def to_list(self) -> list:
        return [{"u": u, "v": v, "a": a} for (u, v), a in zip(self.edges, self.a_roles)]


@dataclass(frozen=True)
class FiniteAbelianElement:
    residues: tuple
    moduli: tuple

    def is_zero(self) -> bool:
        return not any(self.residues)

    def __add__(self, other: "FiniteAbelianElement") -> "FiniteAbelianElement":
        return FiniteAbelianElement(
            tuple((x + y) % n for x, y, n in zip(self.residues, other.residues, self.moduli)), self.moduli)

    def __neg__(self) -> "FiniteAbelianElement":
        return FiniteAbelianElement(tuple((-x) % n for x, n in zip(self.residues, self.moduli)), self.moduli)


def _image_of_syllables(g0map: G0Map, syl) -> tuple:
    sums: dict = {}
    for g, e in syl:
        sums[g] = sums.get(g, 0) + e
    return tuple(sums.get(g0map.b_role(i), 0) % n for i, n in enumerate(g0map.moduli))


def g0_image(sys: ArtinSystem, g0map: Optional[G0Map], w: Word) -> FiniteAbelianElement:
    """Image of ``w`` in ``prod_e C_(n_e)``: per edge, the exponent sum of its ``b`` endpoint mod ``n_e``."""
    g0map = g0map or G0Map.default(sys)
    return FiniteAbelianElement(_image_of_syllables(g0map, w.syllables), g0map.moduli)


def in_g0(sys: ArtinSystem, g0map: Optional[G0Map], w: Word) -> bool:
    return g0_image(sys, g0map, w).is_zero()


def g0_index_bound(sys: ArtinSystem) -> int:
    return prod(m // 2 for _, _, m in sys.edges)


def g0_index(sys: ArtinSystem, g0map: Optional[G0Map] = None) -> int:
    """``[G : G_0]``, the order of the image of ``G`` in ``prod_e C_(n_e)``.

    The image is generated by the vertex images.  Its order is
    ``prod n_e / [Z^E : L]`` where ``L`` is spanned by the vertex images and
    the vectors ``n_e * e_e``; the lattice index comes from a Smith form.
    """
    g0map = g0map or G0Map.default(sys)
    moduli = g0map.moduli
    if not moduli:
        return 1
    rows = [list(_image_of_syllables(g0map, ((v, 1),))) for v in sys.vertices]
    for i, n in enumerate(moduli):
        rows.append([n if j == i else 0 for j in range(len(moduli))])
    _, D, _ = smith_normal_form(rows)
    lattice_index = prod(D[i][i] for i in range(len(moduli)))
    return prod(moduli) // lattice_index


# -- Reidemeister-Schreier over the finite quotient -----------------------------------


@dataclass(frozen=True)
class SchreierData:
    """Coset table of ``H cap G_0`` in ``H``, indexed by the image in the finite quotient."""

    cosets: tuple  # image tuples in discovery order; cosets[0] is zero
    table: dict  # (coset, generator index) -> coset
    transversal: dict  # coset -> Word
    generators: tuple  # Schreier generators of H cap G_0

    @property
    def index(self) -> int:
        return len(self.cosets)


def reidemeister_schreier_g0(sys: ArtinSystem, g0map: Optional[G0Map], gens: Sequence[Word]) -> SchreierData:
    if not gens:
        raise ValueError("need at least one generator")
    g0map = g0map or G0Map.default(sys)
    moduli = g0map.moduli
    images = [_image_of_syllables(g0map, g.syllables) for g in gens]

    def add(x, y):
        return tuple((p + q) % n for p, q, n in zip(x, y, moduli))

    zero = tuple(0 for _ in moduli)
    cosets = [zero]
    transversal = {zero: Word.identity(sys)}
    table = {}
    queue = deque([zero])
    # Breadth-first Schreier tree; positive generators suffice in a finite group.
    while queue:
        c = queue.popleft()
        for k, img in enumerate(images):
            d = add(c, img)
            table[(c, k)] = d
            if d not in transversal:
                transversal[d] = Word(sys, transversal[c].syllables + gens[k].syllables)
                cosets.append(d)
                queue.append(d)
    schreier = []
    seen = set()
    for c in cosets:
        t = transversal[c].syllables
        for k, g in enumerate(gens):
            d = table[(c, k)]
            syl = free_reduce(t + g.syllables + invert_syllables(transversal[d].syllables))
            if syl and syl not in seen:
                seen.add(syl)
                schreier.append(Word(sys, syl, reduced=True))
    return SchreierData(tuple(cosets), table, transversal, tuple(schreier))


# -- kernel of the augmentation map on trees -------------------------------------------


def kernel_phi_rank(sys: ArtinSystem) -> int:
    """Rank of the free kernel of ``v -> 1`` when the defining graph is a tree.

    An edge labelled ``2n`` contributes ``2n - 1``: its dihedral group
    contributes ``F_(2n-1)`` and the one-vertex amalgams between edges add
    nothing.
    """
    comps = sys.connected_components()
    if len(comps) != 1 or len(sys.edges) != len(sys) - 1:
        raise ValueError("kernel_phi_rank needs a tree")
    return sum(m - 1 for _, _, m in sys.edges)


# -- largeness certificates -----------------------------------------------------------


@dataclass(frozen=True)
class VirtuallyAbelian:
    rank: int

    def to_dict(self) -> dict:
        return {"kind": "virtually_abelian", "rank": self.rank}


@dataclass(frozen=True)
class FreeRetraction:
    """``G`` retracts onto ``G_{u, v}``, which is free of rank 2."""

    u: str
    v: str

    def to_dict(self) -> dict:
        return {"kind": "free_retraction", "u": self.u, "v": self.v}


@dataclass(frozen=True)
class DihedralRoute:
    """Finite-index subgroup mapping onto a free group of rank ``n``.

    ``generators`` generate ``rho_e^-1(N_e)``; ``images[i]`` is the image of
    ``generators[i]`` in the free group on ``f_0 .. f_(n-1)``, as syllables
    over those symbols.
    """

    a: str
    b: str
    n: int
    index: int
    generators: tuple
    images: tuple

    def free_generators(self) -> tuple:
        return tuple("f_%d" % i for i in range(self.n))

    def to_dict(self) -> dict:
        return {
            "kind": "dihedral_route", "edge": [self.a, self.b], "n": self.n, "index": self.index,
            "generators": [format_syllables(g.syllables) for g in self.generators],
            "images": [format_syllables(s) for s in self.images],
            "free_generators": list(self.free_generators()),
        }


Certificate = (VirtuallyAbelian, FreeRetraction, DihedralRoute)


def certificate_from_dict(sys: ArtinSystem, data: Mapping):
    kind = data.get("kind")
    if kind == "virtually_abelian":
        return VirtuallyAbelian(int(data["rank"]))
    if kind == "free_retraction":
        return FreeRetraction(data["u"], data["v"])
    if kind == "dihedral_route":
        a, b = data["edge"]
        gens = tuple(Word(sys, parse_syllables(s)) for s in data["generators"])
        images = tuple(parse_syllables(s) for s in data["images"])
        return DihedralRoute(a, b, int(data["n"]), int(data["index"]), gens, images)
    raise ValueError("unknown certificate kind %r" % (kind,))


def largeness_certificate(sys: ArtinSystem):
    require_eafc(sys)
    verdict = classify_group(sys)
    if isinstance(verdict, FreeAbelian):
        return VirtuallyAbelian(verdict.rank)
    vs = sys.vertices
    for i, u in enumerate(vs):
        for v in vs[i + 1:]:
            if not sys.has_edge(u, v):
                return FreeRetraction(u, v)
    # Complete and not all labels 2: some edge has n >= 2.
    a, b, m = next(e for e in sys.edges if e[2] > 2)
    n = m // 2
    ctx = DihedralContext(n, a, b)
    gens = [Word(sys, g.syllables) for g in appropriate_gens(ctx)]
    images = [()] + [(("f_%d" % i, 1),) for i in range(n)]
    for c in vs:
        if c not in (a, b):
            gens.append(Word.generator(sys, c))
            images.append(())
    return DihedralRoute(a, b, n, n, tuple(gens), tuple(images))


def verify_certificate(sys: ArtinSystem, cert) -> bool:
    from .word_problem import get_solver

    if not isinstance(cert, Certificate):
        raise TypeError("not a certificate: %r" % (cert,))
    solver = get_solver(sys)
    if isinstance(cert, VirtuallyAbelian):
        return (cert.rank == len(sys) and sys.is_complete()
                and all(m == 2 for _, _, m in sys.edges))
    if isinstance(cert, FreeRetraction):
        u, v = cert.u, cert.v
        if u not in sys or v not in sys or u == v or sys.has_edge(u, v):
            return False
        # The retraction onto {u, v} fixes both generators, and the pair does not commute.
        gu, gv = Word.generator(sys, u), Word.generator(sys, v)
        if retraction(sys, (u, v), gu) != gu or retraction(sys, (u, v), gv) != gv:
            return False
        return not solver.are_equal(gu * gv, gv * gu)
    # DihedralRoute
    a, b, n = cert.a, cert.b, cert.n
    if a not in sys or b not in sys or sys.label(a, b) != 2 * n or n < 2:
        return False
    if cert.index != n or len(cert.generators) != len(cert.images):
        return False
    ctx = DihedralContext(n, a, b)
    for g in cert.generators:
        if g.host != sys:
            return False
        if cn_quotient_image(ctx, retraction(sys, (a, b), g)) != 0:
            return False
    free = set(cert.free_generators())
    hit = set()
    killed = []
    for g, img in zip(cert.generators, cert.images):
        if any(s not in free for s, _ in img):
            return False
        if len(img) == 1 and img[0][1] == 1:
            hit.add(img[0][0])
        if not img:
            killed.append(g)
    if hit != free:
        return False
    # Generators sent to 1 must commute with those carrying the free part.
    carriers = [g for g, img in zip(cert.generators, cert.images) if img]
    for k in killed:
        for g in carriers:
            if not solver.are_equal(k * g, g * k):
                return False
    rank, torsion = abelianization_invariants(Presentation(tuple(sorted(free)), ()))
    return rank >= 2 and not torsion
