"""Deciding equality of words in an EAFC group.

Every word ``w`` lies in the standard parabolic subgroup spanned by its
support, and that subgroup is the Artin group of the induced subsystem, so the
solver always works on the support of the word it is handed.  On that
subsystem it applies the first matching case:

* disconnected graph: free product, reduced piece by piece;
* several commuting blocks: direct product, decided factorwise;
* complete graph: product of dihedral and cyclic groups;
* otherwise an amalgam ``G_A *_{G_C} G_B`` with ``A`` the star of a splitting
  vertex ``v``, ``B`` everything but ``v`` and ``C`` the link of ``v``.  Pieces
  lying in ``G_C`` are absorbed into their neighbours until the sequence is
  reduced; a reduced sequence of two or more pieces is never trivial.

Membership ``p in G_C`` is decided as ``p == retraction(C, p)`` inside the
smaller side group, which is where the recursion happens.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .artin_system import ArtinSystem, direct_factor_partition, require_eafc
from .decompose import Dihedral, Splitter, complete_factorization, default_splitter, split_candidates
from .dihedral import dihedral_trivial
from .words import (
    HostMismatchError,
    Word,
    conjugate,
    free_reduce,
    invert,
    invert_syllables,
    power,
    retract_syllables,
)

_CACHE_LIMIT = 200_000


@dataclass(frozen=True)
class _FreePlan:
    component_of: dict  # vertex -> component index


@dataclass(frozen=True)
class _DirectPlan:
    parts: tuple  # of frozenset


@dataclass(frozen=True)
class _CompletePlan:
    dihedral: tuple  # of (a, b, n)


@dataclass(frozen=True)
class _AmalgamPlan:
    vertex: str
    link: frozenset


class WordProblemSolver:
    """Equality decisions in ``G_sys``.

    ``splitter`` overrides the choice of amalgam vertex; every valid choice
    yields the same verdicts.  Instances are safe to share between threads:
    the caches only ever receive idempotent inserts.
    """

    def __init__(self, sys: ArtinSystem, splitter: Optional[Splitter] = None):
        require_eafc(sys)
        self.sys = sys
        self.splitter = splitter or default_splitter
        self._plans: dict = {}
        self._verdicts: dict = {}
        self._lock = threading.Lock()

    # -- public -----------------------------------------------------------

    def is_trivial(self, w: Word) -> bool:
        self._check_host(w)
        return self.trivial_syllables(w.syllables)

    def are_equal(self, w1: Word, w2: Word) -> bool:
        self._check_host(w1)
        self._check_host(w2)
        return self.trivial_syllables(free_reduce(w1.syllables + invert_syllables(w2.syllables)))

    def trivial_syllables(self, syl: Sequence) -> bool:
        syl = tuple(syl)
        if not syl:
            return True
        sums: dict = {}
        for g, e in syl:
            sums[g] = sums.get(g, 0) + e
        if any(sums.values()):
            # Relators have zero exponent sums, so the abelian image is an invariant.
            return False
        cached = self._verdicts.get(syl)
        if cached is not None:
            return cached
        verdict = self._decide(syl, frozenset(sums))
        if len(self._verdicts) > _CACHE_LIMIT:
            with self._lock:
                self._verdicts.clear()
        self._verdicts[syl] = verdict
        return verdict

    # -- internals ----------------------------------------------------------

    def _check_host(self, w: Word) -> None:
        if w.host is not self.sys and w.host != self.sys:
            raise HostMismatchError("word is over a different Artin system")

    def _plan(self, support: frozenset):
        plan = self._plans.get(support)
        if plan is not None:
            return plan
        sub = self.sys.induced(support)
        comps = sub.connected_components()
        if len(comps) > 1:
            plan = _FreePlan({v: i for i, c in enumerate(comps) for v in c})
        else:
            parts = direct_factor_partition(sub)
            if len(parts) > 1:
                plan = _DirectPlan(tuple(frozenset(p) for p in parts))
            elif sub.is_complete():
                plan = _CompletePlan(tuple((f.a, f.b, f.n) for f in complete_factorization(sub)
                                           if isinstance(f, Dihedral)))
            else:
                candidates = split_candidates(sub)
                v = self.splitter(sub, candidates)
                if v not in candidates:
                    raise ValueError("splitter returned %r, which has full link" % (v,))
                plan = _AmalgamPlan(v, sub.neighbors(v))
        with self._lock:
            return self._plans.setdefault(support, plan)

    def _decide(self, syl: tuple, support: frozenset) -> bool:
        plan = self._plan(support)
        if isinstance(plan, _FreePlan):
            return self._free_product(plan, syl)
        if isinstance(plan, _DirectPlan):
            return all(self.trivial_syllables(retract_syllables(p, syl)) for p in plan.parts)
        if isinstance(plan, _CompletePlan):
            # Cyclic factors are settled by the exponent sums checked above.
            return all(dihedral_trivial(n, a, b, retract_syllables((a, b), syl)) for a, b, n in plan.dihedral)
        return self._amalgam(plan, syl)

    def _free_product(self, plan: _FreePlan, syl: tuple) -> bool:
        comp = plan.component_of
        stack: list = []  # (component, syllables), each nontrivial, neighbours differ
        for side, piece in _runs(syl, lambda g: comp[g]):
            if stack and stack[-1][0] == side:
                piece = free_reduce(stack.pop()[1] + piece)
            if piece and not self.trivial_syllables(piece):
                stack.append((side, piece))
        return not stack

    def _in_link_group(self, link: frozenset, piece: tuple) -> tuple | None:
        """``retraction(link, piece)`` when ``piece`` lies in ``G_link``, else None."""
        proj = retract_syllables(link, piece)
        if all(g in link for g, _ in piece):
            return proj
        if self.trivial_syllables(free_reduce(piece + invert_syllables(proj))):
            return proj
        return None

    def _amalgam(self, plan: _AmalgamPlan, syl: tuple) -> bool:
        link = plan.link
        stack: list = []  # (side, syllables); every entry lies outside G_link
        carry: tuple = ()
        for side, piece in assign_sides(syl, plan.vertex, link):
            piece = carry + piece
            carry = ()
            if stack and stack[-1][0] == side:
                piece = stack.pop()[1] + piece
            piece = free_reduce(piece)
            proj = self._in_link_group(link, piece) if piece else ()
            if proj is None:
                stack.append((side, piece))
            elif stack:
                # Absorbing an element of G_link keeps the neighbour outside G_link.
                top_side, top = stack.pop()
                stack.append((top_side, free_reduce(top + proj)))
            else:
                carry = proj
        if not stack:
            return self.trivial_syllables(carry)
        if len(stack) == 1:
            return self.trivial_syllables(stack[0][1])
        return False


def _runs(syl: tuple, key):
    out = []
    for g, e in syl:
        k = key(g)
        if out and out[-1][0] == k:
            out[-1][1].append((g, e))
        else:
            out.append((k, [(g, e)]))
    return [(k, tuple(s)) for k, s in out]


def assign_sides(syl: Sequence, vertex: str, link: Iterable[str]) -> list:
    """Initial factorisation for the amalgam at ``vertex``.

    Syllables on ``vertex`` go to side ``"A"`` (the star), other syllables off
    the link go to side ``"B"``, and link syllables join the preceding piece
    (the following one at the start of the word).
    """
    link = frozenset(link)
    sides = []
    for g, _ in syl:
        if g == vertex:
            sides.append("A")
        elif g in link:
            sides.append(None)
        else:
            sides.append("B")
    last = None
    for i, s in enumerate(sides):
        if s is None:
            sides[i] = last
        else:
            last = s
    nxt = None
    for i in range(len(sides) - 1, -1, -1):
        if sides[i] is None:
            sides[i] = nxt
        else:
            nxt = sides[i]
    if sides and sides[0] is None:
        sides = ["B"] * len(sides)
    out = []
    for s, (g, e) in zip(sides, syl):
        if out and out[-1][0] == s:
            out[-1][1].append((g, e))
        else:
            out.append((s, [(g, e)]))
    return [(s, tuple(p)) for s, p in out]


@dataclass(frozen=True)
class SyllableDecomposition:
    pieces: tuple  # of (side, Word)


def syllable_decomposition(sys: ArtinSystem, vertex: str, w: Word) -> SyllableDecomposition:
    """Alternating A/B factorisation of ``w`` for the amalgam at ``vertex``."""
    pieces = assign_sides(w.syllables, vertex, sys.neighbors(vertex))
    return SyllableDecomposition(tuple((s, Word(sys, p, reduced=True)) for s, p in pieces))


# -- shared solvers --------------------------------------------------------------

_solvers: dict = {}
_solvers_lock = threading.Lock()


def get_solver(sys: ArtinSystem, splitter: Optional[Splitter] = None) -> WordProblemSolver:
    """Memoised solver per (system, splitter)."""
    key = (sys, splitter)
    solver = _solvers.get(key)
    if solver is None:
        solver = WordProblemSolver(sys, splitter)
        with _solvers_lock:
            if len(_solvers) > 256:
                _solvers.clear()
            solver = _solvers.setdefault(key, solver)
    return solver


def is_trivial(sys: ArtinSystem, w: Word, splitter: Optional[Splitter] = None) -> bool:
    return get_solver(sys, splitter).is_trivial(w)


def are_equal(sys: ArtinSystem, w1: Word, w2: Word, splitter: Optional[Splitter] = None) -> bool:
    return get_solver(sys, splitter).are_equal(w1, w2)


def in_standard_parabolic(sys: ArtinSystem, subset: Iterable[str], w: Word) -> bool:
    """``w`` lies in ``G_S`` exactly when it equals its retraction onto ``S``."""
    s = frozenset(subset)
    proj = Word(sys, retract_syllables(s, w.syllables), reduced=True)
    return are_equal(sys, w, proj)


def in_parabolic(sys: ArtinSystem, subset: Iterable[str], c: Word, w: Word) -> bool:
    """Membership of ``w`` in ``c G_S c^-1``, tested as ``c^-1 w c in G_S``."""
    return in_standard_parabolic(sys, subset, conjugate(w, invert(c)))


def in_quasi_centralizer(sys: ArtinSystem, subset: Iterable[str], g: Word) -> bool:
    """``g`` fixes every generator of ``S`` under conjugation."""
    solver = get_solver(sys)
    for s in subset:
        gen = Word.generator(sys, s)
        if not solver.are_equal(conjugate(gen, g), gen):
            return False
    return True


@dataclass(frozen=True)
class RootClosureRecord:
    n: int
    power_in: bool
    root_in: bool

    @property
    def violation(self) -> bool:
        return self.power_in and not self.root_in


def check_root_closure(sys: ArtinSystem, subset: Iterable[str], c: Word, w: Word, n_max: int) -> list:
    """For ``n = 1..n_max`` record whether ``w^n`` and ``w`` lie in ``c G_S c^-1``."""
    subset = frozenset(subset)
    root_in = in_parabolic(sys, subset, c, w)
    out = []
    for n in range(1, n_max + 1):
        out.append(RootClosureRecord(n, in_parabolic(sys, subset, c, power(w, n)), root_in))
    return out


VACUOUS = "Vacuous"
CONFIRMED = "Confirmed"
VIOLATION = "Violation"


def check_equation_property(sys: ArtinSystem, g0map, x: Word, y: Word, z: Word) -> str:
    """If ``x, y, z`` lie in G_0, ``x`` commutes with ``y`` and ``z x z^-1 = y`` then ``x = y``."""
    from .subgroups import in_g0

    if not (in_g0(sys, g0map, x) and in_g0(sys, g0map, y) and in_g0(sys, g0map, z)):
        return VACUOUS
    solver = get_solver(sys)
    if not solver.are_equal(conjugate(y, x), y):
        return VACUOUS
    if not solver.are_equal(conjugate(x, z), y):
        return VACUOUS
    return CONFIRMED if solver.are_equal(x, y) else VIOLATION
