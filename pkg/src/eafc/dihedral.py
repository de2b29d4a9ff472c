"""Exact arithmetic in the even dihedral Artin groups.

``D(2n) = <a, b | (ab)^n = (ba)^n>``.  Two independent solvers are provided:

* the central-extension route: substitute ``x = ab`` so the relation becomes
  "``x^n`` commutes with ``a``"; modulo the central cyclic subgroup ``<x^n>``
  the group is the free product ``Z * C_n``, where reduced forms are computed
  with a stack, and the lost central part is recovered from the x-exponent sum;
* the semidirect route: the kernel of the retraction ``a -> 1, b -> b`` is free
  on ``a_i = b^i a b^-i`` for ``0 <= i < n``, with
  ``a_i a_(i+1) ... a_(i+n-1) = a_(i+1) ... a_(i+n)`` for every ``i``.

The first is the production path; the second exists to cross-check it.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Sequence, Union

from .artin_system import ArtinSystem
from .words import Word, free_reduce, invert_syllables

WordLike = Union[Word, Sequence]


def _syllables(w: WordLike) -> tuple:
    return w.syllables if isinstance(w, Word) else tuple(w)


@dataclass(frozen=True)
class DihedralContext:
    n: int
    a: str = "a"
    b: str = "b"

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("half-label n must be >= 1, got %d" % self.n)
        if self.a == self.b:
            raise ValueError("the two generators need distinct names")

    @cached_property
    def system(self) -> ArtinSystem:
        return ArtinSystem([self.a, self.b], [(self.a, self.b, 2 * self.n)])

    @property
    def m(self) -> int:
        return 2 * self.n


@dataclass(frozen=True)
class CentralCoords:
    """Image in ``Z * C_n`` plus the integer x-exponent sum.

    ``syllables`` alternate ``("a", k)`` with ``k != 0`` and ``("x", r)`` with
    ``1 <= r < n``.
    """

    syllables: tuple
    x_exponent_sum: int

    @property
    def is_trivial(self) -> bool:
        return not self.syllables and self.x_exponent_sum == 0


@dataclass(frozen=True)
class SemidirectCoords:
    """``w = k * b^t_exponent`` with ``k`` a reduced word in the free basis ``a_0 .. a_(n-1)``.

    ``kernel`` holds syllables ``(i, e)`` meaning ``a_i^e``.
    """

    kernel: tuple
    t_exponent: int

    @property
    def is_trivial(self) -> bool:
        return not self.kernel and self.t_exponent == 0


# -- central-extension route ------------------------------------------------------


def to_ax(ctx: DihedralContext, w: WordLike) -> tuple:
    """Rewrite a word in ``a, b`` over the symbols ``"a"`` and ``"x"`` using ``b = a^-1 x``."""
    out = []
    for g, e in _syllables(w):
        if g == ctx.a:
            out.append(("a", e))
        elif g == ctx.b:
            piece = (("a", -1), ("x", 1)) if e > 0 else (("x", -1), ("a", 1))
            out.extend(piece * abs(e))
        else:
            raise KeyError("generator %r is not %s or %s" % (g, ctx.a, ctx.b))
    return free_reduce(out)


def central_coords(ctx: DihedralContext, w_ax: Sequence) -> CentralCoords:
    """Reduce a word over ``"a"``, ``"x"`` in ``Z * C_n`` and record the x-exponent sum."""
    n = ctx.n
    stack: list[list] = []
    xsum = 0
    for g, e in w_ax:
        if g == "x":
            xsum += e
            e %= n
            if not e:
                continue
            if stack and stack[-1][0] == "x":
                r = (stack[-1][1] + e) % n
                if r:
                    stack[-1][1] = r
                else:
                    stack.pop()
            else:
                stack.append(["x", e])
        elif g == "a":
            if not e:
                continue
            if stack and stack[-1][0] == "a":
                k = stack[-1][1] + e
                if k:
                    stack[-1][1] = k
                else:
                    stack.pop()
            else:
                stack.append(["a", e])
        else:
            raise KeyError("symbol %r is not 'a' or 'x'" % (g,))
    return CentralCoords(tuple((g, e) for g, e in stack), xsum)


def is_trivial_dihedral(ctx: DihedralContext, w: WordLike) -> bool:
    return central_coords(ctx, to_ax(ctx, w)).is_trivial


def dihedral_trivial(n: int, a: str, b: str, syllables: Sequence) -> bool:
    """Fast path of :func:`is_trivial_dihedral` for raw syllables (no context object)."""
    # Letter-level walk of to_ax + central_coords fused together.
    stack: list[list] = []
    xsum = 0

    def push(g, e):
        if stack and stack[-1][0] == g:
            k = stack[-1][1] + e
            if g == "x":
                k %= n
            if k:
                stack[-1][1] = k
            else:
                stack.pop()
        else:
            stack.append([g, e])

    for g, e in syllables:
        if g == a:
            push("a", e)
        elif g == b:
            xsum += e
            if n == 1:
                # x is central of order one in the quotient; b acts as a^-1.
                push("a", -e)
                continue
            step = 1 if e > 0 else -1
            for _ in range(abs(e)):
                if step > 0:
                    push("a", -1)
                    push("x", 1)
                else:
                    push("x", n - 1)
                    push("a", 1)
        else:
            raise KeyError("generator %r is not %s or %s" % (g, a, b))
    return not stack and xsum == 0


def cn_quotient_image(ctx: DihedralContext, w: WordLike) -> int:
    """Image in ``C_n`` under ``a -> 0``, ``ab -> 1``; equals the b-exponent sum mod n."""
    return sum(e for g, e in _syllables(w) if g == ctx.b) % ctx.n


# -- semidirect route ---------------------------------------------------------------


@lru_cache(maxsize=None)
def _expand(n: int, j: int) -> tuple:
    """``a_j`` as a reduced word in the basis ``a_0 .. a_(n-1)``."""
    if 0 <= j < n:
        return ((j, 1),)
    if j >= n:
        i = j - n
        # a_(i+n) = P^-1 a_i P with P = a_(i+1) ... a_(i+n-1)
        p = _product(n, range(i + 1, i + n))
        return free_reduce(invert_syllables(p) + _expand(n, i) + p)
    # j < 0: a_j = (a_(j+1) ... a_(j+n)) (a_(j+1) ... a_(j+n-1))^-1
    full = _product(n, range(j + 1, j + n + 1))
    part = _product(n, range(j + 1, j + n))
    return free_reduce(full + invert_syllables(part))


def _product(n: int, indices) -> tuple:
    out = ()
    for i in indices:
        out = out + _expand(n, i)
    return free_reduce(out)


def semidirect_coords(ctx: DihedralContext, w: WordLike) -> SemidirectCoords:
    """Split ``w = k * b^e`` with ``e`` the b-exponent sum and ``k`` rewritten in the free basis."""
    coset = 0
    raw = []
    for g, e in _syllables(w):
        if g == ctx.b:
            coset += e
        elif g == ctx.a:
            raw.append((coset, e))
        else:
            raise KeyError("generator %r is not %s or %s" % (g, ctx.a, ctx.b))
    pieces = []
    for i, e in raw:
        base = _expand(ctx.n, i)
        if e < 0:
            base = invert_syllables(base)
        pieces.extend(base * abs(e))
    return SemidirectCoords(free_reduce(pieces), coset)


def is_trivial_semidirect(ctx: DihedralContext, w: WordLike) -> bool:
    return semidirect_coords(ctx, w).is_trivial


# -- explicit subgroups --------------------------------------------------------------


def _x_power(ctx: DihedralContext, i: int) -> tuple:
    return ((ctx.a, 1), (ctx.b, 1)) * i


def kernel_basis_fn(ctx: DihedralContext) -> list[Word]:
    """Free basis ``x^i a x^-i`` (``x = ab``, ``0 <= i < n``) of the free factor of N."""
    out = []
    for i in range(ctx.n):
        xi = _x_power(ctx, i)
        out.append(Word(ctx.system, xi + ((ctx.a, 1),) + invert_syllables(xi)))
    return out


def appropriate_gens(ctx: DihedralContext) -> list[Word]:
    """Generators of the index-n normal subgroup ``N = F_n x Z``: ``(ab)^n`` then the free basis."""
    central = Word(ctx.system, _x_power(ctx, ctx.n))
    return [central] + kernel_basis_fn(ctx)
