"""Words over the generators of an Artin system.

Words are stored freely reduced as tuples of ``(generator, exponent)``
syllables.  Nothing beyond free reduction happens here; deciding equality in
the group is the job of :mod:`eafc.word_problem`.
"""

from __future__ import annotations

import re
from typing import Iterable, Sequence

from .artin_system import ArtinSystem

Syllables = tuple  # tuple[tuple[str, int], ...]

_TOKEN_RE = re.compile(r"^([A-Za-z][A-Za-z0-9_]*)(?:\^(.*))?$")
_EXP_RE = re.compile(r"^[+-]?[0-9]+$")


class WordSyntaxError(ValueError):
    pass


class HostMismatchError(ValueError):
    pass


def free_reduce(syllables: Iterable[tuple[str, int]]) -> Syllables:
    """Merge neighbouring syllables on the same generator and drop zero exponents."""
    stack: list[list] = []
    for g, e in syllables:
        if e == 0:
            continue
        if stack and stack[-1][0] == g:
            e += stack[-1][1]
            if e:
                stack[-1][1] = e
            else:
                stack.pop()
        else:
            stack.append([g, e])
    return tuple((g, e) for g, e in stack)


def invert_syllables(syllables: Sequence[tuple[str, int]]) -> Syllables:
    return tuple((g, -e) for g, e in reversed(syllables))


def letters(syllables: Sequence[tuple[str, int]]):
    """Expand syllables into single letters ``(g, +1/-1)``."""
    for g, e in syllables:
        s = 1 if e > 0 else -1
        for _ in range(abs(e)):
            yield (g, s)


class Word:
    """A group element of ``host`` written as a freely reduced word."""

    __slots__ = ("host", "syllables")

    def __init__(self, host: ArtinSystem, syllables: Iterable[tuple[str, int]] = (), *, reduced=False):
        syllables = tuple(syllables)
        if not reduced:
            for g, _ in syllables:
                if g not in host:
                    raise KeyError("generator %r is not a vertex of the host system" % g)
            syllables = free_reduce(syllables)
        object.__setattr__(self, "host", host)
        object.__setattr__(self, "syllables", syllables)

    def __setattr__(self, name, value):
        raise AttributeError("Word is immutable")

    @classmethod
    def identity(cls, host: ArtinSystem) -> "Word":
        return cls(host, (), reduced=True)

    @classmethod
    def generator(cls, host: ArtinSystem, g: str, e: int = 1) -> "Word":
        return cls(host, ((g, e),))

    def is_identity(self) -> bool:
        return not self.syllables

    def __len__(self) -> int:
        """Letter length."""
        return sum(abs(e) for _, e in self.syllables)

    def support(self) -> frozenset:
        return frozenset(g for g, _ in self.syllables)

    def __eq__(self, other) -> bool:
        # Literal equality of reduced forms, not equality in the group.
        if not isinstance(other, Word):
            return NotImplemented
        return self.host == other.host and self.syllables == other.syllables

    def __hash__(self) -> int:
        return hash(self.syllables)

    def __mul__(self, other: "Word") -> "Word":
        return concat(self, other)

    def __invert__(self) -> "Word":
        return invert(self)

    def __pow__(self, k: int) -> "Word":
        return power(self, k)

    def __str__(self) -> str:
        return format_word(self)

    def __repr__(self) -> str:
        return "Word(%r)" % format_word(self)


# -- parsing and formatting ---------------------------------------------------


def parse_syllables(text: str) -> Syllables:
    """Parse ``"a b^-1 a^3"`` into raw (not yet reduced) syllables."""
    out = []
    pos = 0
    for token in text.split():
        start = text.index(token, pos)
        pos = start + len(token)
        col = start + 1
        if token == "1":
            continue
        m = _TOKEN_RE.match(token)
        if not m:
            raise WordSyntaxError("malformed token %r at column %d" % (token, col))
        name, exp = m.group(1), m.group(2)
        if exp is None:
            k = 1
        else:
            if not _EXP_RE.match(exp):
                raise WordSyntaxError("malformed exponent %r at column %d" % (exp, col))
            k = int(exp)
            if k == 0:
                raise WordSyntaxError("zero exponent in %r at column %d" % (token, col))
        out.append((name, k))
    return tuple(out)


def parse_word(sys: ArtinSystem, text: str) -> Word:
    """Parse whitespace-separated ``name`` / ``name^k`` tokens; ``1`` or blank is the identity."""
    raw = parse_syllables(text)
    for g, _ in raw:
        if g not in sys:
            raise WordSyntaxError("unknown generator %r" % g)
    return Word(sys, raw)


def format_syllables(syllables: Sequence[tuple[str, int]]) -> str:
    if not syllables:
        return "1"
    return " ".join(g if e == 1 else "%s^%d" % (g, e) for g, e in syllables)


def format_word(w: Word) -> str:
    return format_syllables(w.syllables)


# -- group operations ------------------------------------------------------------


def _same_host(w1: Word, w2: Word) -> None:
    if w1.host is not w2.host and w1.host != w2.host:
        raise HostMismatchError("words live over different Artin systems")


def invert(w: Word) -> Word:
    return Word(w.host, invert_syllables(w.syllables), reduced=True)


def concat(w1: Word, w2: Word) -> Word:
    _same_host(w1, w2)
    return Word(w1.host, free_reduce(w1.syllables + w2.syllables), reduced=True)


def conjugate(w: Word, c: Word) -> Word:
    """``c w c^-1``."""
    _same_host(w, c)
    return Word(w.host, free_reduce(c.syllables + w.syllables + invert_syllables(c.syllables)), reduced=True)


def power(w: Word, k: int) -> Word:
    if k == 0 or not w.syllables:
        return Word.identity(w.host)
    core = list(w.syllables if k > 0 else invert_syllables(w.syllables))
    k = abs(k)
    # Write the word as p c p^-1 with c cyclically reduced; then w^k = p c^k p^-1.
    prefix = []
    while len(core) >= 2 and core[0][0] == core[-1][0]:
        g, e1 = core[0]
        e2 = core[-1][1]
        prefix.append((g, -e2))
        middle = core[1:-1]
        core = ([(g, e1 + e2)] if e1 + e2 else []) + middle
    if len(core) == 1:
        body = [(core[0][0], core[0][1] * k)]
    else:
        body = core * k
    result = prefix + body + list(invert_syllables(prefix))
    return Word(w.host, free_reduce(result), reduced=True)


# -- relators, retractions, abelian images ---------------------------------------


def alternating_prefix(u: str, v: str, length: int) -> Syllables:
    """``prod(u, v, length)``: the first ``length`` letters of ``u v u v ...``."""
    return tuple((u if i % 2 == 0 else v, 1) for i in range(length))


def artin_relator(sys: ArtinSystem, u: str, v: str) -> Word:
    """``prod(u, v, m) prod(v, u, m)^-1`` for the edge ``{u, v}``."""
    m = sys.label(u, v)
    if m is None:
        raise ValueError("%s and %s are not joined by an edge" % (u, v))
    left = alternating_prefix(u, v, m)
    right = alternating_prefix(v, u, m)
    return Word(sys, left + invert_syllables(right))


def retract_syllables(subset, syllables: Sequence[tuple[str, int]]) -> Syllables:
    return free_reduce((g, e) for g, e in syllables if g in subset)


def retraction(sys: ArtinSystem, subset: Iterable[str], w: Word) -> Word:
    """Kill every generator outside ``subset`` and freely reduce.

    The result is still a word over ``sys``; use :meth:`ArtinSystem.induced`
    to move it to the subsystem when needed.
    """
    s = frozenset(subset)
    unknown = s - set(sys.vertices)
    if unknown:
        raise KeyError("unknown vertices %s" % sorted(unknown))
    return Word(w.host, retract_syllables(s, w.syllables), reduced=True)


def restrict(w: Word, sub: ArtinSystem) -> Word:
    """Re-host a word whose support lies in ``sub``."""
    for g, _ in w.syllables:
        if g not in sub:
            raise HostMismatchError("generator %r is outside the subsystem" % g)
    return Word(sub, w.syllables, reduced=True)


def abelian_image(w: Word) -> tuple[int, ...]:
    """Exponent-sum vector indexed by the host vertices."""
    sums = dict.fromkeys(w.host.vertices, 0)
    for g, e in w.syllables:
        sums[g] += e
    return tuple(sums[v] for v in w.host.vertices)


def total_exponent(w: Word) -> int:
    """Image under the map sending every generator to 1 in Z."""
    return sum(e for _, e in w.syllables)
