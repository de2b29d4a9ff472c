"""Smith normal form over the integers and abelianization invariants."""

from __future__ import annotations

from typing import Sequence


def _identity(n: int) -> list:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(M: Sequence[Sequence[int]]):
    """Return ``(U, D, V)`` with ``U @ M @ V == D``.

    ``U`` and ``V`` are unimodular, ``D`` is diagonal with non-negative entries
    forming a divisibility chain.  Pivots are the smallest nonzero absolute
    value, earliest in row-major order, so the output is deterministic.
    """
    A = [list(map(int, row)) for row in M]
    rows = len(A)
    cols = len(A[0]) if rows else 0
    U = _identity(rows)
    V = _identity(cols)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for R in (A,):
            for row in R:
                row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, k):
        # row_dst += k * row_src
        if k:
            A[dst] = [x + k * y for x, y in zip(A[dst], A[src])]
            U[dst] = [x + k * y for x, y in zip(U[dst], U[src])]

    def add_col(src, dst, k):
        if k:
            for row in A:
                row[dst] += k * row[src]
            for row in V:
                row[dst] += k * row[src]

    def negate_row(i):
        A[i] = [-x for x in A[i]]
        U[i] = [-x for x in U[i]]

    t = 0
    while t < min(rows, cols):
        # Smallest nonzero entry of the remaining block.
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                x = A[i][j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
        if best is None:
            break
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            p = A[t][t]
            dirty = False
            for i in range(t + 1, rows):
                q = A[i][t] // p
                add_row(t, i, -q)
                if A[i][t]:
                    dirty = True
            for j in range(t + 1, cols):
                q = A[t][j] // p
                add_col(t, j, -q)
                if A[t][j]:
                    dirty = True
            if not dirty:
                # Pivot must divide the rest of the block.
                bad = None
                for i in range(t + 1, rows):
                    for j in range(t + 1, cols):
                        if A[i][j] % p:
                            bad = i
                            break
                    if bad is not None:
                        break
                if bad is None:
                    break
                add_row(bad, t, 1)
                continue
            # Move the smallest nonzero entry of row/column t onto the pivot.
            best = (abs(p), t, t)
            for i in range(t + 1, rows):
                if A[i][t] and abs(A[i][t]) < best[0]:
                    best = (abs(A[i][t]), i, t)
            for j in range(t + 1, cols):
                if A[t][j] and abs(A[t][j]) < best[0]:
                    best = (abs(A[t][j]), t, j)
            _, i, j = best
            if i != t:
                swap_rows(t, i)
            if j != t:
                swap_cols(t, j)
        if A[t][t] < 0:
            negate_row(t)
        t += 1
    return U, A, V


def matmul(X, Y):
    return [[sum(a * b for a, b in zip(row, col)) for col in zip(*Y)] for row in X]


def determinant(M) -> int:
    """Exact integer determinant by fraction-free elimination (Bareiss)."""
    n = len(M)
    A = [list(row) for row in M]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for i in range(k + 1, n):
                if A[i][k]:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1] if n else 1


def relator_matrix(generators: Sequence[str], relators) -> list:
    """Exponent-sum matrix: one row per relator, one column per generator."""
    index = {g: i for i, g in enumerate(generators)}
    rows = []
    for r in relators:
        syl = r.syllables if hasattr(r, "syllables") else r
        row = [0] * len(generators)
        for g, e in syl:
            row[index[g]] += e
        rows.append(row)
    return rows


def abelianization_invariants(presentation) -> tuple[int, list]:
    """``(free_rank, torsion)`` of the abelianized presentation.

    ``presentation`` needs ``generators`` and ``relators`` (words or syllable
    tuples).  Torsion lists the invariant factors greater than 1.
    """
    gens = list(presentation.generators)
    M = relator_matrix(gens, presentation.relators)
    if not M:
        return len(gens), []
    _, D, _ = smith_normal_form(M)
    diag = [D[i][i] for i in range(min(len(D), len(gens)))]
    rank = sum(1 for d in diag if d)
    return len(gens) - rank, [d for d in diag if d > 1]
