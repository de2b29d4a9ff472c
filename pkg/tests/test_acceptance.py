"""Acceptance suite: one check per criterion, each printing a PASS/FAIL line.

Run under pytest (``pytest tests/test_acceptance.py -s``) or directly with
``python3 tests/test_acceptance.py``.
"""

import random
import sys
import time
from itertools import product

import pytest

from eafc.artin_system import ArtinSystem, Coherent, Incoherent, is_coherent
from eafc.decompose import emit_presentation, prefer_vertex
from eafc.dihedral import DihedralContext, dihedral_trivial, is_trivial_dihedral, is_trivial_semidirect
from eafc.kernel_omega import build_omega, embed
from eafc.snf import abelianization_invariants, determinant, matmul, smith_normal_form
from eafc.subgroups import (
    DihedralRoute,
    FreeRetraction,
    G0Map,
    VirtuallyAbelian,
    g0_index,
    largeness_certificate,
    reidemeister_schreier_g0,
    verify_certificate,
)
from eafc.word_problem import (
    CONFIRMED,
    VIOLATION,
    WordProblemSolver,
    check_equation_property,
    check_root_closure,
)
from eafc.words import Word, abelian_image, conjugate, parse_word, power, retraction
from helpers import (
    CATALOG,
    TREES,
    exhaustive_raag_check,
    raag_systems,
    random_syllables,
    random_trivial,
    random_word,
)

FOUR_VERTEX = [name for name, s in CATALOG.items() if len(s) == 4]


# -- criterion bodies: each returns (ok, detail) ----------------------------------------


def dihedral_oracles():
    checked = 0
    mismatches = []
    letters = [("a", 1), ("a", -1), ("b", 1), ("b", -1)]
    for n in (1, 2, 3):
        ctx = DihedralContext(n)
        for k in range(9):
            for seq in product(letters, repeat=k):
                checked += 1
                if is_trivial_dihedral(ctx, seq) != is_trivial_semidirect(ctx, seq):
                    mismatches.append((n, seq))
    return not mismatches, "%d sequences, %d mismatches" % (checked, len(mismatches))


def dihedral_relations():
    failures = []
    for n in (1, 2, 3):
        s = ArtinSystem("ab", [("a", "b", 2 * n)])
        solver = WordProblemSolver(s)
        w = power(parse_word(s, "a b"), n) * power(parse_word(s, "b a"), -n)
        if not solver.is_trivial(w):
            failures.append("(ab)^%d (ba)^-%d" % (n, n))
    d4 = CATALOG["edge4"]
    solver = WordProblemSolver(d4)
    x, y = parse_word(d4, "a b"), parse_word(d4, "b a")
    if not solver.is_trivial(power(x, 2) * power(y, -2)):
        failures.append("D_4: (ab)^2 (ba)^-2")
    if solver.is_trivial(x * y * ~x * ~y):
        failures.append("D_4: [ab, ba]")
    return not failures, "failures: %s" % (failures or "none")


def g0_index_exact():
    bad = []
    for name, s in CATALOG.items():
        expected = 1
        for *_, m in s.edges:
            expected *= m // 2
        got = g0_index(s)
        if got != expected:
            bad.append((name, got, expected))
    pinned = g0_index(CATALOG["edge4"]) == 2 and g0_index(CATALOG["square4"]) == 16
    return not bad and pinned, "%d graphs, mismatches %s, edge4/square4 pinned %s" % (len(CATALOG), bad, pinned)


def coherence_decisions():
    bad = []
    for name in TREES:
        if not isinstance(is_coherent(CATALOG[name]), Coherent):
            bad.append(name)
    for labels in product((2, 4, 6), repeat=4):
        cycle = ArtinSystem("abcd", [(u, v, m) for (u, v), m in zip(("ab", "bc", "cd", "da"), labels)])
        verdict = is_coherent(cycle)
        if not (isinstance(verdict, Incoherent) and verdict.graph == "gamma"):
            bad.append(("4-cycle", labels))
    for name in ("square2", "square4", "pentagon"):
        verdict = is_coherent(CATALOG[name])
        if not (isinstance(verdict, Incoherent) and verdict.graph == "gamma"):
            bad.append(name)
    verdict = is_coherent(CATALOG["chordal_square4"])
    if not (isinstance(verdict, Incoherent) and verdict.graph == "gamma_le2"):
        bad.append("chordal_square4")
    for name in ("vertex", "two_points", "edge2", "triangle2", "chordal_square2"):
        if not isinstance(is_coherent(CATALOG[name]), Coherent):
            bad.append(name)
    return not bad, "wrong verdicts: %s" % (bad or "none")


def raag_exhaustive():
    total = 0
    bad = []
    graphs = 0
    for n in (1, 2, 3, 4):
        for s in raag_systems(n):
            graphs += 1
            count, wrong = exhaustive_raag_check(s, 8, WordProblemSolver(s).trivial_syllables)
            total += count
            bad.extend(wrong)
    return not bad, "%d graphs, %d words, %d disagreements" % (graphs, total, len(bad))


def _consistent_with_quotients(s, syl):
    w = Word(s, syl)
    if any(abelian_image(w)):
        return False
    for u, v, m in s.edges:
        if not dihedral_trivial(m // 2, u, v, retraction(s, (u, v), w).syllables):
            return False
    return True


def split_independence():
    rng = random.Random(2024)
    unstable = []
    inconsistent = []
    trivial = 0
    for name in FOUR_VERTEX:
        s = CATALOG[name]
        solvers = [WordProblemSolver(s)] + [WordProblemSolver(s, prefer_vertex(v)) for v in s.vertices]
        words = []
        while len(words) < 200:
            if len(words) % 2:
                syl = random_trivial(rng, s, rng.randint(1, 2), rng.randint(0, 2))
            else:
                syl = random_word(rng, s, 12).syllables
            if sum(abs(e) for _, e in syl) <= 12:
                words.append(syl)
        for syl in words:
            verdicts = {solver.trivial_syllables(syl) for solver in solvers}
            if len(verdicts) != 1:
                unstable.append((name, syl))
            elif verdicts == {True}:
                trivial += 1
                if not _consistent_with_quotients(s, syl):
                    inconsistent.append((name, syl))
    ok = len(FOUR_VERTEX) >= 5 and not unstable and not inconsistent
    return ok, "%d graphs x 200 words, %d trivial, %d unstable, %d inconsistent" % (
        len(FOUR_VERTEX), trivial, len(unstable), len(inconsistent))


def root_closure():
    rng = random.Random(77)
    violations = []
    nonvacuous = 0
    triples = 0
    for name, s in CATALOG.items():
        vs = list(s.vertices)
        for i in range(100):
            subset = [v for v in vs if rng.random() < 0.5]
            c = random_word(rng, s, 3)
            if i % 2 and subset:
                # Plant w inside c G_S c^-1 about half the time.
                sub = s.induced(subset)
                inner = Word(s, random_syllables(rng, sub, rng.randint(1, 2)))
                w = conjugate(inner, c)
                if sum(abs(e) for _, e in w.syllables) > 8:
                    w = random_word(rng, s, 8)
            else:
                w = random_word(rng, s, 8)
            records = check_root_closure(s, subset, c, w, 4)
            triples += 1
            nonvacuous += any(r.power_in for r in records)
            violations.extend((name, subset, c, w) for r in records if r.violation)
    return not violations, "%d triples, %d with some power inside, %d violations" % (
        triples, nonvacuous, len(violations))


def _reduced_words(alphabet, max_len):
    out = [()]
    frontier = [()]
    for _ in range(max_len):
        nxt = []
        for syl in frontier:
            for g, e in alphabet:
                if syl and syl[-1] == (g, -e):
                    continue
                nxt.append(syl + ((g, e),))
        out.extend(nxt)
        frontier = nxt
    return out


def omega_checks():
    rng = random.Random(8)
    cases = [(n, s, x) for n, s in CATALOG.items() for x in s.vertices
             if len(s) > 1 and len(s.neighbors(x)) == len(s) - 1]
    size_bad = []
    kernel_bad = 0
    equiv_bad = []
    words = 0
    for name, s, x in cases:
        om = build_omega(s, x)
        if len(om.system) != sum(s.label(u, x) // 2 for u in s.neighbors(x)):
            size_bad.append((name, x))
        for _ in range(500):
            e = embed(om, random_word(rng, om.system, 10))
            kernel_bad += not retraction(s, {x}, e).is_identity()
        small, big = WordProblemSolver(om.system), WordProblemSolver(s)
        alphabet = [(v, e) for v in om.system.vertices[:3] for e in (1, -1)]
        for syl in _reduced_words(alphabet, 6):
            w = Word(om.system, syl)
            words += 1
            if small.is_trivial(w) != big.is_trivial(embed(om, w)):
                equiv_bad.append((name, x, syl))
    ok = not size_bad and not kernel_bad and not equiv_bad
    return ok, "%d full-star cases, size errors %d, kernel misses %d, %d words compared, %d mismatches" % (
        len(cases), len(size_bad), kernel_bad, words, len(equiv_bad))


def snf_checks():
    rng = random.Random(9)
    bad = 0
    for _ in range(1000):
        r, c = rng.randint(1, 5), rng.randint(1, 5)
        M = [[rng.randint(-9, 9) for _ in range(c)] for _ in range(r)]
        U, D, V = smith_normal_form(M)
        diag = [D[i][i] for i in range(min(r, c))]
        nz = [d for d in diag if d]
        ok = (
            matmul(matmul(U, M), V) == D
            and abs(determinant(U)) == 1
            and abs(determinant(V)) == 1
            and all(D[i][j] == 0 for i in range(r) for j in range(c) if i != j)
            and all(d > 0 for d in nz)
            and diag[: len(nz)] == nz
            and all(nz[i + 1] % nz[i] == 0 for i in range(len(nz) - 1))
        )
        bad += not ok
    d4 = abelianization_invariants(emit_presentation(CATALOG["edge4"]))
    d4_ok = d4 == (1, [2])
    return not bad and d4_ok, "1000 matrices, %d bad; D_4 abelianization %s (expected (1, [2]))" % (bad, d4)


def certificates():
    rejected_valid = []
    for name, s in CATALOG.items():
        cert = largeness_certificate(s)
        if isinstance(cert, VirtuallyAbelian):
            continue
        if not verify_certificate(s, cert):
            rejected_valid.append(name)
    sq, e4 = CATALOG["square4"], CATALOG["edge4"]
    good = largeness_certificate(e4)
    corrupted = [
        (sq, FreeRetraction("a", "b")),
        (sq, VirtuallyAbelian(4)),
        (CATALOG["edge2"], DihedralRoute("a", "b", 1, 1, (), ())),
        (e4, DihedralRoute(good.a, good.b, good.n, good.index + 1, good.generators, good.images)),
        (e4, DihedralRoute(good.a, good.b, good.n, good.index,
                           good.generators[:1] + (parse_word(e4, "b"),) + good.generators[2:], good.images)),
    ]
    accepted_bad = [i for i, (s, cert) in enumerate(corrupted) if verify_certificate(s, cert)]
    pinned = isinstance(largeness_certificate(sq), FreeRetraction) and isinstance(good, DihedralRoute)
    ok = not rejected_valid and not accepted_bad and pinned
    return ok, "valid rejected %s, corrupted accepted %s" % (rejected_valid or "none", accepted_bad or "none")


def _g0_sampler(rng, s, g0):
    gens = list(reidemeister_schreier_g0(s, g0, [Word.generator(s, v) for v in s.vertices]).generators)

    def sample(k):
        w = Word.identity(s)
        for _ in range(rng.randint(1, k)):
            g = rng.choice(gens)
            w = w * (g if rng.random() < 0.5 else ~g)
        return w

    return sample


def equation_property():
    rng = random.Random(12)
    graphs = [s for s in CATALOG.values() if s.edges]
    counts = {}
    violations = []
    substantive = 0
    for i in range(1000):
        s = graphs[i % len(graphs)]
        g0 = G0Map.default(s)
        sample = _g0_sampler(rng, s, g0)
        x, z = sample(3), sample(2)
        if i % 2:
            # x = y with z a power of x, so z commutes with x.
            y = x
            if i % 4 == 1:
                z = power(x, rng.randint(-2, 2))
        else:
            y = conjugate(x, z)
        outcome = check_equation_property(s, g0, x, y, z)
        counts[outcome] = counts.get(outcome, 0) + 1
        if outcome == CONFIRMED and not x.is_identity():
            substantive += 1
        if outcome == VIOLATION:
            violations.append((x, y, z))
    ok = not violations and substantive >= 50
    return ok, "1000 triples, outcomes %s, %d confirmed with x != 1" % (dict(sorted(counts.items())), substantive)


CRITERIA = [
    (1, "dihedral central vs semidirect", 60, dihedral_oracles),
    (2, "dihedral relations", 1, dihedral_relations),
    (3, "G_0 index equals product", 1, g0_index_exact),
    (4, "coherence decisions", 1, coherence_decisions),
    (5, "right-angled exhaustive", 300, raag_exhaustive),
    (6, "split-vertex independence", 120, split_independence),
    (7, "root closure", 300, root_closure),
    (8, "Omega construction", 120, omega_checks),
    (9, "Smith normal form", 30, snf_checks),
    (10, "largeness certificates", 1, certificates),
    (11, "equation property", 120, equation_property),
]


def run_criterion(number, title, limit, body):
    start = time.perf_counter()
    ok, detail = body()
    elapsed = time.perf_counter() - start
    passed = ok and elapsed < limit
    print("%s criterion %d (%s): %s [%.2fs, limit %ds]" % (
        "PASS" if passed else "FAIL", number, title, detail, elapsed, limit), flush=True)
    return passed, ok, elapsed, detail


@pytest.mark.parametrize("number,title,limit,body", CRITERIA, ids=["criterion_%d" % c[0] for c in CRITERIA])
def test_criterion(number, title, limit, body, capsys):
    with capsys.disabled():
        print()
        passed, ok, elapsed, detail = run_criterion(number, title, limit, body)
    assert ok, detail
    assert elapsed < limit, "took %.2fs, limit %ds" % (elapsed, limit)


if __name__ == "__main__":
    results = [run_criterion(*c)[0] for c in CRITERIA]
    print("%d/%d criteria passed" % (sum(results), len(results)))
    sys.exit(0 if all(results) else 1)
