"""Command-line interface.

Exit codes: 0 for success or an affirmative decision, 1 for a negative
decision, 2 for unusable input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from .artin_system import (
    ArtinSystem,
    Coherent,
    FreeAbelian,
    NotEAFCError,
    StructureError,
    classify_group,
    gamma_le2,
    is_coherent,
    validate_eafc,
)
from .decompose import decompose, format_tree, prefer_vertex, tree_to_dict
from .kernel_omega import build_omega
from .subgroups import (
    DihedralRoute,
    FreeRetraction,
    G0Map,
    g0_image,
    g0_index,
    g0_index_bound,
    in_g0,
    kernel_phi_rank,
    largeness_certificate,
    reidemeister_schreier_g0,
    verify_certificate,
)
from .snf import smith_normal_form
from .word_problem import check_root_closure, get_solver, in_parabolic, in_quasi_centralizer
from .words import Word, WordSyntaxError, format_word, parse_word

EXIT_YES = 0
EXIT_NO = 1
EXIT_INPUT = 2


class InputError(Exception):
    pass


def load_graph(path: str) -> ArtinSystem:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as err:
        raise InputError("cannot read %s: %s" % (path, err.strerror or err))
    try:
        data = json.loads(text)
    except json.JSONDecodeError as err:
        raise InputError("%s: parse error at line %d column %d: %s" % (path, err.lineno, err.colno, err.msg))
    try:
        return ArtinSystem.from_dict(data)
    except StructureError as err:
        raise InputError("%s: %s" % (path, err))


def _word(sys: ArtinSystem, text: str) -> Word:
    try:
        return parse_word(sys, text)
    except WordSyntaxError as err:
        raise InputError("bad word %r: %s" % (text, err))


def _subset(sys: ArtinSystem, text: str) -> tuple:
    names = [s for s in text.replace(",", " ").split() if s]
    for s in names:
        if s not in sys:
            raise InputError("unknown vertex %r in subset" % s)
    return sys.sort(set(names))


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(text)


def _solver(args, sys):
    if getattr(args, "split_vertex", None):
        if args.split_vertex not in sys:
            raise InputError("unknown split vertex %r" % args.split_vertex)
        return get_solver(sys, prefer_vertex(args.split_vertex))
    return get_solver(sys)


def _g0map(args, sys) -> G0Map:
    if getattr(args, "orientation", None):
        try:
            return G0Map.from_json(sys, Path(args.orientation).read_text(encoding="utf-8"))
        except (OSError, ValueError) as err:
            raise InputError("orientation file: %s" % err)
    return G0Map.default(sys)


# -- subcommands ------------------------------------------------------------------


def cmd_validate(args) -> int:
    sys_ = load_graph(args.graph)
    tri = validate_eafc(sys_)
    if tri is None:
        _emit(args, {"eafc": True}, "ok")
        return EXIT_YES
    _emit(args, {"eafc": False, "triangle": list(tri)}, "violation: triangle %s" % " ".join(tri))
    return EXIT_NO


def cmd_classify(args) -> int:
    sys_ = load_graph(args.graph)
    verdict = classify_group(sys_)
    if isinstance(verdict, FreeAbelian):
        _emit(args, {"class": "free_abelian", "rank": verdict.rank}, "free-abelian rank %d" % verdict.rank)
    else:
        _emit(args, {"class": "large"}, "large")
    return EXIT_YES


def cmd_coherence(args) -> int:
    sys_ = load_graph(args.graph)
    verdict = is_coherent(sys_)
    le2 = gamma_le2(sys_).to_dict()
    if isinstance(verdict, Coherent):
        _emit(args, {"coherent": True, "gamma_le2": le2}, "coherent")
        return EXIT_YES
    which = "Gamma" if verdict.graph == "gamma" else "Gamma^<=2"
    _emit(args, {"coherent": False, "graph": verdict.graph, "cycle": list(verdict.cycle), "gamma_le2": le2},
          "incoherent: %s has chordless cycle %s" % (which, " ".join(verdict.cycle)))
    return EXIT_NO


def cmd_decompose(args) -> int:
    sys_ = load_graph(args.graph)
    splitter = None
    if args.split_vertex:
        if args.split_vertex not in sys_:
            raise InputError("unknown split vertex %r" % args.split_vertex)
        splitter = prefer_vertex(args.split_vertex)
    tree = decompose(sys_, splitter)
    _emit(args, tree_to_dict(tree), format_tree(tree))
    return EXIT_YES


def cmd_wp(args) -> int:
    sys_ = load_graph(args.graph)
    w1, w2 = _word(sys_, args.word1), _word(sys_, args.word2)
    equal = _solver(args, sys_).are_equal(w1, w2)
    _emit(args, {"equal": equal}, "equal" if equal else "not-equal")
    return EXIT_YES if equal else EXIT_NO


def cmd_member(args) -> int:
    sys_ = load_graph(args.graph)
    subset = _subset(sys_, args.subset)
    w = _word(sys_, args.word)
    c = _word(sys_, args.conj) if args.conj else Word.identity(sys_)
    member = in_parabolic(sys_, subset, c, w)
    payload = {"member": member, "subset": list(subset), "conjugator": format_word(c)}
    lines = ["member" if member else "not-member"]
    violation = False
    if args.max_n:
        records = check_root_closure(sys_, subset, c, w, args.max_n)
        payload["root_closure"] = [
            {"n": r.n, "power_in": r.power_in, "root_in": r.root_in, "violation": r.violation} for r in records
        ]
        for r in records:
            lines.append("n=%d power_in=%s root_in=%s%s" % (
                r.n, r.power_in, r.root_in, " VIOLATION" if r.violation else ""))
        violation = any(r.violation for r in records)
    _emit(args, payload, "\n".join(lines))
    return EXIT_YES if member and not violation else EXIT_NO


def cmd_qz(args) -> int:
    sys_ = load_graph(args.graph)
    subset = _subset(sys_, args.subset)
    g = _word(sys_, args.word)
    ok = in_quasi_centralizer(sys_, subset, g)
    _emit(args, {"quasi_centralizes": ok}, "quasi-centralizes" if ok else "does-not-quasi-centralize")
    return EXIT_YES if ok else EXIT_NO


def cmd_g0(args) -> int:
    sys_ = load_graph(args.graph)
    g0map = _g0map(args, sys_)
    payload = {"orientation": g0map.to_list()}
    lines = []
    show_all = not (args.index or args.image or args.member)
    if args.index or show_all:
        payload["index"] = g0_index(sys_, g0map)
        payload["bound"] = g0_index_bound(sys_)
        lines.append(str(payload["index"]))
    if args.image:
        img = g0_image(sys_, g0map, _word(sys_, args.image))
        payload["image"] = list(img.residues)
        payload["moduli"] = list(img.moduli)
        lines.append("image " + " ".join("%d/%d" % p for p in zip(img.residues, img.moduli)))
    code = EXIT_YES
    if args.member:
        member = in_g0(sys_, g0map, _word(sys_, args.member))
        payload["member"] = member
        lines.append("member" if member else "not-member")
        code = EXIT_YES if member else EXIT_NO
    _emit(args, payload, "\n".join(lines))
    return code


def cmd_rs(args) -> int:
    sys_ = load_graph(args.graph)
    gens = [_word(sys_, g) for g in args.gens]
    if not gens:
        raise InputError("rs needs at least one generator")
    data = reidemeister_schreier_g0(sys_, _g0map(args, sys_), gens)
    words = [format_word(w) for w in data.generators]
    payload = {"index": data.index, "transversal": [format_word(data.transversal[c]) for c in data.cosets],
               "generators": words}
    _emit(args, payload, "\n".join(["index %d" % data.index] + words))
    return EXIT_YES


def cmd_omega(args) -> int:
    sys_ = load_graph(args.graph)
    if args.apex not in sys_:
        raise InputError("unknown vertex %r" % args.apex)
    try:
        om = build_omega(sys_, args.apex)
    except ValueError as err:
        raise InputError(str(err))
    table = om.substitution_table()
    payload = {"graph": om.system.to_dict(), "substitution": table}
    text = om.system.to_json() + "\n" + "\n".join("%s -> %s" % (r["vertex"], r["word"]) for r in table)
    _emit(args, payload, text)
    return EXIT_YES


def cmd_large(args) -> int:
    sys_ = load_graph(args.graph)
    cert = largeness_certificate(sys_)
    payload = cert.to_dict()
    payload["verified"] = verify_certificate(sys_, cert)
    print(json.dumps(payload, indent=2, sort_keys=True))
    return EXIT_YES if isinstance(cert, (FreeRetraction, DihedralRoute)) else EXIT_NO


def cmd_snf(args) -> int:
    src = args.matrix
    try:
        if src == "-":
            text = sys.stdin.read()
        elif src.startswith("@"):
            text = Path(src[1:]).read_text(encoding="utf-8")
        else:
            text = src
    except OSError as err:
        raise InputError("cannot read matrix: %s" % err)
    try:
        M = json.loads(text)
    except json.JSONDecodeError as err:
        raise InputError("matrix parse error at line %d column %d: %s" % (err.lineno, err.colno, err.msg))
    if (not isinstance(M, list) or not all(isinstance(r, list) for r in M)
            or len({len(r) for r in M}) > 1
            or not all(isinstance(x, int) and not isinstance(x, bool) for r in M for x in r)):
        raise InputError("matrix must be a rectangular JSON array of integer arrays")
    U, D, V = smith_normal_form(M)
    print(json.dumps({"U": U, "D": D, "V": V}, sort_keys=True))
    return EXIT_YES


def cmd_kernel_rank(args) -> int:
    sys_ = load_graph(args.graph)
    try:
        rank = kernel_phi_rank(sys_)
    except ValueError as err:
        raise InputError(str(err))
    _emit(args, {"rank": rank}, str(rank))
    return EXIT_YES


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")

    parser = argparse.ArgumentParser(prog="eafc", description="Computations in even Artin groups of FC type.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text, graph=True):
        p = sub.add_parser(name, parents=[common], help=help_text)
        if graph:
            p.add_argument("graph", help="graph file (JSON)")
        p.set_defaults(func=func)
        return p

    add("validate", cmd_validate, "check the triangle condition")
    add("classify", cmd_classify, "free abelian or large")
    add("coherence", cmd_coherence, "decide coherence")
    p = add("decompose", cmd_decompose, "print the decomposition tree")
    p.add_argument("--split-vertex", metavar="NAME")
    p = add("wp", cmd_wp, "decide whether two words are equal")
    p.add_argument("word1")
    p.add_argument("word2")
    p.add_argument("--split-vertex", metavar="NAME")
    p = add("member", cmd_member, "membership in a (conjugated) standard parabolic subgroup")
    p.add_argument("--subset", required=True, help="comma or space separated vertices")
    p.add_argument("word")
    p.add_argument("--conj", metavar="WORD", help="conjugator c for c G_S c^-1")
    p.add_argument("--max-n", type=int, default=0, metavar="K", help="also sweep root closure for n <= K")
    p = add("qz", cmd_qz, "quasi-centralizer membership")
    p.add_argument("--subset", required=True)
    p.add_argument("word")
    p = add("g0", cmd_g0, "the finite-index subgroup G_0")
    p.add_argument("--index", action="store_true", help="print [G : G_0] (the default)")
    p.add_argument("--image", metavar="WORD", help="residues of WORD in the finite quotient")
    p.add_argument("--member", metavar="WORD", help="decide whether WORD lies in G_0")
    p.add_argument("--orientation", metavar="FILE", help="JSON list of {u, v, a} edge orientations")
    p = add("rs", cmd_rs, "Schreier generators of H cap G_0")
    p.add_argument("gens", nargs="+", metavar="WORD")
    p.add_argument("--orientation", metavar="FILE", help="JSON list of {u, v, a} edge orientations")
    p = add("omega", cmd_omega, "kernel graph of the retraction onto a cone vertex")
    p.add_argument("apex")
    add("large", cmd_large, "largeness certificate")
    p = add("snf", cmd_snf, "Smith normal form", graph=False)
    p.add_argument("matrix", help="JSON array, @FILE, or - for stdin")
    add("kernel-rank", cmd_kernel_rank, "rank of the kernel of v -> 1 on a tree")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_YES
    try:
        return args.func(args)
    except InputError as err:
        print("error: %s" % err, file=sys.stderr)
        return EXIT_INPUT
    except NotEAFCError as err:
        print("error: %s" % err, file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    raise SystemExit(main())
