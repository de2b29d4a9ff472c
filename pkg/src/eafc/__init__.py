"""Computations in even Artin groups of FC type."""

from .artin_system import (
    ArtinSystem,
    Coherent,
    FreeAbelian,
    Incoherent,
    Large,
    NotEAFCError,
    StructureError,
    classify_group,
    direct_factor_partition,
    gamma_le2,
    is_chordal,
    is_coherent,
    lex_bfs,
    link,
    star,
    validate_eafc,
)
from .decompose import decompose, emit_presentation, to_graph_of_groups
from .dihedral import DihedralContext, central_coords, is_trivial_dihedral, is_trivial_semidirect, semidirect_coords
from .kernel_omega import OmegaSystem, build_omega, embed
from .snf import abelianization_invariants, smith_normal_form
from .subgroups import (
    G0Map,
    g0_image,
    g0_index,
    in_g0,
    kernel_phi_rank,
    largeness_certificate,
    reidemeister_schreier_g0,
    verify_certificate,
)
from .word_problem import (
    WordProblemSolver,
    are_equal,
    check_root_closure,
    in_parabolic,
    in_quasi_centralizer,
    in_standard_parabolic,
    is_trivial,
)
from .words import Word, format_word, parse_word, retraction

__all__ = [
    "abelianization_invariants",
    "are_equal",
    "ArtinSystem",
    "build_omega",
    "central_coords",
    "check_root_closure",
    "classify_group",
    "Coherent",
    "decompose",
    "DihedralContext",
    "direct_factor_partition",
    "embed",
    "emit_presentation",
    "format_word",
    "FreeAbelian",
    "g0_image",
    "g0_index",
    "G0Map",
    "gamma_le2",
    "in_g0",
    "in_parabolic",
    "in_quasi_centralizer",
    "in_standard_parabolic",
    "Incoherent",
    "is_chordal",
    "is_coherent",
    "is_trivial",
    "is_trivial_dihedral",
    "is_trivial_semidirect",
    "kernel_phi_rank",
    "Large",
    "largeness_certificate",
    "lex_bfs",
    "link",
    "NotEAFCError",
    "OmegaSystem",
    "parse_word",
    "reidemeister_schreier_g0",
    "retraction",
    "semidirect_coords",
    "smith_normal_form",
    "star",
    "StructureError",
    "to_graph_of_groups",
    "validate_eafc",
    "verify_certificate",
    "Word",
    "WordProblemSolver",
]
