"""Exact invariants of ribbon graphs, virtual graphs, and virtual spatial graphs."""

from .algebra import (
    CyclotomicElement,
    HalfLaurent,
    KrushkalPoly,
    TagMismatchError,
    eval_cyclotomic,
    substitute_q_shift,
)
from .brauer import (
    BrauerMatching,
    BrauerVector,
    brauer_evaluate,
    gram_det,
    gram_matrix,
    sym_negligible_verify,
)
from .invariants import (
    degree_report,
    flow_poly,
    krushkal_poly,
    s_poly,
    s_poly_at,
    specialize_krushkal_to_s,
    virtual_chromatic,
)
from .maps import CombMap, EulerData, InvalidMapError, diagnose, edge_connect_sum, vertex_connect_sum
from .penrose import (
    cellular_embedding_poly,
    planarity_by_flips,
    w_sl_brauer,
    w_sl_extended,
    w_so,
)
from .spatial import (
    Crossing,
    MoveError,
    ObstructionClass,
    SpatialDiagram,
    apply_move,
    crossingless_diagram,
    expand_crossings,
    golden_identity_check,
    nonclassicality_report,
    obstruction_integral,
    obstruction_z2,
    special_evaluation_checks,
    underlying_map,
    yamada,
)
from .vgf import VgfError, input_hash, parse_vgf, parse_vgf_file, serialize_vgf

__all__ = [
    "BrauerMatching",
    "BrauerVector",
    "CombMap",
    "Crossing",
    "CyclotomicElement",
    "EulerData",
    "HalfLaurent",
    "InvalidMapError",
    "KrushkalPoly",
    "MoveError",
    "ObstructionClass",
    "SpatialDiagram",
    "TagMismatchError",
    "VgfError",
    "apply_move",
    "brauer_evaluate",
    "cellular_embedding_poly",
    "crossingless_diagram",
    "degree_report",
    "diagnose",
    "edge_connect_sum",
    "eval_cyclotomic",
    "expand_crossings",
    "flow_poly",
    "golden_identity_check",
    "gram_det",
    "gram_matrix",
    "input_hash",
    "krushkal_poly",
    "nonclassicality_report",
    "obstruction_integral",
    "obstruction_z2",
    "parse_vgf",
    "parse_vgf_file",
    "planarity_by_flips",
    "s_poly",
    "s_poly_at",
    "serialize_vgf",
    "special_evaluation_checks",
    "specialize_krushkal_to_s",
    "substitute_q_shift",
    "sym_negligible_verify",
    "underlying_map",
    "vertex_connect_sum",
    "virtual_chromatic",
    "w_sl_brauer",
    "w_sl_extended",
    "w_so",
    "yamada",
]
