"""Rank-2 module arithmetic over F_q[T]: per-prime Frobenius invariants,
an independent torsion oracle, finite matrix-group checks, and mass scans
with their predicted density constants."""

from .field import (FieldCtx, ExtFieldCtx, ExtFieldElem, FieldError,
                    field_ctx, ext_ctx, frob, norm, trace, norm_trace)
from .polyring import (PolyA, ParseError, parse_poly, parse_poly_checked,
                       format_poly, pi_count, moebius_A, irreducibles)
from .skew import (SkewPoly, DrinfeldModule, BadReductionError, format_skew,
                   default_rank2, carlitz, is_default_rank2, reduce_mod,
                   additive_eval, j_invariant, j_valuation_at_T)
from .frobenius import (ActionMatrix, PrimeRecord, InternalConsistencyError,
                        action_matrix, charpoly_generator, eps_p, a_p,
                        minimal_polynomial, module_structure, half_coeff,
                        resolve_half_sign, prime_record)
from .torsion import (SearchLimitError, TowerCtx, TowerElem, build_tower,
                      torsion_space, frob_matrix_mod_lambda,
                      frob_trace_det_mod, reconstruct_a, carlitz_scalar, crt,
                      default_lambdas)
from .matgroups import (SmallRing, small_field, dual_numbers, gl2_order,
                        gl2_count, sl2_order, koblitz_local_count,
                        sl2_unipotent_generation, commutator_closure,
                        commutator_check, check_group_report)
from .experiments import (ScanConfig, ScanResult, DegreeSummary,
                          ConstantApprox, scan, tabulate_cyclic,
                          tabulate_koblitz, tabulate_lang_trotter,
                          const_cyclic, const_koblitz, lt_ratio_report,
                          write_csv, write_summary)

__all__ = [
    "FieldCtx", "ExtFieldCtx", "ExtFieldElem", "FieldError",
    "field_ctx", "ext_ctx", "frob", "norm", "trace", "norm_trace",
    "PolyA", "ParseError", "parse_poly", "parse_poly_checked", "format_poly",
    "pi_count", "moebius_A", "irreducibles",
    "SkewPoly", "DrinfeldModule", "BadReductionError", "format_skew",
    "default_rank2", "carlitz", "is_default_rank2", "reduce_mod",
    "additive_eval", "j_invariant", "j_valuation_at_T",
    "ActionMatrix", "PrimeRecord", "InternalConsistencyError",
    "action_matrix", "charpoly_generator", "eps_p", "a_p",
    "minimal_polynomial", "module_structure", "half_coeff",
    "resolve_half_sign", "prime_record",
    "SearchLimitError", "TowerCtx", "TowerElem", "build_tower",
    "torsion_space", "frob_matrix_mod_lambda", "frob_trace_det_mod",
    "reconstruct_a", "carlitz_scalar", "crt", "default_lambdas",
    "SmallRing", "small_field", "dual_numbers", "gl2_order", "gl2_count",
    "sl2_order", "koblitz_local_count", "sl2_unipotent_generation",
    "commutator_closure", "commutator_check", "check_group_report",
    "ScanConfig", "ScanResult", "DegreeSummary", "ConstantApprox", "scan",
    "tabulate_cyclic", "tabulate_koblitz", "tabulate_lang_trotter",
    "const_cyclic", "const_koblitz", "lt_ratio_report", "write_csv",
    "write_summary",
]
