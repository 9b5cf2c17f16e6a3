"""Exact edit distances between strings whose characters carry positive
rational exponents, plus the matching geometry that certifies them."""

from .core import (
    EMPTY,
    ExpString,
    Factor,
    GuardExceeded,
    char_at,
    concat,
    flen,
    from_plain_string,
    is_infix,
    is_prefix,
    is_suffix,
    length,
    parse_factors,
    prefix_sums,
    scale,
    split_at,
    to_plain_string,
)
from .cost import (
    CostModel,
    EditOp,
    MissingCost,
    Validity,
    op_cost,
    script_cost,
    unit_cost_model,
    validate,
)
from .distance import (
    BACKENDS,
    DistanceReport,
    EngineConfig,
    apply_script,
    exp_edit_distance,
)
from .matching import (
    BoxChain,
    ExpMatching,
    MatchingError,
    OracleConfig,
    Segment,
    box_grid,
    chain_lp_solve,
    dump_matching,
    enumerate_box_chains,
    matching_cost,
    matching_from_script,
    normalize,
    oracle_distance,
    parse_matching_dump,
    script_from_matching,
)
from .cli import format_notation, parse_notation

__version__ = "0.1.0"

__all__ = [
    "BACKENDS",
    "BoxChain",
    "CostModel",
    "DistanceReport",
    "EMPTY",
    "EditOp",
    "EngineConfig",
    "ExpMatching",
    "ExpString",
    "Factor",
    "GuardExceeded",
    "MatchingError",
    "MissingCost",
    "OracleConfig",
    "Segment",
    "Validity",
    "apply_script",
    "box_grid",
    "chain_lp_solve",
    "char_at",
    "concat",
    "dump_matching",
    "enumerate_box_chains",
    "exp_edit_distance",
    "flen",
    "format_notation",
    "from_plain_string",
    "is_infix",
    "is_prefix",
    "is_suffix",
    "length",
    "matching_cost",
    "matching_from_script",
    "normalize",
    "op_cost",
    "oracle_distance",
    "parse_factors",
    "parse_matching_dump",
    "parse_notation",
    "prefix_sums",
    "scale",
    "script_cost",
    "script_from_matching",
    "split_at",
    "to_plain_string",
    "unit_cost_model",
    "validate",
]
