"""Block-level CNN cost modeling, CSP rewriting and compound scaling."""

from archcost._core import (  # noqa: F401
    NetworkSpec,
    analyze,
    asymptotic_csp_saving,
    check_tiny_principles,
    cio,
    compound_scale_up,
    csp_stage_flops,
    cspize,
    derive_tiny_growth,
    expand,
    layer_flops,
    mac,
    oracle_cost,
    parse_spec,
    plan_pcb_partition,
    preset,
    preset_names,
    prune_heads,
    receptive_field,
    revert_first_stage,
    serialize_spec,
)

__all__ = [
    "NetworkSpec",
    "analyze",
    "asymptotic_csp_saving",
    "check_tiny_principles",
    "cio",
    "compound_scale_up",
    "csp_stage_flops",
    "cspize",
    "derive_tiny_growth",
    "expand",
    "layer_flops",
    "mac",
    "oracle_cost",
    "parse_spec",
    "plan_pcb_partition",
    "preset",
    "preset_names",
    "prune_heads",
    "receptive_field",
    "revert_first_stage",
    "serialize_spec",
]
