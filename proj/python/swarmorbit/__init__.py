"""Unicycle swarm orbiting a closed path with collision-cone safety filtering."""

from ._swarmorbit import (
    DomainError,
    PairView,
    ParseError,
    Path,
    SafetyConfig,
    Scenario,
    SimulationLog,
    SingularityError,
    ValidationError,
    exit_status,
    gvf,
    h_dot,
    load_scenario,
    pair_view,
    parse_scenario,
    preset_names,
    preset_text,
    psi,
    run,
    summarize,
    u_safe_pair,
    virtual_radius,
    wrap_angle,
)

__all__ = [
    "DomainError",
    "PairView",
    "ParseError",
    "Path",
    "SafetyConfig",
    "Scenario",
    "SimulationLog",
    "SingularityError",
    "ValidationError",
    "exit_status",
    "gvf",
    "h_dot",
    "load_scenario",
    "pair_view",
    "parse_scenario",
    "preset_names",
    "preset_text",
    "psi",
    "run",
    "summarize",
    "u_safe_pair",
    "virtual_radius",
    "wrap_angle",
]
