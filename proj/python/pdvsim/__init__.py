"""Packet-level discrete-event simulator for DiffServ / MPLS-TE QoS studies.

The heavy lifting lives in the C++ core; this package re-exports the bound
operations: scenario loading, the six built-in scenarios, batch runs and the
delay-variation metrics.
"""

from ._core import (
    ParseError,
    Report,
    Scenario,
    ValidationError,
    builtin_scenario,
    header_overhead,
    ipdv_series,
    list_scenarios,
    load_scenario,
    run,
    run_scenario,
    scenario_summary,
    segment,
    serialization_delay,
    summarize,
    voice_packetization,
    __version__,
)

__all__ = [
    "ParseError",
    "Report",
    "Scenario",
    "ValidationError",
    "builtin_scenario",
    "header_overhead",
    "ipdv_series",
    "list_scenarios",
    "load_scenario",
    "run",
    "run_scenario",
    "scenario_summary",
    "segment",
    "serialization_delay",
    "summarize",
    "voice_packetization",
    "__version__",
]
