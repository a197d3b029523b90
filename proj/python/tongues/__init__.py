"""Arnold tongues and pinch points of PL circle-map families.

Rationals cross the boundary as fractions.Fraction (str and int are accepted
as input). Forcings use the CLI grammar: "sine", "triangle:<rat>",
"pl:w=<rat,...>;l=<rat,...>".
"""

from ._core import (
    TonguesError,
    conjugacy,
    enumerate_pinches,
    exact_boundaries,
    parse_csv,
    pinch_b,
    pinch_count,
    pinch_omega,
    render_svg,
    run_cli,
    scan,
    separate_roots,
    verify_pinch,
    write_csv,
)

__all__ = [
    "TonguesError",
    "conjugacy",
    "enumerate_pinches",
    "exact_boundaries",
    "parse_csv",
    "pinch_b",
    "pinch_count",
    "pinch_omega",
    "render_svg",
    "run_cli",
    "scan",
    "separate_roots",
    "verify_pinch",
    "write_csv",
]
