"""fo2color: functional-orientation 2-colorings of loopless multigraphs.

Decides, constructs and verifies 2-colorings whose induced monochromatic
components admit full functional orientations (equivalently: are acyclic
or unicyclic). Ships a linear-time solver for maximum degree 5, an exact
backtracking oracle, verified logic gadgets, and a certifying compiler
from 3-CNF to degree-6 (optionally planar) hardness instances.
"""

from ._core import kernel_backend
from .graph import ComponentSummary, Multigraph, components, induced_subgraph, is_planar
from .greedy import defective_coloring, defective_coloring_trace, fo2color_delta5
from .orientation import (
    FunctionalOrientation,
    InfeasibilityCertificate,
    Mark,
    build_full_orientation,
    check_orientation,
    is_fo2coloring,
    orient_for_coloring,
    verify_fo2coloring,
)
from .solver import INDETERMINATE, PortTable, SolveLimits, count, decide, extend, port_table
from . import formats, gadgets, reduction  # noqa: E402  (submodule access)

__version__ = "0.1.0"

__all__ = [
    "ComponentSummary",
    "FunctionalOrientation",
    "INDETERMINATE",
    "InfeasibilityCertificate",
    "Mark",
    "Multigraph",
    "PortTable",
    "SolveLimits",
    "build_full_orientation",
    "check_orientation",
    "components",
    "count",
    "decide",
    "defective_coloring",
    "defective_coloring_trace",
    "extend",
    "fo2color_delta5",
    "induced_subgraph",
    "is_fo2coloring",
    "is_planar",
    "kernel_backend",
    "orient_for_coloring",
    "port_table",
    "verify_fo2coloring",
]
