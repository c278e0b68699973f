"""Spectra of operators on decorated graphs.

Decorating a graph by gluing a rooted graph ``(G, root)`` to each vertex
turns an operator ``H_o`` into ``H = P H_o P + 1 (x) A``.  The spectrum of
``H`` is the preimage of the spectrum of ``H_o`` under a Herglotz rational
map ``gamma`` built from ``(A, root)``, plus flat bands from the part of
``A`` that the root does not see.
"""
from .errors import ConvergenceError, IncompatibleOperatorError, InputError, PoleError
from .gamma_map import HerglotzRational, gamma_from_decoration, poles_via_projection
from .graph_model import (
    DecoratedGraph,
    Graph,
    RootedGraph,
    check_compatibility,
    complete_graph,
    cycle_graph,
    decorate,
    laplacian,
    path_graph,
    single_vertex,
    star_graph,
)
from .operator_core import (
    CyclicDecomposition,
    EigenSystem,
    SymmetricOperator,
    build_decorated_operator,
    eigendecompose,
    green_diag,
    krylov_cyclic_decomposition,
)
from .spectrum_set import (
    EXTENSIVE,
    SpectrumSet,
    assemble_decorated_spectrum,
    branch_invert,
    preimage,
    preset_spectrum,
)
from .tolerances import DEFAULT as DEFAULT_TOLERANCES, Tolerances

__version__ = "0.1.0"

__all__ = [
    "ConvergenceError",
    "CyclicDecomposition",
    "DEFAULT_TOLERANCES",
    "DecoratedGraph",
    "EXTENSIVE",
    "EigenSystem",
    "Graph",
    "HerglotzRational",
    "IncompatibleOperatorError",
    "InputError",
    "PoleError",
    "RootedGraph",
    "SpectrumSet",
    "SymmetricOperator",
    "Tolerances",
    "assemble_decorated_spectrum",
    "branch_invert",
    "build_decorated_operator",
    "check_compatibility",
    "complete_graph",
    "cycle_graph",
    "decorate",
    "eigendecompose",
    "gamma_from_decoration",
    "green_diag",
    "krylov_cyclic_decomposition",
    "laplacian",
    "path_graph",
    "poles_via_projection",
    "preimage",
    "preset_spectrum",
    "single_vertex",
    "star_graph",
]
