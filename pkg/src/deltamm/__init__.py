"""Delta-matroids, multimatroids and ribbon graphs, with brute-force checks of
chain and splitter theorems on small instances."""

from .bridge import BridgeError, delta_of_q2, delta_of_q3, q2_of, q3_of, section
from .delta import DeltaMatroid, DeltaMatroidError, SetSystem, check_symmetric_exchange, is_vf_safe
from .mm import Multimatroid, MultimatroidError, verify_axioms
from .report import CheckReport
from .ribbon import RibbonGraph, RibbonGraphError

__all__ = [
    "BridgeError", "CheckReport", "DeltaMatroid", "DeltaMatroidError", "Multimatroid",
    "MultimatroidError", "RibbonGraph", "RibbonGraphError", "SetSystem", "check_symmetric_exchange",
    "delta_of_q2", "delta_of_q3", "is_vf_safe", "q2_of", "q3_of", "section", "verify_axioms",
]
