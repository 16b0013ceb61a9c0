"""First homology of n-particle discrete configuration spaces of graphs.

Two independent computations of H1(D^n(Gamma)):

  * an exact integer Smith-normal-form calculation on the 2-skeleton of the
    discrete configuration space (homology, complexes), and
  * a closed-form prediction driven by the connectivity structure of the
    graph (connectivity),

plus gauge-potential calculus on the complex (gauge) and an explicit
Aharonov-Bohm / exchange spanning set for H1 (spanning).
"""

from .connectivity import Prediction, decompose, predict_h1
from .gauge import GaugeError, GaugePotential, flux, is_topological
from .graphs import Graph, GraphError, sufficiently_subdivide
from .homology import AbelianGroup, H1Coordinates, h0, h1, homology_coordinates
from .complexes import CellComplex, build_complex
from .spanning import SpanningError, spanning_set, verify_spanning

__all__ = [
    "AbelianGroup", "CellComplex", "GaugeError", "GaugePotential", "Graph",
    "GraphError", "H1Coordinates", "Prediction", "SpanningError",
    "build_complex", "decompose", "flux", "h0", "h1",
    "homology_coordinates", "is_topological", "predict_h1", "spanning_set",
    "sufficiently_subdivide", "verify_spanning",
]

__version__ = "0.1.0"
