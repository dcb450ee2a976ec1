"""Quaternionic weighted zeta functions of graphs, computed exactly."""

__version__ = "0.1.0"

from .graph import Graph, load_graph, read_graph  # noqa: E402
from .quaternion import I, J, K, Q, Quaternion  # noqa: E402
from .series import TruncatedSeries  # noqa: E402
from .smatrix import SeriesMatrix, det_t, sdet_t  # noqa: E402
from .zeta import (  # noqa: E402
    METHODS,
    compare_methods,
    ihara_zeta,
    zeta_bass,
    zeta_euler,
    zeta_expgen,
    zeta_hashimoto,
)

__all__ = [
    "Graph", "load_graph", "read_graph",
    "I", "J", "K", "Q", "Quaternion",
    "TruncatedSeries", "SeriesMatrix", "det_t", "sdet_t",
    "METHODS", "compare_methods", "ihara_zeta",
    "zeta_bass", "zeta_euler", "zeta_expgen", "zeta_hashimoto",
]
