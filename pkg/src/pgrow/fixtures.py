"""Small hand-checkable instances.

The five-vertex path here is the standard demonstration that the exposure
and contiguous rules genuinely differ: both paralyze vertex id 3 at time 2
and turn id 2 green at time 3, but banked exposure lets the middle edge
finish at time 5, while the contiguous clock restarts and the left edge
wins at time 6 instead.
"""

from __future__ import annotations

import numpy as np

from .fields import Colour, EdgeWeights
from .graph import Graph


def worked_example():
    """The five-vertex path instance: returns (graph, colours, weights).

    Vertices 0..4 are coloured red, green, white, green, red; printed labels
    are ids plus one. Edge i joins i and i+1 with weights 6, 3, 4, 2.
    """
    graph = Graph(5, [(0, 1), (1, 2), (2, 3), (3, 4)], origin=0)
    colours = np.array([Colour.RED, Colour.GREEN, Colour.WHITE,
                        Colour.GREEN, Colour.RED], dtype=np.int8)
    weights = EdgeWeights(np.array([6.0, 3.0, 4.0, 2.0]), "fixed")
    return graph, colours, weights
