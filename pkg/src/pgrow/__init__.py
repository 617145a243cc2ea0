"""Random growth with paralyzing obstacles.

Green vertices grow a cluster by opening adjacent closed edges at unit rate,
white vertices join the growth when reached, and red vertices paralyze every
live green vertex connected to them the moment a connection opens. The
package simulates the process directly, reconstructs single-vertex outcomes
locally, and estimates cluster statistics by Monte Carlo.
"""

from .autonomous import (BudgetExhausted, diagnostics, green_cluster_of,
                         run_algorithm)
from .direct_sim import (Rule, Trace, co_paralyzed, green_cluster,
                         min_max_path_bound, paralysis_time,
                         responsibility_set, simulate)
from .fields import Colour, EdgeWeights, Params, load_snapshot, save_snapshot
from .fixtures import worked_example
from .graph import (Graph, build_lattice, graph_distance,
                    random_connected_graph, read_edge_list, shell)
from .invasion import (critical_probability, invade, open_cluster, pond,
                       stopped_invasion)
from .sampling import replicate_rng, sample_instance
from .verify import run_full_verification

__version__ = "0.1.0"

__all__ = [
    "BudgetExhausted", "Colour", "EdgeWeights", "Graph", "Params", "Rule",
    "Trace", "build_lattice", "co_paralyzed", "critical_probability",
    "diagnostics", "graph_distance", "green_cluster", "green_cluster_of",
    "invade", "load_snapshot", "min_max_path_bound", "open_cluster",
    "paralysis_time", "pond", "random_connected_graph", "read_edge_list",
    "replicate_rng", "responsibility_set", "run_algorithm",
    "run_full_verification", "sample_instance", "save_snapshot", "shell",
    "simulate", "stopped_invasion", "worked_example", "__version__",
]
