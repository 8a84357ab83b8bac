"""Display-set equivalence for normal and tree-child phylogenetic networks."""

__version__ = "0.1.0"

from .analysis import (
    Cherry,
    ReticulatedCherry,
    all_cherries,
    cluster_set,
    cluster_sets,
    find_cherry,
    is_normal,
    is_shortcut,
    is_tree_child,
    is_trivial_shortcut,
    reachable,
    shortcuts,
    trivial_shortcuts,
    visibility_set,
)
from .equivalence import Decision, IterationRecord, recurse_step, same_display_set
from .errors import *  # noqa: F401,F403
from .generate import GenSpec, insert_trivial_shortcut, random_network
from .network import Network, ValidationReport, VertexKind, network_from_named_arcs, validate
from .newick import parse_arclist, parse_enewick, serialize_arclist, serialize_enewick
from .ops import delete_arc, delete_leaf, remove_trivial_shortcuts
from .oracle import (
    apply_switching,
    canonical_tree,
    display_sets_equal_bruteforce,
    displays,
    enumerate_display_set,
    iter_switchings,
)
