"""Leaf and arc deletion with suppression, and trivial-shortcut removal.

Each public function copies its input, applies the deletion and returns a
compacted network whose ``origin`` table names the input's vertices.
"""

from __future__ import annotations

from .analysis import is_tree_child, trivial_shortcuts
from .errors import NoSuchArc, NotReticulationArc, NotTreeChild, WouldEmptyNetwork
from .network import Arc, Network


def delete_leaf(net: Network, leaf: str) -> Network:
    """Delete ``leaf`` and its arc, then suppress the former parent.

    A parent that was the root is removed together with its remaining arc.
    """
    net.leaf(leaf)
    if net.n_leaves < 2:
        raise WouldEmptyNetwork("cannot delete the only leaf")
    work = net.copy()
    work._delete_leaf(leaf)
    return work.compact()


def delete_arc(net: Network, arc: Arc) -> Network:
    """Delete a reticulation arc ``(u, v)`` and suppress ``u`` and ``v``.

    If ``u`` is the root it is removed, and its other child becomes the root.
    """
    u, v = arc
    if u not in net or v not in net or not net.has_arc(u, v):
        raise NoSuchArc(f"no arc {arc}")
    if not net.is_reticulation(v):
        raise NotReticulationArc(f"head of {arc} is not a reticulation")
    work = net.copy()
    work._delete_arc(u, v)
    return work.compact()


def _remove_trivial_shortcuts_inplace(net: Network) -> list[Arc]:
    removed = []
    while True:
        found = trivial_shortcuts(net)
        if not found:
            return removed
        u, v = found[0]
        net._delete_arc(u, v)
        removed.append((u, v))


def remove_trivial_shortcuts(net: Network) -> Network:
    """Repeatedly delete the smallest trivial shortcut until none is left.

    Deleting one trivial shortcut can expose another, hence the rescan.
    """
    if not is_tree_child(net):
        raise NotTreeChild("trivial-shortcut removal needs a tree-child network")
    work = net.copy()
    if not _remove_trivial_shortcuts_inplace(work):
        return net
    return work.compact()
