"""Per-vertex quantities and local structure of a network.

Cluster sets, visibility sets, reachability, shortcut tests, the tree-child
and normal class tests, and cherry detection.  All functions take a valid
:class:`~dispset.network.Network` and never modify it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .errors import NoSuchArc, NotReticulationArc, NotTreeChild
from .network import Arc, Network

LeafSet = frozenset


@dataclass(frozen=True)
class Cherry:
    """Leaves ``a`` and ``b`` share the parent ``p``; ``b`` is the one to delete."""

    a: str
    b: str
    p: int


@dataclass(frozen=True)
class ReticulatedCherry:
    """Leaf ``b`` hangs below reticulation ``p_b``; ``(p_a, p_b)`` is an arc.

    ``q`` is the parent of ``p_b`` other than ``p_a``.
    """

    a: str
    b: str
    p_a: int
    p_b: int
    q: int


CherryShape = Union[Cherry, ReticulatedCherry]


def _descendants(net: Network, start: int, avoid: int | None = None) -> set[int]:
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for c in net.children(v):
            if c not in seen and c != avoid:
                seen.add(c)
                stack.append(c)
    return seen


def cluster_sets(net: Network) -> dict[int, frozenset[str]]:
    """Cluster set of every vertex, in one pass over a reverse topological order."""
    clusters: dict[int, frozenset[str]] = {}
    for v in reversed(net.topological_order()):
        kids = net.children(v)
        if not kids:
            lab = net.label(v)
            clusters[v] = frozenset((lab,)) if lab is not None else frozenset()
        else:
            clusters[v] = frozenset().union(*(clusters[c] for c in kids))
    return clusters


def cluster_set(net: Network, u: int) -> frozenset[str]:
    return frozenset(
        net.label(v) for v in _descendants(net, u) if not net.children(v) and net.label(v) is not None
    )


def visibility_set(net: Network, u: int) -> frozenset[str]:
    """Leaves every root path to which passes through ``u``.

    Computed as the leaf set minus the leaves still reachable from the root
    once ``u`` is removed.
    """
    if u == net.root:
        return net.leaf_labels
    still = _descendants(net, net.root, avoid=u)
    return frozenset(lab for v, lab in net.labels.items() if v not in still)


def reachable(net: Network, t: int, u: int) -> bool:
    """True if a directed path (possibly empty) leads from ``t`` to ``u``."""
    if t == u:
        return True
    return u in _descendants(net, t)


def _check_reticulation_arc(net: Network, arc: Arc) -> tuple[int, int, int]:
    u, v = arc
    if u not in net or v not in net or not net.has_arc(u, v):
        raise NoSuchArc(f"no arc {arc}")
    if not net.is_reticulation(v):
        raise NotReticulationArc(f"head of {arc} is not a reticulation")
    (other,) = [p for p in net.parents(v) if p != u]
    return u, v, other


def is_shortcut(net: Network, arc: Arc) -> bool:
    """True if ``v`` can be reached from ``u`` without using the arc ``(u, v)``.

    Such a path must enter ``v`` through its other parent, so this is the
    same as asking whether that parent is reachable from ``u``.
    """
    u, _, other = _check_reticulation_arc(net, arc)
    return reachable(net, u, other)


def is_trivial_shortcut(net: Network, arc: Arc) -> bool:
    u, _, other = _check_reticulation_arc(net, arc)
    return other in net.children(u)


def trivial_shortcuts(net: Network) -> list[Arc]:
    """All trivial shortcuts, ascending by ``(tail, head)``."""
    found = []
    for v in net.reticulations:
        p1, p2 = net.parents(v)
        if p2 in net.children(p1):
            found.append((p1, v))
        if p1 in net.children(p2):
            found.append((p2, v))
    return sorted(found)


def _descendant_masks(net: Network) -> tuple[dict[int, int], dict[int, int]]:
    """Bitset of descendants per vertex, plus the bit assigned to each vertex."""
    order = net.topological_order()
    bit = {v: 1 << i for i, v in enumerate(order)}
    masks: dict[int, int] = {}
    for v in reversed(order):
        m = bit[v]
        for c in net.children(v):
            m |= masks[c]
        masks[v] = m
    return masks, bit


def shortcuts(net: Network) -> list[Arc]:
    """All shortcut arcs, ascending by ``(tail, head)``."""
    masks, bit = _descendant_masks(net)
    found = []
    for v in net.reticulations:
        p1, p2 = net.parents(v)
        if masks[p1] & bit[p2]:
            found.append((p1, v))
        if masks[p2] & bit[p1]:
            found.append((p2, v))
    return sorted(found)


def is_tree_child(net: Network) -> bool:
    """Every non-leaf vertex has a child that is a tree vertex or a leaf."""
    for v in net.vertices:
        kids = net.children(v)
        if kids and not any(net.is_tree_or_leaf(c) for c in kids):
            return False
    return True


def is_normal(net: Network) -> bool:
    return is_tree_child(net) and not shortcuts(net)


def find_cherry(net: Network) -> CherryShape:
    """Locate a cherry or reticulated cherry of a tree-child network.

    Walks down from the root, always stepping into the smallest-id child
    that is a tree vertex.  When the current vertex has no tree-vertex
    child, its children are leaves or reticulations: two leaves give a
    cherry, a leaf next to a reticulation above a leaf gives a reticulated
    cherry, and a leaf next to a reticulation above a tree vertex sends the
    walk on below that reticulation.
    """
    if net.n_leaves < 2:
        raise ValueError("a cherry needs at least two leaves")
    cur = net.root
    while True:
        kids = net.children(cur)
        inner = sorted(c for c in kids if net.children(c) and net.is_tree_or_leaf(c))
        if inner:
            cur = inner[0]
            continue
        leaves = sorted(c for c in kids if not net.children(c))
        rets = sorted(c for c in kids if net.is_reticulation(c))
        if len(leaves) == 2:
            a, b = sorted(net.label(c) for c in leaves)
            return Cherry(a, b, cur)
        if len(leaves) == 1 and len(rets) == 1:
            r = rets[0]
            (below,) = net.children(r)
            if not net.children(below):
                (q,) = [p for p in net.parents(r) if p != cur]
                return ReticulatedCherry(net.label(leaves[0]), net.label(below), cur, r, q)
            if net.is_tree_or_leaf(below):
                cur = below
                continue
        raise NotTreeChild(f"vertex {cur} has no tree-vertex or leaf child")


def all_cherries(net: Network) -> list[CherryShape]:
    """Every cherry and reticulated cherry, in a deterministic order."""
    found: list[CherryShape] = []
    for v in net.vertices:
        kids = net.children(v)
        if len(kids) != 2:
            continue
        leaf_kids = [c for c in kids if not net.children(c)]
        if len(leaf_kids) == 2:
            a, b = sorted(net.label(c) for c in leaf_kids)
            found.append(Cherry(a, b, v))
        elif len(leaf_kids) == 1:
            (other,) = [c for c in kids if c != leaf_kids[0]]
            if net.is_reticulation(other):
                (below,) = net.children(other)
                if not net.children(below):
                    (q,) = [p for p in net.parents(other) if p != v]
                    found.append(
                        ReticulatedCherry(net.label(leaf_kids[0]), net.label(below), v, other, q)
                    )
    return found
